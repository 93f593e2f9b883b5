"""Riemann-Roch on rational surfaces and the H^1-nonvanishing witness pipeline.

The pipeline certifies H^1(T, O_T(-A)) != 0 for an ample Weil divisor A on a
Picard-rank-one contraction T of a blown-up plane:

1. A is ample: its degree on an effective curve is positive.
2. B = -A is pulled back to the resolution V and rounded down.
3. The rounded divisor minus (pullback of K_T + a relative boundary) must be
   nef over T.  The relative Kawamata-Viehweg theorem for surfaces then kills
   the higher direct images, so H^i(V, floor) = H^i(T, O_T(B)).
4. chi(V, floor) < 0 forces h^1 > 0.

Only step 3's numerical hypothesis is checked; the vanishing theorem itself is
taken as given and recorded as such in the report.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .contraction import (
    ContractionModel,
    Discrepancies,
    PullbackResult,
    ample_check_rank_one,
    descend_intersection,
    pullback,
    relative_nef_report,
)
from .errors import NonIntegralDivisor
from .lattice import (
    CANONICAL,
    Divisor,
    SurfaceModel,
    arithmetic_genus,
    canonical_square,
    divisor_class,
    floor_divisor,
    intersect,
)
from .scenario import BuiltScenario


class Verdict(str, enum.Enum):
    H1_NONZERO_CERTIFIED = "H1_NONZERO_CERTIFIED"
    INCONCLUSIVE = "INCONCLUSIVE"


def euler_characteristic(s: SurfaceModel, d: Divisor) -> Fraction:
    """chi(O_S(d)) = 1 + (d^2 - K.d)/2 for a surface obtained from P^2 by blow-ups."""
    if not d.is_integral():
        raise NonIntegralDivisor(f"chi is only defined for integral divisors, got {d!r}")
    c = divisor_class(s, d)
    return 1 + (intersect(s, c, c) - intersect(s, s.canonical, c)) / 2


@dataclass
class Step:
    name: str
    claim: str
    holds: bool | None  # None for narrative-only steps
    basis: str


@dataclass
class LerayGate:
    boundary: Divisor
    total_boundary: Divisor
    table: dict[str, Fraction]
    nef: bool
    boundary_in_range: bool
    klt: bool

    @property
    def passed(self) -> bool:
        return self.nef and self.boundary_in_range and self.klt


@dataclass
class WitnessReport:
    ample: Divisor
    test_curve: str
    ample_degree: Fraction
    ample_sign: int
    pullbacks: dict[str, Divisor]
    pullback_b: Divisor
    floored: Divisor
    floor_table: dict[str, Fraction]
    floor_strict_table: dict[str, Fraction]
    floor_square: Fraction
    canonical_dot_floor: Fraction
    leray_gate: LerayGate
    chi: Fraction
    verdict: Verdict
    narrative: list[Step] = field(default_factory=list)


def run_witness_pipeline(
    built: BuiltScenario,
    *,
    ample: Divisor | None = None,
    relative_boundary: Divisor | None = None,
    pullback_fn: Callable[[ContractionModel, Divisor], PullbackResult] = pullback,
) -> WitnessReport:
    """Run the certification steps on a built scenario.

    ``ample`` and ``relative_boundary`` override the scenario's choices.  Gate
    failures yield an INCONCLUSIVE verdict rather than an exception.
    """
    sc = built.scenario
    c = built.contraction
    if c is None or sc.witness is None:
        raise ValueError("the witness pipeline needs a contraction and a witness block")
    s = c.source
    A = built.divisor(sc.witness.ample) if ample is None else ample
    delta = sc.relative_boundary if relative_boundary is None else relative_boundary
    test = sc.witness.test_curve
    steps: list[Step] = []

    # 1. ampleness of A on the rank-one target
    sign = ample_check_rank_one(c, A, test, pullback_fn)
    degree = descend_intersection(c, A, Divisor.curve(test), pullback_fn)
    steps.append(Step(
        "ample",
        f"A.{test} = {degree} on T, so A is {'ample' if sign > 0 else 'not ample'} and B = -A is "
        f"{'anti-ample' if sign > 0 else 'not anti-ample'}",
        sign > 0,
        "on a Picard-rank-one surface a divisor is ample iff it has positive degree on one effective curve",
    ))

    # 2. pullbacks
    pullbacks = {n: pullback_fn(c, Divisor.curve(n)).total for n in A}
    B = -A
    pb_B = pullback_fn(c, B).total
    steps.append(Step(
        "pullback",
        "pullback of B = -A computed by orthogonality to every contracted curve",
        True,
        "Mumford pullback: the unique Q-divisor with the given strict transform orthogonal to the exceptional curves",
    ))

    # 3. round down
    floored = floor_divisor(s, pb_B)
    floor_table = relative_nef_report(c, floored).values
    floor_cls = divisor_class(s, floored)
    strict_support = [n for n in floored if n not in c.contracted]
    floor_strict = {n: intersect(s, floor_cls, s.curve(n).cls) for n in strict_support}

    # 4. relative vanishing hypothesis
    k_pullback = pullback_fn(c, Divisor.curve(CANONICAL))
    disc = Discrepancies(
        {n: -v for n, v in k_pullback.exceptional_coefficients.items()},
        all(v < 1 for v in k_pullback.exceptional_coefficients.values()),
    )
    total_boundary = Divisor({n: -a for n, a in disc.values.items()}) + delta
    shifted = floored - k_pullback.total - delta
    gate_report = relative_nef_report(c, shifted)
    gate = LerayGate(
        boundary=delta,
        total_boundary=total_boundary,
        table=gate_report.values,
        nef=gate_report.nef,
        boundary_in_range=all(0 <= v < 1 for v in total_boundary.values()),
        klt=disc.klt,
    )
    steps.append(Step(
        "leray_gate",
        "floor(pullback B) - (pullback K_T + boundary) is nef over T and the boundary has coefficients in [0, 1)",
        gate.passed,
        "relative Kawamata-Viehweg vanishing for birational morphisms of surfaces gives R^i psi_* = 0 for i > 0; "
        "the Leray spectral sequence then identifies H^i(V, floor) with H^i(T, O_T(B)). The theorem is assumed, "
        "only its numerical hypothesis is checked here; the boundary curves are assumed smooth and transverse",
    ))

    # 5. Riemann-Roch
    sq = intersect(s, floor_cls, floor_cls)
    kd = intersect(s, s.canonical, floor_cls)
    chi = euler_characteristic(s, floored)
    steps.append(Step(
        "riemann_roch",
        f"chi(V, floor) = 1 + ({sq} - ({kd}))/2 = {chi}",
        chi < 0,
        "Riemann-Roch on a rational surface: chi(D) = 1 + (D^2 - K.D)/2; chi < 0 forces h^1 > 0",
    ))

    certified = sign > 0 and gate.passed and chi < 0
    verdict = Verdict.H1_NONZERO_CERTIFIED if certified else Verdict.INCONCLUSIVE
    steps.append(Step(
        "cone_remark",
        "for the affine cone X over T polarised by A with vertex v, "
        "H^2_v(X, \\mathcal{O}_X) \\simeq \\bigoplus_{m \\in \\mathbb{Z}} H^1(T, \\mathcal{O}_T(mA)); "
        "a nonzero H^1(T, O_T(-A)) therefore makes the vertex non-Cohen-Macaulay",
        None,
        "narrative only: the threefold is not constructed and its klt / Q-factorial properties are not checked",
    ))
    return WitnessReport(
        ample=A,
        test_curve=test,
        ample_degree=degree,
        ample_sign=sign,
        pullbacks=pullbacks,
        pullback_b=pb_B,
        floored=floored,
        floor_table=floor_table,
        floor_strict_table=floor_strict,
        floor_square=sq,
        canonical_dot_floor=kd,
        leray_gate=gate,
        chi=chi,
        verdict=verdict,
        narrative=steps,
    )


def canonical_degree(c: ContractionModel, test_curve: str) -> Fraction:
    """K_T . C for a curve C on T given by its strict transform."""
    return descend_intersection(c, Divisor.curve(CANONICAL), Divisor.curve(test_curve))


def intersection_audit(built: BuiltScenario) -> list[dict]:
    """Per construction stage: rank, K^2, basis squares, curve intersections, K-degrees, genera."""
    out = []
    for label, s in built.stages:
        table = {}
        for a in s.curves:
            table[a.name] = {b.name: intersect(s, a.cls, b.cls) for b in s.curves}
        out.append({
            "stage": label,
            "rank": s.rank,
            "K2": canonical_square(s),
            "basis_squares": {n: s.gram[i, i] for i, n in enumerate(s.basis_names)},
            "intersections": table,
            "canonical_degrees": {c.name: intersect(s, s.canonical, c.cls) for c in s.curves},
            "genera": {c.name: arithmetic_genus(s, c.cls) for c in s.curves},
        })
    return out


class _LinearPullbacks:
    """Pullback by linearity from precomputed pullbacks of single curves."""

    def __init__(self, c: ContractionModel, names: Iterable[str]):
        self._cache = {n: pullback(c, Divisor.curve(n)) for n in names}

    def __call__(self, c: ContractionModel, strict: Divisor) -> PullbackResult:
        missing = [n for n in strict if n not in self._cache]
        for n in missing:
            self._cache[n] = pullback(c, Divisor.curve(n))
        total = Divisor()
        coeffs: dict[str, Fraction] = {n: Fraction(0) for n in c.contracted}
        for n, k in strict.items():
            r = self._cache[n]
            total = total + r.total * k
            for e, v in r.exceptional_coefficients.items():
                coeffs[e] += k * v
        return PullbackResult(total, coeffs)


@dataclass
class Candidate:
    ample: Divisor
    ample_sign: int
    gate_passed: bool
    chi: Fraction
    verdict: Verdict


def search_witness_divisors(
    built: BuiltScenario,
    curves: Sequence[str] | None = None,
    coefficients: Sequence[int] = (-1, 0, 1),
    relative_boundary: Divisor | None = None,
) -> list[Candidate]:
    """Exploratory sweep of integer combinations of uncontracted curves as A.

    Every nonzero combination is pushed through the pipeline with the given (or
    the scenario's) boundary.  Results are exploratory: they are not part of
    any certified claim.
    """
    c = built.contraction
    if curves is None:
        curves = [cv.name for cv in c.source.curves if cv.is_prime and cv.name not in c.contracted]
    pb = _LinearPullbacks(c, curves)
    out = []
    for combo in itertools.product(coefficients, repeat=len(curves)):
        A = Divisor(zip(curves, combo))
        if not len(A):
            continue
        r = run_witness_pipeline(built, ample=A, relative_boundary=relative_boundary, pullback_fn=pb)
        out.append(Candidate(A, r.ample_sign, r.leray_gate.passed, r.chi, r.verdict))
    return out
