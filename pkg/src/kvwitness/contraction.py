"""Birational contractions of negative-definite curve configurations.

A divisor on the contracted surface is represented by its strict transform on
the source; its Mumford pullback adds the unique exceptional correction that
makes the class orthogonal to every contracted curve.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import InvariantViolation, NonPrimeTerm, NotContractible, RankNotOne, SingularMatrix
from .lattice import (
    CANONICAL,
    Divisor,
    SurfaceModel,
    arithmetic_genus,
    divisor_class,
    intersect,
)
from .qla import QMatrix, QVector, is_negative_definite, solve_linear


@dataclass(frozen=True)
class ContractionModel:
    source: SurfaceModel
    contracted: tuple[str, ...]
    gram_sub: QMatrix
    components: tuple[tuple[str, ...], ...]

    @property
    def target_rank(self) -> int:
        return self.source.rank - len(self.contracted)

    def index(self, name: str) -> int:
        return self.contracted.index(name)


class PullbackResult(NamedTuple):
    total: Divisor
    exceptional_coefficients: dict[str, Fraction]


class Discrepancies(NamedTuple):
    values: dict[str, Fraction]
    klt: bool


class NefReport(NamedTuple):
    values: dict[str, Fraction]
    nef: bool


@dataclass(frozen=True)
class SingularPoint:
    """One connected component of the exceptional locus and its type tag.

    Tags: ``"A<n>"`` for a chain of n smooth rational (-2)-curves, ``"(<n>)"``
    for a single smooth rational (-n)-curve with n >= 3, ``"smooth"`` for a
    single (-1)-curve and ``"unclassified"`` otherwise.
    """

    type: str
    curves: tuple[str, ...]
    gram: QMatrix


def _components(names: Sequence[str], gram: QMatrix) -> tuple[tuple[str, ...], ...]:
    # connected components of the dual graph, in order of first appearance
    n = len(names)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        comp, stack = [], [start]
        seen[start] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and j != i and gram[i, j] != 0:
                    seen[j] = True
                    stack.append(j)
        out.append(tuple(names[i] for i in sorted(comp)))
    return tuple(out)


def plan_contraction(s: SurfaceModel, names: Iterable[str]) -> ContractionModel:
    names = tuple(names)
    if len(set(names)) != len(names):
        raise ValueError("contracted curves must be distinct")
    classes = []
    for n in names:
        c = s.curve(n)
        if not c.is_prime:
            raise NonPrimeTerm(f"cannot contract non-prime curve {n!r}")
        classes.append(c.cls)
    gram = QMatrix.from_rows([[intersect(s, a, b) for b in classes] for a in classes])
    if not is_negative_definite(gram):
        raise NotContractible(f"intersection matrix of {list(names)} is not negative definite")
    return ContractionModel(s, names, gram, _components(names, gram))


def pullback(c: ContractionModel, strict: Divisor) -> PullbackResult:
    """Mumford pullback of the divisor whose strict transform is ``strict``."""
    s = c.source
    for n in c.contracted:
        if strict.coefficient(n) != 0:
            raise ValueError(f"strict transform has a nonzero coefficient on contracted curve {n!r}")
    base = divisor_class(s, strict)
    ex_classes = [s.curve(n).cls for n in c.contracted]
    rhs = QVector(-intersect(s, base, e) for e in ex_classes)
    try:
        coeffs = solve_linear(c.gram_sub, rhs)
    except SingularMatrix as exc:  # negative definite Gram matrices are invertible
        raise InvariantViolation(f"contraction Gram matrix became singular: {exc}") from exc
    exc_part = dict(zip(c.contracted, coeffs))
    total = strict + Divisor(exc_part)
    cls = divisor_class(s, total)
    for n, e in zip(c.contracted, ex_classes):
        if intersect(s, cls, e) != 0:
            raise InvariantViolation(f"pullback is not orthogonal to contracted curve {n!r}")
    return PullbackResult(total, exc_part)


def canonical_pullback(c: ContractionModel) -> Divisor:
    """Pullback of the canonical class of the target, written as K + sum c_i E_i."""
    return pullback(c, Divisor.curve(CANONICAL)).total


def discrepancies(c: ContractionModel) -> Discrepancies:
    """Coefficients a_i with K_source = pullback(K_target) + sum a_i E_i."""
    corr = pullback(c, Divisor.curve(CANONICAL)).exceptional_coefficients
    values = {n: -v for n, v in corr.items()}
    return Discrepancies(values, all(a > -1 for a in values.values()))


def _is_chain(gram: QMatrix) -> list[int] | None:
    """Vertex order of a chain dual graph (simple transverse meetings), else None."""
    n = gram.rows
    adj = {i: [j for j in range(n) if j != i and gram[i, j] != 0] for i in range(n)}
    for i in range(n):
        for j in adj[i]:
            if gram[i, j] != 1:
                return None
    if n == 1:
        return [0]
    ends = [i for i in range(n) if len(adj[i]) == 1]
    if len(ends) != 2 or any(len(a) > 2 for a in adj.values()):
        return None
    order, prev, cur = [ends[0]], None, ends[0]
    while len(order) < n:
        nxt = [j for j in adj[cur] if j != prev]
        if not nxt:
            return None
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def classify_singularities(c: ContractionModel) -> list[SingularPoint]:
    s = c.source
    out = []
    for comp in c.components:
        idx = [c.index(n) for n in comp]
        gram = c.gram_sub.submatrix(idx)
        genera = [arithmetic_genus(s, s.curve(n).cls) for n in comp]
        tag = "unclassified"
        order = list(range(len(comp)))
        if all(g == 0 for g in genera):
            if len(comp) == 1:
                n = -gram[0, 0]
                tag = "smooth" if n == 1 else "A1" if n == 2 else f"({n})"
            else:
                chain = _is_chain(gram)
                if chain is not None and all(gram[i, i] == -2 for i in range(len(comp))):
                    tag = f"A{len(comp)}"
                    order = chain
        curves = tuple(comp[i] for i in order)
        out.append(SingularPoint(tag, curves, c.gram_sub.submatrix([c.index(n) for n in curves])))
    return out


def descend_intersection(c: ContractionModel, d1: Divisor, d2: Divisor, pullback_fn=None) -> Fraction:
    """Intersection number on the target of two divisors given by strict transforms."""
    s = c.source
    total = (pullback_fn or pullback)(c, d1).total
    return intersect(s, divisor_class(s, total), divisor_class(s, d2))


def relative_nef_report(c: ContractionModel, d: Divisor) -> NefReport:
    s = c.source
    cls = divisor_class(s, d)
    values = {n: intersect(s, cls, s.curve(n).cls) for n in c.contracted}
    return NefReport(values, all(v >= 0 for v in values.values()))


def ample_check_rank_one(c: ContractionModel, d: Divisor, witness: str, pullback_fn=None) -> int:
    """Sign of ``d`` against an effective curve on a Picard-rank-one target.

    On a rank-one target, +1 means ample, -1 anti-ample, 0 numerically trivial.
    """
    if c.target_rank != 1:
        raise RankNotOne(f"target Picard rank is {c.target_rank}, not 1")
    if witness in c.contracted:
        raise ValueError(f"witness curve {witness!r} is contracted")
    c.source.curve(witness)
    value = descend_intersection(c, d, Divisor.curve(witness), pullback_fn)
    return (value > 0) - (value < 0)


def search_relative_boundary(
    c: ContractionModel,
    d: Divisor,
    max_denominator: int = 4,
    max_support: int = 2,
) -> Divisor | None:
    """Smallest boundary ``delta`` on contracted curves making ``d - delta`` relatively nef.

    Coefficients range over fractions in [0, 1) with denominator up to
    ``max_denominator``.  The smallest support size wins, then the least total
    coefficient; ties go to the earlier support in contraction order.  The
    result is a convenience answer, not a canonical one.
    """
    values = sorted({Fraction(k, q) for q in range(1, max_denominator + 1) for k in range(1, q)})
    if relative_nef_report(c, d).nef:
        return Divisor()
    for size in range(1, max_support + 1):
        found = []
        for support in itertools.combinations(c.contracted, size):
            for coeffs in itertools.product(values, repeat=size):
                delta = Divisor(zip(support, coeffs))
                if relative_nef_report(c, d - delta).nef:
                    found.append((sum(coeffs), delta))
        if found:
            return min(found, key=lambda t: t[0])[1]
    return None
