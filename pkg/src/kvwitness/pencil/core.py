"""Pencils of plane cubics over finite fields.

Singular points are found by exhaustive enumeration of P^2(F_{p^m}) through the
kernels in :mod:`kvwitness._ext`; a point is singular when the form and all
three partials vanish there, which stays correct when p divides the degree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .. import _ext
from ..errors import BadCharacteristic, CoincidentPoints, MultiplicityBoundExceeded, PointNotOnCurve
from .forms import AffinePoly, Form, PlanePoint, format_point, normalize_point, pack_forms, point_from_ints
from .gf import GF, field, is_prime

CubicForm = Form

STANDARD_POINTS = {"a": (-1, 1, 1), "b": (-1, -1, 1), "c": (1, -1, 1), "d": (1, 1, 1)}
C0_LINES = ("ad", "ac", "bc")
CINF_LINES = ("ab", "bd", "cd")


class SingularityType(str, enum.Enum):
    SMOOTH = "SMOOTH"
    NODE = "NODE"
    CUSP = "CUSP"
    MULT_GE_3 = "MULT_GE_3"
    # double point with a doubled tangent that also divides the cubic term
    UNCLASSIFIED = "UNCLASSIFIED"


class TangentCone(NamedTuple):
    """Singular point with the quadratic part a*u^2 + b*u*v + c*v^2 of the local equation."""

    point: PlanePoint
    quadratic: tuple[int, int, int]


def line_through(F: GF, p1: Sequence[int], p2: Sequence[int], normalize: str = "first") -> Form:
    """Linear form vanishing at two distinct points.

    ``normalize="first"`` scales the first nonzero coefficient to 1;
    ``normalize="last"`` scales the last nonzero one to 1, i.e. treats the line
    as a point of the dual plane.
    """
    a = [F.sub(F.mul(p1[1], p2[2]), F.mul(p1[2], p2[1])),
         F.sub(F.mul(p1[2], p2[0]), F.mul(p1[0], p2[2])),
         F.sub(F.mul(p1[0], p2[1]), F.mul(p1[1], p2[0]))]
    nz = [i for i, c in enumerate(a) if c]
    if not nz:
        raise CoincidentPoints(f"{format_point(F, p1)} and {format_point(F, p2)} coincide")
    pivot = nz[0] if normalize == "first" else nz[-1]
    s = F.inv(a[pivot])
    return Form.linear(F, *(F.mul(c, s) for c in a))


def _proportional(f: Form, g: Form) -> bool:
    F = f.field
    u, v = f.coefficient_vector(), g.coefficient_vector()
    k = next((i for i, c in enumerate(u) if c), None)
    if k is None or not v[k]:
        return k is None and not any(v)
    r = F.div(v[k], u[k])
    return all(F.mul(r, a) == b for a, b in zip(u, v))


@dataclass(frozen=True, eq=False)
class PencilSpec:
    """The pencil c0 + t*cinf together with the points and lines it was built from."""

    c0: Form
    cinf: Form
    points: dict[str, PlanePoint]
    lines: dict[str, Form]

    def __post_init__(self):
        if self.c0.is_zero() or self.cinf.is_zero():
            raise ValueError("pencil generators must be nonzero")
        if _proportional(self.c0, self.cinf):
            raise ValueError("pencil generators are proportional")

    @property
    def field(self) -> GF:
        return self.c0.field

    def member(self, t: int | None) -> Form:
        """C_t = c0 + t*cinf; ``t=None`` is the member at infinity."""
        if t is None:
            return self.cinf
        return self.c0 + self.cinf.scale(self.field.from_int(t))


def build_standard_pencil(p: int) -> PencilSpec:
    """Pencil spanned by the line triangles through four points in general position.

    The line forms are scaled as points of the dual plane (last nonzero
    coefficient 1), the same normalisation used for plane points.  The pencil
    parameter t depends on this choice; with it the cuspidal member of the
    characteristic-5 pencil sits at t = 2.
    """
    if not is_prime(p):
        raise BadCharacteristic(f"{p} is not prime")
    if p == 2:
        raise BadCharacteristic("in characteristic 2 the points a and b coincide")
    F = field(p)
    pts = {k: point_from_ints(F, v) for k, v in STANDARD_POINTS.items()}
    lines = {
        a + b: line_through(F, pts[a], pts[b], normalize="last")
        for a, b in ("ab", "ac", "ad", "bc", "bd", "cd")
    }

    def product(names):
        out = lines[names[0]]
        for n in names[1:]:
            out = out * lines[n]
        return out

    return PencilSpec(product(C0_LINES), product(CINF_LINES), pts, lines)


def _common_zeros(forms: Sequence[Form], F: GF) -> list[PlanePoint]:
    forms = [f.embed(F) for f in forms]
    terms, offsets = pack_forms(forms)
    maxdeg = max((f.degree for f in forms), default=0)
    raw = _ext.common_zeros(F.q, maxdeg, F.add_table, F.mul_table, terms, offsets)
    return [PlanePoint(*pt) for pt in raw]


def singular_points(f: Form, ext_degree: int = 2) -> list[TangentCone]:
    """Singular points of ``f`` over F_{p^ext_degree}, with their tangent cones."""
    if f.is_zero():
        raise ValueError("the zero form has no curve")
    F = field(f.field.p, ext_degree)
    g = f.embed(F)
    out = []
    for pt in _common_zeros([g, *g.gradient()], F):
        q2 = g.local_expansion(pt).homogeneous_part(2)
        out.append(TangentCone(pt, (q2.get((2, 0), 0), q2.get((1, 1), 0), q2.get((0, 2), 0))))
    return out


def _double_tangent_direction(F: GF, a: int, b: int, c: int) -> tuple[int, int]:
    """Direction (u, v) killed by the square root of a u^2 + b uv + c v^2 (a double root)."""
    if a == 0:
        return (1, 0)
    if F.p == 2:
        beta = F.sqrt(F.div(c, a))
    else:
        beta = F.div(b, F.mul(F.from_int(2), a))
    # tangent u + beta v = 0
    return (F.neg(beta), 1)


def classify_singularity(f: Form, pt: Sequence[int]) -> SingularityType:
    F = f.field
    pt = normalize_point(F, pt)
    loc = f.local_expansion(pt)
    if loc.constant():
        raise PointNotOnCurve(f"{format_point(F, pt)} is not on the curve")
    if loc.homogeneous_part(1):
        return SingularityType.SMOOTH
    q2 = loc.homogeneous_part(2)
    if not q2:
        return SingularityType.MULT_GE_3
    a, b, c = q2.get((2, 0), 0), q2.get((1, 1), 0), q2.get((0, 2), 0)
    if F.p == 2:
        double = b == 0
    else:
        disc = F.sub(F.mul(b, b), F.mul(F.from_int(4), F.mul(a, c)))
        double = disc == 0
    if not double:
        return SingularityType.NODE
    u, v = _double_tangent_direction(F, a, b, c)
    if loc.evaluate_part(3, u, v):
        return SingularityType.CUSP
    return SingularityType.UNCLASSIFIED


def tangent_line(f: Form, pt: Sequence[int]) -> Form:
    """Projective tangent line x f_x(pt) + y f_y(pt) + z f_z(pt) at a smooth point."""
    F = f.field
    grad = [d.evaluate(pt) for d in f.gradient()]
    if not any(grad):
        raise ValueError(f"{format_point(F, pt)} is a singular point")
    k = next(i for i, c in enumerate(grad) if c)
    s = F.inv(grad[k])
    return Form.linear(F, *(F.mul(c, s) for c in grad))


@dataclass(frozen=True)
class PencilRow:
    t: int | None
    points: tuple[tuple[PlanePoint, SingularityType], ...]

    @property
    def label(self) -> str:
        return "inf" if self.t is None else str(self.t)


def scan_pencil(spec: PencilSpec, ext_degree: int = 2) -> list[PencilRow]:
    """Singular points and their types for every member C_t, t in F_p and infinity."""
    F = field(spec.field.p, ext_degree)
    rows = []
    for t in [*range(spec.field.p), None]:
        member = spec.member(t).embed(F)
        found = tuple((sp.point, classify_singularity(member, sp.point)) for sp in singular_points(member, ext_degree))
        rows.append(PencilRow(t, found))
    return rows


def _rank(F: GF, rows: list[dict]) -> int:
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        piv_row = rows.pop()
        key = min(piv_row)
        inv = F.inv(piv_row[key])
        rank += 1
        nxt = []
        for r in rows:
            c = r.get(key)
            if c:
                f = F.mul(c, inv)
                for k2, v in piv_row.items():
                    nv = F.sub(r.get(k2, 0), F.mul(f, v))
                    if nv:
                        r[k2] = nv
                    else:
                        r.pop(k2, None)
            if r:
                nxt.append(r)
        rows = nxt
    return rank


def local_intersection_multiplicity(f: Form, g: Form, pt: Sequence[int], bound: int = 10) -> int:
    """dim of the local ring of the plane at ``pt`` modulo (f, g).

    Computes d_N = dim k[u,v] / ((f, g) + m^N) for N = 1, 2, ... from the rank of
    the truncated Macaulay matrix, stopping at the first N with d_N = d_{N+1};
    by Nakayama that common value is the local multiplicity.
    """
    F = f.field
    pt = normalize_point(F, pt)
    lf, lg = f.local_expansion(pt), g.local_expansion(pt)
    if lf.constant() or lg.constant():
        return 0

    def colength(N: int) -> int:
        rows = []
        for a in range(N):
            for b in range(N - a):
                rows.append(lf.shifted_monomial(a, b, N))
                rows.append(lg.shifted_monomial(a, b, N))
        return N * (N + 1) // 2 - _rank(F, rows)

    prev = colength(1)
    for N in range(2, bound + 1):
        cur = colength(N)
        if cur == prev:
            return cur
        prev = cur
    raise MultiplicityBoundExceeded(
        f"local multiplicity at {format_point(F, pt)} did not stabilise below degree {bound}"
    )


@dataclass(frozen=True)
class BaseLocus:
    ext_degree: int
    points: tuple[tuple[PlanePoint, int], ...]

    @property
    def total(self) -> int:
        return sum(m for _, m in self.points)


def base_locus(spec: PencilSpec, max_ext_degree: int = 3, bound: int = 10) -> BaseLocus:
    """Common zeros of the generators with local intersection multiplicities.

    Extension degrees 1, 2, ... are tried until the multiplicities add up to
    deg(c0) * deg(cinf); if ``max_ext_degree`` is reached first, the last
    (incomplete) answer is returned.
    """
    expected = spec.c0.degree * spec.cinf.degree
    result = None
    for m in range(1, max_ext_degree + 1):
        F = field(spec.field.p, m)
        f, g = spec.c0.embed(F), spec.cinf.embed(F)
        pts = tuple((pt, local_intersection_multiplicity(f, g, pt, bound)) for pt in _common_zeros([f, g], F))
        result = BaseLocus(m, pts)
        if result.total == expected:
            break
    return result


def label_points(spec: PencilSpec, pts: Sequence[PlanePoint], F: GF | None = None) -> list[str]:
    """Name points by the generating-point letters where they match, else by coordinates."""
    F = F or spec.field
    names = {tuple(v): k for k, v in spec.points.items()}
    return [names.get(tuple(p), format_point(F, p)) for p in pts]


__all__ = [
    "AffinePoly",
    "BaseLocus",
    "CubicForm",
    "PencilRow",
    "PencilSpec",
    "SingularityType",
    "TangentCone",
    "base_locus",
    "build_standard_pencil",
    "classify_singularity",
    "label_points",
    "line_through",
    "local_intersection_multiplicity",
    "scan_pencil",
    "singular_points",
    "tangent_line",
]
