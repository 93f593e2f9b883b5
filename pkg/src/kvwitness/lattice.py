"""Picard lattices of rational surfaces obtained from P^2 by point blow-ups.

Classes are written in the pullback basis ``(h, e_1, ..., e_n)``: ``h`` is the
pullback of a line and ``e_i`` the total transform of the i-th exceptional
curve.  In that basis the intersection form is always ``diag(1, -1, ..., -1)``,
so a blow-up only appends a coordinate.  Strict transforms are tracked by
subtracting ``m * e`` from every curve of multiplicity ``m`` at the centre.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import DimensionMismatch, DuplicateCurve, NonPrimeTerm, UnknownCurve
from .qla import QMatrix, QVector, Scalar, rational

ClassVector = QVector

#: Reserved divisor term standing for the canonical class of the surface.
CANONICAL = "K"


class Divisor(Mapping[str, Fraction]):
    """Formal Q-linear combination of named curves.

    The term ``CANONICAL`` may appear and stands for the canonical class; it is
    not a prime divisor, so rounding refuses it.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[str, Scalar] | Iterable[tuple[str, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[str, Fraction] = {}
        for name, c in items:
            c = c if type(c) is Fraction else rational(c)
            acc[name] = acc[name] + c if name in acc else c
        self._terms = tuple(sorted((n, c) for n, c in acc.items() if c != 0))

    @classmethod
    def curve(cls, name: str, coefficient: Scalar = 1) -> "Divisor":
        return cls({name: coefficient})

    def __getitem__(self, name: str) -> Fraction:
        for n, c in self._terms:
            if n == name:
                return c
        raise KeyError(name)

    def coefficient(self, name: str) -> Fraction:
        return dict(self._terms).get(name, Fraction(0))

    def __iter__(self) -> Iterator[str]:
        return (n for n, _ in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Divisor):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._terms)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(list(self._terms) + list(other._terms))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __neg__(self) -> "Divisor":
        return Divisor((n, -c) for n, c in self._terms)

    def __mul__(self, k: Scalar) -> "Divisor":
        k = rational(k)
        return Divisor((n, k * c) for n, c in self._terms)

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self._terms)

    def restrict(self, names: Iterable[str]) -> "Divisor":
        keep = set(names)
        return Divisor((n, c) for n, c in self._terms if n in keep)

    def drop(self, names: Iterable[str]) -> "Divisor":
        gone = set(names)
        return Divisor((n, c) for n, c in self._terms if n not in gone)

    def __repr__(self) -> str:
        return f"Divisor({format_divisor(self)!r})"


def format_divisor(d: Divisor) -> str:
    if not len(d):
        return "0"
    parts = []
    for name, c in d.items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        coef = "" if mag == 1 else f"{mag}*"
        parts.append(f"{sign} {coef}{name}")
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass(frozen=True)
class TrackedCurve:
    name: str
    cls: ClassVector
    is_prime: bool = True


@dataclass(frozen=True)
class BlowUpRecord:
    """One point blow-up.

    ``center_multiplicities`` gives the multiplicity at the blown-up point of
    every tracked curve passing through it.  A point on an earlier exceptional
    curve (an infinitely near point) is named by giving that curve a positive
    multiplicity.
    """

    new_class_name: str
    center_multiplicities: Mapping[str, int] = field(default_factory=dict)
    curve_name: str | None = None
    stage: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "center_multiplicities", MappingProxyType(dict(self.center_multiplicities)))
        if self.curve_name is None:
            n = self.new_class_name
            object.__setattr__(self, "curve_name", n[:1].upper() + n[1:])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlowUpRecord):
            return NotImplemented
        return (
            self.new_class_name == other.new_class_name
            and dict(self.center_multiplicities) == dict(other.center_multiplicities)
            and self.curve_name == other.curve_name
            and self.stage == other.stage
        )

    def __hash__(self) -> int:
        return hash((self.new_class_name, tuple(sorted(self.center_multiplicities.items())), self.curve_name))


@dataclass(frozen=True)
class SurfaceModel:
    basis_names: tuple[str, ...]
    canonical: ClassVector
    curves: tuple[TrackedCurve, ...] = ()
    history: tuple[BlowUpRecord, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.basis_names)

    @property
    def gram(self) -> QMatrix:
        return QMatrix.diagonal([1] + [-1] * (self.rank - 1))

    @cached_property
    def _by_name(self) -> dict[str, TrackedCurve]:
        return {c.name: c for c in self.curves}

    def has_curve(self, name: str) -> bool:
        return name in self._by_name

    def curve(self, name: str) -> TrackedCurve:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownCurve(name) from None

    @property
    def curve_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.curves)

    def basis_vector(self, name: str) -> ClassVector:
        return QVector.unit(self.rank, self.basis_names.index(name))

    def zero(self) -> ClassVector:
        return QVector.zeros(self.rank)


def new_projective_plane() -> SurfaceModel:
    return SurfaceModel(basis_names=("h",), canonical=QVector([-3]))


def register_curve(s: SurfaceModel, name: str, cls: ClassVector | Iterable[Scalar], is_prime: bool = True) -> SurfaceModel:
    """Return ``s`` with one more tracked curve of the given class."""
    if name == CANONICAL:
        raise ValueError(f"{CANONICAL!r} is reserved for the canonical class")
    if s.has_curve(name):
        raise DuplicateCurve(f"curve {name!r} already registered")
    cls = cls if isinstance(cls, QVector) else QVector(cls)
    if len(cls) != s.rank:
        raise DimensionMismatch(f"class of {name!r} has length {len(cls)}, surface has rank {s.rank}")
    return SurfaceModel(s.basis_names, s.canonical, s.curves + (TrackedCurve(name, cls, is_prime),), s.history)


def register_plane_curve(s: SurfaceModel, name: str, degree: int, is_prime: bool = True) -> SurfaceModel:
    """Register a plane curve of the given degree; only meaningful before any blow-up."""
    if s.history:
        raise ValueError("plane curves must be registered before the first blow-up")
    return register_curve(s, name, QVector([degree]), is_prime)


def blow_up(s: SurfaceModel, record: BlowUpRecord) -> SurfaceModel:
    for name, m in record.center_multiplicities.items():
        if not s.has_curve(name):
            raise UnknownCurve(name, f"centre of blow-up {record.new_class_name!r}")
        if int(m) != m or m < 0:
            raise ValueError(f"multiplicity of {name!r} must be a non-negative integer, got {m}")
    if record.new_class_name in s.basis_names:
        raise DuplicateCurve(f"basis class {record.new_class_name!r} already exists")
    if s.has_curve(record.curve_name):
        raise DuplicateCurve(f"curve {record.curve_name!r} already registered")

    def extend(v: QVector, last: int) -> QVector:
        return QVector(list(v) + [last])

    curves = tuple(
        TrackedCurve(c.name, extend(c.cls, -int(record.center_multiplicities.get(c.name, 0))), c.is_prime)
        for c in s.curves
    )
    rank = s.rank + 1
    exceptional = TrackedCurve(record.curve_name, QVector.unit(rank, rank - 1), True)
    return SurfaceModel(
        basis_names=s.basis_names + (record.new_class_name,),
        canonical=extend(s.canonical, 1),
        curves=curves + (exceptional,),
        history=s.history + (record,),
    )


def intersect(s: SurfaceModel, a: ClassVector, b: ClassVector) -> Fraction:
    if len(a) != s.rank or len(b) != s.rank:
        raise DimensionMismatch(f"classes of length {len(a)}, {len(b)} on a rank-{s.rank} surface")
    # diag(1, -1, ..., -1) without materialising the matrix
    ea, eb = a.entries, b.entries
    out = ea[0] * eb[0]
    for i in range(1, len(ea)):
        if ea[i] and eb[i]:
            out -= ea[i] * eb[i]
    return out


def self_intersection(s: SurfaceModel, c: ClassVector) -> Fraction:
    return intersect(s, c, c)


def canonical_square(s: SurfaceModel) -> Fraction:
    return intersect(s, s.canonical, s.canonical)


def arithmetic_genus(s: SurfaceModel, c: ClassVector) -> Fraction:
    return 1 + (intersect(s, c, c) + intersect(s, s.canonical, c)) / 2


def divisor_class(s: SurfaceModel, d: Divisor) -> ClassVector:
    # classes are sparse, so accumulate coordinatewise and skip zeros
    acc = [Fraction(0)] * s.rank
    for name, coef in d.items():
        v = s.canonical if name == CANONICAL else s.curve(name).cls
        for i, x in enumerate(v.entries):
            if x:
                acc[i] += coef * x
    return QVector(acc)


def floor_divisor(s: SurfaceModel, d: Divisor) -> Divisor:
    for name in d:
        if name == CANONICAL or not s.curve(name).is_prime:
            raise NonPrimeTerm(f"cannot round the coefficient of non-prime term {name!r}")
    return Divisor((name, math.floor(c)) for name, c in d.items())


def intersection_table(s: SurfaceModel, names: Iterable[str] | None = None) -> dict[str, dict[str, Fraction]]:
    """All pairwise intersections among the named (default: all) tracked curves."""
    names = list(s.curve_names if names is None else names)
    classes = {n: s.curve(n).cls for n in names}
    return {a: {b: intersect(s, classes[a], classes[b]) for b in names} for a in names}
