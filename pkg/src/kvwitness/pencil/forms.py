"""Homogeneous forms in x, y, z and affine polynomials in u, v over a GF."""

from __future__ import annotations

from array import array
from math import comb
from typing import Mapping, NamedTuple, Sequence

from .gf import GF

Exponent = tuple[int, int, int]


class PlanePoint(NamedTuple):
    """Homogeneous coordinates (as field codes), last nonzero coordinate 1."""

    x: int
    y: int
    z: int


def normalize_point(F: GF, coords: Sequence[int]) -> PlanePoint:
    coords = list(coords)
    k = max((i for i, c in enumerate(coords) if c), default=None)
    if k is None:
        raise ValueError("the zero vector is not a projective point")
    s = F.inv(coords[k])
    return PlanePoint(*(F.mul(c, s) for c in coords))


def point_from_ints(F: GF, coords: Sequence[int]) -> PlanePoint:
    return normalize_point(F, [F.from_int(c) for c in coords])


def format_point(F: GF, pt: Sequence[int]) -> str:
    return "[" + ":".join(F.format(c) for c in pt) + "]"


def monomials(degree: int) -> list[Exponent]:
    """Exponent triples of the given degree, x-major descending (x^d first)."""
    return [(i, j, degree - i - j) for i in range(degree, -1, -1) for j in range(degree - i, -1, -1)]


class Form:
    """Homogeneous polynomial; ``coeffs`` maps exponent triples to nonzero codes."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, F: GF, degree: int, coeffs: Mapping[Exponent, int]):
        for e in coeffs:
            if sum(e) != degree:
                raise ValueError(f"monomial {e} is not of degree {degree}")
        self.field = F
        self.degree = degree
        self.coeffs: dict[Exponent, int] = {e: c for e, c in coeffs.items() if c}

    @classmethod
    def from_ints(cls, F: GF, degree: int, coeffs: Mapping[Exponent, int]) -> "Form":
        return cls(F, degree, {e: F.from_int(c) for e, c in coeffs.items()})

    @classmethod
    def linear(cls, F: GF, a: int, b: int, c: int) -> "Form":
        return cls(F, 1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient_vector(self) -> tuple[int, ...]:
        return tuple(self.coeffs.get(e, 0) for e in monomials(self.degree))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (self.field.p, self.field.m) == (other.field.p, other.field.m) and self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.degree, tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        return f"Form({self})"

    def __str__(self) -> str:
        F = self.field
        parts = []
        for e in monomials(self.degree):
            c = self.coeffs.get(e)
            if not c:
                continue
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip("xyz", e) if k
            )
            coef = F.format(c)
            if not mono:
                parts.append(coef)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{coef}*{mono}" if F.m == 1 else f"({coef})*{mono}")
        return " + ".join(parts) if parts else "0"

    def embed(self, F: GF) -> "Form":
        """Same form over an extension of the prime field (coefficients must be in F_p)."""
        if F.p != self.field.p:
            raise ValueError("characteristics differ")
        if any(c >= F.p for c in self.coeffs.values()) and F is not self.field:
            raise ValueError("only forms with prime-field coefficients can be re-embedded")
        return Form(F, self.degree, self.coeffs)

    def __add__(self, other: "Form") -> "Form":
        if other.degree != self.degree:
            raise ValueError("degrees differ")
        F = self.field
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = F.add(out.get(e, 0), c)
        return Form(F, self.degree, out)

    def scale(self, k: int) -> "Form":
        F = self.field
        return Form(F, self.degree, {e: F.mul(k, c) for e, c in self.coeffs.items()})

    def __mul__(self, other: "Form") -> "Form":
        F = self.field
        out: dict[Exponent, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
        return Form(F, self.degree + other.degree, out)

    def partial(self, var: int) -> "Form":
        F = self.field
        out: dict[Exponent, int] = {}
        for e, c in self.coeffs.items():
            if e[var] == 0:
                continue
            d = list(e)
            d[var] -= 1
            out[tuple(d)] = F.add(out.get(tuple(d), 0), F.mul(F.from_int(e[var]), c))
        return Form(F, max(self.degree - 1, 0), out)

    def gradient(self) -> tuple["Form", "Form", "Form"]:
        return self.partial(0), self.partial(1), self.partial(2)

    def evaluate(self, pt: Sequence[int]) -> int:
        F = self.field
        acc = 0
        for (i, j, k), c in self.coeffs.items():
            v = F.mul(F.mul(F.pow(pt[0], i), F.pow(pt[1], j)), F.pow(pt[2], k))
            acc = F.add(acc, F.mul(c, v))
        return acc

    def substitute_linear(self, M: Sequence[Sequence[int]]) -> "Form":
        """The form ``v -> f(M v)`` for a 3x3 matrix of field codes."""
        F = self.field
        rows = [Form.linear(F, *M[r]) for r in range(3)]
        out = Form(F, self.degree, {})
        for (i, j, k), c in self.coeffs.items():
            term = Form(F, 0, {(0, 0, 0): c})
            for lin, n in zip(rows, (i, j, k)):
                for _ in range(n):
                    term = term * lin
            out = out + term
        return out

    def packed_terms(self) -> list[int]:
        out = []
        for (i, j, k), c in sorted(self.coeffs.items()):
            out.extend((i, j, k, c))
        return out

    def local_expansion(self, pt: PlanePoint) -> "AffinePoly":
        """Expand in the affine chart of ``pt`` with ``pt`` moved to the origin.

        The chart is the one where the last nonzero coordinate of ``pt`` is 1;
        the other two coordinates become ``pt_i + u`` and ``pt_j + v``.
        """
        F = self.field
        k = max(i for i, c in enumerate(pt) if c)
        i, j = [a for a in range(3) if a != k]

        def shifted(c: int, n: int) -> dict[int, int]:
            # (c + t)^n as {power of t: coefficient}
            return {r: F.mul(F.from_int(comb(n, r)), F.pow(c, n - r)) for r in range(n + 1)}

        out: dict[tuple[int, int], int] = {}
        for e, c in self.coeffs.items():
            su = shifted(pt[i], e[i])
            sv = shifted(pt[j], e[j])
            for a, ca in su.items():
                if not ca:
                    continue
                for b, cb in sv.items():
                    if cb:
                        out[(a, b)] = F.add(out.get((a, b), 0), F.mul(c, F.mul(ca, cb)))
        return AffinePoly(F, out)


class AffinePoly:
    """Polynomial in u, v; ``coeffs`` maps (a, b) to nonzero codes."""

    __slots__ = ("field", "coeffs")

    def __init__(self, F: GF, coeffs: Mapping[tuple[int, int], int]):
        self.field = F
        self.coeffs = {e: c for e, c in coeffs.items() if c}

    def homogeneous_part(self, d: int) -> dict[tuple[int, int], int]:
        return {e: c for e, c in self.coeffs.items() if e[0] + e[1] == d}

    def constant(self) -> int:
        return self.coeffs.get((0, 0), 0)

    def shifted_monomial(self, a: int, b: int, below: int) -> dict[tuple[int, int], int]:
        """``u^a v^b * self`` truncated to total degree < ``below``."""
        out = {}
        for (i, j), c in self.coeffs.items():
            if i + j + a + b < below:
                out[(i + a, j + b)] = c
        return out

    def evaluate_part(self, d: int, u: int, v: int) -> int:
        F = self.field
        acc = 0
        for (a, b), c in self.homogeneous_part(d).items():
            acc = F.add(acc, F.mul(c, F.mul(F.pow(u, a), F.pow(v, b))))
        return acc


def pack_forms(forms: Sequence[Form]) -> tuple[array, array]:
    terms: list[int] = []
    offsets = [0]
    for f in forms:
        terms.extend(f.packed_terms())
        offsets.append(len(terms) // 4)
    return array("q", terms), array("q", offsets)
