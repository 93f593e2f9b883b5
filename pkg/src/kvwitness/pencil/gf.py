"""Finite fields F_{p^m} with elements encoded as small integers.

An element ``c_0 + c_1 w + ... + c_{m-1} w^{m-1}`` (``w`` a root of the
modulus) is stored as the integer ``c_0 + c_1 p + ... + c_{m-1} p^{m-1}``.  The
prime subfield is therefore the codes ``0..p-1`` in every extension, so forms
with F_p coefficients can be evaluated over any F_{p^m} without conversion.
"""

from __future__ import annotations

import itertools
from array import array
from functools import cached_property, lru_cache

from ..errors import BadCharacteristic


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    # polynomials as coefficient lists, lowest degree first; mod is monic
    a = a[:]
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _has_root_or_small_factor(mod: list[int], p: int) -> bool:
    m = len(mod) - 1
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(reversed(tail)) + [1]
            if not any(_poly_mod(mod, div, p)):
                return True
    return False


@lru_cache(maxsize=None)
def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree ``m`` over F_p.

    Candidates ``x^m + c_{m-1} x^{m-1} + ... + c_0`` are ordered by the tuple
    ``(c_{m-1}, ..., c_0)``.  Returned lowest-degree first, leading 1 included.
    """
    if m == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=m):
        mod = list(reversed(tail)) + [1]
        if mod[0] == 0:
            continue
        if not _has_root_or_small_factor(mod, p):
            return tuple(mod)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """The field F_{p^m}; use :func:`field` to get a cached instance."""

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise BadCharacteristic(f"{p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be at least 1")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = default_modulus(p, m)
        self._build_logs()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})"

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _from_digits(self, ds) -> int:
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    def _polymul(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self._from_digits(_poly_mod(prod, list(self.modulus), self.p))

    def _build_logs(self) -> None:
        q = self.q
        exp = [1]
        for g in range(1, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._polymul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                break
        self.generator = g
        self._exp = exp + exp
        self._log = [0] * q
        for i, x in enumerate(exp):
            self._log[x] = i

    # scalar arithmetic on codes
    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        return self._from_digits([-x % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        return n % self.p

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self._log[a] % 2 == 0

    def sqrt(self, a: int) -> int | None:
        """A square root of ``a`` in this field, or None."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        la = self._log[a]
        if la % 2:
            return None
        return self._exp[la // 2]

    def elements(self) -> range:
        return range(self.q)

    def format(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        terms = []
        for i, d in reversed(list(enumerate(self._digits(a)))):
            if d == 0:
                continue
            if i == 0:
                terms.append(str(d))
            else:
                mono = "w" if i == 1 else f"w^{i}"
                terms.append(mono if d == 1 else f"{d}{mono}")
        return "+".join(terms) if terms else "0"

    # flattened tables for the enumeration kernels
    @cached_property
    def add_table(self) -> array:
        q = self.q
        if self.m == 1:
            return array("q", [(a + b) % q for a in range(q) for b in range(q)])
        digits = [self._digits(a) for a in range(q)]
        p = self.p
        pw = [p**i for i in range(self.m)]
        out = array("q", bytes(8 * q * q))
        k = 0
        for a in range(q):
            da = digits[a]
            for b in range(q):
                db = digits[b]
                out[k] = sum(((x + y) % p) * w for x, y, w in zip(da, db, pw))
                k += 1
        return out

    @cached_property
    def mul_table(self) -> array:
        q = self.q
        out = array("q", bytes(8 * q * q))
        exp, log = self._exp, self._log
        for a in range(1, q):
            la = log[a]
            row = a * q
            for b in range(1, q):
                out[row + b] = exp[la + log[b]]
        return out


@lru_cache(maxsize=None)
def field(p: int, m: int = 1) -> GF:
    return GF(p, m)
