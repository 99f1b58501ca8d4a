"""Table-driven arithmetic in GF(p) and GF(p^2).

Elements are plain integers ("ids").  An element of GF(p^e) with
polynomial representative c0 + c1*x is stored as ``c0 + c1*p``, so the
ids 0 and 1 are the field's zero and one and GF(2) elements are literal
bits.  All tables are read-only numpy arrays, which lets the geometry
code evaluate forms on many vectors at once with fancy indexing.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import (
    NotPrime,
    NotSquareOrderField,
    OrderTooLarge,
    UnsupportedDegree,
    ZeroInverse,
)

MAX_ORDER = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            return (p, e) if q == 1 else None
    return None


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class FieldSpec:
    """The finite field GF(p^e) for e in {1, 2}.

    Use :func:`field_make` rather than instantiating directly; it caches
    instances so the same field object is shared everywhere.
    """

    __slots__ = ("p", "e", "order", "modulus", "add_table", "mul_table",
                 "neg_table", "inv_table", "conj_table", "_squares")

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        if e not in (1, 2):
            raise UnsupportedDegree(f"extension degree {e} not supported (only 1 or 2)")
        if p ** e > MAX_ORDER:
            raise OrderTooLarge(f"field order {p}**{e} exceeds {MAX_ORDER}")
        self.p = p
        self.e = e
        self.order = q = p ** e

        if e == 1:
            self.modulus: tuple[int, ...] = ()
        else:
            self.modulus = _smallest_irreducible_quadratic(p)

        digits = np.array([[(i // p ** k) % p for k in range(e)] for i in range(q)])
        weights = p ** np.arange(e)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights

        if e == 1:
            idx = np.arange(q)
            mul = (idx[:, None] * idx[None, :]) % p
        else:
            b, a, _ = self.modulus  # x^2 = -a*x - b
            c0, c1 = digits[:, 0], digits[:, 1]
            lo = c0[:, None] * c0[None, :]
            mid = c0[:, None] * c1[None, :] + c1[:, None] * c0[None, :]
            hi = c1[:, None] * c1[None, :]
            lo = (lo - b * hi) % p
            mid = (mid - a * hi) % p
            mul = lo + p * mid

        inv = np.zeros(q, dtype=np.intp)
        for x in range(1, q):
            (ys,) = np.nonzero(mul[x] == 1)
            inv[x] = ys[0]

        self.add_table = _frozen(add.astype(np.intp))
        self.mul_table = _frozen(mul.astype(np.intp))
        self.neg_table = _frozen(neg.astype(np.intp))
        self.inv_table = _frozen(inv)
        if e == 2:
            conj = np.array([self.pow(x, p) for x in range(q)], dtype=np.intp)
            self.conj_table = _frozen(conj)
        else:
            self.conj_table = None
        self._squares = None

    def __repr__(self) -> str:
        return f"GF({self.order})"

    def __reduce__(self):
        return (field_make, (self.p, self.e))

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def is_square_order(self) -> bool:
        return self.e == 2

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def _check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element id of {self!r}")
        return a

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[self._check(a), self._check(b)])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[self._check(a), self.neg_table[self._check(b)]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[self._check(a), self._check(b)])

    def neg(self, a: int) -> int:
        return int(self.neg_table[self._check(a)])

    def inv(self, a: int) -> int:
        if self._check(a) == 0:
            raise ZeroInverse(f"0 has no inverse in {self!r}")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        a = self._check(a)
        if k < 0:
            a, k = self.inv(a), -k
        result = 1
        while k:
            if k & 1:
                result = int(self.mul_table[result, a])
            a = int(self.mul_table[a, a])
            k >>= 1
        return result

    def conj(self, a: int) -> int:
        """Frobenius involution a -> a^p of GF(p^2)."""
        if self.conj_table is None:
            raise NotSquareOrderField(f"{self!r} has no conjugation (not of square order)")
        return int(self.conj_table[self._check(a)])

    def norm(self, a: int) -> int:
        return self.mul(a, self.conj(a))

    @property
    def nonzero_squares(self) -> frozenset[int]:
        if self._squares is None:
            sq = {int(self.mul_table[x, x]) for x in range(1, self.order)}
            self._squares = frozenset(sq)
        return self._squares

    def from_coeffs(self, coeffs) -> int:
        """Element id of the polynomial with the given coefficients, constant first."""
        coeffs = list(coeffs)
        if len(coeffs) > self.e:
            raise ValueError("too many coefficients")
        return sum((c % self.p) * self.p ** k for k, c in enumerate(coeffs))

    def to_coeffs(self, a: int) -> tuple[int, ...]:
        a = self._check(a)
        return tuple((a // self.p ** k) % self.p for k in range(self.e))


def _smallest_irreducible_quadratic(p: int) -> tuple[int, int, int]:
    # x^2 + a x + b, scanned with a as the leading key
    for a in range(p):
        for b in range(p):
            if all((x * x + a * x + b) % p for x in range(p)):
                return (b, a, 1)
    raise AssertionError("no irreducible quadratic found")


@lru_cache(maxsize=None)
def field_make(p: int, e: int = 1) -> FieldSpec:
    """Build (or fetch from cache) GF(p^e)."""
    return FieldSpec(int(p), int(e))


def field_of_order(q: int) -> FieldSpec:
    pe = prime_power(q)
    if pe is None:
        raise NotPrime(f"{q} is not a prime power")
    return field_make(*pe)
