"""Closed-form parameters of the tangent-graph families and their Ramanujan analysis.

Everything here is exact integer arithmetic on formulas; nothing is
constructed.  ``build_family`` is the bridge to the geometric builders in
:mod:`polargraphs.graphs`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import InvalidArgs, InvalidFamilyArgs, OutOfLemmaRange
from .field import prime_power
from .spectral import SrgParams, VerdictClass


class Family(enum.Enum):
    NO_PLUS = "no+"
    NO_MINUS = "no-"
    NO_ODD = "no-odd"
    NU = "nu"

    @property
    def label(self) -> str:
        return {"no+": "NO+(2m,2)", "no-": "NO-(2m,2)",
                "no-odd": "NO(2m+1,2)", "nu": "NU(m,q^2)"}[self.value]


FAMILY_ALIASES = {
    "no+": Family.NO_PLUS, "noplus": Family.NO_PLUS,
    "no-": Family.NO_MINUS, "nominus": Family.NO_MINUS,
    "no-odd": Family.NO_ODD, "noodd": Family.NO_ODD,
    "gq": Family.NO_ODD, "gamma-q": Family.NO_ODD, "gamma-w": Family.NO_ODD,
    "nu": Family.NU,
}


def parse_family(name: str | Family) -> Family:
    if isinstance(name, Family):
        return name
    try:
        return FAMILY_ALIASES[name.lower()]
    except KeyError:
        raise InvalidFamilyArgs(f"unknown family {name!r}") from None


@dataclass(frozen=True)
class FamilyParams:
    n: int
    d: int
    lambda2: int | None
    lambda3: int | None
    epsilon: int
    degenerate: bool = False

    def eigenvalues(self) -> tuple[int, int] | None:
        if self.degenerate:
            return None
        return (max(self.lambda2, self.lambda3), min(self.lambda2, self.lambda3))


def _check(family: Family, m: int, q: int) -> None:
    if family is Family.NU:
        if m < 2:
            raise InvalidFamilyArgs(f"NU(m, q^2) needs m >= 2, got {m}")
        if prime_power(q) is None:
            raise InvalidFamilyArgs(f"NU(m, q^2) needs a prime power q, got {q}")
    else:
        if m < 1:
            raise InvalidFamilyArgs(f"{family.label} needs m >= 1, got {m}")
        if q != 2:
            raise InvalidFamilyArgs(f"{family.label} is defined over GF(2) only, got q={q}")


def family_params(family: Family | str, m: int, q: int = 2) -> FamilyParams:
    family = parse_family(family)
    _check(family, m, q)
    if family in (Family.NO_PLUS, Family.NO_MINUS):
        eps = 1 if family is Family.NO_PLUS else -1
        n = 2 ** (2 * m - 1) - eps * 2 ** (m - 1)
        d = 2 ** (2 * m - 2) - 1
        if m == 1:
            return FamilyParams(n, d, None, None, eps, degenerate=True)
        return FamilyParams(n, d, eps * 2 ** (m - 2) - 1, -eps * 2 ** (m - 1) - 1, eps)
    if family is Family.NO_ODD:
        n = 2 ** (2 * m) - 1
        d = 2 ** (2 * m - 1) - 2
        if m == 1:
            return FamilyParams(n, d, None, None, 1, degenerate=True)
        return FamilyParams(n, d, -1 + 2 ** (m - 1), -1 - 2 ** (m - 1), 1)
    eps = (-1) ** m
    n = q ** (m - 1) * (q ** m - eps) // (q + 1)
    d = (q ** (m - 1) + eps) * (q ** (m - 2) - eps)
    if m == 2:
        # the smaller eigenvalue formula carries q^(m-3); here the graph is edgeless
        return FamilyParams(n, d, None, None, eps, degenerate=True)
    lam2 = eps * q ** (m - 2) - 1
    lam3 = -eps * q ** (m - 3) * (q * q - q - 1) - 1
    return FamilyParams(n, d, lam2, lam3, eps)


def family_srg(family: Family | str, m: int, q: int = 2) -> SrgParams:
    """SRG parameters implied by (n, d, r, s): lambda = d + r + s + rs, mu = d + rs."""
    p = family_params(family, m, q)
    if p.degenerate:
        raise InvalidFamilyArgs("degenerate instance has no SRG parameters")
    r, s = p.lambda2, p.lambda3
    return SrgParams(p.n, p.d, p.d + r + s + r * s, p.d + r * s)


class LambdaValue(NamedTuple):
    value: int
    lemma: bool


def lemma_lambda(family: Family | str, m: int, q: int = 2) -> int:
    """Second eigenvalue from the per-family closed forms."""
    family = parse_family(family)
    _check(family, m, q)
    if family is Family.NO_PLUS and m >= 2:
        return 2 ** (m - 1) + 1
    if family is Family.NO_MINUS and m == 2:
        return 2
    if family is Family.NO_MINUS and m >= 3:
        return 2 ** (m - 1) - 1
    if family is Family.NO_ODD and m >= 2:
        return 2 ** (m - 1) + 1
    if family is Family.NU and q == 2 and m > 2:
        return 2 ** (m - 2) - 1 if m % 2 == 0 else 2 ** (m - 2) + 1
    if family is Family.NU and q > 2 and m >= 3:
        return q ** (m - 3) * (q * q - q - 1) + (-1) ** m
    raise OutOfLemmaRange(f"no closed form for {family.label} at m={m}, q={q}")


def family_lambda(family: Family | str, m: int, q: int = 2) -> LambdaValue:
    """max(|lambda2|, |lambda3|); ``lemma`` says whether a closed form also covers it."""
    p = family_params(family, m, q)
    if p.degenerate:
        raise InvalidFamilyArgs("degenerate instance has no nontrivial eigenvalues")
    value = max(abs(p.lambda2), abs(p.lambda3))
    try:
        closed = lemma_lambda(family, m, q)
    except OutOfLemmaRange:
        return LambdaValue(value, False)
    if closed != value:
        raise AssertionError(f"closed form gives {closed}, eigenvalues give {value}")
    return LambdaValue(value, True)


def predict_verdict(family: Family | str, m: int, q: int = 2) -> VerdictClass:
    """Classification from the closed forms, by exact comparison of lambda^2 and 4(d-1)."""
    p = family_params(family, m, q)
    if p.degenerate or p.d <= 1:
        return VerdictClass.DEGENERATE
    bipartite = -p.d in (p.lambda2, p.lambda3)
    if bipartite:
        lam = abs(p.lambda2 if p.lambda3 == -p.d else p.lambda3)
    else:
        lam = max(abs(p.lambda2), abs(p.lambda3))
    if lam * lam <= 4 * (p.d - 1):
        return VerdictClass.BIPARTITE_RAMANUJAN if bipartite else VerdictClass.RAMANUJAN
    return VerdictClass.NON_RAMANUJAN


# (a, b, c) of a x^2 + b x + c >= 0 and the exponent offset k in x = 2^(m-k)
PROOF_POLYNOMIALS = {
    "no+": ((3, -2, -9), 1, 2),
    "no-": ((3, 2, -9), 1, 2),
    "no-odd": ((7, -2, -13), 1, 2),
    "nu-even": ((7, -2, -9), 2, 3),
    "nu-odd": ((7, 2, -9), 2, 3),
}


@dataclass(frozen=True)
class ProofInequality:
    kind: str
    m: int
    holds: bool
    polynomial: str
    x: int
    value: int
    threshold: float


def _poly_str(a: int, b: int, c: int) -> str:
    sb = "+" if b >= 0 else "-"
    sc = "+" if c >= 0 else "-"
    return f"{a}x^2 {sb} {abs(b)}x {sc} {abs(c)} >= 0"


def positive_root(a: int, b: int, c: int, digits: int = 12) -> float:
    """Largest real root of a x^2 + b x + c, via an integer square root of the discriminant."""
    disc = b * b - 4 * a * c
    if disc < 0:
        raise ValueError("no real roots")
    r = math.isqrt(disc)
    if r * r == disc:
        root = Fraction(-b + r, 2 * a)
    else:
        scale = 10 ** digits
        root = Fraction(-b * scale + math.isqrt(disc * scale * scale), 2 * a * scale)
    return float(root)


def proof_kind(family: Family | str, m: int) -> str:
    family = parse_family(family)
    if family is Family.NU:
        return "nu-even" if m % 2 == 0 else "nu-odd"
    return family.value


def proof_inequality(kind: Family | str, m: int) -> ProofInequality:
    """Evaluate the quadratic that the bound lambda <= 2 sqrt(d-1) reduces to."""
    if isinstance(kind, Family) or kind in FAMILY_ALIASES:
        kind = proof_kind(kind, m)
    if kind not in PROOF_POLYNOMIALS:
        raise InvalidFamilyArgs(f"unknown inequality {kind!r}")
    (a, b, c), k, m_min = PROOF_POLYNOMIALS[kind]
    if m < m_min:
        raise InvalidFamilyArgs(f"{kind} inequality needs m >= {m_min}, got {m}")
    if kind == "nu-even" and m % 2 or kind == "nu-odd" and m % 2 == 0:
        raise InvalidFamilyArgs(f"{kind} does not apply to m={m}")
    x = 2 ** (m - k)
    value = a * x * x + b * x + c
    return ProofInequality(kind, m, value >= 0, _poly_str(a, b, c), x, value,
                           positive_root(a, b, c))


def remark_polynomial(m: int, q: int, eps: int | None = None) -> int:
    """Left side of the large-q unitary inequality (<= 0 iff the bound holds)."""
    if m < 3 or q < 2:
        raise InvalidArgs(f"needs m >= 3 and q >= 2, got m={m}, q={q}")
    if eps is None:
        eps = (-1) ** m
    if eps not in (1, -1):
        raise InvalidArgs("eps must be +1 or -1")
    return (q ** (2 * m - 2) - 6 * q ** (2 * m - 3) - q ** (2 * m - 4) + 2 * q ** (2 * m - 5)
            + q ** (2 * m - 6) + eps * 6 * q ** (m - 1) - eps * 6 * q ** (m - 2)
            - eps * 2 * q ** (m - 3) + 8)


def remark_gap(m: int, q: int) -> int:
    """(q^(m-3)(q^2-q-1) + eps)^2 - 4(d-1), computed directly from the parameters."""
    if m < 3 or q < 2:
        raise InvalidArgs(f"needs m >= 3 and q >= 2, got m={m}, q={q}")
    eps = (-1) ** m
    d = (q ** (m - 1) + eps) * (q ** (m - 2) - eps)
    lam = q ** (m - 3) * (q * q - q - 1) + eps
    return lam * lam - 4 * (d - 1)


def prime_powers(lo: int, hi: int) -> list[int]:
    return [q for q in range(lo, hi + 1) if prime_power(q) is not None]


def remark_q0(m: int, q_max: int = 16) -> int | None:
    """Smallest q0 such that every prime power q in [q0, q_max] makes the polynomial positive."""
    qs = prime_powers(2, q_max)
    q0 = None
    for q in reversed(qs):
        if remark_polynomial(m, q) > 0:
            q0 = q
        else:
            break
    return q0


def build_family(family: Family | str, m: int, q: int = 2):
    """Construct the graph of one family instance from the geometry."""
    from . import graphs

    family = parse_family(family)
    _check(family, m, q)
    if family is Family.NO_PLUS:
        return graphs.build_no_even(m, 1)
    if family is Family.NO_MINUS:
        return graphs.build_no_even(m, -1)
    if family is Family.NO_ODD:
        return graphs.build_no_odd(m)
    return graphs.build_nu(m, q)
