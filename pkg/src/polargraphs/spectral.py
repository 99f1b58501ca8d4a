"""Strongly regular certificates, spectra, Ramanujan verdicts, mixing checks."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import (
    DegenerateGraph,
    DisconnectedSpectrum,
    InfeasibleParams,
    NoConvergence,
    NotRegular,
    NotStronglyRegular,
    TooLargeForNumeric,
)
from .graphs import Graph, is_bipartite, is_connected

NUMERIC_MAX_N = 1500
JACOBI_MAX_N = 256
JACOBI_TOL = 1e-10
JACOBI_MAX_SWEEPS = 100
GROUP_TOL = 1e-6
FLOAT_TOL = 1e-9


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write n = k^2 * r with r squarefree; returns (k, r)."""
    k, r = 1, 1
    f = 2
    while f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
            k *= f
        if n % f == 0:
            n //= f
            r *= f
        f += 1
    return k, r * n


@dataclass(frozen=True)
class QuadraticSurd:
    """Exact number ``a + b * sqrt(r)`` with rational a, b and squarefree r > 1."""

    a: Fraction
    b: Fraction
    r: int

    @classmethod
    def make(cls, a, b, radicand: int) -> Union[int, Fraction, "QuadraticSurd"]:
        a, b = Fraction(a), Fraction(b)
        k, r = _squarefree_split(radicand)
        b *= k
        if b == 0 or r == 1:
            val = a + b
            return int(val) if val.denominator == 1 else val
        return cls(a, b, r)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.r)

    def _sign(self) -> int:
        # sign of a + b sqrt(r) without floating point
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        if sb == 0:
            return sa
        lhs = self.a * self.a
        rhs = self.b * self.b * self.r
        return sa if lhs > rhs else sb

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.r)

    def __abs__(self):
        return -self if self._sign() < 0 else self

    def _cmp(self, other) -> int:
        if isinstance(other, QuadraticSurd):
            if other.r != self.r:
                return (float(self) > float(other)) - (float(self) < float(other))
            d = QuadraticSurd.make(self.a - other.a, self.b - other.b, self.r)
        else:
            d = QuadraticSurd.make(self.a - Fraction(other), self.b, self.r)
        if isinstance(d, QuadraticSurd):
            return d._sign()
        return (d > 0) - (d < 0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadraticSurd)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.r))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __str__(self) -> str:
        den = math.lcm(self.a.denominator, self.b.denominator)
        a, b = int(self.a * den), int(self.b * den)
        sgn = "+" if b > 0 else "-"
        coef = "" if abs(b) == 1 else f"{abs(b)}*"
        body = f"{a}{sgn}{coef}sqrt({self.r})" if a else f"{'-' if b < 0 else ''}{coef}sqrt({self.r})"
        return f"({body})/{den}" if den != 1 else body


Value = Union[int, Fraction, QuadraticSurd, float]


@dataclass(frozen=True)
class SrgParams:
    n: int
    d: int
    lambda_common: int
    mu_common: int

    def feasible(self) -> bool:
        n, d, lam, mu = self.n, self.d, self.lambda_common, self.mu_common
        return d * (d - lam - 1) == (n - d - 1) * mu

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.d, self.lambda_common, self.mu_common)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset as ``(value, multiplicity)`` pairs, largest value first."""

    entries: tuple[tuple[Value, int], ...]
    exact: bool

    @property
    def n(self) -> int:
        return sum(m for _, m in self.entries)

    def values(self) -> list[Value]:
        return [v for v, _ in self.entries]

    def as_dict(self) -> dict:
        return dict(self.entries)

    def flat(self) -> np.ndarray:
        return np.array([float(v) for v, k in self.entries for _ in range(k)])

    def __str__(self) -> str:
        return "{" + ", ".join(f"{v}^{k}" for v, k in self.entries) + "}"


class VerdictClass(enum.Enum):
    DEGENERATE = "Degenerate"
    RAMANUJAN = "Ramanujan"
    BIPARTITE_RAMANUJAN = "BipartiteRamanujan"
    NON_RAMANUJAN = "NonRamanujan"


@dataclass(frozen=True)
class RamanujanVerdict:
    cls: VerdictClass
    lam: Value | None
    bound: float | None
    margin: float | None


@dataclass(frozen=True)
class MixingReport:
    samples: int
    max_excess: float
    violations: int
    seed: int

    def __str__(self) -> str:
        return (f"samples: {self.samples}\nmax_excess: {self.max_excess:.12g}\n"
                f"violations: {self.violations}\nseed: {self.seed}")


def srg_params(G: Graph) -> SrgParams:
    """Certify strong regularity by counting common neighbours of every pair."""
    d = G.regular_degree()
    if d is None:
        raise NotRegular(f"{G!r} is not regular")
    n = G.n
    if not (0 < d < n - 1) or not is_connected(G):
        raise DegenerateGraph(f"{G!r} is empty, complete or disconnected")
    rows = G.rows
    adj = G.dense()
    lam = mu = None
    chunk = max(1, (1 << 22) // max(1, rows.size))
    for s in range(0, n, chunk):
        block = rows[s:s + chunk]
        k = len(block)
        common = np.bitwise_count(block[:, None, :] & rows[None, :, :]).sum(axis=2, dtype=np.int64)
        a = adj[s:s + chunk]
        na = ~a
        na[np.arange(k), s + np.arange(k)] = False
        if lam is None:
            lam = int(common[a][0])
            mu = int(common[na][0])
        for mask, want, what in ((a, lam, "adjacent"), (na, mu, "non-adjacent")):
            bad = mask & (common != want)
            if bad.any():
                i, j = (int(x) for x in np.argwhere(bad)[0])
                raise NotStronglyRegular(
                    f"{what} pair {(s + i, j)} has {common[i, j]} common neighbours, not {want}",
                    witness=(s + i, j))
    return SrgParams(n, d, lam, mu)


def verify_srg_identity(G: Graph, params: SrgParams) -> bool:
    """Check A^2 = dI + lambda A + mu (J - I - A) entrywise in integers."""
    n = G.n
    if params.n != n:
        return False
    # every partial sum of A @ A is an integer <= n < 2**24, exact in float32
    dtype = np.float32 if n < (1 << 24) else np.float64
    A = G.dense(dtype)
    A2 = np.rint(A @ A).astype(np.int64)
    Ai = A.astype(np.int64)
    expect = params.mu_common * (1 - Ai) + params.lambda_common * Ai
    np.fill_diagonal(expect, params.d)
    return bool(np.array_equal(A2, expect))


def srg_spectrum(params: SrgParams) -> Spectrum:
    """Exact spectrum {d^1, r^f, s^g} of a strongly regular graph."""
    if not params.feasible():
        raise InfeasibleParams(f"{params.astuple()} violates d(d-lambda-1) = (n-d-1)mu")
    n, d, lam, mu = params.astuple()
    disc = (lam - mu) ** 2 + 4 * (d - mu)
    if disc <= 0:
        raise InfeasibleParams("nontrivial eigenvalues coincide")
    root = math.isqrt(disc)
    if root * root == disc:
        r = (lam - mu + root) // 2
        s = (lam - mu - root) // 2
        num = -d - (n - 1) * s
        if num % (r - s):
            raise InfeasibleParams(f"non-integral multiplicity for {params.astuple()}")
        f = num // (r - s)
        g = n - 1 - f
        if f < 0 or g < 0:
            raise InfeasibleParams(f"negative multiplicity for {params.astuple()}")
        entries = [(d, 1)] + [(v, k) for v, k in ((r, f), (s, g)) if k]
        return Spectrum(tuple(entries), exact=True)
    # conference case: irrational eigenvalues need equal multiplicities
    if (n - 1) % 2 or (n - 1) * (lam - mu) + 2 * d != 0:
        raise InfeasibleParams(f"irrational eigenvalues with unequal multiplicities for {params.astuple()}")
    f = (n - 1) // 2
    half = Fraction(lam - mu, 2)
    r = QuadraticSurd.make(half, Fraction(1, 2), disc)
    s = QuadraticSurd.make(half, Fraction(-1, 2), disc)
    return Spectrum(((d, 1), (r, f), (s, f)), exact=True)


def jacobi_eigenvalues(A: np.ndarray, tol: float = JACOBI_TOL,
                       max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Each sweep uses round-robin ordering, so the n/2 rotations of one
    round act on disjoint index pairs and are applied together.
    """
    A = np.array(A, dtype=np.float64)
    n = A.shape[0]
    if n <= 1:
        return A.diagonal().copy()
    m = n + (n % 2)
    players = list(range(m))
    tiny = tol / (n * n)
    for _ in range(max_sweeps):
        diag = A.diagonal().copy()
        np.fill_diagonal(A, 0.0)
        off = float(np.sqrt((A * A).sum()))
        np.fill_diagonal(A, diag)
        if off < tol:
            return np.sort(A.diagonal())
        for _ in range(m - 1):
            P = np.array(players[: m // 2])
            Q = np.array(players[m // 2:][::-1])
            keep = (P < n) & (Q < n)
            P, Q = P[keep], Q[keep]
            apq = A[P, Q]
            active = np.abs(apq) > tiny
            if active.any():
                P, Q, apq = P[active], Q[active], apq[active]
                tau = (A[Q, Q] - A[P, P]) / (2.0 * apq)
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp, rq = A[P, :], A[Q, :]
                A[P, :] = c[:, None] * rp - s[:, None] * rq
                A[Q, :] = s[:, None] * rp + c[:, None] * rq
                cp, cq = A[:, P], A[:, Q]
                A[:, P] = cp * c[None, :] - cq * s[None, :]
                A[:, Q] = cp * s[None, :] + cq * c[None, :]
                A[P, Q] = 0.0
                A[Q, P] = 0.0
            players = [players[0], players[-1]] + players[1:-1]
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")


def group_eigenvalues(values, tol: float = GROUP_TOL) -> Spectrum:
    vals = sorted((float(v) for v in values), reverse=True)
    entries: list[list] = []
    for v in vals:
        if entries and abs(entries[-1][2] - v) <= tol:
            entries[-1][0] += v
            entries[-1][1] += 1
            entries[-1][2] = v
        else:
            entries.append([v, 1, v])
    return Spectrum(tuple((s / k, k) for s, k, _ in entries), exact=False)


def numeric_spectrum(G: Graph, method: str = "auto") -> Spectrum:
    """Floating-point spectrum, grouped into multiplicity classes.

    ``method`` is ``"jacobi"``, ``"lapack"`` or ``"auto"`` (Jacobi up to
    ``JACOBI_MAX_N`` vertices, LAPACK ``eigvalsh`` beyond).
    """
    if G.n > NUMERIC_MAX_N:
        raise TooLargeForNumeric(f"{G.n} vertices exceeds the numeric limit {NUMERIC_MAX_N}")
    if method == "auto":
        method = "jacobi" if G.n <= JACOBI_MAX_N else "lapack"
    A = G.dense(np.float64)
    if method == "jacobi":
        vals = jacobi_eigenvalues(A)
    elif method == "lapack":
        vals = np.linalg.eigvalsh(A)
    else:
        raise ValueError(f"unknown method {method!r}")
    return group_eigenvalues(vals)


def _close(a: Value, b: Value, exact: bool) -> bool:
    if exact:
        return a == b
    return abs(float(a) - float(b)) <= GROUP_TOL


def second_eigenvalue(spectrum: Spectrum, bipartite: bool = False) -> Value:
    """max |eigenvalue| after dropping one copy of d (and of -d in bipartite mode)."""
    if not spectrum.entries:
        raise ValueError("empty spectrum")
    top, mult = spectrum.entries[0]
    if mult != 1:
        raise DisconnectedSpectrum(f"top eigenvalue {top} has multiplicity {mult}")
    rest = [[v, k] for v, k in spectrum.entries[1:]]
    if bipartite:
        for e in rest:
            if _close(e[0], -top, spectrum.exact) and e[1]:
                e[1] -= 1
                break
    remaining = [abs(v) for v, k in rest if k > 0]
    if not remaining:
        return 0
    return max(remaining, key=float)


def _is_integral(v: Value) -> bool:
    if isinstance(v, int):
        return True
    return isinstance(v, Fraction) and v.denominator == 1


def ramanujan_threshold(lam: Value, d: int) -> bool:
    """lam <= 2 sqrt(d - 1): exact for integers, 1e-9 tolerance otherwise."""
    if _is_integral(lam):
        lam = int(lam)
        return lam <= 0 or lam * lam <= 4 * (d - 1)
    return float(lam) <= 2.0 * math.sqrt(d - 1) + FLOAT_TOL


def exact_spectrum(G: Graph) -> tuple[Spectrum, SrgParams | None]:
    """Exact spectrum when one is certifiable (SRG, complete graph), else numeric."""
    d = G.regular_degree()
    if d == 0 and G.n >= 1:
        return Spectrum(((0, G.n),), exact=True), None
    if d is not None and G.n >= 1 and d == G.n - 1:
        entries = ((d, 1), (-1, d)) if d else ((0, 1),)
        return Spectrum(entries, exact=True), None
    try:
        params = srg_params(G)
    except (NotStronglyRegular, DegenerateGraph, NotRegular):
        return numeric_spectrum(G), None
    if not verify_srg_identity(G, params):
        raise AssertionError("common-neighbour counts and A^2 disagree")
    return srg_spectrum(params), params


def ramanujan_verdict(G: Graph, spectrum: Spectrum | None = None) -> RamanujanVerdict:
    d = G.regular_degree()
    if d is None:
        raise NotRegular(f"{G!r} is not regular; Ramanujan is defined for regular graphs")
    if d <= 1 or not is_connected(G):
        return RamanujanVerdict(VerdictClass.DEGENERATE, None, None, None)
    if spectrum is None:
        spectrum, _ = exact_spectrum(G)
    bip = is_bipartite(G)
    lam = second_eigenvalue(spectrum, bipartite=bip)
    bound = 2.0 * math.sqrt(d - 1)
    ok = ramanujan_threshold(lam, d)
    if ok:
        cls = VerdictClass.BIPARTITE_RAMANUJAN if bip else VerdictClass.RAMANUJAN
    else:
        cls = VerdictClass.NON_RAMANUJAN
    return RamanujanVerdict(cls, lam, bound, bound - float(lam))


def mixing_excess(G: Graph, lam: float, S: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Excess |e(S,T) - d|S||T|/n| - lam sqrt(...) for each row pair of masks.

    e(S, T) counts ordered pairs (u, v) with u in S, v in T and uv an
    edge, so edges inside S and T are counted twice.
    """
    d = G.regular_degree()
    n = G.n
    A = G.dense(np.float32)
    S = np.atleast_2d(S).astype(np.float32)
    T = np.atleast_2d(T).astype(np.float32)
    # row sums of S @ A are at most d, exact in float32
    e = ((S @ A) * T).sum(axis=1, dtype=np.float64)
    s = S.sum(axis=1, dtype=np.float64)
    t = T.sum(axis=1, dtype=np.float64)
    dev = np.abs(e - d * s * t / n)
    allowed = lam * np.sqrt(np.clip(s * t * (1 - s / n) * (1 - t / n), 0.0, None))
    return dev - allowed


def _random_nonempty_masks(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    masks = rng.integers(0, 2, size=(count, n), dtype=np.int8).astype(bool)
    empty = ~masks.any(axis=1)
    while empty.any():
        masks[empty] = rng.integers(0, 2, size=(int(empty.sum()), n), dtype=np.int8).astype(bool)
        empty = ~masks.any(axis=1)
    return masks


def mixing_test(G: Graph, lam: float, samples: int = 1000, seed: int = 0,
                batch: int = 250) -> MixingReport:
    """Sample random subset pairs and check the expander mixing inequality."""
    d = G.regular_degree()
    if d is None or d < 1 or not is_connected(G):
        raise DegenerateGraph(f"{G!r} must be connected and d-regular with d >= 1")
    rng = np.random.default_rng(seed)
    n = G.n
    worst = -math.inf
    violations = 0
    for start in range(0, samples, batch):
        k = min(batch, samples - start)
        S = _random_nonempty_masks(rng, k, n)
        T = _random_nonempty_masks(rng, k, n)
        excess = mixing_excess(G, float(lam), S, T)
        scale = 1.0 + d * S.sum(axis=1) * T.sum(axis=1) / n
        violations += int((excess > FLOAT_TOL * scale).sum())
        worst = max(worst, float(excess.max()))
    return MixingReport(samples, worst, violations, seed)


def _json_value(v: Value):
    if _is_integral(v):
        return int(v)
    return float(v)


@dataclass(frozen=True)
class Certificate:
    family: str
    m: int
    q: int
    n: int
    d: int
    srg: SrgParams | None
    spectrum: Spectrum
    verdict: RamanujanVerdict
    identity_verified: bool
    status: str = ""

    def to_dict(self) -> dict:
        v = self.verdict
        doc = {
            "family": self.family,
            "m": self.m,
            "q": self.q,
            "n": self.n,
            "d": self.d,
            "srg": ({"lambda": self.srg.lambda_common, "mu": self.srg.mu_common}
                    if self.srg else None),
            "spectrum": [{"value": _json_value(val), "multiplicity": k, "exact": self.spectrum.exact}
                         for val, k in self.spectrum.entries],
            "verdict": {
                "class": v.cls.value,
                "lambda": None if v.lam is None else _json_value(v.lam),
                "bound": v.bound,
                "margin": v.margin,
            },
            "identityVerified": self.identity_verified,
        }
        if self.status:
            doc["status"] = self.status
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        v = self.verdict
        lines = [
            f"family: {self.family}",
            f"m: {self.m}",
            f"q: {self.q}",
            f"n: {self.n}",
            f"d: {self.d}",
            f"srg: {self.srg.astuple() if self.srg else 'none'}",
            f"spectrum: {self.spectrum}",
            f"verdict: {v.cls.value}",
            f"lambda: {'none' if v.lam is None else v.lam}",
            f"bound: {'none' if v.bound is None else f'{v.bound:.6f}'}",
            f"margin: {'none' if v.margin is None else f'{v.margin:.6f}'}",
            f"identityVerified: {str(self.identity_verified).lower()}",
        ]
        if self.status:
            lines.append(f"status: {self.status}")
        return "\n".join(lines) + "\n"
