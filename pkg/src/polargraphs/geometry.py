"""Projective spaces PG(N, q), polar forms and line classification.

Points are stored once per space as an integer array of coordinate ids
(one row per point).  The enumeration order groups points by the
position of their leading one (leftmost first) and is lexicographic
within a group, so ``(1, 0, ..., 0)`` is always point 0 and the index of
a canonical vector can be computed arithmetically.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    EqualPoints,
    HermitianNotPolarizable,
    InvalidForm,
    NotParabolicBinary,
    RadicalNotOneDimensional,
)
from .field import FieldSpec

MAX_POINTS = 1 << 20


class ProjectiveSpace:
    """PG(N, q) with all points enumerated up front."""

    def __init__(self, field: FieldSpec, N: int):
        if N < 1:
            raise ValueError("projective dimension must be at least 1")
        q = field.order
        count = (q ** (N + 1) - 1) // (q - 1)
        if count > MAX_POINTS:
            raise DimensionTooLarge(
                f"PG({N},{q}) has {count} points, above the guard of {MAX_POINTS}")
        self.field = field
        self.N = N
        self.dim = N + 1
        self.q = q
        self.size = count

        blocks = []
        offsets = []
        start = 0
        for pivot in range(self.dim):
            k = N - pivot
            r = np.arange(q ** k)
            block = np.zeros((q ** k, self.dim), dtype=np.intp)
            block[:, pivot] = 1
            for j in range(k):
                block[:, pivot + 1 + j] = (r // q ** (k - 1 - j)) % q
            blocks.append(block)
            offsets.append(start)
            start += q ** k
        self.coords = np.concatenate(blocks)
        self.coords.setflags(write=False)
        self._offsets = np.array(offsets, dtype=np.int64)
        self._weights = np.array([q ** (N - j) for j in range(self.dim)], dtype=np.int64)

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        return (isinstance(other, ProjectiveSpace) and self.N == other.N
                and self.field is other.field)

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.e, self.N))

    def __repr__(self) -> str:
        return f"PG({self.N},{self.q})"

    def point(self, index: int) -> "ProjPoint":
        return ProjPoint(tuple(int(c) for c in self.coords[index]), int(index), self)

    def points(self) -> list["ProjPoint"]:
        return [self.point(i) for i in range(self.size)]

    def canonicalize(self, vecs: np.ndarray) -> np.ndarray:
        """Scale each row so its first nonzero coordinate is one."""
        vecs = np.atleast_2d(np.asarray(vecs, dtype=np.intp))
        nonzero = vecs != 0
        if not nonzero.any(axis=1).all():
            raise ValueError("the zero vector is not a projective point")
        pivot = nonzero.argmax(axis=1)
        lead = vecs[np.arange(len(vecs)), pivot]
        scale = self.field.inv_table[lead]
        return self.field.mul_table[scale[:, None], vecs]

    def indices_of(self, vecs: np.ndarray) -> np.ndarray:
        """Enumeration index of the point spanned by each row of ``vecs``."""
        canon = self.canonicalize(vecs)
        pivot = (canon != 0).argmax(axis=1)
        # trailing coordinates after the pivot contribute their lexicographic rank
        mask = np.arange(self.dim)[None, :] > pivot[:, None]
        rank = (canon * self._weights[None, :] * mask).sum(axis=1)
        return self._offsets[pivot] + rank

    def index_of(self, vec: Sequence[int]) -> int:
        return int(self.indices_of(np.asarray(vec)[None, :])[0])


@lru_cache(maxsize=64)
def projective_space(field: FieldSpec, N: int) -> ProjectiveSpace:
    return ProjectiveSpace(field, N)


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[int, ...]
    index: int
    space: ProjectiveSpace = dc_field(repr=False)

    def __post_init__(self):
        if not any(self.coords):
            raise ValueError("the zero vector is not a projective point")
        lead = next(c for c in self.coords if c)
        if lead != 1:
            raise ValueError(f"{self.coords} is not canonical (leading coordinate {lead})")


def enumerate_points(field: FieldSpec, N: int) -> list[ProjPoint]:
    """All points of PG(N, q) in canonical order."""
    return projective_space(field, N).points()


def line_points(P1: ProjPoint, P2: ProjPoint) -> list[ProjPoint]:
    """The q+1 points of the line P1 P2, sorted by index."""
    if P1.space != P2.space:
        raise DimensionMismatch("points live in different spaces")
    if P1.index == P2.index:
        raise EqualPoints("a line needs two distinct points")
    space = P1.space
    F = space.field
    u = np.asarray(P1.coords)
    v = np.asarray(P2.coords)
    vecs = [F.add_table[u, F.mul_table[t, v]] for t in F.elements]
    vecs.append(v)
    idx = sorted(set(int(i) for i in space.indices_of(np.array(vecs))))
    return [space.point(i) for i in idx]


class FormKind(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HERMITIAN = "hermitian"
    SYMPLECTIC = "symplectic"


QUADRATIC_KINDS = (FormKind.HYPERBOLIC, FormKind.ELLIPTIC, FormKind.PARABOLIC)


@dataclass(frozen=True)
class PolarSpaceTag:
    rank: int
    type_param: Fraction


class Form:
    """One of the standard non-degenerate forms on PG(N, q).

    Quadratic forms are stored as a list of monomials ``(i, j, c)``
    meaning ``c * x_i * x_j``; coordinates are zero-based, so the
    hyperbolic form on PG(3, q) is ``x0*x1 + x2*x3``.
    """

    def __init__(self, kind: FormKind | str, field: FieldSpec, N: int):
        kind = FormKind(kind)
        if N < 1:
            raise InvalidForm("projective dimension must be at least 1")
        odd = N % 2 == 1
        if kind in (FormKind.HYPERBOLIC, FormKind.ELLIPTIC, FormKind.SYMPLECTIC) and not odd:
            raise InvalidForm(f"{kind.value} forms need odd projective dimension, got {N}")
        if kind is FormKind.PARABOLIC and odd:
            raise InvalidForm(f"parabolic forms need even projective dimension, got {N}")
        if kind is FormKind.HERMITIAN and not field.is_square_order:
            raise InvalidForm(f"hermitian forms need a field of square order, got {field!r}")
        self.kind = kind
        self.field = field
        self.N = N
        self.dim = N + 1
        self.terms: tuple[tuple[int, int, int], ...] = ()
        if kind is FormKind.HYPERBOLIC:
            self.terms = tuple((i, i + 1, 1) for i in range(0, self.dim, 2))
        elif kind is FormKind.ELLIPTIC:
            b, c = irreducible_binary_quadratic(field)
            hyp = [(i, i + 1, 1) for i in range(0, self.dim - 2, 2)]
            x, y = self.dim - 2, self.dim - 1
            tail = [(x, x, 1), (x, y, b), (y, y, c)]
            self.terms = tuple(hyp + [t for t in tail if t[2]])
        elif kind is FormKind.PARABOLIC:
            self.terms = ((0, 0, 1),) + tuple((i, i + 1, 1) for i in range(1, self.dim, 2))

    def __repr__(self) -> str:
        return f"Form({self.kind.value}, PG({self.N},{self.field.order}))"

    @property
    def is_quadratic(self) -> bool:
        return self.kind in QUADRATIC_KINDS

    @property
    def space(self) -> ProjectiveSpace:
        return projective_space(self.field, self.N)

    def values(self, vecs: np.ndarray) -> np.ndarray:
        """Q(v) (quadratic), H(v, v) (hermitian) or 0 (symplectic) for each row."""
        vecs = np.atleast_2d(np.asarray(vecs, dtype=np.intp))
        if vecs.shape[1] != self.dim:
            raise DimensionMismatch(f"expected vectors of length {self.dim}")
        F = self.field
        acc = np.zeros(len(vecs), dtype=np.intp)
        if self.is_quadratic:
            for i, j, c in self.terms:
                t = F.mul_table[vecs[:, i], vecs[:, j]]
                if c != 1:
                    t = F.mul_table[c, t]
                acc = F.add_table[acc, t]
        elif self.kind is FormKind.HERMITIAN:
            for i in range(self.dim):
                col = vecs[:, i]
                acc = F.add_table[acc, F.mul_table[col, F.conj_table[col]]]
        return acc

    def pair_values(self, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        """The associated two-argument form on aligned rows of U and V.

        Quadratic kinds give the polarization Q(u+v) - Q(u) - Q(v),
        symplectic the alternating form, hermitian H(u, v).
        """
        U = np.atleast_2d(np.asarray(U, dtype=np.intp))
        V = np.atleast_2d(np.asarray(V, dtype=np.intp))
        if U.shape[1] != self.dim or V.shape[1] != self.dim:
            raise DimensionMismatch(f"expected vectors of length {self.dim}")
        F = self.field
        if self.is_quadratic:
            s = self.values(F.add_table[U, V])
            s = F.add_table[s, F.neg_table[self.values(U)]]
            return F.add_table[s, F.neg_table[self.values(V)]]
        acc = np.zeros(np.broadcast_shapes(U.shape, V.shape)[0], dtype=np.intp)
        if self.kind is FormKind.SYMPLECTIC:
            for i in range(0, self.dim, 2):
                a = F.mul_table[U[:, i], V[:, i + 1]]
                b = F.mul_table[U[:, i + 1], V[:, i]]
                acc = F.add_table[acc, F.add_table[a, F.neg_table[b]]]
            return acc
        for i in range(self.dim):
            acc = F.add_table[acc, F.mul_table[U[:, i], F.conj_table[V[:, i]]]]
        return acc

    def gram(self) -> np.ndarray:
        """Matrix of the bilinear form on the standard basis."""
        if not (self.is_quadratic or self.kind is FormKind.SYMPLECTIC):
            raise HermitianNotPolarizable("hermitian forms are sesquilinear, not bilinear")
        eye = np.eye(self.dim, dtype=np.intp)
        U = np.repeat(eye, self.dim, axis=0)
        V = np.tile(eye, (self.dim, 1))
        return self.pair_values(U, V).reshape(self.dim, self.dim)

    def isotropic_mask(self) -> np.ndarray:
        """Boolean mask over the points of ``self.space``."""
        if self.kind is FormKind.SYMPLECTIC:
            return np.ones(self.space.size, dtype=bool)
        return self.values(self.space.coords) == 0


def make_form(kind: FormKind | str, field: FieldSpec, N: int) -> Form:
    return Form(kind, field, N)


def irreducible_binary_quadratic(field: FieldSpec) -> tuple[int, int]:
    """Smallest ``(b, c)`` such that t^2 + b t + c has no root in the field."""
    F = field
    for b in F.elements:
        for c in F.elements:
            roots = F.add_table[F.add_table[F.mul_table[np.arange(F.order), np.arange(F.order)],
                                            F.mul_table[b, np.arange(F.order)]], c]
            if (roots != 0).all():
                return b, c
    raise AssertionError("every field has an irreducible quadratic")


def polar_tag(form: Form) -> PolarSpaceTag:
    N = form.N
    kind = form.kind
    if kind is FormKind.HYPERBOLIC:
        return PolarSpaceTag((N + 1) // 2, Fraction(0))
    if kind is FormKind.ELLIPTIC:
        return PolarSpaceTag((N - 1) // 2, Fraction(2))
    if kind is FormKind.PARABOLIC:
        return PolarSpaceTag(N // 2, Fraction(1))
    if kind is FormKind.SYMPLECTIC:
        return PolarSpaceTag((N + 1) // 2, Fraction(1))
    if N % 2 == 0:
        return PolarSpaceTag(N // 2, Fraction(3, 2))
    return PolarSpaceTag((N + 1) // 2, Fraction(1, 2))


def _as_vector(form: Form, P) -> np.ndarray:
    coords = P.coords if isinstance(P, ProjPoint) else P
    v = np.asarray(coords, dtype=np.intp)
    if v.shape != (form.dim,):
        raise DimensionMismatch(f"point has {v.size} coordinates, form expects {form.dim}")
    return v


def eval_form(form: Form, P) -> int:
    return int(form.values(_as_vector(form, P)[None, :])[0])


def is_isotropic(form: Form, P) -> bool:
    return eval_form(form, P) == 0


def polar_form(form: Form, P1, P2) -> int:
    if form.kind is FormKind.HERMITIAN:
        raise HermitianNotPolarizable("evaluate the hermitian form H(u, v) directly")
    u, v = _as_vector(form, P1), _as_vector(form, P2)
    return int(form.pair_values(u[None, :], v[None, :])[0])


def hermitian_value(form: Form, P1, P2) -> int:
    """H(u, v) for a hermitian form."""
    if form.kind is not FormKind.HERMITIAN:
        raise InvalidForm("not a hermitian form")
    u, v = _as_vector(form, P1), _as_vector(form, P2)
    return int(form.pair_values(u[None, :], v[None, :])[0])


def nullspace_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of the right null space of M over GF(p)."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        nz = np.nonzero(A[r:, c])[0]
        if r >= rows or nz.size == 0:
            continue
        k = r + nz[0]
        A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-A[i, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def nucleus(form: Form) -> ProjPoint:
    """Radical of the polarized parabolic form over GF(2)."""
    if form.kind is not FormKind.PARABOLIC or form.field.order != 2:
        raise NotParabolicBinary("the nucleus is defined here for parabolic quadrics over GF(2)")
    basis = nullspace_mod_p(form.gram(), 2)
    if len(basis) != 1:
        raise RadicalNotOneDimensional(f"radical has dimension {len(basis)}")
    space = form.space
    return space.point(space.index_of(basis[0]))


class LineKind(enum.Enum):
    EXTERNAL = "external"
    TANGENT = "tangent"
    SECANT = "secant"
    CONTAINED = "contained"


@dataclass(frozen=True)
class LineClass:
    kind: LineKind
    isotropic_count: int


def line_kind(count: int, q: int) -> LineKind:
    if count == 0:
        return LineKind.EXTERNAL
    if count == 1:
        return LineKind.TANGENT
    if count == q + 1:
        return LineKind.CONTAINED
    return LineKind.SECANT


def classify_line(form: Form, P1: ProjPoint, P2: ProjPoint) -> LineClass:
    pts = line_points(P1, P2)
    vecs = np.array([p.coords for p in pts])
    if form.kind is FormKind.SYMPLECTIC:
        count = len(pts)
    else:
        count = int((form.values(vecs) == 0).sum())
    return LineClass(line_kind(count, form.field.order), count)


def line_isotropic_counts(form: Form, U: np.ndarray, V: np.ndarray,
                          chunk: int = 1 << 16) -> np.ndarray:
    """Number of isotropic points on each line spanned by rows U[k], V[k].

    Isotropy is scale invariant, so the points u + t v (t in GF(q)) and v
    are tested without canonicalizing them.
    """
    U = np.asarray(U, dtype=np.intp)
    V = np.asarray(V, dtype=np.intp)
    F = form.field
    out = np.empty(len(U), dtype=np.int64)
    for s in range(0, len(U), chunk):
        u, v = U[s:s + chunk], V[s:s + chunk]
        count = (form.values(v) == 0).astype(np.int64)
        for t in F.elements:
            w = F.add_table[u, F.mul_table[t, v]]
            count += form.values(w) == 0
        out[s:s + chunk] = count
    return out
