"""Graph container, the tangent-graph families and reference graphs.

Adjacency is stored as packed bit rows (``uint64`` words, bit ``j % 64``
of word ``j // 64`` is the edge to vertex ``j``).  Common-neighbour
counts then reduce to AND + popcount over words.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    InvalidRank,
    PaleyConditionViolated,
    TooLarge,
    UnsupportedQ,
)
from .field import field_make, field_of_order, prime_power
from .geometry import (
    Form,
    FormKind,
    line_isotropic_counts,
    nucleus,
)

MAX_VERTICES = 1 << 15


def _pack_rows(dense: np.ndarray) -> np.ndarray:
    n = dense.shape[0]
    words = max(1, (n + 63) // 64)
    packed = np.packbits(dense.astype(bool), axis=1, bitorder="little")
    buf = np.zeros((n, words * 8), dtype=np.uint8)
    buf[:, :packed.shape[1]] = packed
    return buf.view(np.uint64).reshape(n, words)


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``labels`` optionally records, for each vertex, the index of the
    projective point it came from.
    """

    __slots__ = ("n", "rows", "edge_count", "labels", "name", "_degrees")

    def __init__(self, rows: np.ndarray, n: int, labels: Sequence[int] | None = None,
                 name: str = ""):
        self.n = int(n)
        self.rows = rows
        self.rows.setflags(write=False)
        self._degrees = np.bitwise_count(rows).sum(axis=1, dtype=np.int64) if n else np.zeros(0, np.int64)
        self._degrees.setflags(write=False)
        self.edge_count = int(self._degrees.sum()) // 2
        self.labels = tuple(int(x) for x in labels) if labels is not None else None
        self.name = name

    @classmethod
    def from_dense(cls, adj: np.ndarray, labels=None, name: str = "") -> "Graph":
        adj = np.asarray(adj, dtype=bool)
        n = adj.shape[0]
        if adj.shape != (n, n):
            raise ValueError("adjacency matrix must be square")
        if (adj != adj.T).any():
            raise ValueError("adjacency matrix must be symmetric")
        if adj.diagonal().any():
            raise ValueError("loops are not allowed")
        if labels is not None and len(labels) != n:
            raise ValueError("one label per vertex required")
        return cls(_pack_rows(adj), n, labels, name)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            adj[u, v] = adj[v, u] = True
        return cls.from_dense(adj, name=name)

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<Graph{tag} n={self.n} edges={self.edge_count}>"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and np.array_equal(self.rows, other.rows))

    def __hash__(self) -> int:
        return hash((self.n, self.rows.tobytes()))

    def dense(self, dtype=bool) -> np.ndarray:
        bits = np.unpackbits(self.rows.view(np.uint8), axis=1, bitorder="little")
        return bits[:, :self.n].astype(dtype)

    def degrees(self) -> np.ndarray:
        return self._degrees

    def degree(self, v: int) -> int:
        return int(self._degrees[v])

    def regular_degree(self) -> int | None:
        """The common degree, or None if the graph is not regular."""
        if self.n == 0:
            return 0
        d = self._degrees
        return int(d[0]) if (d == d[0]).all() else None

    def has_edge(self, u: int, v: int) -> bool:
        return bool((int(self.rows[u, v >> 6]) >> (v & 63)) & 1)

    def neighbors(self, v: int) -> list[int]:
        bits = np.unpackbits(self.rows[v].view(np.uint8), bitorder="little")[:self.n]
        return np.flatnonzero(bits).tolist()

    def edges(self) -> list[tuple[int, int]]:
        iu, ju = np.nonzero(np.triu(self.dense()))
        return list(zip(iu.tolist(), ju.tolist()))


def _check_vertices(n: int) -> None:
    if n > MAX_VERTICES:
        raise TooLarge(f"{n} vertices exceeds the construction guard of {MAX_VERTICES}")


def _orthogonality_matrix(form: Form, X: np.ndarray) -> np.ndarray:
    """B(x_i, x_j) == 0 for all pairs of rows, using the Gram matrix."""
    p = form.field.p
    G = form.gram().astype(np.float64)
    Xf = X.astype(np.float64)
    # entries stay far below 2**53, so the float product is exact
    B = np.rint((Xf @ G) @ Xf.T).astype(np.int64) % p
    adj = B == 0
    np.fill_diagonal(adj, False)
    return adj


def _line_count_matrix(form: Form, X: np.ndarray) -> np.ndarray:
    n = len(X)
    iu, ju = np.triu_indices(n, k=1)
    counts = np.zeros((n, n), dtype=np.int64)
    if len(iu):
        c = line_isotropic_counts(form, X[iu], X[ju])
        counts[iu, ju] = c
        counts[ju, iu] = c
    return counts


def build_no_even(m: int, eps: int, cross_check: bool = False) -> Graph:
    """NO^eps(2m, 2): non-singular points of Q^eps(2m-1, 2), adjacent when orthogonal.

    With ``cross_check`` the orthogonality relation is compared against
    tangent-line counting (the two agree on non-singular binary points).
    """
    if m < 1:
        raise InvalidRank(f"m must be at least 1, got {m}")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    F = field_make(2)
    kind = FormKind.HYPERBOLIC if eps == 1 else FormKind.ELLIPTIC
    form = Form(kind, F, 2 * m - 1)
    space = form.space
    verts = np.flatnonzero(~form.isotropic_mask())
    _check_vertices(len(verts))
    X = space.coords[verts]
    adj = _orthogonality_matrix(form, X)
    if cross_check:
        tangent = _line_count_matrix(form, X) == 1
        np.fill_diagonal(tangent, False)
        if not np.array_equal(adj, tangent):
            raise AssertionError("orthogonality and tangency disagree")
    sign = "+" if eps == 1 else "-"
    return Graph.from_dense(adj, labels=verts, name=f"NO{sign}({2 * m},2)")


def build_no_odd(m: int, cross_check: bool = False) -> Graph:
    """NO(2m+1, 2): points off Q(2m, 2) other than its nucleus, adjacent when orthogonal.

    With ``cross_check`` adjacency is compared against "tangent line, or
    line through the nucleus": a pair u, u+N is orthogonal, yet its line
    {u, u+N, N} misses the quadric.
    """
    if m < 1:
        raise InvalidRank(f"m must be at least 1, got {m}")
    form = Form(FormKind.PARABOLIC, field_make(2), 2 * m)
    space = form.space
    nuc = nucleus(form).index
    keep = ~form.isotropic_mask()
    keep[nuc] = False
    verts = np.flatnonzero(keep)
    _check_vertices(len(verts))
    X = space.coords[verts]
    adj = _orthogonality_matrix(form, X)
    if cross_check:
        tangent = _line_count_matrix(form, X) == 1
        iu, ju = np.triu_indices(len(X), k=1)
        through = np.zeros_like(tangent)
        if len(iu):
            # GF(2) ids add by XOR
            third = space.indices_of(X[iu] ^ X[ju])
            through[iu, ju] = through[ju, iu] = third == nuc
        expect = tangent | through
        np.fill_diagonal(expect, False)
        if not np.array_equal(adj, expect):
            raise AssertionError("orthogonality and tangency disagree")
    return Graph.from_dense(adj, labels=verts, name=f"NO({2 * m + 1},2)")


def build_collinearity_parabolic(m: int) -> Graph:
    """Collinearity graph of Q(2m, 2): singular points, adjacent when their line lies on Q."""
    if m < 1:
        raise InvalidRank(f"m must be at least 1, got {m}")
    form = Form(FormKind.PARABOLIC, field_make(2), 2 * m)
    verts = np.flatnonzero(form.isotropic_mask())
    _check_vertices(len(verts))
    X = form.space.coords[verts]
    adj = _line_count_matrix(form, X) == form.field.order + 1
    np.fill_diagonal(adj, False)
    return Graph.from_dense(adj, labels=verts, name=f"Gamma_Q({2 * m},2)")


def build_collinearity_symplectic(m: int) -> Graph:
    """Collinearity graph of W(2m-1, 2): all points, adjacent when symplectically orthogonal."""
    if m < 1:
        raise InvalidRank(f"m must be at least 1, got {m}")
    form = Form(FormKind.SYMPLECTIC, field_make(2), 2 * m - 1)
    X = form.space.coords
    _check_vertices(len(X))
    adj = _orthogonality_matrix(form, X)
    return Graph.from_dense(adj, labels=np.arange(len(X)), name=f"Gamma_W({2 * m - 1},2)")


NU_BUILD_Q = (2, 3)


def build_nu(m: int, q: int) -> Graph:
    """NU(m, q^2): non-isotropic points of H(m-1, q^2), adjacent when joined by a tangent line."""
    if m < 2:
        raise InvalidRank(f"m must be at least 2, got {m}")
    if q not in NU_BUILD_Q:
        raise UnsupportedQ(f"NU graphs are constructed only for q in {NU_BUILD_Q}, got {q}")
    form = Form(FormKind.HERMITIAN, field_make(q, 2), m - 1)
    verts = np.flatnonzero(~form.isotropic_mask())
    _check_vertices(len(verts))
    X = form.space.coords[verts]
    adj = _line_count_matrix(form, X) == 1
    np.fill_diagonal(adj, False)
    return Graph.from_dense(adj, labels=verts, name=f"NU({m},{q * q})")


def build_complete(k: int) -> Graph:
    if k < 1:
        raise ValueError("k must be at least 1")
    adj = ~np.eye(k, dtype=bool)
    return Graph.from_dense(adj, name=f"K{k}")


def build_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both parts must be nonempty")
    side = np.r_[np.zeros(a, bool), np.ones(b, bool)]
    adj = side[:, None] != side[None, :]
    return Graph.from_dense(adj, name=f"K{a},{b}")


def build_cycle(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)], name=f"C{k}")


def build_paley(q: int) -> Graph:
    """Paley graph on GF(q): u ~ v iff u - v is a nonzero square (q = 1 mod 4)."""
    if prime_power(q) is None or q % 4 != 1:
        raise PaleyConditionViolated(f"Paley graphs need a prime power q = 1 (mod 4), got {q}")
    F = field_of_order(q)
    sq = np.zeros(q, dtype=bool)
    sq[list(F.nonzero_squares)] = True
    idx = np.arange(q)
    diff = F.add_table[idx[:, None], F.neg_table[idx][None, :]]
    return Graph.from_dense(sq[diff], name=f"Paley({q})")


def complement(G: Graph) -> Graph:
    adj = ~G.dense()
    np.fill_diagonal(adj, False)
    return Graph.from_dense(adj, name=f"co-{G.name}" if G.name else "")


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    n = sum(g.n for g in graphs)
    adj = np.zeros((n, n), dtype=bool)
    start = 0
    for g in graphs:
        adj[start:start + g.n, start:start + g.n] = g.dense()
        start += g.n
    return Graph.from_dense(adj)


def _bfs_colors(G: Graph) -> tuple[np.ndarray, int]:
    """2-colouring attempt; returns colours (-1 unvisited) and component count."""
    adj = G.dense()
    color = np.full(G.n, -1, dtype=np.int64)
    components = 0
    for s in range(G.n):
        if color[s] >= 0:
            continue
        components += 1
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in np.flatnonzero(adj[u]):
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    queue.append(v)
    return color, components


def connected_components(G: Graph) -> int:
    return _bfs_colors(G)[1]


def is_connected(G: Graph) -> bool:
    return G.n == 0 or connected_components(G) == 1


def bipartition(G: Graph) -> tuple[list[int], list[int]] | None:
    """The two colour classes of a proper 2-colouring, or None if G has an odd cycle."""
    color, _ = _bfs_colors(G)
    adj = G.dense()
    same = color[:, None] == color[None, :]
    if (adj & same).any():
        return None
    return np.flatnonzero(color == 0).tolist(), np.flatnonzero(color == 1).tolist()


def is_bipartite(G: Graph) -> bool:
    return bipartition(G) is not None


def find_isomorphism(G: Graph, H: Graph, max_n: int = 64) -> list[int] | None:
    """Backtracking search for ``phi`` with ``G.has_edge(u, v) == H.has_edge(phi[u], phi[v])``."""
    if G.n != H.n or G.edge_count != H.edge_count:
        return None
    if G.n > max_n:
        raise TooLarge(f"exhaustive isomorphism search limited to {max_n} vertices")
    if sorted(G.degrees().tolist()) != sorted(H.degrees().tolist()):
        return None
    A, B = G.dense(), H.dense()
    n = G.n
    degA, degB = G.degrees(), H.degrees()
    phi = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        for w in range(n):
            if used[w] or degA[k] != degB[w]:
                continue
            if all(A[k, j] == B[w, phi[j]] for j in range(k)):
                phi[k] = w
                used[w] = True
                if extend(k + 1):
                    return True
                used[w] = False
        phi[k] = -1
        return False

    return phi if extend(0) else None


def export_graph6(G: Graph) -> bytes:
    """graph6 encoding (no header, no trailing newline)."""
    n = G.n
    if n >= 1 << 36:
        raise TooLarge("graph6 supports at most 2**36 - 1 vertices")
    if n <= 62:
        out = [n + 63]
    elif n <= 258047:
        out = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        out = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    # bits x(0,1), x(0,2), x(1,2), x(0,3), ... : column-wise upper triangle
    A = G.dense()
    iu, ju = np.triu_indices(n, k=1)
    order = np.lexsort((iu, ju))
    bits = A[iu[order], ju[order]]
    pad = (-len(bits)) % 6
    bits = np.r_[bits, np.zeros(pad, dtype=bool)].reshape(-1, 6)
    values = bits.astype(np.int64) @ (1 << np.arange(5, -1, -1))
    out.extend((values + 63).tolist())
    return bytes(out)


def export_adjlist(G: Graph) -> str:
    """One line per vertex: ``i: j k l`` with neighbours ascending."""
    lines = []
    for v in range(G.n):
        nb = G.neighbors(v)
        lines.append(f"{v}: " + " ".join(map(str, nb)) if nb else f"{v}:")
    return "\n".join(lines) + ("\n" if lines else "")
