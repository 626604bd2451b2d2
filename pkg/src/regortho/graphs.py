"""Walk matrices, generalized cospectrality and Godsil-McKay switching.

Vertices are labelled 1..n in every public function, matching the text
formats; adjacency rows are stored 0-based.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from typing import Iterable, Sequence

from .errors import (
    CapExceeded,
    DimensionError,
    FactorizationTimeout,
    FormatError,
    InvalidSwitchingSet,
    NotCospectral,
    SingularWalkMatrix,
)
from .exact import Matrix, charpoly, format_matrix, int_det, solve
from .numtheory import DEFAULT_RHO_BUDGET, is_squarefree
from .perms import Permutation, index_set


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph given by a symmetric 0/1 adjacency matrix."""

    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        adj = tuple(tuple(int(x) for x in row) for row in self.adj)
        n = len(adj)
        for i, row in enumerate(adj):
            if len(row) != n:
                raise DimensionError("adjacency matrix is not square")
            if row[i] != 0:
                raise ValueError(f"loop at vertex {i + 1}")
            for j, x in enumerate(row):
                if x not in (0, 1):
                    raise ValueError("adjacency entries must be 0 or 1")
                if adj[j][i] != x:
                    raise ValueError("adjacency matrix is not symmetric")
        object.__setattr__(self, "adj", adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [[0] * n for _ in range(n)]
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u - 1][v - 1] = rows[v - 1][u - 1] = 1
        return cls(tuple(map(tuple, rows)))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls.from_edges(n, [])

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls.from_edges(n, itertools.combinations(range(1, n + 1), 2))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(1, n)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])

    @classmethod
    def random(cls, n: int, seed: int = 0, p: float = 0.5) -> Graph:
        rng = random.Random(seed)
        return cls.from_edges(
            n, [(u, v) for u, v in itertools.combinations(range(1, n + 1), 2) if rng.random() < p]
        )

    @property
    def n(self) -> int:
        return len(self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i, j in itertools.combinations(range(self.n), 2) if self.adj[i][j]]

    def neighbors(self, v: int) -> set[int]:
        return {j + 1 for j, x in enumerate(self.adj[v - 1]) if x}

    @cached_property
    def adjacency(self) -> Matrix:
        return Matrix(self.adj, self.n)

    def relabel(self, perm: Permutation) -> Graph:
        """Graph whose vertex i is vertex perm(i) of self (adjacency P^T A P)."""
        if perm.n != self.n:
            raise DimensionError("permutation degree differs from vertex count")
        img = perm.column_order()
        return Graph(tuple(tuple(self.adj[img[i]][img[j]] for j in range(self.n))
                           for i in range(self.n)))


def complement(g: Graph) -> Graph:
    n = g.n
    return Graph(tuple(tuple(0 if i == j else 1 - g.adj[i][j] for j in range(n)) for i in range(n)))


def _walk_columns(g: Graph) -> list[list[int]]:
    cols = []
    v = [1] * g.n
    for _ in range(g.n):
        cols.append(v)
        v = [sum(x for x, a in zip(v, row) if a) for row in g.adj]
    return cols


def walk_matrix(g: Graph) -> Matrix:
    """W = [e, A e, ..., A^(n-1) e]."""
    cols = _walk_columns(g)
    return Matrix(list(zip(*cols)) if cols else [], g.n)


def walk_determinant(g: Graph) -> int:
    return int_det([list(r) for r in zip(*_walk_columns(g))])


@dataclass
class WalkMatrixReport:
    W: Matrix
    detW: int
    reduced: Fraction
    reduced_is_integer: bool
    reduced_odd: bool | None
    reduced_squarefree: bool | None
    dgs_sufficient: bool | None
    status: str
    notes: list[str] = field(default_factory=list)

    @property
    def inapplicable(self) -> bool:
        return self.status == "inapplicable"

    def to_json(self) -> dict:
        return {
            "n": self.W.nrows,
            "W": [[str(x) for x in row] for row in self.W.rows],
            "detW": str(self.detW),
            "reduced": str(self.reduced),
            "reduced_is_integer": self.reduced_is_integer,
            "reduced_odd": self.reduced_odd,
            "reduced_squarefree": self.reduced_squarefree,
            "dgs_sufficient": self.dgs_sufficient,
            "inapplicable": self.inapplicable,
        }


def dgs_check(g: Graph, budget: int = DEFAULT_RHO_BUDGET) -> WalkMatrixReport:
    """Evaluate the odd-and-square-free walk-determinant criterion.

    The criterion is sufficient only: ``dgs_sufficient`` is True when it
    certifies the graph, False when it is applicable but fails, and None when
    det W = 0 (inapplicable) or factoring ran out of budget (unknown).
    """
    w = walk_matrix(g)
    d = walk_determinant(g)
    reduced = Fraction(d, 2 ** (g.n // 2))
    is_int = reduced.denominator == 1
    if d == 0:
        return WalkMatrixReport(w, d, reduced, is_int, None, None, None, "inapplicable",
                                ["det W = 0: criterion inapplicable"])
    notes = []
    odd = is_int and reduced.numerator % 2 == 1
    if not is_int:
        notes.append("det W / 2^floor(n/2) is not an integer")
    try:
        squarefree = is_squarefree(reduced.numerator, budget) if is_int else None
    except FactorizationTimeout as exc:
        notes.append(str(exc))
        return WalkMatrixReport(w, d, reduced, is_int, odd, None, None, "unknown", notes)
    sufficient = bool(is_int and odd and squarefree)
    return WalkMatrixReport(w, d, reduced, is_int, odd, squarefree, sufficient, "ok", notes)


def is_generalized_cospectral(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        raise DimensionError("graphs have different vertex counts")
    return (charpoly(g.adjacency) == charpoly(h.adjacency)
            and charpoly(complement(g).adjacency) == charpoly(complement(h).adjacency))


def recover_transition_matrix(g: Graph, h: Graph) -> Matrix:
    """Q = W(G) W(H)^-1, the unique regular orthogonal Q with Q^T A_G Q = A_H."""
    if not is_generalized_cospectral(g, h):
        raise NotCospectral("graphs are not cospectral with cospectral complements")
    if walk_determinant(g) == 0:
        raise SingularWalkMatrix("W(G) is singular")
    wg, wh = walk_matrix(g), walk_matrix(h)
    # Q W(H) = W(G)  <=>  W(H)^T Q^T = W(G)^T
    return solve(wh.T, wg.T).T


# --------------------------------------------------------------------------
# Godsil-McKay switching (single switching set)


@dataclass(frozen=True)
class GMSwitchingSet:
    C: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "C", index_set(self.C))

    @property
    def m(self) -> int:
        return len(self.C)


def switching_set_violation(g: Graph, c: Sequence[int]) -> str | None:
    """Name the first GM condition that ``c`` violates in ``g``, or None."""
    c = index_set(c, g.n)
    m = len(c)
    if m == 0 or m % 2:
        return f"switching set must have positive even size, got {m}"
    idx = [v - 1 for v in c]
    inside = set(idx)
    degrees = {sum(g.adj[v][u] for u in idx) for v in idx}
    if len(degrees) != 1:
        return "induced subgraph on C is not regular"
    for v in range(g.n):
        if v in inside:
            continue
        k = sum(g.adj[v][u] for u in idx)
        if k not in (0, m // 2, m):
            return f"vertex {v + 1} has {k} neighbours in C (allowed: 0, {m // 2}, {m})"
    return None


def gm_switch(g: Graph, s: GMSwitchingSet | Sequence[int]) -> Graph:
    """Complement the C-neighbourhood of every outside vertex with m/2 neighbours in C."""
    c = s.C if isinstance(s, GMSwitchingSet) else index_set(s, g.n)
    problem = switching_set_violation(g, c)
    if problem:
        raise InvalidSwitchingSet(problem)
    idx = [v - 1 for v in c]
    half = len(c) // 2
    rows = [list(r) for r in g.adj]
    inside = set(idx)
    for v in range(g.n):
        if v in inside or sum(g.adj[v][u] for u in idx) != half:
            continue
        for u in idx:
            rows[v][u] = rows[u][v] = 1 - g.adj[v][u]
    return Graph(tuple(map(tuple, rows)))


def find_gm_sets(g: Graph, max_size: int, subset_cap: int = 10**6) -> list[GMSwitchingSet]:
    """All valid switching sets of even size 2..max_size, by size then lexicographically."""
    if max_size % 2 or max_size > g.n:
        raise ValueError("max_size must be even and at most n")
    total = sum(math.comb(g.n, k) for k in range(2, max_size + 1, 2))
    if total > subset_cap:
        raise CapExceeded(f"{total} candidate subsets exceed the cap {subset_cap}")
    found = []
    for k in range(2, max_size + 1, 2):
        for c in itertools.combinations(range(1, g.n + 1), k):
            if switching_set_violation(g, c) is None:
                found.append(GMSwitchingSet(c))
    return found


# --------------------------------------------------------------------------
# text formats and fixtures


def format_graph(g: Graph) -> str:
    """Adjacency-matrix text (same framing as the matrix format)."""
    return format_matrix(g.adjacency)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    """Read an adjacency-matrix or edge-list file (``fmt`` in auto/adjacency/edges)."""
    lines = []
    for line in text.splitlines():
        s = line.strip()
        if s and not s.startswith("#"):
            lines.append(s.split())
    if not lines or len(lines[0]) != 2 or not all(t.isdigit() for t in lines[0]):
        raise FormatError("graph text needs an 'n m' header")
    a, b = int(lines[0][0]), int(lines[0][1])
    body = lines[1:]
    if fmt == "auto":
        looks_adjacency = (
            a == b and len(body) == a
            and all(len(r) == a and all(t in ("0", "1") for t in r) for r in body)
        )
        fmt = "adjacency" if looks_adjacency else "edges"
    try:
        if fmt == "adjacency":
            if a != b or len(body) != a or any(len(r) != a for r in body):
                raise FormatError("adjacency text must be n x n")
            return Graph(tuple(tuple(int(t) for t in r) for r in body))
        if fmt == "edges":
            if len(body) != b or any(len(r) != 2 for r in body):
                raise FormatError(f"expected {b} lines of 'u v'")
            return Graph.from_edges(a, [(int(u), int(v)) for u, v in body])
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc
    raise ValueError(f"unknown graph format {fmt!r}")


def load_small_graphs() -> list[Graph]:
    """Every graph on 1 to 7 vertices up to isomorphism (1252 graphs)."""
    text = resources.files("regortho").joinpath("data/small_graphs.txt").read_text()
    graphs = []
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        n_txt, bits = line.split(":")
        n = int(n_txt)
        rows = [[0] * n for _ in range(n)]
        it = iter(bits)
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = rows[j][i] = int(next(it))
        graphs.append(Graph(tuple(map(tuple, rows))))
    return graphs
