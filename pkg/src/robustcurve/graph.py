"""Graph representation, synthetic generators, and connectivity machinery.

Graphs are undirected, unweighted, and simple: nodes are 0..n-1, edges are
unordered pairs with no self-loops and no duplicates.  Generated graphs may
be disconnected; nothing here assumes connectivity.

Edge-list text format (import/export): one "u v" pair per line, whitespace
separated; lines starting with '#' or '%' are comments; arbitrary node
labels are remapped to 0..n-1 in first-appearance order; duplicate edges
and self-loops are dropped and counted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import FormatError, ParameterError

Edge = tuple[int, int]


def _as_rng(seed: int | np.random.Generator) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


class Graph:
    """Immutable simple graph: node count, edge list, adjacency lists.

    Edges are normalized to (min, max) but keep their construction order,
    which is what edge-removal orders index into.
    """

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[Edge]):
        if n < 0:
            raise ParameterError("node count must be nonnegative")
        self.n = n
        norm: list[Edge] = []
        seen: set[Edge] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"self-loop at node {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ParameterError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
            adj[e[0]].append(e[1])
            adj[e[1]].append(e[0])
        self.edges = norm
        self.adj = adj

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def avg_degree(self) -> float:
        return 2.0 * self.m / self.n if self.n else 0.0

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            return False
        a, b = (u, v) if len(self.adj[u]) <= len(self.adj[v]) else (v, u)
        return b in self.adj[a]

    def adjacency_matrix(self) -> np.ndarray:
        """Dense n x n binary (uint8) adjacency matrix, zero diagonal."""
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        return a

    @classmethod
    def from_adjacency_matrix(cls, a: np.ndarray) -> "Graph":
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ParameterError("adjacency matrix must be square")
        iu, ju = np.nonzero(np.triu(a, k=1))
        return cls(a.shape[0], list(zip(iu.tolist(), ju.tolist())))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def edge_degree(g: Graph, e: Edge) -> int:
    """Product of the endpoint degrees of edge e, on g as given."""
    u, v = e
    if not g.has_edge(u, v):
        raise KeyError(f"edge {e} not in graph")
    return g.degree(u) * g.degree(v)


class DsuForest:
    """Union-find over 0..n-1 with component sizes and a running maximum.

    find() is path-compressed; union by size.  max_size tracks the largest
    component merged so far (1 for a fresh forest with n >= 1).
    """

    __slots__ = ("parent", "size", "max_size")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.max_size = 1 if n > 0 else 0

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        if self.size[ra] > self.max_size:
            self.max_size = self.size[ra]
        return True


# ---------------------------------------------------------------------------
# Synthetic generators
# ---------------------------------------------------------------------------

def gen_er(n: int, avg_k: float, seed: int | np.random.Generator) -> Graph:
    """Erdos-Renyi G(n, M) graph with M = round(n * avg_k / 2) distinct edges.

    Uniform over edge sets of that size; deterministic given the seed.
    """
    if n < 2:
        raise ParameterError("gen_er requires n >= 2")
    if avg_k < 0:
        raise ParameterError("avg_k must be nonnegative")
    m_target = _round_half_up(n * avg_k / 2.0)
    total = n * (n - 1) // 2
    if m_target > total:
        raise ParameterError(
            f"avg_k={avg_k} infeasible for n={n}: needs {m_target} edges, max {total}"
        )
    rng = _as_rng(seed)
    edges: list[Edge] = []
    if total <= 2_000_000 and m_target > total // 2:
        # dense regime: draw edge indices without replacement
        iu, ju = np.triu_indices(n, k=1)
        for idx in rng.permutation(total)[:m_target]:
            edges.append((int(iu[idx]), int(ju[idx])))
        return Graph(n, edges)
    seen: set[Edge] = set()
    while len(edges) < m_target:
        batch = 2 * (m_target - len(edges)) + 16
        pairs = rng.integers(0, n, size=(batch, 2))
        for u, v in pairs:
            if u == v:
                continue
            e = (int(u), int(v)) if u < v else (int(v), int(u))
            if e in seen:
                continue
            seen.add(e)
            edges.append(e)
            if len(edges) == m_target:
                break
    return Graph(n, edges)


def gen_ba(n: int, m: int, seed: int | np.random.Generator) -> Graph:
    """Barabasi-Albert graph: K_m seed, then n-m nodes each attaching to m
    distinct existing nodes with degree-proportional probability.

    M = m(m-1)/2 + (n-m)*m; deterministic given the seed.
    """
    if m < 1:
        raise ParameterError("gen_ba requires m >= 1")
    if n <= m:
        raise ParameterError(f"gen_ba requires n > m (got n={n}, m={m})")
    rng = _as_rng(seed)
    edges: list[Edge] = [(i, j) for i in range(m) for j in range(i + 1, m)]
    # one entry per unit of degree; attachment samples from this list
    repeated: list[int] = [v for e in edges for v in e]
    for t in range(m, n):
        targets: set[int] = set()
        while len(targets) < m:
            if repeated:
                pick = repeated[int(rng.integers(len(repeated)))]
            else:
                # zero total degree (m=1 first step): uniform over existing
                pick = int(rng.integers(t))
            targets.add(pick)
        for v in sorted(targets):
            edges.append((v, t))
            repeated.append(v)
            repeated.append(t)
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------

def lcc_size(
    g: Graph,
    active_nodes: Iterable[int] | None = None,
    active_edges: Iterable[Edge] | None = None,
) -> int:
    """Size of the largest connected component of the induced subgraph.

    active_nodes=None means all nodes; active_edges=None means all edges
    between active nodes.  Returns 0 when no node is active.  BFS-based;
    independent of the union-find machinery.
    """
    n = g.n
    if n == 0:
        return 0
    if active_nodes is None:
        active = bytearray(b"\x01" * n)
        n_active = n
    else:
        active = bytearray(n)
        for v in active_nodes:
            active[v] = 1
        n_active = sum(active)
    if n_active == 0:
        return 0

    if active_edges is None:
        adj = g.adj
        node_filter = True
    else:
        adj = [[] for _ in range(n)]
        for u, v in active_edges:
            if active[u] and active[v]:
                adj[u].append(v)
                adj[v].append(u)
        node_filter = False

    seen = bytearray(n)
    best = 0
    stack: list[int] = []
    for s in range(n):
        if seen[s] or not active[s]:
            continue
        seen[s] = 1
        stack.append(s)
        size = 0
        while stack:
            x = stack.pop()
            size += 1
            for y in adj[x]:
                if not seen[y] and (not node_filter or active[y]):
                    seen[y] = 1
                    stack.append(y)
        if size > best:
            best = size
    return best


# ---------------------------------------------------------------------------
# Deterministic toy constructors (tests, demos)
# ---------------------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(n: int) -> Graph:
    """K_{1,n-1} with the hub at node 0."""
    return Graph(n, [(0, i) for i in range(1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


# ---------------------------------------------------------------------------
# Edge-list text format
# ---------------------------------------------------------------------------

@dataclass
class EdgeListStats:
    n: int
    m: int
    avg_k: float
    dropped_self_loops: int
    dropped_duplicates: int


def read_edge_list(path: str) -> tuple[Graph, EdgeListStats]:
    """Parse an edge-list text file into a Graph plus ingestion statistics.

    Node labels are arbitrary tokens, remapped to 0..n-1 in first-appearance
    order.  Extra columns after the first two tokens are ignored.
    """
    labels: dict[str, int] = {}
    raw_edges: list[Edge] = []
    seen: set[Edge] = set()
    dropped_self = 0
    dropped_dup = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#") or s.startswith("%"):
                continue
            parts = s.split()
            if len(parts) < 2:
                raise FormatError(f"{path}:{lineno}: expected 'u v', got {s!r}")
            u_lab, v_lab = parts[0], parts[1]
            if u_lab not in labels:
                labels[u_lab] = len(labels)
            u = labels[u_lab]
            if v_lab not in labels:
                labels[v_lab] = len(labels)
            v = labels[v_lab]
            if u == v:
                dropped_self += 1
                continue
            e = (u, v) if u < v else (v, u)
            if e in seen:
                dropped_dup += 1
                continue
            seen.add(e)
            raw_edges.append(e)
    if not labels:
        raise FormatError(f"{path}: no edges found")
    g = Graph(len(labels), raw_edges)
    stats = EdgeListStats(
        n=g.n,
        m=g.m,
        avg_k=g.avg_degree,
        dropped_self_loops=dropped_self,
        dropped_duplicates=dropped_dup,
    )
    return g, stats


def write_edge_list(g: Graph, path: str, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")
