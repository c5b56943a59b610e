"""Removal scenarios, removal orders, and attack-curve computation.

A removal scenario fixes what is removed (nodes or edges) and how the
removal order is chosen: uniformly at random (RNF / REF) or ranked by
degree / edge degree computed on the original graph (HDAA / HEDAA).

An attack curve samples the relative size of the largest connected
component over the removal-fraction grid p_j = j/steps, j = 0..steps-1.
Every removal set is taken from the ORIGINAL graph: the set removed at
p_j is the first round_half_up(p_j * P) items of a single total order
(P = node count for node scenarios, edge count for edge scenarios).
Nested prefixes make curves non-increasing and allow the incremental
reverse union-find pass used by attack_curve.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ParameterError
from .graph import DsuForest, Graph, lcc_size, _as_rng

#: An attack curve is a float array of length steps with values in [0, 1].
AttackCurve = np.ndarray


class Scenario(enum.Enum):
    """The four removal scenarios."""

    RNF = "rnf"      # random node failure
    HDAA = "hdaa"    # high-degree attack, ranked on the original graph
    REF = "ref"      # random edge failure
    HEDAA = "hedaa"  # high-edge-degree attack, ranked on the original graph

    @property
    def targets_edges(self) -> bool:
        return self in (Scenario.REF, Scenario.HEDAA)

    @property
    def is_random(self) -> bool:
        return self in (Scenario.RNF, Scenario.REF)

    @property
    def code(self) -> int:
        return _SCENARIO_CODES[self]

    @classmethod
    def from_code(cls, code: int) -> "Scenario":
        for s, c in _SCENARIO_CODES.items():
            if c == code:
                return s
        raise ParameterError(f"unknown scenario code {code}")

    @classmethod
    def parse(cls, name: str) -> "Scenario":
        try:
            return cls(name.lower())
        except ValueError:
            raise ParameterError(f"unknown scenario {name!r}") from None


_SCENARIO_CODES = {Scenario.RNF: 0, Scenario.HDAA: 1, Scenario.REF: 2, Scenario.HEDAA: 3}


@dataclass(frozen=True)
class CurveSpec:
    """Grid resolution of an attack curve: p_j = j/steps for j = 0..steps-1."""

    steps: int

    def __post_init__(self):
        if self.steps < 1:
            raise ParameterError("steps must be >= 1")

    @property
    def grid(self) -> np.ndarray:
        return np.arange(self.steps) / self.steps


@dataclass(frozen=True)
class RemovalOrder:
    """A scenario-determined total order over all nodes or all edges.

    items is a permutation of node ids (node scenarios) or edge indices
    into graph.edges (edge scenarios).
    """

    scenario: Scenario
    items: tuple[int, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.items)


def removal_order(
    g: Graph,
    scenario: Scenario,
    seed: int | np.random.Generator | None = None,
    adaptive: bool = False,
) -> RemovalOrder:
    """Build the removal order for a scenario on the original graph.

    RNF/REF: seeded uniform permutation.  HDAA: nodes by descending degree,
    ties by ascending id.  HEDAA: edges by descending edge degree, ties by
    ascending (min, max) endpoint pair.  adaptive=True re-ranks HDAA/HEDAA
    after every single removal instead of using the static original-graph
    ranking (slower; off by default).
    """
    if g.n == 0:
        raise ParameterError("graph is empty")
    if scenario.is_random:
        if seed is None:
            raise ParameterError(f"{scenario.value} needs a seed")
        rng = _as_rng(seed)
        count = len(g.edges) if scenario.targets_edges else g.n
        items = tuple(int(x) for x in rng.permutation(count))
        return RemovalOrder(scenario, items)
    if scenario is Scenario.HDAA:
        if adaptive:
            return RemovalOrder(scenario, _adaptive_degree_order(g))
        deg = g.degrees()
        items = tuple(sorted(range(g.n), key=lambda v: (-deg[v], v)))
        return RemovalOrder(scenario, items)
    # HEDAA
    if adaptive:
        return RemovalOrder(scenario, _adaptive_edge_degree_order(g))
    deg = g.degrees()
    ke = [deg[u] * deg[v] for u, v in g.edges]
    items = tuple(sorted(range(len(g.edges)), key=lambda i: (-ke[i], g.edges[i])))
    return RemovalOrder(scenario, items)


def _adaptive_degree_order(g: Graph) -> tuple[int, ...]:
    # lazy-invalidation heap; entries are (-deg, node)
    deg = g.degrees()
    removed = bytearray(g.n)
    heap = [(-deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    order: list[int] = []
    while len(order) < g.n:
        d, v = heapq.heappop(heap)
        if removed[v] or -d != deg[v]:
            if not removed[v]:
                heapq.heappush(heap, (-deg[v], v))
            continue
        removed[v] = 1
        order.append(v)
        for u in g.adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (-deg[u], u))
    return tuple(order)


def _adaptive_edge_degree_order(g: Graph) -> tuple[int, ...]:
    deg = g.degrees()
    edges = g.edges
    removed = bytearray(len(edges))
    heap = [(-deg[u] * deg[v], (u, v), i) for i, (u, v) in enumerate(edges)]
    heapq.heapify(heap)
    order: list[int] = []
    while len(order) < len(edges):
        ke, (u, v), i = heapq.heappop(heap)
        if removed[i]:
            continue
        if -ke != deg[u] * deg[v]:
            heapq.heappush(heap, (-deg[u] * deg[v], (u, v), i))
            continue
        removed[i] = 1
        order.append(i)
        deg[u] -= 1
        deg[v] -= 1
    return tuple(order)


def removal_counts(steps: int, population: int) -> list[int]:
    """Items removed at each grid point: round-half-up of (j/steps) * population."""
    return [(2 * j * population + steps) // (2 * steps) for j in range(steps)]


def attack_curve(g: Graph, order: RemovalOrder, spec: CurveSpec) -> AttackCurve:
    """Relative LCC size over the removal grid, in one reverse union-find pass.

    Items are re-inserted in reverse order into a DsuForest and the running
    maximum component size is read off at each prefix boundary, so the whole
    curve costs O((N + M) * alpha) instead of steps full recomputations.
    """
    n = g.n
    if n == 0:
        raise ParameterError("graph is empty")
    steps = spec.steps
    if order.scenario.targets_edges:
        if len(order.items) != g.m:
            raise ParameterError("edge order does not match graph")
        counts = removal_counts(steps, g.m)
        edges = g.edges
        items = order.items
        dsu = DsuForest(n)
        values = [0.0] * steps
        idx = g.m
        for j in range(steps - 1, -1, -1):
            target = counts[j]
            while idx > target:
                idx -= 1
                u, v = edges[items[idx]]
                dsu.union(u, v)
            values[j] = dsu.max_size / n
        return np.array(values)

    if len(order.items) != n:
        raise ParameterError("node order does not match graph")
    counts = removal_counts(steps, n)
    items = order.items
    adj = g.adj
    dsu = DsuForest(n)
    active = bytearray(n)
    n_active = 0
    values = [0.0] * steps
    idx = n
    for j in range(steps - 1, -1, -1):
        target = counts[j]
        while idx > target:
            idx -= 1
            v = items[idx]
            active[v] = 1
            n_active += 1
            for u in adj[v]:
                if active[u]:
                    dsu.union(u, v)
        # inactive nodes are size-1 singletons in the forest, so max_size is
        # the active LCC whenever at least one node is active
        values[j] = dsu.max_size / n if n_active else 0.0
    return np.array(values)


def naive_attack_curve(g: Graph, order: RemovalOrder, spec: CurveSpec) -> AttackCurve:
    """Reference curve: rebuild the residual graph and BFS at every grid point.

    Mirrors the per-p full recomputation a direct simulation performs; used
    as the correctness oracle for attack_curve and as the benchmark baseline.
    """
    n = g.n
    if n == 0:
        raise ParameterError("graph is empty")
    steps = spec.steps
    values = [0.0] * steps
    if order.scenario.targets_edges:
        counts = removal_counts(steps, g.m)
        for j in range(steps):
            removed = set(order.items[: counts[j]])
            kept = [g.edges[i] for i in range(g.m) if i not in removed]
            values[j] = lcc_size(g, active_edges=kept) / n
    else:
        counts = removal_counts(steps, n)
        for j in range(steps):
            removed = set(order.items[: counts[j]])
            kept_nodes = [v for v in range(n) if v not in removed]
            values[j] = lcc_size(g, active_nodes=kept_nodes) / n
    return np.array(values)


def resampled_attack_curve(
    g: Graph, scenario: Scenario, spec: CurveSpec, seed: int | np.random.Generator
) -> AttackCurve:
    """Random-failure curve with an independent uniform removal set per p.

    Fidelity variant of the nested-prefix default: each grid point draws its
    own removal set, so the curve is not guaranteed monotone.  Only defined
    for RNF/REF.
    """
    if not scenario.is_random:
        raise ParameterError("resampling applies to RNF/REF only")
    n = g.n
    if n == 0:
        raise ParameterError("graph is empty")
    rng = _as_rng(seed)
    population = g.m if scenario.targets_edges else n
    counts = removal_counts(spec.steps, population)
    values = [0.0] * spec.steps
    for j, c in enumerate(counts):
        removed = set(int(x) for x in rng.permutation(population)[:c])
        if scenario.targets_edges:
            kept = [g.edges[i] for i in range(g.m) if i not in removed]
            values[j] = lcc_size(g, active_edges=kept) / n
        else:
            kept_nodes = [v for v in range(n) if v not in removed]
            values[j] = lcc_size(g, active_nodes=kept_nodes) / n
    return np.array(values)


def curve_ensemble(
    g: Graph,
    scenario: Scenario,
    spec: CurveSpec,
    realizations: int,
    seed: int,
    independent_per_p: bool = False,
) -> list[AttackCurve]:
    """Batch of attack curves for mean/std reporting.

    RNF/REF: one curve per independently seeded order (realization i uses
    seed + i).  HDAA/HEDAA are deterministic, so the single curve is
    returned and realizations is coerced to 1.
    """
    if realizations < 1:
        raise ParameterError("realizations must be >= 1")
    if not scenario.is_random:
        return [attack_curve(g, removal_order(g, scenario), spec)]
    if independent_per_p:
        return [
            resampled_attack_curve(g, scenario, spec, seed + i)
            for i in range(realizations)
        ]
    return [
        attack_curve(g, removal_order(g, scenario, seed + i), spec)
        for i in range(realizations)
    ]


def write_curve_csv(curve: Sequence[float], path_or_file) -> None:
    """Export a curve as CSV with header ``p,value``, 9 significant digits."""
    steps = len(curve)
    own = isinstance(path_or_file, str)
    fh = open(path_or_file, "w", encoding="utf-8") if own else path_or_file
    try:
        fh.write("p,value\n")
        for j, v in enumerate(curve):
            fh.write(f"{j / steps:.9g},{v:.9g}\n")
    finally:
        if own:
            fh.close()
