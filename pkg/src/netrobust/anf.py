"""Average network flow via Gomory-Hu trees.

The pipeline: force unit capacities, build the Gomory-Hu tree with n-1
max-flow computations (Gusfield's contraction-free scheme), then sweep a
single-source least-weight traversal (SSLT) from every node so each tree
path minimum — equal to the pairwise max flow — is collected in O(n) per
source. The plain all-pairs average is kept as an exact reference oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .exceptions import DisconnectedGraphError
from .flow import CapacityMap, max_flow, min_cut_engine
from .graphs import Graph, is_connected


@dataclass(frozen=True)
class GomoryHuTree:
    """Weighted tree on a graph's node set encoding all pairwise max flows.

    The minimum edge weight on the unique tree path between s and t equals
    the maximum s-t flow in the source graph, and removing that edge yields
    a minimum s-t cut bipartition.
    """

    nodes: tuple[int, ...]
    tree_edges: tuple[tuple[int, int, float], ...]
    _adj: dict[int, list[tuple[int, float]]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj: dict[int, list[tuple[int, float]]] = {v: [] for v in self.nodes}
        for u, v, w in self.tree_edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        object.__setattr__(self, "_adj", adj)

    def neighbors(self, v: int) -> list[tuple[int, float]]:
        return self._adj[v]

    def path_min_weight(self, s: int, t: int) -> float:
        """Minimum edge weight on the s-t tree path (walked explicitly)."""
        if s == t:
            raise ValueError("path endpoints must differ")
        # DFS from s remembering the running minimum
        stack: list[tuple[int, int, float]] = [(s, 0, float("inf"))]
        while stack:
            u, parent, running = stack.pop()
            for v, w in self._adj[u]:
                if v == parent:
                    continue
                best = w if w < running else running
                if v == t:
                    return best
                stack.append((v, u, best))
        raise ValueError(f"no path between {s} and {t}")

    def to_edge_list(self) -> str:
        """Serialize as "u v w" lines with an "# n=" header."""
        lines = [f"# n={len(self.nodes)}"]
        for u, v, w in sorted(self.tree_edges):
            lines.append(f"{u} {v} {w:g}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FlowMatrix:
    """Dense symmetric table of pairwise max flows; diagonal unused."""

    nodes: tuple[int, ...]
    values: np.ndarray

    def __getitem__(self, pair: tuple[int, int]) -> float:
        u, v = pair
        i = self.nodes.index(u)
        j = self.nodes.index(v)
        return float(self.values[i, j])


def gomory_hu_tree(g: Graph, cap: CapacityMap | None = None, engine: str = "auto") -> GomoryHuTree:
    """Gomory-Hu tree of a connected graph using n-1 max-flow computations."""
    if g.n == 0:
        raise ValueError("empty graph has no Gomory-Hu tree")
    if not is_connected(g):
        raise DisconnectedGraphError("Gomory-Hu tree is undefined across components")
    if cap is None:
        cap = CapacityMap.unit(g)
    nodes = g.nodes
    n = g.n
    if n == 1:
        return GomoryHuTree(nodes, ())
    index = {v: i for i, v in enumerate(nodes)}
    arcs = [(index[u], index[v], cap[(u, v)]) for u, v in g.sorted_edges()]
    solver = min_cut_engine(n, arcs, directed=False, engine=engine)

    # Gusfield: node i is cut from its current parent; nodes on i's side that
    # hang off the same parent are re-parented to i.
    parent = np.zeros(n, dtype=np.int64)
    parent[0] = -1
    weight = np.zeros(n, dtype=np.float64)
    ids = np.arange(n)
    for i in range(1, n):
        t = int(parent[i])
        value, side = solver.min_cut(i, t)
        weight[i] = value
        mask = side & (parent == t) & (ids != i)
        parent[mask] = i
        gp = int(parent[t])
        if gp >= 0 and side[gp]:
            parent[i] = gp
            parent[t] = i
            weight[i] = weight[t]
            weight[t] = value
    edges = tuple(
        (nodes[i], nodes[int(parent[i])], float(weight[i])) for i in range(n) if parent[i] >= 0
    )
    return GomoryHuTree(nodes, edges)


def sslt(tree: GomoryHuTree, source: int) -> dict[int, float]:
    """Single-source least weight: min path-edge weight from ``source`` to all nodes.

    One depth-first traversal of the tree; the recursion of the textbook
    formulation is replaced by an explicit stack so path-shaped trees of any
    size are safe.
    """
    if source not in tree._adj:
        raise ValueError(f"unknown node {source}")
    row: dict[int, float] = {}
    stack: list[tuple[int, int]] = [(source, 0)]
    while stack:
        current, parent = stack.pop()
        at_source = current == source
        for nbr, w in tree.neighbors(current):
            if nbr == parent:
                continue
            if at_source:
                row[nbr] = w
            else:
                upstream = row[current]
                row[nbr] = w if w < upstream else upstream
            stack.append((nbr, current))
    return row


def _compact_tree(tree: GomoryHuTree) -> list[list[tuple[int, float]]]:
    index = {v: i for i, v in enumerate(tree.nodes)}
    adj: list[list[tuple[int, float]]] = [[] for _ in tree.nodes]
    for u, v, w in tree.tree_edges:
        ui, vi = index[u], index[v]
        adj[ui].append((vi, w))
        adj[vi].append((ui, w))
    return adj


def _sslt_rows(adj: list[list[tuple[int, float]]], source: int, row: list[float]) -> None:
    # same traversal as sslt() on compact indices, writing into a reused row
    stack = [(source, -1)]
    while stack:
        current, parent = stack.pop()
        at_source = current == source
        for nbr, w in adj[current]:
            if nbr == parent:
                continue
            if at_source:
                row[nbr] = w
            else:
                upstream = row[current]
                row[nbr] = w if w < upstream else upstream
            stack.append((nbr, current))


def flow_matrix(g: Graph, engine: str = "auto") -> FlowMatrix:
    """All-pairs max flows under unit capacities, via the Gomory-Hu tree."""
    tree = gomory_hu_tree(g, CapacityMap.unit(g), engine=engine)
    n = len(tree.nodes)
    adj = _compact_tree(tree)
    values = np.zeros((n, n), dtype=np.float64)
    row = [0.0] * n
    for s in range(n):
        _sslt_rows(adj, s, row)
        for t in range(n):
            if t != s:
                values[s, t] = row[t]
    return FlowMatrix(tree.nodes, values)


def anf(g: Graph, engine: str = "auto") -> float:
    """Average max flow over all unordered node pairs, unit capacities.

    Streams one SSLT row per source instead of materializing the full
    flow table; the sum is identical because flows are symmetric.
    """
    if g.n < 2:
        raise ValueError("ANF needs at least 2 nodes")
    tree = gomory_hu_tree(g, CapacityMap.unit(g), engine=engine)
    n = len(tree.nodes)
    adj = _compact_tree(tree)
    row = [0.0] * n
    total = 0.0
    for s in range(n):
        _sslt_rows(adj, s, row)
        total += sum(row[t] for t in range(s + 1, n))
    return 2.0 * total / (n * (n - 1))


def anf_bruteforce(g: Graph) -> float:
    """Exact reference: average unit-capacity max flow computed pair by pair.

    Quadratically many max-flow calls; intended for modest n as an oracle
    for the tree-based path.
    """
    if g.n < 2:
        raise ValueError("ANF needs at least 2 nodes")
    if not is_connected(g):
        raise DisconnectedGraphError("ANF is undefined on disconnected graphs")
    cap = CapacityMap.unit(g)
    nodes = g.nodes
    total = 0.0
    for i, s in enumerate(nodes):
        for t in nodes[i + 1 :]:
            total += max_flow(g, s, t, cap).value
    n = g.n
    return 2.0 * total / (n * (n - 1))


def check_tree_flows(
    tree: GomoryHuTree,
    g: Graph,
    cap: CapacityMap | None = None,
    pairs: list[tuple[int, int]] | None = None,
) -> None:
    """Assert tree path minima match direct max-flow values (all pairs by default)."""
    if cap is None:
        cap = CapacityMap.unit(g)
    if pairs is None:
        pairs = [(s, t) for i, s in enumerate(g.nodes) for t in g.nodes[i + 1 :]]
    for s, t in pairs:
        expected = max_flow(g, s, t, cap).value
        got = tree.path_min_weight(s, t)
        if got != expected:
            raise AssertionError(f"tree path min {got} != max flow {expected} for pair ({s}, {t})")
