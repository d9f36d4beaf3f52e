"""s-t maximum flow, minimum cuts, and global vertex connectivity.

Undirected edges are modeled as two antiparallel arcs, each carrying the
edge's full capacity. The in-package solver is Dinic's algorithm (BFS level
graph + blocking flow), which handles real-valued capacities and yields a
minimum-cut certificate from residual reachability. Integer-capacity inner
loops (Gomory-Hu construction, vertex connectivity) can be routed through
scipy's compiled max-flow via :func:`min_cut_engine`.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque
from typing import Iterable, Mapping

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, maximum_flow

from .graphs import Graph, is_connected


class CapacityMap:
    """Non-negative capacity per edge; defaults to unit capacity everywhere."""

    __slots__ = ("_caps",)

    def __init__(self, graph: Graph, caps: Mapping[tuple[int, int], float] | None = None):
        if caps is None:
            self._caps = {e: 1 for e in graph.edges}
            return
        normalized = {}
        for (u, v), c in caps.items():
            if c < 0:
                raise ValueError(f"negative capacity on edge ({u}, {v})")
            normalized[(u, v) if u < v else (v, u)] = c
        missing = graph.edges - normalized.keys()
        if missing:
            raise ValueError(f"capacity missing for {len(missing)} edge(s), e.g. {min(missing)}")
        extra = normalized.keys() - graph.edges
        if extra:
            raise ValueError(f"capacity given for non-edge {min(extra)}")
        self._caps = normalized

    @classmethod
    def unit(cls, graph: Graph) -> "CapacityMap":
        return cls(graph)

    def __getitem__(self, edge: tuple[int, int]) -> float:
        u, v = edge
        return self._caps[(u, v) if u < v else (v, u)]

    def values_for(self, edges: Iterable[tuple[int, int]]) -> list[float]:
        return [self[e] for e in edges]


@dataclass(frozen=True)
class FlowResult:
    """Max-flow value with a minimum-cut certificate."""

    value: float
    cut_edges: frozenset[tuple[int, int]]
    source_side: frozenset[int]


class DinicSolver:
    """Dinic's max flow on a fixed arc structure with resettable capacities.

    Arcs are stored as interleaved pairs: arc i and i^1 are mutual reverses.
    An undirected edge contributes one pair with both capacities equal; a
    directed arc contributes a pair whose reverse capacity is zero.
    """

    def __init__(self, num_nodes: int):
        self.n = num_nodes
        self.adj: list[list[int]] = [[] for _ in range(num_nodes)]
        self.arc_to: list[int] = []
        self.cap: list[float] = []
        self._cap0: list[float] | None = None

    def add_arc_pair(self, u: int, v: int, cap_uv: float, cap_vu: float) -> None:
        i = len(self.arc_to)
        self.arc_to.append(v)
        self.arc_to.append(u)
        self.cap.append(cap_uv)
        self.cap.append(cap_vu)
        self.adj[u].append(i)
        self.adj[v].append(i + 1)

    def add_undirected(self, u: int, v: int, capacity: float) -> None:
        self.add_arc_pair(u, v, capacity, capacity)

    def add_directed(self, u: int, v: int, capacity: float) -> None:
        self.add_arc_pair(u, v, capacity, 0)

    def reset(self) -> None:
        if self._cap0 is not None:
            self.cap[:] = self._cap0

    def max_flow(self, s: int, t: int) -> float:
        if self._cap0 is None:
            self._cap0 = self.cap[:]
        n, adj, arc_to, cap = self.n, self.adj, self.arc_to, self.cap
        flow = 0
        while True:
            level = [-1] * n
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for i in adj[u]:
                    v = arc_to[i]
                    if cap[i] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return flow
            # blocking flow: iterative DFS with per-node arc cursors
            cursor = [0] * n
            path: list[int] = []
            u = s
            while True:
                if u == t:
                    aug = min(cap[i] for i in path)
                    for i in path:
                        cap[i] -= aug
                        cap[i ^ 1] += aug
                    flow += aug
                    # restart from s along still-unsaturated prefix
                    u = s
                    path = []
                    continue
                advanced = False
                while cursor[u] < len(adj[u]):
                    i = adj[u][cursor[u]]
                    v = arc_to[i]
                    if cap[i] > 0 and level[v] == level[u] + 1:
                        path.append(i)
                        u = v
                        advanced = True
                        break
                    cursor[u] += 1
                if not advanced:
                    if u == s:
                        break
                    level[u] = -1  # dead end for this phase
                    i = path.pop()
                    u = arc_to[i ^ 1]
                    cursor[u] += 1

    def residual_side(self, s: int) -> list[bool]:
        """Nodes reachable from ``s`` in the residual graph."""
        side = [False] * self.n
        side[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for i in self.adj[u]:
                v = self.arc_to[i]
                if self.cap[i] > 0 and not side[v]:
                    side[v] = True
                    queue.append(v)
        return side


def max_flow(g: Graph, s: int, t: int, cap: CapacityMap | None = None) -> FlowResult:
    """Maximum s-t flow on ``g`` with a minimum-cut certificate.

    Returns the flow value, the edges of a minimum s-t cut, and the set of
    nodes on the source side of that cut.
    """
    if s == t:
        raise ValueError("source and sink must differ")
    if not g.has_node(s) or not g.has_node(t):
        raise ValueError(f"node {s if not g.has_node(s) else t} not in graph")
    if cap is None:
        cap = CapacityMap.unit(g)
    index = {v: i for i, v in enumerate(g.nodes)}
    solver = DinicSolver(g.n)
    edges = g.sorted_edges()
    for u, v in edges:
        solver.add_undirected(index[u], index[v], cap[(u, v)])
    value = solver.max_flow(index[s], index[t])
    side = solver.residual_side(index[s])
    source_side = frozenset(v for v in g.nodes if side[index[v]])
    cut_edges = frozenset((u, v) for u, v in edges if side[index[u]] != side[index[v]])
    return FlowResult(value=value, cut_edges=cut_edges, source_side=source_side)


class _DinicMinCut:
    """Repeated min-cut queries on one graph via the in-package solver."""

    def __init__(self, num_nodes: int, arcs: list[tuple[int, int, float]], directed: bool):
        self._solver = DinicSolver(num_nodes)
        for u, v, c in arcs:
            if directed:
                self._solver.add_directed(u, v, c)
            else:
                self._solver.add_undirected(u, v, c)

    def min_cut(self, s: int, t: int) -> tuple[float, np.ndarray]:
        self._solver.reset()
        value = self._solver.max_flow(s, t)
        side = np.asarray(self._solver.residual_side(s), dtype=bool)
        return value, side

    def flow_value(self, s: int, t: int) -> float:
        self._solver.reset()
        return self._solver.max_flow(s, t)


class _ScipyMinCut:
    """Repeated min-cut queries backed by scipy's compiled Dinic.

    Requires integer capacities. The source side is recovered by a BFS over
    arcs with positive residual capacity.
    """

    def __init__(self, num_nodes: int, arcs: list[tuple[int, int, float]], directed: bool):
        self.n = num_nodes
        rows, cols, data = [], [], []
        for u, v, c in arcs:
            rows.append(u)
            cols.append(v)
            data.append(int(c))
            if not directed:
                rows.append(v)
                cols.append(u)
                data.append(int(c))
        self._csg = csr_matrix(
            (np.asarray(data, dtype=np.int64), (rows, cols)), shape=(num_nodes, num_nodes)
        )
        self._csg.sum_duplicates()
        self._row_of = np.repeat(np.arange(num_nodes), np.diff(self._csg.indptr))

    def min_cut(self, s: int, t: int) -> tuple[float, np.ndarray]:
        result = maximum_flow(self._csg, s, t)
        residual = self._csg.data - result.flow.data
        keep = residual > 0
        res_graph = csr_matrix(
            (np.ones(int(keep.sum()), dtype=np.int8), (self._row_of[keep], self._csg.indices[keep])),
            shape=(self.n, self.n),
        )
        order = breadth_first_order(res_graph, s, directed=True, return_predecessors=False)
        side = np.zeros(self.n, dtype=bool)
        side[order] = True
        side[s] = True
        return int(result.flow_value), side

    def flow_value(self, s: int, t: int) -> float:
        return int(maximum_flow(self._csg, s, t).flow_value)


def min_cut_engine(
    num_nodes: int,
    arcs: list[tuple[int, int, float]],
    directed: bool = False,
    engine: str = "auto",
):
    """Build a repeated min-cut solver over compact node indices 0..num_nodes-1.

    ``engine`` is "dinic", "scipy", or "auto" (scipy whenever every capacity
    is integral, which covers the unit-capacity pipeline).
    """
    if engine == "auto":
        integral = all(float(c).is_integer() for _, _, c in arcs)
        engine = "scipy" if integral else "dinic"
    if engine == "scipy":
        return _ScipyMinCut(num_nodes, arcs, directed)
    if engine == "dinic":
        return _DinicMinCut(num_nodes, arcs, directed)
    raise ValueError(f"unknown engine {engine!r}")


def vertex_connectivity(g: Graph, engine: str = "auto") -> int:
    """Minimum number of node removals that disconnect ``g`` (NodeC).

    Complete graphs return n-1 by convention; disconnected input returns 0.
    Uses the node-splitting reduction: each node becomes an in/out pair
    joined by a unit arc, and s-t node cuts become s_out -> t_in max flows.
    """
    n = g.n
    if n < 2:
        raise ValueError("vertex connectivity needs at least 2 nodes")
    if not is_connected(g):
        return 0
    if g.m == n * (n - 1) // 2:
        return n - 1

    index = {v: i for i, v in enumerate(g.nodes)}
    big = n  # exceeds any node cut, so edge arcs never enter a minimum cut
    arcs: list[tuple[int, int, float]] = []
    for v in g.nodes:
        arcs.append((index[v], index[v] + n, 1))  # v_in -> v_out
    for u, v in g.sorted_edges():
        arcs.append((index[u] + n, index[v], big))
        arcs.append((index[v] + n, index[u], big))
    solver = min_cut_engine(2 * n, arcs, directed=True, engine=engine)

    def local_k(s: int, t: int) -> int:
        return int(solver.flow_value(index[s] + n, index[t]))

    # minimum-degree anchor: its non-neighbors, then non-adjacent neighbor pairs
    anchor = min(g.nodes, key=lambda v: (g.degree(v), v))
    best = g.degree(anchor)
    neighbor_set = set(g.neighbors(anchor))
    for t in g.nodes:
        if t != anchor and t not in neighbor_set:
            best = min(best, local_k(anchor, t))
            if best == 1:
                return 1
    nbrs = g.neighbors(anchor)
    for i, u in enumerate(nbrs):
        for w in nbrs[i + 1 :]:
            if not g.has_edge(u, w):
                best = min(best, local_k(u, w))
                if best == 1:
                    return 1
    return best
