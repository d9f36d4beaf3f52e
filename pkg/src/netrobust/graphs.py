"""Simple undirected graphs with positive integer node labels."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .exceptions import EdgeListError

_HEADER_RE = re.compile(r"#\s*n\s*=\s*(\d+)\s*$")


class Graph:
    """Immutable simple undirected graph.

    Freshly built graphs carry labels 1..n; node removal keeps the surviving
    labels, so the node set is explicit rather than implied by a count.
    Duplicate edges passed to the constructor are collapsed; self-loops are
    rejected.
    """

    __slots__ = ("_nodes", "_edges", "_adj")

    def __init__(self, nodes: int | Iterable[int], edges: Iterable[tuple[int, int]] = ()):
        if isinstance(nodes, int):
            if nodes < 0:
                raise ValueError("node count must be non-negative")
            node_tuple = tuple(range(1, nodes + 1))
        else:
            node_tuple = tuple(sorted(set(nodes)))
        if node_tuple and node_tuple[0] < 1:
            raise ValueError("node labels must be positive integers")
        adj: dict[int, list[int]] = {v: [] for v in node_tuple}
        edge_set = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if u not in adj or v not in adj:
                raise ValueError(f"edge ({u}, {v}) references an unknown node")
            key = (u, v) if u < v else (v, u)
            if key in edge_set:
                continue
            edge_set.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self._nodes = node_tuple
        self._edges = frozenset(edge_set)
        self._adj = {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}

    @property
    def n(self) -> int:
        return len(self._nodes)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def nodes(self) -> tuple[int, ...]:
        return self._nodes

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        """Edges as (u, v) pairs with u < v."""
        return self._edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def has_node(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        """Degrees in node-label order."""
        return [len(self._adj[v]) for v in self._nodes]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._nodes == other._nodes and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._nodes, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __reduce__(self):
        return (Graph, (self._nodes, self.sorted_edges()))


@dataclass(frozen=True)
class ComponentPartition:
    """Connected-component assignment: node -> component id, id -> size."""

    assignment: dict[int, int]
    sizes: dict[int, int]

    @property
    def count(self) -> int:
        return len(self.sizes)

    @property
    def largest_size(self) -> int:
        return max(self.sizes.values(), default=0)


def connected_components(g: Graph) -> ComponentPartition:
    """Partition the nodes of ``g`` into connected components via BFS."""
    assignment: dict[int, int] = {}
    sizes: dict[int, int] = {}
    comp = 0
    for start in g.nodes:
        if start in assignment:
            continue
        assignment[start] = comp
        size = 1
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if v not in assignment:
                    assignment[v] = comp
                    size += 1
                    queue.append(v)
        sizes[comp] = size
        comp += 1
    return ComponentPartition(assignment, sizes)


def is_connected(g: Graph) -> bool:
    """True when ``g`` has at most one connected component."""
    if g.n <= 1:
        return True
    return connected_components(g).count == 1


def remove_node(g: Graph, v: int) -> Graph:
    """Return a copy of ``g`` without ``v`` and its incident edges."""
    if not g.has_node(v):
        raise ValueError(f"unknown node {v}")
    nodes = [u for u in g.nodes if u != v]
    edges = [(a, b) for a, b in g.edges if a != v and b != v]
    return Graph(nodes, edges)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    """Return a copy of ``g`` with the edge {u, v} added."""
    if u == v:
        raise ValueError(f"self-loop at node {u}")
    if not g.has_node(u) or not g.has_node(v):
        raise ValueError(f"edge ({u}, {v}) references an unknown node")
    if g.has_edge(u, v):
        raise ValueError(f"edge ({u}, {v}) already present")
    return Graph(g.nodes, list(g.edges) + [(u, v)])


def from_edge_list(text: str) -> Graph:
    """Parse the edge-list format: lines of "u v", '#' comments.

    An optional first line "# n=<N>" declares the node count, allowing
    isolated trailing nodes; otherwise n is the largest label observed.
    """
    declared_n = None
    edges = []
    max_seen = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if lineno == 1:
                match = _HEADER_RE.match(line)
                if match:
                    declared_n = int(match.group(1))
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListError(lineno, f"expected two node ids, got {len(tokens)} tokens")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListError(lineno, f"malformed node id in {tokens!r}") from None
        if u < 1 or v < 1:
            raise EdgeListError(lineno, "node ids must be positive integers")
        if u == v:
            raise EdgeListError(lineno, f"self-loop at node {u}")
        if declared_n is not None and max(u, v) > declared_n:
            raise EdgeListError(lineno, f"node id {max(u, v)} exceeds declared n={declared_n}")
        edges.append((u, v))
        max_seen = max(max_seen, u, v)
    n = declared_n if declared_n is not None else max_seen
    return Graph(n, edges)


def to_edge_list(g: Graph) -> str:
    """Serialize ``g`` to the edge-list format (with an "# n=" header).

    The format cannot express gaps in the label range, so graphs whose
    labels are not exactly 1..n are rejected.
    """
    if g.nodes != tuple(range(1, g.n + 1)):
        raise ValueError("edge-list format requires contiguous labels 1..n")
    lines = [f"# n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"
