"""Classical graph properties: degree variance, path length, clustering, assortativity."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .exceptions import DisconnectedGraphError
from .graphs import Graph, is_connected


@dataclass(frozen=True)
class PropertyReport:
    """The four properties; None marks values undefined on this graph."""

    dv: float
    aspl: float | None
    acc: float
    asco: float | None


def degree_variance(g: Graph) -> float:
    """Population variance of the degree list: <k^2> - <k>^2."""
    if g.n < 1:
        raise ValueError("degree variance needs at least 1 node")
    degrees = g.degrees()
    n = g.n
    mean = sum(degrees) / n
    mean_sq = sum(d * d for d in degrees) / n
    return mean_sq - mean * mean


def average_shortest_path_length(g: Graph) -> float:
    """Mean BFS hop distance over all unordered node pairs."""
    if g.n < 2:
        raise ValueError("average shortest path length needs at least 2 nodes")
    if not is_connected(g):
        raise DisconnectedGraphError("average shortest path length needs a connected graph")
    index = {v: i for i, v in enumerate(g.nodes)}
    total = 0
    for s in g.nodes:
        dist = [-1] * g.n
        dist[index[s]] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[index[u]]
            for v in g.neighbors(u):
                if dist[index[v]] < 0:
                    dist[index[v]] = du + 1
                    queue.append(v)
        total += sum(dist)
    # ordered pairs counted once each direction
    return total / (g.n * (g.n - 1))


def average_clustering_coefficient(g: Graph) -> float:
    """Mean local clustering coefficient; nodes of degree < 2 contribute 0."""
    if g.n < 1:
        raise ValueError("clustering coefficient needs at least 1 node")
    total = 0.0
    for v in g.nodes:
        nbrs = g.neighbors(v)
        d = len(nbrs)
        if d < 2:
            continue
        links = 0
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1 :]:
                if g.has_edge(u, w):
                    links += 1
        total += 2.0 * links / (d * (d - 1))
    return total / g.n


def assortativity_coefficient(g: Graph) -> float | None:
    """Pearson correlation of degrees across edge endpoints (both orientations).

    Returns None when the endpoint degrees have zero variance (regular
    graphs and other degenerate cases), so callers can exclude the graph
    from correlation analyses instead of propagating a NaN.
    """
    if g.m < 1:
        return None
    xs: list[int] = []
    ys: list[int] = []
    for u, v in g.edges:
        du, dv = g.degree(u), g.degree(v)
        xs.append(du)
        ys.append(dv)
        xs.append(dv)
        ys.append(du)
    k = len(xs)
    mean_x = sum(xs) / k  # == mean of ys by symmetry
    dx = [x - mean_x for x in xs]
    dy = [y - mean_x for y in ys]
    var_x = sum(d * d for d in dx)
    var_y = sum(d * d for d in dy)
    if var_x == 0 or var_y == 0:
        return None
    cov = sum(a * b for a, b in zip(dx, dy))
    return cov / (var_x * var_y) ** 0.5


def property_report(g: Graph) -> PropertyReport:
    """All four properties, with None for the ones undefined on this graph."""
    try:
        aspl = average_shortest_path_length(g)
    except (DisconnectedGraphError, ValueError):
        aspl = None
    return PropertyReport(
        dv=degree_variance(g),
        aspl=aspl,
        acc=average_clustering_coefficient(g),
        asco=assortativity_coefficient(g),
    )
