"""Percolation-style robustness: critical fraction and the targeted-attack R.

The attack loop removes the highest-degree node each round (degrees
recomputed on the survivors, ties broken toward the smallest label) and
tracks the largest-component size down to the empty graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .exceptions import UndefinedMetricError
from .graphs import Graph


@dataclass(frozen=True)
class AttackTrace:
    """Removal order and largest-component size after each round."""

    removal_order: tuple[int, ...]
    lc_sizes: tuple[int, ...]

    def to_csv(self) -> str:
        lines = ["round,removed_node,lc_size"]
        for i, (node, lc) in enumerate(zip(self.removal_order, self.lc_sizes), start=1):
            lines.append(f"{i},{node},{lc}")
        return "\n".join(lines) + "\n"


def critical_fraction(g: Graph) -> float:
    """Fraction of random node failures that collapses the largest component.

    Closed form from the degree moments: 1 - 1/(<k^2>/<k> - 1). Undefined
    when the moment ratio does not exceed 1 (e.g. perfect matchings).
    """
    if g.m < 1:
        raise UndefinedMetricError("critical fraction needs at least one edge")
    degrees = g.degrees()
    sum_d = sum(degrees)
    sum_d2 = sum(d * d for d in degrees)
    kappa = sum_d2 / sum_d  # equals <k^2>/<k>; exact for the all-regular cases
    if kappa <= 1:
        raise UndefinedMetricError(f"degree-moment ratio {kappa} <= 1, critical fraction undefined")
    return 1.0 - 1.0 / (kappa - 1.0)


def attack_trace(g: Graph) -> AttackTrace:
    """Simulate the adaptive highest-degree attack until no nodes remain."""
    nodes = list(g.nodes)
    alive = {v: True for v in nodes}
    degree = {v: g.degree(v) for v in nodes}
    order: list[int] = []
    lc_sizes: list[int] = []
    remaining = len(nodes)
    while remaining:
        target = max((v for v in nodes if alive[v]), key=lambda v: (degree[v], -v))
        alive[target] = False
        remaining -= 1
        for nbr in g.neighbors(target):
            if alive[nbr]:
                degree[nbr] -= 1
        order.append(target)
        lc_sizes.append(_largest_component(g, alive, remaining))
    return AttackTrace(tuple(order), tuple(lc_sizes))


def _largest_component(g: Graph, alive: dict[int, bool], remaining: int) -> int:
    best = 0
    seen: set[int] = set()
    for start in g.nodes:
        if not alive[start] or start in seen:
            continue
        size = 1
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if alive[v] and v not in seen:
                    seen.add(v)
                    size += 1
                    queue.append(v)
        best = max(best, size)
        if best >= remaining - len(seen):  # nothing unexplored can be larger
            break
    return best


def r_metric(g: Graph, trace: AttackTrace | None = None) -> float:
    """Mean largest-component fraction over the attack rounds (including the last, empty one)."""
    if g.n < 1:
        raise ValueError("R metric needs at least 1 node")
    if trace is None:
        trace = attack_trace(g)
    n = g.n
    return sum(trace.lc_sizes) / (n * n)
