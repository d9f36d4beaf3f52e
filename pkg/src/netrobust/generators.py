"""Seeded graph generators with exact node and edge counts.

All models land on exactly (n, m) so cross-model comparisons stay fair:
ER samples m distinct edges, WS rewiring is count-preserving, BA growth is
post-adjusted with random edge insertions/deletions, and the
degree-distribution sweep realizes explicit degree sequences. Every graph
draws from an independent RNG stream derived from (seed, model, index), so
generation is reproducible graph by graph and safe to parallelize.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Sequence

from .exceptions import GenerationError
from .graphs import Graph, connected_components, is_connected


@dataclass(frozen=True)
class DegreeSequence:
    """Target degrees for one realized graph."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        if any(d < 1 for d in self.degrees):
            raise ValueError("degrees must all be >= 1")
        if sum(self.degrees) % 2:
            raise ValueError("degree sum must be even")

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def m(self) -> int:
        return sum(self.degrees) // 2

    def variance(self) -> float:
        n = len(self.degrees)
        mean = sum(self.degrees) / n
        return sum(d * d for d in self.degrees) / n - mean * mean


@dataclass
class GenSpec:
    """Parameters for one generation run."""

    model: str
    n: int
    m: int
    count: int = 1
    seed: int = 0
    ws_rewire_p: float = 0.1
    max_retries: int = 100
    ba_attach: int | None = None


def substream(seed: int, label: str, index: int) -> random.Random:
    """Independent RNG stream for (seed, label, index), stable across processes."""
    key = f"{seed}:{label}:{index}".encode()
    digest = hashlib.sha256(key).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def is_graphical(degrees: Sequence[int]) -> bool:
    """Erdős–Gallai test: can ``degrees`` be realized by a simple graph?"""
    if any(d < 0 for d in degrees):
        return False
    if sum(degrees) % 2:
        return False
    ds = sorted(degrees, reverse=True)
    n = len(ds)
    prefix = 0
    for k in range(1, n + 1):
        prefix += ds[k - 1]
        tail = sum(min(d, k) for d in ds[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


def _stub_match(degrees: Sequence[int], rng: random.Random) -> set[tuple[int, int]] | None:
    """One configuration-model pairing attempt; None if it collides."""
    stubs: list[int] = []
    for v, d in enumerate(degrees, start=1):
        stubs.extend([v] * d)
    rng.shuffle(stubs)
    edges: set[tuple[int, int]] = set()
    for i in range(0, len(stubs), 2):
        u, v = stubs[i], stubs[i + 1]
        if u == v:
            return None
        key = (u, v) if u < v else (v, u)
        if key in edges:
            return None
        edges.add(key)
    return edges


def _havel_hakimi(degrees: Sequence[int], rng: random.Random) -> set[tuple[int, int]]:
    """Havel–Hakimi construction with randomized tie order (input must be graphical)."""
    remaining = [(d, v) for v, d in enumerate(degrees, start=1)]
    edges: set[tuple[int, int]] = set()
    while True:
        rng.shuffle(remaining)  # randomize among equal degrees
        remaining.sort(key=lambda t: -t[0])
        d, v = remaining[0]
        if d == 0:
            return edges
        if d > len(remaining) - 1:
            raise GenerationError("degree sequence not graphical")
        remaining[0] = (0, v)
        for i in range(1, d + 1):
            di, u = remaining[i]
            if di == 0:
                raise GenerationError("degree sequence not graphical")
            remaining[i] = (di - 1, u)
            edges.add((u, v) if u < v else (v, u))


def _edge_swap_shuffle(edges: set[tuple[int, int]], rng: random.Random, attempts: int) -> None:
    """Randomize an edge set in place with degree-preserving double-edge swaps."""
    elist = sorted(edges)
    for _ in range(attempts):
        i = rng.randrange(len(elist))
        j = rng.randrange(len(elist))
        if i == j:
            continue
        a, b = elist[i]
        c, d = elist[j]
        if rng.random() < 0.5:
            c, d = d, c
        # propose (a, c), (b, d)
        if len({a, b, c, d}) < 4:
            continue
        e1 = (a, c) if a < c else (c, a)
        e2 = (b, d) if b < d else (d, b)
        if e1 in edges or e2 in edges:
            continue
        edges.discard((a, b))
        edges.discard((c, d) if c < d else (d, c))
        edges.add(e1)
        edges.add(e2)
        elist[i] = e1
        elist[j] = e2


def _connect_by_swaps(
    n: int, edges: set[tuple[int, int]], rng: random.Random
) -> set[tuple[int, int]] | None:
    """Merge components with cross-component double-edge swaps (degree-preserving).

    Swapping one edge from each of two components never creates a duplicate
    or a self-loop, so each swap reduces the component count by one. Fails
    (None) only when some component has no edge, i.e. an isolated node.
    """
    while True:
        parts = connected_components(Graph(n, sorted(edges)))
        if parts.count <= 1:
            return edges
        by_comp: dict[int, list[tuple[int, int]]] = {}
        for e in sorted(edges):
            by_comp.setdefault(parts.assignment[e[0]], []).append(e)
        if len(by_comp) < parts.count:
            return None  # an edgeless component cannot be merged by swaps
        comp_ids = sorted(by_comp)
        c1, c2 = rng.sample(comp_ids, 2)
        a, b = rng.choice(by_comp[c1])
        c, d = rng.choice(by_comp[c2])
        edges.discard((a, b))
        edges.discard((c, d))
        edges.add((a, c) if a < c else (c, a))
        edges.add((b, d) if b < d else (d, b))


def realize_degree_sequence(
    degrees: Sequence[int] | DegreeSequence, rng: random.Random, max_retries: int = 100
) -> Graph:
    """Random connected simple graph with exactly the given degree sequence.

    Stub matching with rejection of collisions; after repeated rejection,
    falls back to randomized Havel–Hakimi followed by double-edge-swap
    shuffling. Connectivity is then enforced by degree-preserving
    cross-component swaps.
    """
    if isinstance(degrees, DegreeSequence):
        degrees = degrees.degrees
    degrees = list(degrees)
    n = len(degrees)
    if sum(degrees) % 2:
        raise ValueError("degree sum must be even")
    if not is_graphical(degrees):
        raise ValueError("degree sequence is not graphical")
    if n > 1 and sum(degrees) < 2 * (n - 1):
        raise GenerationError("too few edges for any connected realization")
    if n <= 1:
        return Graph(n, [])

    for _ in range(max_retries):
        edges = _stub_match(degrees, rng)
        if edges is None:
            continue
        connected = _connect_by_swaps(n, edges, rng)
        if connected is not None:
            return Graph(n, sorted(connected))
    # graphical but stub matching keeps colliding: construct then shuffle
    edges = _havel_hakimi(degrees, rng)
    _edge_swap_shuffle(edges, rng, attempts=10 * max(1, len(edges)))
    connected = _connect_by_swaps(n, edges, rng)
    if connected is None:
        raise GenerationError("could not realize a connected graph for the degree sequence")
    return Graph(n, sorted(connected))


def _er_edges(n: int, m: int, rng: random.Random) -> list[tuple[int, int]]:
    max_m = n * (n - 1) // 2
    if max_m <= 200_000 or m * 3 > max_m:
        pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
        return rng.sample(pairs, m)
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        u = rng.randrange(1, n + 1)
        v = rng.randrange(1, n + 1)
        if u != v:
            edges.add((u, v) if u < v else (v, u))
    return sorted(edges)


def gen_er(spec: GenSpec) -> list[Graph]:
    """Uniform random graphs with exactly m edges (G(n, m)), connected."""
    graphs, _ = _generate_er(spec)
    return graphs


def _generate_er(spec: GenSpec) -> tuple[list[Graph], dict]:
    _check_common(spec)
    graphs = []
    retries = []
    for i in range(1, spec.count + 1):
        rng = substream(spec.seed, "er", i)
        for attempt in range(spec.max_retries):
            g = Graph(spec.n, _er_edges(spec.n, spec.m, rng))
            if is_connected(g):
                graphs.append(g)
                retries.append(attempt)
                break
        else:
            raise GenerationError(f"er graph {i}: no connected sample in {spec.max_retries} tries")
    return graphs, {"retries": retries}


def gen_ba(spec: GenSpec) -> list[Graph]:
    """Preferential-attachment graphs adjusted to exactly m edges, connected."""
    graphs, _ = _generate_ba(spec)
    return graphs


def _generate_ba(spec: GenSpec) -> tuple[list[Graph], dict]:
    _check_common(spec)
    attach = spec.ba_attach if spec.ba_attach is not None else max(1, round(spec.m / spec.n))
    core = attach + 1  # initial clique
    if spec.n < core:
        raise GenerationError(f"ba needs n >= {core} for attachment degree {attach}")
    graphs = []
    added_counts = []
    removed_counts = []
    for i in range(1, spec.count + 1):
        rng = substream(spec.seed, "ba", i)
        for attempt in range(spec.max_retries):
            edges: set[tuple[int, int]] = set()
            repeated: list[int] = []
            for u in range(1, core + 1):
                for v in range(u + 1, core + 1):
                    edges.add((u, v))
                repeated.extend([u] * (core - 1))
            for v in range(core + 1, spec.n + 1):
                targets: set[int] = set()
                while len(targets) < attach:
                    targets.add(rng.choice(repeated))
                for t in sorted(targets):
                    edges.add((t, v))
                    repeated.append(t)
                repeated.extend([v] * attach)
            added, removed = _adjust_edge_count(spec.n, spec.m, edges, rng, spec.max_retries)
            g = Graph(spec.n, sorted(edges))
            if is_connected(g):
                graphs.append(g)
                added_counts.append(added)
                removed_counts.append(removed)
                break
        else:
            raise GenerationError(f"ba graph {i}: no connected sample in {spec.max_retries} tries")
    return graphs, {
        "attach": attach,
        "edges_added": added_counts,
        "edges_removed": removed_counts,
    }


def _adjust_edge_count(
    n: int, target_m: int, edges: set[tuple[int, int]], rng: random.Random, max_retries: int
) -> tuple[int, int]:
    """Insert random absent edges / delete random non-bridging edges to hit target_m."""
    added = 0
    removed = 0
    while len(edges) < target_m:
        u = rng.randrange(1, n + 1)
        v = rng.randrange(1, n + 1)
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key not in edges:
            edges.add(key)
            added += 1
    guard = 0
    while len(edges) > target_m:
        victim = rng.choice(sorted(edges))
        edges.discard(victim)
        if is_connected(Graph(n, sorted(edges))):
            removed += 1
            continue
        edges.add(victim)  # bridge: try another
        guard += 1
        if guard > max_retries * max(1, len(edges)):
            raise GenerationError("cannot reach target edge count without disconnecting")
    return added, removed


def gen_ws(spec: GenSpec) -> list[Graph]:
    """Watts–Strogatz ring lattices with count-preserving rewiring, connected."""
    graphs, _ = _generate_ws(spec)
    return graphs


def _generate_ws(spec: GenSpec) -> tuple[list[Graph], dict]:
    _check_common(spec)
    if (2 * spec.m) % spec.n:
        raise GenerationError("ws needs k = 2m/n to be an integer")
    k = (2 * spec.m) // spec.n
    if k % 2 or k < 2:
        raise GenerationError(f"ws needs an even ring degree k >= 2, got k={k}")
    if k >= spec.n:
        raise GenerationError("ws needs k < n")
    graphs = []
    retries = []
    for i in range(1, spec.count + 1):
        rng = substream(spec.seed, "ws", i)
        for attempt in range(spec.max_retries):
            g = Graph(spec.n, _ws_edges(spec.n, k, spec.ws_rewire_p, rng))
            if is_connected(g):
                graphs.append(g)
                retries.append(attempt)
                break
        else:
            raise GenerationError(f"ws graph {i}: no connected sample in {spec.max_retries} tries")
    return graphs, {"k": k, "rewire_p": spec.ws_rewire_p, "retries": retries}


def _ws_edges(n: int, k: int, p: float, rng: random.Random) -> list[tuple[int, int]]:
    def wrap(x: int) -> int:
        return (x - 1) % n + 1

    adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for u in range(1, n + 1):
        for j in range(1, k // 2 + 1):
            v = wrap(u + j)
            adj[u].add(v)
            adj[v].add(u)
    # rewire each original lattice edge with probability p
    for j in range(1, k // 2 + 1):
        for u in range(1, n + 1):
            v = wrap(u + j)
            if rng.random() >= p:
                continue
            if len(adj[u]) >= n - 1:
                continue  # u saturated, nothing to rewire to
            while True:
                w = rng.randrange(1, n + 1)
                if w != u and w not in adj[u]:
                    break
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
    return [(u, v) for u in adj for v in adj[u] if u < v]


def ddd_degree_sequences(
    n: int, m: int, count: int, rng: random.Random
) -> tuple[list[DegreeSequence], int]:
    """Degree-sequence sweep: start d-regular, then repeatedly shift degree
    units from random left-half nodes (never below 1) to random right-half
    nodes, yielding strictly increasing degree variance.

    Returns the sequences and the per-step shift amount.
    """
    if n % 2:
        raise GenerationError("ddd needs an even n")
    if (2 * m) % n:
        raise GenerationError("ddd needs 2m to be a multiple of n")
    if count < 2:
        raise GenerationError("ddd needs at least 2 graphs")
    d = (2 * m) // n
    degrees = [d] * n
    sequences = [DegreeSequence(tuple(degrees))]
    deg_delta = (m - n // 2) // count
    left = list(range(0, n // 2))
    right = list(range(n // 2, n))
    for _ in range(2, count + 1):
        for _ in range(deg_delta):
            candidates = [l for l in left if degrees[l] > 1]
            if not candidates:
                raise GenerationError("left-half degrees exhausted during ddd sweep")
            l = rng.choice(candidates)
            r = rng.choice(right)
            degrees[l] -= 1
            degrees[r] += 1
        sequences.append(DegreeSequence(tuple(degrees)))
    return sequences, deg_delta


def gen_ddd(spec: GenSpec) -> list[Graph]:
    """The degree-distribution sweep, each sequence realized as a random connected graph."""
    graphs, _ = _generate_ddd(spec)
    return graphs


def _generate_ddd(spec: GenSpec) -> tuple[list[Graph], dict]:
    _check_common(spec)
    sequences, deg_delta = ddd_degree_sequences(
        spec.n, spec.m, spec.count, substream(spec.seed, "ddd-moves", 0)
    )
    graphs = []
    for i, seq in enumerate(sequences, start=1):
        rng = substream(spec.seed, "ddd", i)
        try:
            graphs.append(realize_degree_sequence(seq, rng, spec.max_retries))
        except (GenerationError, ValueError) as exc:
            raise GenerationError(f"ddd sequence {i}: {exc}") from exc
    return graphs, {
        "deg_delta": deg_delta,
        "moves_per_step": deg_delta,
        "steps": spec.count - 1,
        "target_variances": [seq.variance() for seq in sequences],
    }


def _check_common(spec: GenSpec) -> None:
    if spec.n < 1:
        raise GenerationError("need n >= 1")
    if spec.count < 1:
        raise GenerationError("need count >= 1")
    max_m = spec.n * (spec.n - 1) // 2
    if spec.m > max_m:
        raise GenerationError(f"m={spec.m} exceeds the {max_m} possible edges for n={spec.n}")
    if spec.m < spec.n - 1:
        raise GenerationError(f"m={spec.m} cannot connect n={spec.n} nodes")


_GENERATORS = {
    "er": _generate_er,
    "ba": _generate_ba,
    "ws": _generate_ws,
    "ddd": _generate_ddd,
}


def generate(spec: GenSpec) -> tuple[list[Graph], dict]:
    """Run the model named by ``spec.model``; returns (graphs, generator metadata)."""
    if spec.model not in _GENERATORS:
        raise GenerationError(f"unknown model {spec.model!r}; expected one of {sorted(_GENERATORS)}")
    graphs, meta = _GENERATORS[spec.model](spec)
    meta = dict(meta)
    meta.update(model=spec.model, n=spec.n, m=spec.m, count=spec.count, seed=spec.seed)
    for g in graphs:
        assert g.n == spec.n and g.m == spec.m, "generator produced wrong (n, m)"
    return graphs, meta
