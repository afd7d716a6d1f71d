"""Seeded random instances: graphs, subdivisions and bounded-width partitions."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .decomp import HPartition, Layering
from .graph import Graph, Subdivision, subdivide


@dataclass(frozen=True)
class GraphSampler:
    n_min: int = 1
    n_max: int = 7
    p: float = 0.4
    connected: bool = False

    def draw(self, rng: random.Random) -> Graph:
        while True:
            n = rng.randint(self.n_min, self.n_max)
            edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < self.p]
            g = Graph(n, tuple(edges))
            if not self.connected or g.is_connected():
                return g


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    """A random spanning tree plus independent extra edges with probability p."""
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    edges |= {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, tuple((perm[u], perm[v]) for u, v in edges))


def random_subdivision(rng: random.Random, g: Graph, s: int) -> Subdivision:
    return subdivide(g, {e: rng.randint(0, s) for e in g.edges})


def random_partition(rng: random.Random, g: Graph, layering: Layering, w: int,
                     parts: int | None = None) -> HPartition:
    """A uniformly shuffled partition meeting every layer in at most w vertices per part.

    ``parts`` is the number of part labels to spread vertices over; it is
    raised to the minimum that the capacity w allows. Few parts give dense
    quotient hosts, many parts give nearly-singleton partitions.
    """
    if w < 1:
        raise ValueError("w must be at least 1")
    widest = max((len(layer) for layer in layering.layers), default=0)
    count = max(parts or 0, math.ceil(widest / w), 1)
    part_of = [0] * g.n
    for layer in layering.layers:
        # sample distinct slots from count*w, slot // w is the part
        for v, slot in zip(sorted(layer), rng.sample(range(count * w), len(layer))):
            part_of[v] = slot // w
    return HPartition.quotient(g, part_of)


def coarsen_partition(rng: random.Random, g: Graph, layering: Layering, w: int,
                      merges: int) -> HPartition:
    """Start from singletons and merge random pairs of parts while width stays ≤ w."""
    index = layering.index
    members = {v: {v} for v in range(g.n)}
    for _ in range(merges):
        if len(members) < 2:
            break
        a, b = rng.sample(sorted(members), 2)
        counts: dict[int, int] = {}
        for v in members[a] | members[b]:
            counts[index[v]] = counts.get(index[v], 0) + 1
        if max(counts.values()) <= w:
            members[a] |= members.pop(b)
    part_of = [0] * g.n
    for label, vs in members.items():
        for v in vs:
            part_of[v] = label
    return HPartition.quotient(g, part_of)
