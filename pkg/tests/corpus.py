"""Deterministic graph corpora shared by the acceptance suite."""
from __future__ import annotations

import random
from functools import lru_cache

from widthlab.graph import Graph, complete_graph, cycle_graph, path_graph
from widthlab.sampling import random_connected_graph, random_graph

import reference


@lru_cache(maxsize=None)
def random_connected(count: int = 50, max_n: int = 7, seed: int = 7) -> tuple[Graph, ...]:
    rng = random.Random(seed)
    return tuple(random_connected_graph(rng, rng.randint(1, max_n), rng.uniform(0.1, 0.6)) for _ in range(count))


@lru_cache(maxsize=None)
def random_up_to(count: int = 100, max_n: int = 10, seed: int = 1000) -> tuple[Graph, ...]:
    rng = random.Random(seed)
    return tuple(random_graph(rng, rng.randint(1, max_n), rng.uniform(0.15, 0.8)) for _ in range(count))


@lru_cache(maxsize=None)
def full() -> tuple[Graph, ...]:
    """Everything the suite computes oracle values on, for self-consistency checks."""
    named = [complete_graph(n) for n in range(1, 8)] + [path_graph(10), cycle_graph(6), cycle_graph(7)]
    return tuple(g for g in reference.atlas(5) if g.n) + random_connected() + tuple(named)
