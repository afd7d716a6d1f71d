"""Exact row treewidth and row pathwidth.

A graph embeds in H ⊠ P exactly when it has an H-partition of layered width 1,
and the smallest such H is the quotient by the partition. The search runs
over set partitions of each component (in restricted-growth order), computes
the quotient's tree/path-width exactly, and for the cheapest partitions looks
for a layering that puts every part's vertices in distinct layers.
"""
from __future__ import annotations

from typing import Iterator

from ..decomp import HPartition
from ..graph import Graph, ProductEmbedding, disjoint_union
from .caps import check_cap
from .layered import enumerate_layerings
from .widths import exact_pathwidth, exact_treewidth

KINDS = ("rtw", "rpw")


def host_width(host: Graph, kind: str) -> int:
    if kind == "rtw":
        return exact_treewidth(host, max_n=max(host.n, 1))[0]
    return exact_pathwidth(host, max_n=max(host.n, 1))[0]


def restricted_growth(n: int, max_block: int) -> Iterator[tuple[int, ...]]:
    """Set partitions of ``range(n)`` with blocks of size ≤ max_block, as block labels."""
    labels = [0] * n
    sizes: list[int] = []

    def rec(i: int):
        if i == n:
            yield tuple(labels)
            return
        for b in range(len(sizes) + 1):
            fresh = b == len(sizes)
            if fresh:
                sizes.append(1)
            elif sizes[b] >= max_block:
                continue
            else:
                sizes[b] += 1
            labels[i] = b
            yield from rec(i + 1)
            if fresh:
                sizes.pop()
            else:
                sizes[b] -= 1

    yield from rec(0)


def _diameter(g: Graph) -> int:
    return max(max(g.distances_from(v)) for v in range(g.n))


def _feasible_layering(g: Graph, part_of: tuple[int, ...]) -> tuple[int, ...] | None:
    mates = [set() for _ in range(g.n)]
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if part_of[u] == part_of[v]:
                mates[u].add(v)
                mates[v].add(u)
    return next(enumerate_layerings(g, same_layer_forbidden=mates), None)


def _candidates(g: Graph, kind: str) -> list[tuple[int, int, tuple[int, ...], HPartition]]:
    """All (host width, rank, part map, quotient) for a connected graph, cheapest first."""
    memo: dict[tuple, int] = {}
    out = []
    for rank, labels in enumerate(restricted_growth(g.n, _diameter(g) + 1)):
        hp = HPartition.quotient(g, labels)
        key = (hp.host.n, hp.host.edges)
        if key not in memo:
            memo[key] = host_width(hp.host, kind)
        out.append((memo[key], rank, labels, hp))
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def _solve_connected(g: Graph, kind: str, limit: int | None) -> tuple[int, HPartition, tuple[int, ...]] | None:
    if g.n == 1:
        return 0, HPartition.singletons(g), (0,)
    for width, _, labels, hp in _candidates(g, kind):
        if limit is not None and width > limit:
            return None
        rows = _feasible_layering(g, labels)
        if rows is not None:
            return width, hp, rows
    raise AssertionError("unreachable: the singleton partition always admits a layering")


def _linear_forest_embedding(g: Graph) -> ProductEmbedding | None:
    """Embedding into K_1-columns ⊠ P when every component is a path, else None."""
    if g.max_degree() > 2 or not g.is_forest():
        return None
    coords = [None] * g.n
    for c, comp in enumerate(g.components()):
        start = next(v for v in comp if g.degree(v) <= 1)
        prev, cur, row = -1, start, 0
        while True:
            coords[cur] = (c, row, 0)
            nxt = [y for y in g.adj[cur] if y != prev]
            if not nxt:
                break
            prev, cur, row = cur, nxt[0], row + 1
    host = Graph(len(g.components()))
    return ProductEmbedding(g, host, 1, tuple(coords))


def _assemble(g: Graph, results: list[tuple[list[int], HPartition, tuple[int, ...]]]) -> ProductEmbedding:
    host, offsets = disjoint_union([hp.host for _, hp, _ in results])
    coords = [None] * g.n
    for (ids, hp, rows), off in zip(results, offsets):
        for local, v in enumerate(ids):
            coords[v] = (hp.part_of[local] + off, rows[local], 0)
    return ProductEmbedding(g, host, 1, tuple(coords))


def _row(g: Graph, kind: str, limit: int | None) -> tuple[int, ProductEmbedding] | None:
    best, results = (0 if g.n else -1), []
    for comp in g.components():
        sub, ids = g.induced(comp)
        res = _solve_connected(sub, kind, limit)
        if res is None:
            return None
        width, hp, rows = res
        best = max(best, width)
        results.append((ids, hp, rows))
    return best, _assemble(g, results)


def exact_row_treewidth(g: Graph, max_n: int | None = None) -> tuple[int, ProductEmbedding]:
    """Minimum tw(H) over embeddings of g into H ⊠ P, with a witness embedding."""
    check_cap("rtw", g.n, max_n)
    return _row(g, "rtw", None)


def exact_row_pathwidth(g: Graph, max_n: int | None = None) -> tuple[int, ProductEmbedding]:
    check_cap("rpw", g.n, max_n)
    return _row(g, "rpw", None)


def row_width_decision(g: Graph, k: int, kind: str = "rtw",
                       max_n: int | None = None) -> tuple[bool, ProductEmbedding | None]:
    """Does g embed in H ⊠ P for some H of tree/path-width ≤ k?

    k = 0 is answered structurally for graphs of any size: H must be edgeless,
    so g must be a disjoint union of paths.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if k < 0:
        return False, None
    if k == 0:
        pe = _linear_forest_embedding(g)
        return pe is not None, pe
    check_cap(kind, g.n, max_n)
    res = _row(g, kind, k)
    return (False, None) if res is None else (True, res[1])


def host_decomposition(pe: ProductEmbedding, kind: str = "rtw"):
    """Optimal decomposition of the embedding's host, certifying its width."""
    if kind == "rtw":
        return exact_treewidth(pe.host, max_n=max(pe.host.n, 1))
    return exact_pathwidth(pe.host, max_n=max(pe.host.n, 1))
