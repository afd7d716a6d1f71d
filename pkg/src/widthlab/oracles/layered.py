"""Exact layered treewidth and layered pathwidth.

Outer loop: every layering of each connected component, up to index shift
and reversal. Inner loop: the elimination-ordering (or vertex-ordering)
search with bag cost ``max_i |bag ∩ L_i|``. That cost is monotone under bag
inclusion, so optimal bags can always be taken from a minimal triangulation
(resp. from the first-appearance vertex order of a path-decomposition).
"""
from __future__ import annotations

from collections import deque
from typing import Iterator

import networkx as nx

from ..decomp import Layering, LayeredDecomposition, TreeDecomposition
from ..graph import Graph
from .caps import check_cap
from .search import (elimination_order, layered_at_most, pd_from_order, separation_order,
                     td_from_elimination)
from .widths import merge_decompositions


def _bfs_parents(g: Graph) -> tuple[list[int], list[int]]:
    order, parent = [0], [-1] * g.n
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in sorted(g.adj[x]):
            if y not in seen:
                seen.add(y)
                parent[y] = x
                order.append(y)
                queue.append(y)
    return order, parent


def enumerate_layerings(g: Graph, *, proper: bool = False,
                        same_layer_forbidden: list[set[int]] | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every layering of a connected graph as a per-vertex layer tuple.

    Layer indices start at 0 and are contiguous. Of each layering and its
    reversal only the lexicographically smaller is produced. With ``proper``
    no edge may lie inside a layer; ``same_layer_forbidden[v]`` lists vertices
    that may not share a layer with v.
    """
    if g.n == 0:
        return
    if not g.is_connected():
        raise ValueError("enumerate_layerings expects a connected graph")
    order, parent = _bfs_parents(g)
    assign: list[int | None] = [None] * g.n
    adj = g.adj

    def ok(v: int, val: int) -> bool:
        for u in adj[v]:
            a = assign[u]
            if a is not None and (abs(a - val) > 1 or (proper and a == val)):
                return False
        if same_layer_forbidden is not None:
            for u in same_layer_forbidden[v]:
                if assign[u] == val:
                    return False
        return True

    def rec(i: int):
        if i == len(order):
            lo = min(assign)
            norm = tuple(a - lo for a in assign)
            hi = max(norm)
            rev = tuple(hi - a for a in norm)
            if norm <= rev:
                yield norm
            return
        v = order[i]
        base = assign[parent[v]]
        for val in (base - 1, base, base + 1):
            if ok(v, val):
                assign[v] = val
                yield from rec(i + 1)
                assign[v] = None

    assign[0] = 0
    yield from rec(1)


def _layer_masks(assign: tuple[int, ...]) -> list[int]:
    masks = [0] * (max(assign) + 1)
    for v, a in enumerate(assign):
        masks[a] |= 1 << v
    return masks


def _cliques_fit(cliques: list[list[int]], assign: tuple[int, ...], k: int) -> bool:
    for c in cliques:
        counts: dict[int, int] = {}
        for v in c:
            counts[assign[v]] = counts.get(assign[v], 0) + 1
            if counts[assign[v]] > k:
                return False
    return True


def best_decomposition_for_layering(g: Graph, assign: tuple[int, ...], k: int,
                                    path: bool = False) -> TreeDecomposition | None:
    """A (path-)decomposition of layered width ≤ k under a fixed layering, or None."""
    fits = layered_at_most(_layer_masks(assign), k)
    if path:
        order = separation_order(g.adj_mask, g.n, fits)
        return None if order is None else pd_from_order(g, order)
    order = elimination_order(g.adj_mask, g.n, fits)
    return None if order is None else td_from_elimination(g, order)


def _solve_connected(g: Graph, path: bool) -> tuple[int, tuple[int, ...], TreeDecomposition]:
    if g.n == 1:
        return 1, (0,), TreeDecomposition.single_bag([0])
    cliques = [c for c in nx.find_cliques(g.to_networkx()) if len(c) > 1]
    for k in range(1, g.n + 1):
        for assign in enumerate_layerings(g, proper=(k == 1)):
            if not _cliques_fit(cliques, assign, k):
                continue
            td = best_decomposition_for_layering(g, assign, k, path)
            if td is not None:
                return k, assign, td
    raise AssertionError("unreachable: a single layer with one bag has width n")


def _exact_layered(g: Graph, path: bool) -> tuple[int, LayeredDecomposition]:
    if g.n == 0:
        return 0, LayeredDecomposition(Layering(()), TreeDecomposition.from_bags([], (), path))
    best, pieces = 0, []
    layer_of = [0] * g.n
    for comp in g.components():
        sub, ids = g.induced(comp)
        k, assign, td = _solve_connected(sub, path)
        best = max(best, k)
        pieces.append((td, ids))
        for local, a in enumerate(assign):
            layer_of[ids[local]] = a
    td = merge_decompositions(pieces, is_path=path)
    return best, LayeredDecomposition(Layering.from_assignment(layer_of), td)


def exact_layered_treewidth(g: Graph, max_n: int | None = None) -> tuple[int, LayeredDecomposition]:
    check_cap("ltw", g.n, max_n)
    return _exact_layered(g, path=False)


def exact_layered_pathwidth(g: Graph, max_n: int | None = None) -> tuple[int, LayeredDecomposition]:
    check_cap("lpw", g.n, max_n)
    return _exact_layered(g, path=True)
