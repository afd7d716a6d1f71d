"""Exact treewidth and pathwidth."""
from __future__ import annotations

from typing import Callable, Sequence

from ..decomp import TreeDecomposition
from ..graph import Graph
from .caps import check_cap
from .search import elimination_order, pd_from_order, separation_order, size_at_most, td_from_elimination


def merge_decompositions(pieces: Sequence[tuple[TreeDecomposition, Sequence[int]]],
                         is_path: bool) -> TreeDecomposition:
    """Combine decompositions of vertex-disjoint pieces into one.

    ``pieces`` pairs each decomposition with the map from its local vertex ids
    to global ids. Path pieces are concatenated; tree pieces are joined at
    their first nodes.
    """
    bags, edges, firsts = [], [], []
    for td, ids in pieces:
        off = len(bags)
        firsts.append(off)
        bags.extend(frozenset(ids[v] for v in bag) for bag in td.bags)
        edges.extend((a + off, b + off) for a, b in td.tree.edges)
    if is_path:
        edges.extend((f - 1, f) for f in firsts[1:])
    else:
        edges.extend((firsts[0], f) for f in firsts[1:])
    return TreeDecomposition.from_bags(bags, edges, is_path)


def per_component(g: Graph, solve: Callable[[Graph], tuple[int, TreeDecomposition]],
                  is_path: bool) -> tuple[int, TreeDecomposition]:
    if g.n == 0:
        return -1, TreeDecomposition.from_bags([], (), is_path)
    best, pieces = -1, []
    for comp in g.components():
        sub, ids = g.induced(comp)
        w, td = solve(sub)
        best = max(best, w)
        pieces.append((td, ids))
    return best, merge_decompositions(pieces, is_path)


def minor_min_width(g: Graph) -> int:
    """Contraction-degeneracy style lower bound on treewidth."""
    nb = [set(a) for a in g.adj]
    alive = set(range(g.n))
    lb = 0
    while len(alive) > 1:
        v = min(alive, key=lambda x: (len(nb[x]), x))
        lb = max(lb, len(nb[v]))
        if nb[v]:
            u = min(nb[v], key=lambda x: (len(nb[x] & nb[v]), x))
            for w in nb[v]:
                nb[w].discard(v)
                if w != u:
                    nb[w].add(u)
                    nb[u].add(w)
        alive.discard(v)
    return lb


def _treewidth_connected(g: Graph) -> tuple[int, TreeDecomposition]:
    if g.n == 1:
        return 0, TreeDecomposition.single_bag([0])
    for k in range(minor_min_width(g), g.n):
        order = elimination_order(g.adj_mask, g.n, size_at_most(k + 1), almost_simplicial=True)
        if order is not None:
            return k, td_from_elimination(g, order)
    raise AssertionError("unreachable: width n-1 always fits")


def _pathwidth_connected(g: Graph) -> tuple[int, TreeDecomposition]:
    if g.n == 1:
        return 0, TreeDecomposition.single_bag([0])
    for k in range(max(1, minor_min_width(g)), g.n):
        order = separation_order(g.adj_mask, g.n, size_at_most(k + 1))
        if order is not None:
            return k, pd_from_order(g, order)
    raise AssertionError("unreachable: width n-1 always fits")


def exact_treewidth(g: Graph, max_n: int | None = None) -> tuple[int, TreeDecomposition]:
    """Treewidth and an optimal tree-decomposition witness."""
    check_cap("tw", g.n, max_n)
    return per_component(g, _treewidth_connected, is_path=False)


def exact_pathwidth(g: Graph, max_n: int | None = None) -> tuple[int, TreeDecomposition]:
    """Pathwidth and an optimal path-decomposition witness (``is_path`` set)."""
    check_cap("pw", g.n, max_n)
    return per_component(g, _pathwidth_connected, is_path=True)
