"""Bitmask search over elimination orderings and vertex orderings.

Both searches are decision procedures: given a predicate ``fits(bag_mask)``
that is monotone under bag inclusion, they return an ordering whose induced
decomposition has every bag fitting, or None. Failed prefixes are memoized,
so the work is bounded by the number of reachable vertex subsets.
"""
from __future__ import annotations

from typing import Callable, Sequence

from ..decomp import TreeDecomposition
from ..graph import Graph

Fits = Callable[[int], bool]


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def reach(adj: Sequence[int], eliminated: int, v: int) -> int:
    """Neighbourhood of v in the graph obtained by eliminating ``eliminated``.

    That is, the vertices outside ``eliminated ∪ {v}`` reachable from v through
    paths whose interior lies in ``eliminated``.
    """
    vbit = 1 << v
    comp = vbit
    out = adj[v]
    new = out & eliminated
    while new:
        comp |= new
        nb = 0
        for u in bits(new):
            nb |= adj[u]
        out |= nb
        new = nb & eliminated & ~comp
    return out & ~eliminated & ~vbit


def _is_clique(q: int, nbhd: dict[int, int]) -> bool:
    for a in bits(q):
        if q & ~(1 << a) & ~nbhd[a]:
            return False
    return True


def _almost_simplicial(q: int, nbhd: dict[int, int]) -> bool:
    return any(_is_clique(q & ~(1 << a), nbhd) for a in bits(q))


def elimination_order(adj: Sequence[int], n: int, fits: Fits, *,
                      almost_simplicial: bool = False) -> list[int] | None:
    """Find an elimination ordering all of whose bags ``{v} ∪ Q(S, v)`` fit.

    Simplicial vertices with a fitting bag are eliminated greedily; this is
    safe for any monotone cost because their bag is a clique of every
    triangulation. ``almost_simplicial`` additionally applies the
    Bodlaender-Koster almost-simplicial rule, which is only safe when ``fits``
    is a bag-size threshold (plain treewidth).
    """
    full = (1 << n) - 1
    failed: set[int] = set()

    def rec(done: int) -> list[int] | None:
        if done == full:
            return []
        if done in failed:
            return None
        nbhd = {v: reach(adj, done, v) for v in bits(full & ~done)}
        forced = None
        for v, q in nbhd.items():
            if not fits(q | (1 << v)):
                continue
            if _is_clique(q, nbhd) or (almost_simplicial and _almost_simplicial(q, nbhd)):
                forced = v
                break
        if forced is not None:
            candidates = [forced]
        else:
            candidates = [v for v, q in nbhd.items() if fits(q | (1 << v))]
        for v in candidates:
            rest = rec(done | (1 << v))
            if rest is not None:
                return [v, *rest]
        failed.add(done)
        return None

    return rec(0)


def boundary(adj: Sequence[int], placed: int) -> int:
    out = 0
    for u in bits(placed):
        if adj[u] & ~placed:
            out |= 1 << u
    return out


def separation_order(adj: Sequence[int], n: int, fits: Fits) -> list[int] | None:
    """Find a vertex ordering whose path bags ``∂(prefix) ∪ {next}`` all fit."""
    full = (1 << n) - 1
    failed: set[int] = set()

    def rec(placed: int) -> list[int] | None:
        if placed == full:
            return []
        if placed in failed:
            return None
        bd = boundary(adj, placed)
        for v in bits(full & ~placed):
            if fits(bd | (1 << v)):
                rest = rec(placed | (1 << v))
                if rest is not None:
                    return [v, *rest]
        failed.add(placed)
        return None

    return rec(0)


def td_from_elimination(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Tree-decomposition with one bag per eliminated vertex.

    Bag i is ``{v_i} ∪ Q``; its parent is the bag of the earliest-eliminated
    member of Q. Bags of component roots are chained so the tree is connected.
    """
    adj = g.adj_mask
    pos = {v: i for i, v in enumerate(order)}
    done = 0
    bags, tree_edges, roots = [], [], []
    for i, v in enumerate(order):
        q = reach(adj, done, v)
        bags.append(frozenset([v, *bits(q)]))
        if q:
            tree_edges.append((i, min(pos[u] for u in bits(q))))
        else:
            roots.append(i)
        done |= 1 << v
    tree_edges.extend((a, b) for a, b in zip(roots, roots[1:]))
    return TreeDecomposition.from_bags(bags, tree_edges)


def pd_from_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    adj = g.adj_mask
    placed = 0
    bags = []
    for v in order:
        bags.append(frozenset([v, *bits(boundary(adj, placed))]))
        placed |= 1 << v
    return TreeDecomposition.path(bags)


def size_at_most(limit: int) -> Fits:
    return lambda bag: bag.bit_count() <= limit


def layered_at_most(masks: Sequence[int], limit: int) -> Fits:
    def fits(bag: int) -> bool:
        for m in masks:
            if (bag & m).bit_count() > limit:
                return False
        return True
    return fits
