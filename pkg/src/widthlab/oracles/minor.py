"""Exhaustive K_t-model search."""
from __future__ import annotations

from typing import Iterator, Sequence

from ..decomp import HPartition, MinorModel
from ..graph import Graph
from .caps import check_cap
from .search import bits
from .widths import exact_treewidth


def connected_sets(adj: Sequence[int], root: int, allowed: int) -> Iterator[int]:
    """Every connected vertex set containing ``root`` inside ``allowed``, once each."""

    def rec(current: int, ext: int, banned: int):
        yield current
        while ext:
            low = ext & -ext
            ext ^= low
            v = low.bit_length() - 1
            grow = adj[v] & allowed & ~current & ~banned & ~low
            yield from rec(current | low, ext | grow, banned)
            banned |= low

    rbit = 1 << root
    yield from rec(rbit, adj[root] & allowed & ~rbit, 0)


def find_clique_minor(g: Graph, t: int, respect: HPartition | None = None,
                      max_n: int | None = None) -> MinorModel | None:
    """A K_t model in g (respecting ``respect`` when given), or None if none exists.

    Branch sets are chosen with strictly increasing minimum vertex, so the
    first model found is the least one in that enumeration order.
    """
    check_cap("minor", g.n, max_n)
    if t <= 0:
        return MinorModel(())
    if t > g.n or g.m < t * (t - 1) // 2:
        return None
    if t >= 3 and exact_treewidth(g, max_n=max(g.n, 1))[0] < t - 1:
        return None
    n, adj = g.n, g.adj_mask
    full = (1 << n) - 1
    part = respect.part_of if respect is not None else None
    part_members: list[int] = []
    if respect is not None:
        part_members = [0] * respect.host.n
        for v, x in enumerate(part):
            part_members[x] |= 1 << v

    chosen: list[int] = []

    def blocked_by(mask: int) -> int:
        if part is None:
            return mask
        out = 0
        for v in bits(mask):
            out |= part_members[part[v]]
        return out

    def nbhd(mask: int) -> int:
        out = 0
        for v in bits(mask):
            out |= adj[v]
        return out

    def rec(blocked: int, min_root: int) -> bool:
        if len(chosen) == t:
            return True
        for root in range(min_root, n):
            if blocked >> root & 1:
                continue
            allowed = full & ~blocked & ~((1 << root) - 1)
            for s in connected_sets(adj, root, allowed):
                ns = nbhd(s)
                if any(not ns & c for c in chosen):
                    continue
                new_blocked = blocked | blocked_by(s)
                if len(chosen) + 1 < t:
                    future = full & ~new_blocked & ~((1 << (root + 1)) - 1)
                    if not ns & future or any(not nbhd(c) & future for c in chosen):
                        continue
                chosen.append(s)
                if rec(new_blocked, root + 1):
                    return True
                chosen.pop()
        return False

    if not rec(0, 0):
        return None
    return MinorModel(tuple(frozenset(bits(s)) for s in chosen))
