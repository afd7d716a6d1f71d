"""Subdividing to layered treewidth 1, and contracting a subdivision's decomposition back."""
from __future__ import annotations

from ..decomp import (Layering, LayeredDecomposition, TreeDecomposition, layered_width,
                      verify_layered_decomposition)
from ..errors import ConstructionError, PreconditionError
from ..graph import Graph, Subdivision, subdivide


def mcs_order(adj: list[set[int]], vertices: list[int]) -> list[int]:
    """Maximum cardinality search visiting order; ties go to the smallest id.

    On a chordal graph the reverse of this order is a perfect elimination order.
    """
    weight = {v: 0 for v in vertices}
    order = []
    while weight:
        v = min(weight, key=lambda x: (-weight[x], x))
        del weight[v]
        order.append(v)
        for u in adj[v]:
            if u in weight:
                weight[u] += 1
    return order


def chordal_layer_colouring(g: Graph, ld: LayeredDecomposition) -> list[int]:
    """Colour each layer properly with at most ``layered_width(ld)`` colours.

    Each layer's graph is augmented so that every bag ∩ layer is a clique,
    which makes it chordal with clique number ≤ k; greedy colouring along the
    maximum cardinality search order is then optimal.
    """
    index = ld.layering.index
    aug: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges:
        if index[u] == index[v]:
            aug[u].add(v)
            aug[v].add(u)
    for bag in ld.decomposition.bags:
        by_layer: dict[int, list[int]] = {}
        for v in bag:
            by_layer.setdefault(index[v], []).append(v)
        for group in by_layer.values():
            for a in group:
                aug[a].update(b for b in group if b != a)
    colour = [-1] * g.n
    for layer in ld.layering.layers:
        for v in mcs_order(aug, sorted(layer)):
            taken = {colour[u] for u in aug[v]}
            colour[v] = next(c for c in range(len(taken) + 1) if c not in taken)
    return colour


def ltw1_subdivision(g: Graph, ld: LayeredDecomposition) -> tuple[Subdivision, LayeredDecomposition]:
    """Subdivide each edge at most 2k-2 times so the result has layered treewidth 1.

    ``ld`` is a layered tree-decomposition of ``g`` of width k. Layer i is
    split into k fine layers by a per-layer colouring; an edge between fine
    layers a < a' receives one division vertex in each fine layer strictly
    between them, and its whole path becomes a new leaf bag.
    """
    verify_layered_decomposition(g, ld).raise_if_invalid()
    k = layered_width(ld)
    if g.n and k < 1:
        raise PreconditionError("layered width must be at least 1")
    colour = chordal_layer_colouring(g, ld)
    if any(c >= k for c in colour):
        raise ConstructionError(f"layer colouring used more than {k} colours")
    fine = [k * ld.layering.index[v] + colour[v] for v in range(g.n)]

    counts = {}
    for u, v in g.edges:
        if fine[u] == fine[v]:
            raise ConstructionError(f"edge ({u}, {v}) has both ends in fine layer {fine[u]}")
        counts[(u, v)] = abs(fine[u] - fine[v]) - 1
    sub = subdivide(g, counts)

    layer_of = fine + [0] * (sub.derived.n - g.n)
    for (u, v), divs in sub.paths.items():
        step = 1 if fine[u] < fine[v] else -1
        for pos, z in enumerate(divs):
            layer_of[z] = fine[u] + step * (pos + 1)

    bags = list(ld.decomposition.bags)
    tree_edges = list(ld.decomposition.tree.edges)
    occurs: list[set[int]] = [set() for _ in range(g.n)]
    for i, bag in enumerate(bags):
        for v in bag:
            occurs[v].add(i)
    for u, v in g.edges:
        x = min(occurs[u] & occurs[v])
        tree_edges.append((x, len(bags)))
        bags.append(frozenset(sub.full_path(u, v)))
    out = LayeredDecomposition(Layering.from_assignment(layer_of),
                               TreeDecomposition.from_bags(bags, tree_edges))
    verdict = verify_layered_decomposition(sub.derived, out)
    if not verdict or (g.n and verdict.width != 1):
        raise ConstructionError(f"ltw1 subdivision produced {verdict.to_obj()}")
    return sub, out


def contract_layered_decomposition(sub: Subdivision, ld: LayeredDecomposition,
                                   r: int | None = None) -> LayeredDecomposition:
    """Layered decomposition of ``sub.base`` from one of ``sub.derived``.

    Division vertices are replaced by the tail of their edge and every r+1
    consecutive layers are merged, so a width-c input yields width ≤ c(r+1).
    """
    if r is None:
        r = sub.s_bound
    if r < sub.s_bound:
        raise PreconditionError(f"bound r={r} is below the longest path ({sub.s_bound})")
    verify_layered_decomposition(sub.derived, ld).raise_if_invalid()
    c = layered_width(ld)
    base_n = sub.base.n
    bags = [frozenset(v if v < base_n else sub.tail(v) for v in bag) for bag in ld.decomposition.bags]
    coarse = [ld.layering.index[v] // (r + 1) for v in range(base_n)]
    out = LayeredDecomposition(Layering.from_assignment(coarse),
                               TreeDecomposition(ld.decomposition.tree, tuple(bags), ld.decomposition.is_path))
    verdict = verify_layered_decomposition(sub.base, out)
    if not verdict or verdict.width > c * (r + 1):
        raise ConstructionError(f"contraction produced {verdict.to_obj()} (bound {c * (r + 1)})")
    return out
