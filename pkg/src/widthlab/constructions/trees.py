"""Finding a complete ℓ-ary tree in the host of a bounded-width partition of a d-ary tree."""
from __future__ import annotations

from ..decomp import HPartition, Layering, h_partition_layered_width, verify_h_partition, verify_layering
from ..errors import ConstructionError, PreconditionError, Verdict
from ..graph import DaryTreeMeta, Graph, build_dary_tree, dary_tree_size


def tree_host_degree(h: int, w: int, ell: int) -> int:
    """Smallest d with d - w(2h+1) + 1 > (ℓ-1)(w(2h+1)(ℓ+1)^h + 1); 1 when h = 0."""
    if h < 0 or w < 1 or ell < 1:
        raise ValueError(f"need h >= 0 and w, ell >= 1; got h={h}, w={w}, ell={ell}")
    if h == 0:
        return 1
    part = w * (2 * h + 1)
    return (ell - 1) * (part * (ell + 1) ** h + 1) + part


def _greedy_colour(n: int, adj: list[set[int]]) -> list[int]:
    colour = []
    for v in range(n):
        taken = {colour[u] for u in adj[v] if u < v}
        colour.append(next(c for c in range(n) if c not in taken))
    return colour


def find_tree_in_host(meta: DaryTreeMeta, hp: HPartition, layering: Layering, w: int,
                      ell: int) -> tuple[int, ...]:
    """Embed T_{ℓ,h} into ``hp.host`` with its root on the part of the tree's root.

    Returns ``emb`` with ``emb[t]`` the host node of vertex t of T_{ℓ,h} in
    heap layout. At each vertex r with part z, the child subtrees avoiding
    A_z are embedded recursively; ℓ of those images that are pairwise
    disjoint are found as a colour class of their intersection graph.
    """
    d, h = meta.d, meta.h
    tree, _ = build_dary_tree(d, h)
    need = tree_host_degree(h, w, ell)
    if d < need:
        raise PreconditionError(f"d={d} is below the required degree {need}")
    for verdict in (verify_h_partition(tree, hp), verify_layering(tree, layering)):
        if not verdict:
            raise PreconditionError(str(verdict.violation))
    if len(layering) > 2 * h + 1:
        raise PreconditionError(f"layering has {len(layering)} > {2 * h + 1} layers")
    width = h_partition_layered_width(hp, layering)
    if width > w:
        raise PreconditionError(f"partition has layered width {width} > w={w}")

    part_of, parts = hp.part_of, hp.parts

    def rec(r: int, height: int) -> tuple[int, list]:
        z = part_of[r]
        if height == 0:
            return z, []
        met = {meta.child_towards(r, x) for x in parts[z]} - {None}
        avail = [c for c in meta.children_of(r) if c not in met]
        if len(avail) < d - w * (2 * height + 1) + 1:
            raise ConstructionError(f"only {len(avail)} child subtrees of {r} avoid its part")
        images = [rec(c, height - 1) for c in avail]
        node_sets = [_nodes(img) for img in images]
        adj = [set() for _ in images]
        owner: dict[int, list[int]] = {}
        for i, nodes in enumerate(node_sets):
            for y in nodes:
                owner.setdefault(y, []).append(i)
        for sharing in owner.values():
            for a in sharing:
                adj[a].update(b for b in sharing if b != a)
        colour = _greedy_colour(len(images), adj)
        classes: dict[int, list[int]] = {}
        for i, c in enumerate(colour):
            classes.setdefault(c, []).append(i)
        pick = next((cls for _, cls in sorted(classes.items()) if len(cls) >= ell), None)
        if pick is None:
            raise ConstructionError(f"no {ell} pairwise-disjoint subtree images below {r}")
        return z, [images[i] for i in pick[:ell]]

    emb = [0] * dary_tree_size(ell, h)

    def flatten(node: tuple[int, list], t: int) -> None:
        emb[t] = node[0]
        for c, child in enumerate(node[1]):
            flatten(child, ell * t + 1 + c)

    flatten(rec(meta.root, h), 0)
    result = tuple(emb)
    verdict = verify_tree_embedding(hp.host, ell, h, result, part_of[meta.root])
    if not verdict:
        raise ConstructionError(str(verdict.violation))
    return result


def _nodes(node: tuple[int, list]) -> set[int]:
    out = {node[0]}
    for child in node[1]:
        out |= _nodes(child)
    return out


def verify_tree_embedding(host: Graph, ell: int, h: int, emb, root_node: int | None = None) -> Verdict:
    """Check that ``emb`` is an injective homomorphism of T_{ℓ,h} (heap layout) into host."""
    size = dary_tree_size(ell, h)
    if len(emb) != size:
        return Verdict.fail("embedding-size", f"{len(emb)} images for a tree of {size} vertices")
    if len(set(emb)) != size:
        return Verdict.fail("not-injective", "two tree vertices share a host node")
    for x in emb:
        if not 0 <= x < host.n:
            return Verdict.fail("host-node", f"unknown host node {x}")
    for t in range(1, size):
        p = (t - 1) // ell
        if not host.has_edge(emb[p], emb[t]):
            return Verdict.fail("edge-not-preserved", f"tree edge ({p}, {t}) maps to a host non-edge",
                                edge=[p, t])
    if root_node is not None and emb[0] != root_node:
        return Verdict.fail("wrong-root", f"root maps to {emb[0]}, expected {root_node}")
    return Verdict.ok()
