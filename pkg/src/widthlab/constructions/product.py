"""Moving between product embeddings, H-partitions and layered decompositions."""
from __future__ import annotations

from ..decomp import (HPartition, Layering, LayeredDecomposition, TreeDecomposition,
                      h_partition_layered_width, verify_h_partition, verify_layered_decomposition,
                      verify_layering, verify_tree_decomposition)
from ..errors import ConstructionError, PreconditionError
from ..graph import Graph, ProductEmbedding


def product_to_layered(pe: ProductEmbedding, td: TreeDecomposition) -> LayeredDecomposition:
    """Layer the guest by row and lift each host bag to the guest vertices above it.

    A bag of the host with b vertices meets each row in at most b·w guest
    vertices, so the result has layered width ≤ w·(width(td) + 1).
    """
    pe.check().raise_if_invalid()
    verdict = verify_tree_decomposition(pe.host, td)
    if not verdict:
        raise PreconditionError(f"host decomposition is invalid: {verdict.violation}")
    above: dict[int, list[int]] = {}
    for v, (x, _, _) in enumerate(pe.coords):
        above.setdefault(x, []).append(v)
    bags = [frozenset(v for x in bag for v in above.get(x, ())) for bag in td.bags]
    layering = Layering.from_assignment([row for _, row, _ in pe.coords])
    out = LayeredDecomposition(layering, TreeDecomposition(td.tree, tuple(bags), td.is_path))
    bound = pe.width_factor * (td.width + 1)
    check = verify_layered_decomposition(pe.guest, out)
    if not check or check.width > bound:
        raise ConstructionError(f"lifted decomposition {check.to_obj()} exceeds bound {bound}")
    return out


def partition_from_embedding(pe: ProductEmbedding) -> tuple[HPartition, Layering]:
    """Fibres over host nodes, with rows as layers. Unused host nodes are dropped."""
    pe.check().raise_if_invalid()
    host, kept = pe.host.induced({x for x, _, _ in pe.coords})
    rank = {x: i for i, x in enumerate(kept)}
    hp = HPartition(host, tuple(rank[x] for x, _, _ in pe.coords))
    layering = Layering.from_assignment([row for _, row, _ in pe.coords])
    if h_partition_layered_width(hp, layering) > pe.width_factor:
        raise ConstructionError("fibre meets a row in more than width_factor vertices")
    return hp, layering


def embedding_from_partition(hp: HPartition, layering: Layering, w: int, g: Graph) -> ProductEmbedding:
    """Embed ``g`` into host ⊠ P ⊠ K_w: row = layer, copy = rank within (part, layer)."""
    for verdict in (verify_h_partition(g, hp), verify_layering(g, layering)):
        if not verdict:
            raise PreconditionError(str(verdict.violation))
    width = h_partition_layered_width(hp, layering)
    if width > w:
        raise PreconditionError(f"partition has layered width {width} > {w}")
    slot: dict[tuple[int, int], int] = {}
    coords = []
    for v in range(g.n):
        key = (hp.part_of[v], layering.index[v])
        copy = slot.get(key, 0)
        slot[key] = copy + 1
        coords.append((key[0], key[1], copy))
    pe = ProductEmbedding(g, hp.host, w, tuple(coords))
    if not pe.check():
        raise ConstructionError(f"embedding check failed: {pe.check().violation}")
    return pe
