"""The recursive family G_{s,k,w}: apex + N copies of G_{s,k-1,w} + N length-2 apex paths per copy vertex.

Id layout of a level-k graph with n_q vertices per copy:
  0                                  the apex
  1 + i*n_q + u                      vertex u of copy i
  1 + N*n_q + (i*n_q + u)*N + j      midpoint of the j-th apex path to (i, u)
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..decomp import (HPartition, Layering, LayeredDecomposition, MinorModel, TreeDecomposition,
                      h_partition_layered_width, model_respects, verify_h_partition,
                      verify_layered_decomposition, verify_layering, verify_model)
from ..errors import BudgetExceeded, ConstructionError, PreconditionError
from ..graph import Graph, Subdivision, trivial_subdivision
from .subdivision import ltw1_subdivision

DEFAULT_BUDGET = 10 ** 6


def copy_count(s: int, k: int, w: int) -> int:
    return k * k * (2 * s + 1) * (4 * s + 5) * w + 1 if k >= 1 else 0


def separator_graph_size(s: int, k: int, w: int) -> int:
    n = 1
    for level in range(1, k + 1):
        big_n = copy_count(s, level, w)
        n = 1 + big_n * n * (1 + big_n)
    return n


@dataclass(frozen=True)
class SeparatorGraphMeta:
    s: int
    k: int
    w: int
    sub: "SeparatorGraphMeta | None" = None

    apex = 0

    @property
    def N(self) -> int:
        return copy_count(self.s, self.k, self.w)

    @cached_property
    def n(self) -> int:
        return separator_graph_size(self.s, self.k, self.w)

    @property
    def copy_size(self) -> int:
        return self.sub.n if self.sub is not None else 0

    def copy_offset(self, i: int) -> int:
        return 1 + i * self.copy_size

    @property
    def midpoint_base(self) -> int:
        return 1 + self.N * self.copy_size

    def midpoint(self, i: int, u: int, j: int) -> int:
        """Midpoint of the j-th length-2 path from the apex to vertex u of copy i."""
        return self.midpoint_base + (i * self.copy_size + u) * self.N + j

    @property
    def copies(self) -> list[tuple["SeparatorGraphMeta", int]]:
        """(sub-meta, id offset) per copy; local id u of copy i is ``offset + u`` here."""
        return [(self.sub, self.copy_offset(i)) for i in range(self.N)]

    def locate(self, x: int) -> tuple[int, int] | None:
        """(copy index, local id) for a copy vertex, None for the apex or a midpoint."""
        if 1 <= x < self.midpoint_base:
            i, u = divmod(x - 1, self.copy_size)
            return i, u
        return None

    @property
    def path_registry(self) -> dict[tuple[int, int, int], int]:
        return {(i, u, j): self.midpoint(i, u, j)
                for i in range(self.N) for u in range(self.copy_size) for j in range(self.N)}

    def to_obj(self) -> dict:
        out = {"s": self.s, "k": self.k, "w": self.w, "n": self.n, "N": self.N, "apex": self.apex}
        if self.sub is not None:
            out.update({
                "copy_size": self.copy_size,
                "copy_offsets": [self.copy_offset(i) for i in range(self.N)],
                "midpoint_base": self.midpoint_base,
                "midpoint_layout": "midpoint_base + (copy*copy_size + u)*N + j",
                "sub": self.sub.to_obj(),
            })
        return out


def separator_meta(s: int, k: int, w: int) -> SeparatorGraphMeta:
    meta = SeparatorGraphMeta(s, 0, w)
    for level in range(1, k + 1):
        meta = SeparatorGraphMeta(s, level, w, meta)
    return meta


def _edges(meta: SeparatorGraphMeta) -> list[tuple[int, int]]:
    if meta.k == 0:
        return []
    inner = _edges(meta.sub)
    out = []
    for i in range(meta.N):
        off = meta.copy_offset(i)
        out.extend((a + off, b + off) for a, b in inner)
    for i in range(meta.N):
        off = meta.copy_offset(i)
        for u in range(meta.copy_size):
            for j in range(meta.N):
                m = meta.midpoint(i, u, j)
                out.append((0, m))
                out.append((off + u, m))
    return out


def build_separator_graph(s: int, k: int, w: int, budget: int = DEFAULT_BUDGET) -> tuple[Graph, SeparatorGraphMeta]:
    if k < 0 or s < 0 or w < 1:
        raise ValueError(f"need k >= 0, s >= 0, w >= 1; got s={s}, k={k}, w={w}")
    size = separator_graph_size(s, k, w)
    if size > budget:
        raise BudgetExceeded(f"G_(s={s},k={k},w={w})", size, budget)
    meta = separator_meta(s, k, w)
    return Graph(size, tuple(_edges(meta))), meta


def _td_parts(meta: SeparatorGraphMeta) -> tuple[list[frozenset[int]], list[tuple[int, int]]]:
    if meta.k == 0:
        return [frozenset([0])], []
    q_bags, q_edges = _td_parts(meta.sub)
    first_bag = {}
    for x, bag in enumerate(q_bags):
        for u in bag:
            first_bag.setdefault(u, x)
    nb = len(q_bags)
    bags, edges = [], []
    for i in range(meta.N):
        off, node_off = meta.copy_offset(i), i * nb
        bags.extend(frozenset([0, *(u + off for u in bag)]) for bag in q_bags)
        edges.extend((a + node_off, b + node_off) for a, b in q_edges)
        if i:
            edges.append((0, node_off))
    for i in range(meta.N):
        off = meta.copy_offset(i)
        for u in range(meta.copy_size):
            anchor = i * nb + first_bag[u]
            for j in range(meta.N):
                edges.append((anchor, len(bags)))
                bags.append(frozenset([0, off + u, meta.midpoint(i, u, j)]))
    return bags, edges


def separator_tree_decomposition(meta: SeparatorGraphMeta) -> TreeDecomposition:
    """Copies' decompositions with the apex added, plus a leaf {apex, u, midpoint} per apex path.

    Bag sizes are max(3, b+1) where b is the copies' largest bag, so the width
    is 0 for k = 0 and k+1 for k ≥ 1.
    """
    bags, edges = _td_parts(meta)
    return TreeDecomposition.from_bags(bags, edges)


def separator_layering(meta: SeparatorGraphMeta) -> Layering:
    """Distance layers from the apex: apex, midpoints, then every copy vertex."""
    if meta.k == 0:
        return Layering.single(1)
    layer_of = [0] + [2] * (meta.midpoint_base - 1) + [1] * (meta.n - meta.midpoint_base)
    return Layering.from_assignment(layer_of)


def separator_layered_width(k: int) -> int:
    """Layered width of the apex-layered decomposition: 1 for k ≤ 1, else k+1."""
    return 1 if k <= 1 else k + 1


def separator_layered_decomposition(meta: SeparatorGraphMeta) -> LayeredDecomposition:
    ld = LayeredDecomposition(separator_layering(meta), separator_tree_decomposition(meta))
    return ld


def find_respecting_model(sub: Subdivision | Graph, meta: SeparatorGraphMeta, hp: HPartition,
                          layering: Layering) -> MinorModel:
    """A K_{k+1} model in the subdivided graph that respects ``hp``.

    Follows the induction: pick the first copy whose vertices avoid the apex's
    part, recurse into it, then join the apex to a base vertex of each
    recursive branch set through the first apex path avoiding every part
    those branch sets touch. Each branch set has at most k(2s+1)+1 vertices
    and contains a base vertex.
    """
    if isinstance(sub, Graph):
        sub = trivial_subdivision(sub)
    g = sub.derived
    if sub.base.n != meta.n:
        raise PreconditionError(f"base graph has {sub.base.n} vertices, meta expects {meta.n}")
    if sub.s_bound > meta.s:
        raise PreconditionError(f"subdivision has a path of {sub.s_bound} > s={meta.s} division vertices")
    for verdict in (verify_h_partition(g, hp), verify_layering(g, layering)):
        if not verdict:
            raise PreconditionError(str(verdict.violation))
    width = h_partition_layered_width(hp, layering)
    if width > meta.w:
        raise PreconditionError(f"partition has layered width {width} > w={meta.w}")

    part_of, parts = hp.part_of, hp.parts
    owner = sub.owner

    def copies_met(level: SeparatorGraphMeta, off: int, vertices) -> set[int]:
        met = set()
        for x in vertices:
            if x >= sub.base.n:
                a, b = owner[x]
                la, lb = level.locate(a - off), level.locate(b - off)
                if la is not None and lb is not None and la[0] == lb[0]:
                    met.add(la[0])
            elif 0 <= x - off < level.n:
                loc = level.locate(x - off)
                if loc is not None:
                    met.add(loc[0])
        return met

    def rec(level: SeparatorGraphMeta, off: int) -> list[tuple[set[int], int]]:
        apex = off
        if level.k == 0:
            return [({apex}, apex)]
        met = copies_met(level, off, parts[part_of[apex]])
        i = next((c for c in range(level.N) if c not in met), None)
        if i is None:
            raise ConstructionError(f"every copy at level k={level.k} meets the apex part")
        copy_off = off + level.copy_offset(i)
        inner = rec(level.sub, copy_off)
        forbidden = {part_of[y] for ys, _ in inner for y in ys}
        new_set = {apex}
        for _, y in inner:
            u = y - copy_off
            for j in range(level.N):
                m = off + level.midpoint(i, u, j)
                path = sub.full_path(apex, m) + sub.full_path(m, y)[1:-1]
                if all(part_of[x] not in forbidden for x in path):
                    new_set.update(path)
                    break
            else:
                raise ConstructionError(f"no apex path to {y} avoids the forbidden parts")
        bound = level.k * (2 * level.s + 1) + 1
        if len(new_set) > bound:
            raise ConstructionError(f"branch set of size {len(new_set)} exceeds {bound}")
        return inner + [(new_set, apex)]

    model = MinorModel(tuple(frozenset(ys) for ys, _ in rec(meta, 0)))
    verdict = verify_model(g, model)
    if not verdict or not model_respects(model, hp):
        raise ConstructionError(f"extracted model failed verification: {verdict.to_obj()}")
    return model


@dataclass(frozen=True)
class Witness:
    graph: Graph
    subdivision: Subdivision
    certificate: LayeredDecomposition
    meta: SeparatorGraphMeta


def witness_parameters(k: int) -> tuple[int, int]:
    """(layered width of the apex-layered decomposition, subdivision bound s) for witness(k)."""
    lw = separator_layered_width(k)
    return lw, 2 * lw - 2


def witness(k: int, budget: int = DEFAULT_BUDGET) -> Witness:
    """A subdivision of G_{s,k,1} with a certified layered width of 1.

    s is chosen as 2c-2 where c is the layered width of the apex-layered
    decomposition, so the ltw-1 subdivision stays within the (≤ s) class the
    model extractor handles.
    """
    if k < 1:
        raise ValueError("witness needs k >= 1")
    lw, s = witness_parameters(k)
    g, meta = build_separator_graph(s, k, 1, budget)
    ld = separator_layered_decomposition(meta)
    verdict = verify_layered_decomposition(g, ld)
    if not verdict or verdict.width != lw:
        raise ConstructionError(f"apex-layered decomposition gave {verdict.to_obj()}, expected width {lw}")
    sub, cert = ltw1_subdivision(g, ld)
    if sub.s_bound > s:
        raise ConstructionError(f"ltw-1 subdivision used {sub.s_bound} > {s} division vertices")
    return Witness(sub.derived, sub, cert, meta)
