"""Decompositions, layerings, H-partitions and minor models, with verifiers.

Verifiers never raise on bad certificates; they return a ``Verdict`` naming
the first failing condition. Width helpers raise ``InvalidCertificate`` when
handed a certificate that does not verify.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidCertificate, PreconditionError, Verdict, Violation
from .graph import Graph


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: tuple[frozenset[int], ...]
    is_path: bool = False

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))

    @classmethod
    def from_bags(cls, bags: Sequence[Iterable[int]], tree_edges: Iterable[tuple[int, int]] = (),
                  is_path: bool = False) -> "TreeDecomposition":
        bags = tuple(frozenset(b) for b in bags)
        return cls(Graph(len(bags), tuple(tree_edges)), bags, is_path)

    @classmethod
    def path(cls, bags: Sequence[Iterable[int]]) -> "TreeDecomposition":
        bags = list(bags)
        return cls.from_bags(bags, [(i, i + 1) for i in range(len(bags) - 1)], True)

    @classmethod
    def single_bag(cls, vertices: Iterable[int]) -> "TreeDecomposition":
        return cls.path([vertices])

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass(frozen=True)
class Layering:
    layers: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(frozenset(l) for l in self.layers))

    @classmethod
    def from_assignment(cls, layer_of: Sequence[int]) -> "Layering":
        """Build from a per-vertex layer index; unused indices are squeezed out."""
        used = sorted(set(layer_of))
        rank = {b: i for i, b in enumerate(used)}
        layers: list[set[int]] = [set() for _ in used]
        for v, b in enumerate(layer_of):
            layers[rank[b]].add(v)
        return cls(tuple(frozenset(l) for l in layers))

    @classmethod
    def single(cls, n: int) -> "Layering":
        return cls((frozenset(range(n)),) if n else ())

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, layer in enumerate(self.layers) for v in layer}

    def layer_of(self, v: int) -> int:
        return self.index[v]

    def assignment(self, n: int) -> list[int]:
        return [self.index[v] for v in range(n)]

    def __len__(self) -> int:
        return len(self.layers)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        out = []
        for layer in self.layers:
            m = 0
            for v in layer:
                m |= 1 << v
            out.append(m)
        return tuple(out)


@dataclass(frozen=True)
class LayeredDecomposition:
    layering: Layering
    decomposition: TreeDecomposition

    @property
    def is_path(self) -> bool:
        return self.decomposition.is_path


@dataclass(frozen=True)
class HPartition:
    """Partition of a graph's vertices indexed by the nodes of ``host``."""

    host: Graph
    part_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "part_of", tuple(self.part_of))

    @cached_property
    def parts(self) -> tuple[frozenset[int], ...]:
        buckets: list[set[int]] = [set() for _ in range(self.host.n)]
        for v, x in enumerate(self.part_of):
            if 0 <= x < self.host.n:
                buckets[x].add(v)
        return tuple(frozenset(b) for b in buckets)

    @classmethod
    def quotient(cls, g: Graph, part_of: Sequence[int]) -> "HPartition":
        """Partition with the smallest host: parts relabelled densely, host = quotient graph."""
        labels = sorted(set(part_of))
        rank = {x: i for i, x in enumerate(labels)}
        pmap = tuple(rank[x] for x in part_of)
        edges = {(min(pmap[u], pmap[v]), max(pmap[u], pmap[v])) for u, v in g.edges if pmap[u] != pmap[v]}
        return cls(Graph(len(labels), tuple(edges)), pmap)

    @classmethod
    def singletons(cls, g: Graph) -> "HPartition":
        return cls(g.without_labels(), tuple(range(g.n)))


@dataclass(frozen=True)
class MinorModel:
    branch_sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "branch_sets", tuple(frozenset(b) for b in self.branch_sets))

    @property
    def t(self) -> int:
        return len(self.branch_sets)


# ---------------------------------------------------------------- verifiers

def _connected_within(adj, vertices: set[int]) -> bool:
    if not vertices:
        return False
    start = next(iter(vertices))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y in vertices and y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(vertices)


def verify_tree_decomposition(g: Graph, td: TreeDecomposition) -> Verdict:
    tree, bags = td.tree, td.bags
    if tree.n != len(bags):
        return Verdict.fail("tree-size", f"tree has {tree.n} nodes but there are {len(bags)} bags")
    if g.n and not bags:
        return Verdict.fail("no-bags", "nonempty graph with no bags")
    if bags and not tree.is_tree():
        return Verdict.fail("tree-not-a-tree", "decomposition tree is not a tree")
    if td.is_path and tree.max_degree() > 2:
        return Verdict.fail("not-a-path", "path-decomposition tree has a node of degree > 2")
    occurs: list[set[int]] = [set() for _ in range(g.n)]
    for x, bag in enumerate(bags):
        for v in bag:
            if not 0 <= v < g.n:
                return Verdict.fail("bag-vertex-out-of-range", f"bag {x} contains unknown vertex {v}", bag=x, vertex=v)
            occurs[v].add(x)
    for v in range(g.n):
        if not occurs[v]:
            return Verdict.fail("vertex-not-covered", f"vertex {v} is in no bag", vertex=v)
        if not _connected_within(tree.adj, occurs[v]):
            return Verdict.fail("vertex-disconnected", f"bags containing vertex {v} are not connected in the tree",
                                vertex=v)
    for u, v in g.edges:
        if not occurs[u] & occurs[v]:
            return Verdict.fail("edge-uncovered", f"edge ({u}, {v}) is in no bag", edge=[u, v])
    return Verdict.ok(td.width)


def verify_layering(g: Graph, l: Layering) -> Verdict:
    seen = {}
    for i, layer in enumerate(l.layers):
        for v in layer:
            if not 0 <= v < g.n:
                return Verdict.fail("layer-vertex-out-of-range", f"layer {i} contains unknown vertex {v}",
                                    layer=i, vertex=v)
            if v in seen:
                return Verdict.fail("layering-not-partition", f"vertex {v} in layers {seen[v]} and {i}", vertex=v)
            seen[v] = i
    if len(seen) != g.n:
        missing = min(set(range(g.n)) - seen.keys())
        return Verdict.fail("layering-not-partition", f"vertex {missing} is in no layer", vertex=missing)
    for i, layer in enumerate(l.layers):
        if not layer:
            return Verdict.fail("layering-not-normalized", f"layer {i} is empty", layer=i)
    for u, v in g.edges:
        if abs(seen[u] - seen[v]) > 1:
            return Verdict.fail("edge-spans-layers", f"edge ({u}, {v}) joins layers {seen[u]} and {seen[v]}",
                                edge=[u, v])
    return Verdict.ok()


def bfs_layering(g: Graph, root: int = 0) -> Layering:
    if not g.is_connected():
        raise PreconditionError("bfs_layering needs a connected graph")
    return Layering.from_assignment(g.distances_from(root))


def _max_intersection(sets: Iterable[frozenset[int]], layering: Layering) -> int:
    idx = layering.index
    best = 0
    for s in sets:
        counts: dict[int, int] = {}
        for v in s:
            i = idx[v]
            counts[i] = counts.get(i, 0) + 1
        if counts:
            best = max(best, max(counts.values()))
    return best


def verify_layered_decomposition(g: Graph, ld: LayeredDecomposition) -> Verdict:
    verdict = verify_layering(g, ld.layering)
    if not verdict:
        return verdict
    verdict = verify_tree_decomposition(g, ld.decomposition)
    if not verdict:
        return verdict
    return Verdict.ok(_max_intersection(ld.decomposition.bags, ld.layering))


def layered_width(ld: LayeredDecomposition, g: Graph | None = None) -> int:
    """max |bag ∩ layer|; with ``g`` given both certificates are verified first."""
    if g is not None:
        verify_layered_decomposition(g, ld).raise_if_invalid()
    stray = set().union(*ld.decomposition.bags) - ld.layering.index.keys()
    if stray:
        raise InvalidCertificate(Violation("mismatched-carriers", f"bag vertex {min(stray)} is in no layer"))
    return _max_intersection(ld.decomposition.bags, ld.layering)


def verify_h_partition(g: Graph, hp: HPartition) -> Verdict:
    if len(hp.part_of) != g.n:
        return Verdict.fail("part-map-incomplete", f"part map has {len(hp.part_of)} entries for {g.n} vertices")
    for v, x in enumerate(hp.part_of):
        if not 0 <= x < hp.host.n:
            return Verdict.fail("part-out-of-range", f"vertex {v} maps to unknown host node {x}", vertex=v)
    for x, part in enumerate(hp.parts):
        if not part:
            return Verdict.fail("host-node-empty", f"host node {x} has an empty part", node=x)
    for u, v in g.edges:
        x, y = hp.part_of[u], hp.part_of[v]
        if x != y and not hp.host.has_edge(x, y):
            return Verdict.fail("host-edge-missing", f"edge ({u}, {v}) maps to host non-edge ({x}, {y})",
                                edge=[u, v], nodes=[x, y])
    return Verdict.ok()


def h_partition_layered_width(hp: HPartition, l: Layering) -> int:
    if len(hp.part_of) != len(l.index) or set(l.index) != set(range(len(hp.part_of))):
        raise PreconditionError("partition and layering are over different vertex sets")
    return _max_intersection(hp.parts, l)


def verify_model(g: Graph, m: MinorModel) -> Verdict:
    owner = {}
    for i, y in enumerate(m.branch_sets):
        if not y:
            return Verdict.fail("model-empty", f"branch set {i} is empty", branch=i)
        for v in y:
            if not 0 <= v < g.n:
                return Verdict.fail("model-vertex-out-of-range", f"branch set {i} has unknown vertex {v}", branch=i)
            if v in owner:
                return Verdict.fail("model-overlap", f"vertex {v} is in branch sets {owner[v]} and {i}",
                                    vertex=v, branches=[owner[v], i])
            owner[v] = i
    for i, y in enumerate(m.branch_sets):
        if not _connected_within(g.adj, set(y)):
            return Verdict.fail("model-disconnected", f"branch set {i} is not connected", branch=i)
    touching = [set() for _ in m.branch_sets]
    for u, v in g.edges:
        a, b = owner.get(u), owner.get(v)
        if a is not None and b is not None and a != b:
            touching[a].add(b)
            touching[b].add(a)
    for i in range(m.t):
        for j in range(i + 1, m.t):
            if j not in touching[i]:
                return Verdict.fail("model-nonadjacent", f"no edge joins branch sets {i} and {j}", branches=[i, j])
    return Verdict.ok(m.t)


def model_respects(m: MinorModel, hp: HPartition) -> bool:
    """True iff every part of ``hp`` meets at most one branch set."""
    claimed: dict[int, int] = {}
    for i, y in enumerate(m.branch_sets):
        for v in y:
            x = hp.part_of[v]
            if claimed.setdefault(x, i) != i:
                return False
    return True


def project_model(m: MinorModel, hp: HPartition) -> MinorModel:
    """Image of a respecting model in the host: X_i = parts meeting Y_i."""
    if not model_respects(m, hp):
        raise PreconditionError("model does not respect the partition")
    return MinorModel(tuple(frozenset(hp.part_of[v] for v in y) for y in m.branch_sets))
