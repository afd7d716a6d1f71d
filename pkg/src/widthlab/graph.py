"""Simple undirected graphs, generators, products, subdivisions and serialization.

Vertex ids are dense integers ``0..n-1``. Every value here is immutable once
constructed; helper views (adjacency sets, bitmasks) are computed lazily.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import GraphFormatError, SubdivisionError, Verdict

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``.

    ``edges`` is normalized on construction to a sorted tuple of ``(u, v)``
    pairs with ``u < v``; self-loops, duplicates and out-of-range endpoints
    raise ``ValueError``.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    labels: Mapping[int, str] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative vertex count {self.n}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {self.n})")
            e = _norm(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        for key in self.labels:
            if not 0 <= key < self.n:
                raise ValueError(f"label for unknown vertex {key}")
        object.__setattr__(self, "labels", dict(self.labels))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    def is_tree(self) -> bool:
        return self.n >= 1 and self.is_connected() and self.m == self.n - 1

    def distances_from(self, root: int) -> list[int]:
        """BFS distances from ``root``; unreachable vertices get -1."""
        dist = [-1] * self.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(self.adj[x]):
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices`` relabelled densely in sorted order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        old = sorted(set(vertices))
        new_of = {v: i for i, v in enumerate(old)}
        edges = [(new_of[u], new_of[v]) for u, v in self.edges if u in new_of and v in new_of]
        return Graph(len(old), tuple(edges)), old

    def without_labels(self) -> "Graph":
        return Graph(self.n, self.edges)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, nxg) -> "Graph":
        nodes = sorted(nxg.nodes())
        idx = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), tuple((idx[u], idx[v]) for u, v in nxg.edges() if u != v))


# ---------------------------------------------------------------- generators

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"complete_graph needs n >= 1, got {n}")
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"path_graph needs n >= 1, got {n}")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle_graph needs n >= 3, got {n}")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    if leaves < 0:
        raise ValueError("negative leaf count")
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def disjoint_union(graphs: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Disjoint union with consecutive id blocks; also returns each block's offset."""
    offsets, edges, total = [], [], 0
    for g in graphs:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in g.edges)
        total += g.n
    return Graph(total, tuple(edges)), offsets


PRODUCT_KINDS = ("strong", "cartesian", "direct")


def product(a: Graph, b: Graph, kind: str = "strong") -> Graph:
    """Graph product with row-major ids: vertex (x, y) gets id ``x * b.n + y``."""
    if kind not in PRODUCT_KINDS:
        raise ValueError(f"unknown product kind {kind!r}")
    nb = b.n
    edges = set()
    if kind in ("strong", "cartesian"):
        for x in range(a.n):
            for y, y2 in b.edges:
                edges.add((x * nb + y, x * nb + y2))
        for x, x2 in a.edges:
            for y in range(nb):
                edges.add((x * nb + y, x2 * nb + y))
    if kind in ("strong", "direct"):
        for x, x2 in a.edges:
            for y, y2 in b.edges:
                edges.add(_norm(x * nb + y, x2 * nb + y2))
                edges.add(_norm(x * nb + y2, x2 * nb + y))
    return Graph(a.n * nb, tuple(edges))


# ---------------------------------------------------------------- d-ary trees

@dataclass(frozen=True)
class DaryTreeMeta:
    """Bookkeeping for the complete d-ary tree of height h in heap layout.

    Vertex ``p`` has children ``d*p + 1 .. d*p + d``; the root is 0.
    """

    d: int
    h: int
    root: int = 0

    @property
    def n(self) -> int:
        return dary_tree_size(self.d, self.h)

    def children_of(self, v: int) -> tuple[int, ...]:
        first = self.d * v + 1
        if first >= self.n:
            return ()
        return tuple(range(first, first + self.d))

    @cached_property
    def children(self) -> dict[int, tuple[int, ...]]:
        """Ordered child lists of the internal vertices."""
        out = {}
        for v in range(self.n):
            ch = self.children_of(v)
            if ch:
                out[v] = ch
        return out

    def parent(self, v: int) -> int | None:
        return None if v == 0 else (v - 1) // self.d

    def depth(self, v: int) -> int:
        dep = 0
        while v:
            v = (v - 1) // self.d
            dep += 1
        return dep

    def child_towards(self, r: int, x: int) -> int | None:
        """The child of ``r`` whose subtree contains ``x``, or None if x is not below r."""
        while x > r:
            p = (x - 1) // self.d
            if p == r:
                return x
            x = p
        return None

    def subtree(self, r: int) -> list[int]:
        out, frontier = [], [r]
        while frontier:
            out.extend(frontier)
            frontier = [c for v in frontier for c in self.children_of(v)]
        return sorted(out)

    @cached_property
    def subtree_index(self) -> tuple[frozenset[int], ...]:
        """Vertex set of the subtree hanging from each child of the root."""
        return tuple(frozenset(self.subtree(c)) for c in self.children_of(self.root))

    def to_obj(self) -> dict:
        return {"d": self.d, "h": self.h, "root": self.root, "layout": "heap"}


def dary_tree_size(d: int, h: int) -> int:
    if d == 1:
        return h + 1
    return (d ** (h + 1) - 1) // (d - 1)


def build_dary_tree(d: int, h: int) -> tuple[Graph, DaryTreeMeta]:
    if d < 1 or h < 0:
        raise ValueError(f"need d >= 1 and h >= 0, got d={d}, h={h}")
    n = dary_tree_size(d, h)
    edges = tuple(((v - 1) // d, v) for v in range(1, n))
    return Graph(n, edges), DaryTreeMeta(d, h)


# ---------------------------------------------------------------- subdivisions

@dataclass(frozen=True)
class Subdivision:
    """A base graph together with a subdivision of it.

    Base vertex ids are kept in ``derived``; ``paths[(u, v)]`` (``u < v``) lists
    the division vertices of that edge ordered from the tail ``u`` to the head ``v``.
    """

    base: Graph
    derived: Graph
    paths: Mapping[Edge, tuple[int, ...]]

    @property
    def s_bound(self) -> int:
        return max((len(p) for p in self.paths.values()), default=0)

    @property
    def orientation(self) -> dict[Edge, Edge]:
        return {e: e for e in self.paths}

    @cached_property
    def owner(self) -> dict[int, Edge]:
        """Base edge carrying each division vertex."""
        return {z: e for e, p in self.paths.items() for z in p}

    def tail(self, z: int) -> int:
        """The tail endpoint of the edge that division vertex ``z`` subdivides."""
        return self.owner[z][0]

    def is_division(self, x: int) -> bool:
        return x >= self.base.n

    def full_path(self, u: int, v: int) -> list[int]:
        """Vertex sequence of P_uv in the derived graph, from ``u`` to ``v``."""
        e = _norm(u, v)
        mid = list(self.paths[e])
        if u > v:
            mid.reverse()
        return [u, *mid, v]

    def check(self) -> Verdict:
        base, der = self.base, self.derived
        if set(self.paths) != set(base.edges):
            return Verdict.fail("paths-keys", "path keys differ from base edge set")
        if der.n < base.n:
            return Verdict.fail("derived-too-small", "derived graph lacks base vertices")
        seen: set[int] = set()
        for e, p in self.paths.items():
            for z in p:
                if z < base.n or z >= der.n:
                    return Verdict.fail("division-id", f"division vertex {z} of edge {e} out of range", edge=e)
                if z in seen:
                    return Verdict.fail("division-shared", f"division vertex {z} reused", vertex=z)
                seen.add(z)
                if der.degree(z) != 2:
                    return Verdict.fail("division-degree", f"division vertex {z} has degree {der.degree(z)}", vertex=z)
        if len(seen) != der.n - base.n:
            return Verdict.fail("stray-vertex", "derived graph has vertices outside base and paths")
        expected = set()
        for e in self.paths:
            seq = self.full_path(*e)
            expected.update(_norm(a, b) for a, b in zip(seq, seq[1:]))
        if expected != der.edge_set:
            return Verdict.fail("path-edges", "derived edges do not match the path sequences")
        return Verdict.ok()


def subdivide(g: Graph, counts: Mapping[Edge, int] | int) -> Subdivision:
    """Replace each edge by a path with ``counts[edge]`` division vertices.

    Division ids are appended after ``g.n`` in sorted-edge, path-position order.
    """
    if isinstance(counts, int):
        counts = {e: counts for e in g.edges}
    norm_counts = {}
    for e, c in counts.items():
        ne = _norm(*e)
        if ne not in g.edge_set:
            raise SubdivisionError(f"count given for non-edge {e}")
        if c < 0:
            raise SubdivisionError(f"negative count {c} for edge {e}")
        norm_counts[ne] = c
    missing = g.edge_set - norm_counts.keys()
    if missing:
        raise SubdivisionError(f"no count for edges {sorted(missing)[:5]}")
    nxt = g.n
    paths, edges = {}, []
    for e in g.edges:
        ids = tuple(range(nxt, nxt + norm_counts[e]))
        nxt += len(ids)
        paths[e] = ids
        seq = [e[0], *ids, e[1]]
        edges.extend(zip(seq, seq[1:]))
    derived = Graph(nxt, tuple(edges), labels=g.labels)
    return Subdivision(g, derived, paths)


def trivial_subdivision(g: Graph) -> Subdivision:
    return subdivide(g, 0)


def smooth(sub: Subdivision) -> Graph:
    """Contract every subdivision path back to an edge; returns the base graph."""
    verdict = sub.check()
    if not verdict:
        raise SubdivisionError(str(verdict.violation))
    rebuilt = Graph(sub.base.n, tuple(sub.paths), labels=sub.base.labels)
    if rebuilt != sub.base:
        raise SubdivisionError("smoothing does not reproduce the base graph")
    return rebuilt


# ---------------------------------------------------------------- products P ⊠ H ⊠ K_w

@dataclass(frozen=True)
class ProductEmbedding:
    """An injective map of ``guest`` into ``host ⊠ P ⊠ K_w``.

    ``coords[v] = (host node, row, copy)`` with ``row >= 0`` and ``0 <= copy < w``.
    """

    guest: Graph
    host: Graph
    width_factor: int
    coords: tuple[tuple[int, int, int], ...]

    def check(self) -> Verdict:
        g, h, w = self.guest, self.host, self.width_factor
        if w < 1:
            return Verdict.fail("width-factor", f"width factor {w} < 1")
        if len(self.coords) != g.n:
            return Verdict.fail("coords-length", f"{len(self.coords)} coords for {g.n} vertices")
        seen = {}
        for v, (x, b, c) in enumerate(self.coords):
            if not 0 <= x < h.n:
                return Verdict.fail("host-node", f"vertex {v} maps to unknown host node {x}", vertex=v)
            if b < 0:
                return Verdict.fail("row", f"vertex {v} has negative row {b}", vertex=v)
            if not 0 <= c < w:
                return Verdict.fail("copy", f"vertex {v} has copy index {c} outside [0, {w})", vertex=v)
            if (x, b, c) in seen:
                return Verdict.fail("not-injective", f"vertices {seen[(x, b, c)]} and {v} share coordinates",
                                    vertices=[seen[(x, b, c)], v])
            seen[(x, b, c)] = v
        for u, v in g.edges:
            (x, b, _), (y, b2, _) = self.coords[u], self.coords[v]
            if abs(b - b2) > 1 or (x != y and not h.has_edge(x, y)):
                return Verdict.fail("edge-not-preserved", f"edge ({u}, {v}) is not an edge of the product",
                                    edge=[u, v])
        return Verdict.ok()


# ---------------------------------------------------------------- serialization

def graph_to_obj(g: Graph) -> dict:
    out: dict = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.labels:
        out["labels"] = {str(k): g.labels[k] for k in sorted(g.labels)}
    return out


def _expect_int(x, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise GraphFormatError(f"expected integer, got {type(x).__name__}", path)
    return x


def graph_from_obj(obj, path: str = "$") -> Graph:
    if not isinstance(obj, dict):
        raise GraphFormatError("graph must be an object", path)
    if "n" not in obj or "edges" not in obj:
        raise GraphFormatError("graph needs 'n' and 'edges'", path)
    n = _expect_int(obj["n"], f"{path}.n")
    if n < 0:
        raise GraphFormatError("negative vertex count", f"{path}.n")
    raw = obj["edges"]
    if not isinstance(raw, list):
        raise GraphFormatError("edges must be a list", f"{path}.edges")
    seen = set()
    for i, e in enumerate(raw):
        p = f"{path}.edges[{i}]"
        if not isinstance(e, list) or len(e) != 2:
            raise GraphFormatError("edge must be a 2-element list", p)
        u, v = _expect_int(e[0], p), _expect_int(e[1], p)
        if u == v:
            raise GraphFormatError(f"self-loop at {u}", p)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"endpoint outside [0, {n})", p)
        ne = _norm(u, v)
        if ne in seen:
            raise GraphFormatError(f"duplicate edge {list(ne)}", p)
        seen.add(ne)
    labels = {}
    if "labels" in obj and obj["labels"] is not None:
        if not isinstance(obj["labels"], dict):
            raise GraphFormatError("labels must be an object", f"{path}.labels")
        for k, s in obj["labels"].items():
            p = f"{path}.labels[{k!r}]"
            try:
                key = int(k)
            except ValueError:
                raise GraphFormatError("label key is not an integer", p) from None
            if not 0 <= key < n:
                raise GraphFormatError("label for unknown vertex", p)
            if not isinstance(s, str):
                raise GraphFormatError("label must be a string", p)
            labels[key] = s
    return Graph(n, tuple(seen), labels)


def dumps(obj) -> bytes:
    """Canonical JSON encoding used for every file this package writes."""
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def loads(data: bytes | str):
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None


def write_graph(g: Graph) -> bytes:
    return dumps(graph_to_obj(g))


def read_graph(data: bytes | str) -> Graph:
    return graph_from_obj(loads(data))


def subdivision_to_obj(sub: Subdivision) -> dict:
    out = graph_to_obj(sub.derived)
    out["base"] = graph_to_obj(sub.base)
    out["paths"] = [{"edge": list(e), "division": list(sub.paths[e])} for e in sorted(sub.paths)]
    return out


def subdivision_from_obj(obj, path: str = "$") -> Subdivision:
    derived = graph_from_obj(obj, path)
    if "base" not in obj or "paths" not in obj:
        raise GraphFormatError("subdivision needs 'base' and 'paths'", path)
    base = graph_from_obj(obj["base"], f"{path}.base")
    paths = {}
    for i, rec in enumerate(obj["paths"]):
        p = f"{path}.paths[{i}]"
        try:
            e = _norm(*rec["edge"])
            paths[e] = tuple(_expect_int(z, p) for z in rec["division"])
        except (KeyError, TypeError):
            raise GraphFormatError("path record needs 'edge' and 'division'", p) from None
    sub = Subdivision(base, derived, paths)
    verdict = sub.check()
    if not verdict:
        raise GraphFormatError(f"inconsistent subdivision: {verdict.violation}", path)
    return sub


def export_dot(g: Graph) -> bytes:
    lines = ["graph G {"]
    for v in range(g.n):
        if v in g.labels:
            lines.append(f"  {v} [label={json.dumps(g.labels[v])}];")
        else:
            lines.append(f"  {v};")
    lines.extend(f"  {u} -- {v};" for u, v in g.edges)
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()
