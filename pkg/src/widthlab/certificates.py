"""JSON certificate envelopes: ``{"graph": ..., "kind": ..., "payload": ...}``."""
from __future__ import annotations

from typing import Any

from .constructions.trees import verify_tree_embedding
from .decomp import (HPartition, Layering, LayeredDecomposition, MinorModel, TreeDecomposition,
                     h_partition_layered_width, model_respects, verify_h_partition,
                     verify_layered_decomposition, verify_layering, verify_model,
                     verify_tree_decomposition)
from .errors import GraphFormatError, Verdict
from .graph import (Graph, ProductEmbedding, graph_from_obj, graph_to_obj, loads,
                    subdivision_from_obj, subdivision_to_obj)

KINDS = ("tree_decomposition", "layering", "layered_decomposition", "h_partition", "minor_model",
         "product_embedding", "tree_embedding", "subdivision")


# ---------------------------------------------------------------- encoders

def td_to_obj(td: TreeDecomposition) -> dict:
    return {"tree_edges": [list(e) for e in td.tree.edges], "bags": [sorted(b) for b in td.bags],
            "is_path": td.is_path}


def layering_to_obj(l: Layering) -> dict:
    return {"layers": [sorted(layer) for layer in l.layers]}


def ld_to_obj(ld: LayeredDecomposition) -> dict:
    return {"layering": layering_to_obj(ld.layering), "decomposition": td_to_obj(ld.decomposition)}


def hp_to_obj(hp: HPartition, layering: Layering | None = None) -> dict:
    out: dict[str, Any] = {"host": graph_to_obj(hp.host), "part_of": list(hp.part_of)}
    if layering is not None:
        out["layering"] = layering_to_obj(layering)
    return out


def model_to_obj(m: MinorModel, respects: HPartition | None = None) -> dict:
    out: dict[str, Any] = {"branch_sets": [sorted(b) for b in m.branch_sets]}
    if respects is not None:
        out["respects"] = hp_to_obj(respects)
    return out


def embedding_to_obj(pe: ProductEmbedding, host_td: TreeDecomposition | None = None) -> dict:
    out: dict[str, Any] = {"host": graph_to_obj(pe.host), "width_factor": pe.width_factor,
                           "coords": [list(c) for c in pe.coords]}
    if host_td is not None:
        out["host_decomposition"] = td_to_obj(host_td)
    return out


def envelope(graph: Graph, kind: str, payload: dict) -> dict:
    if kind not in KINDS:
        raise ValueError(f"unknown certificate kind {kind!r}")
    return {"graph": graph_to_obj(graph), "kind": kind, "payload": payload}


def oracle_result(param: str, value: int, witness: dict) -> dict:
    return {"param": param, "value": value, "witness": witness}


# ---------------------------------------------------------------- decoders

def _get(obj, key: str, path: str, typ=None):
    if not isinstance(obj, dict) or key not in obj:
        raise GraphFormatError(f"missing key {key!r}", path)
    val = obj[key]
    if typ is not None and not isinstance(val, typ):
        raise GraphFormatError(f"{key!r} has wrong type {type(val).__name__}", f"{path}.{key}")
    return val


def _int_list(val, path: str) -> list[int]:
    if not isinstance(val, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in val):
        raise GraphFormatError("expected a list of integers", path)
    return val


def td_from_obj(obj, path: str = "$") -> TreeDecomposition:
    bags = _get(obj, "bags", path, list)
    edges = _get(obj, "tree_edges", path, list)
    is_path = _get(obj, "is_path", path, bool)
    bag_sets = [frozenset(_int_list(b, f"{path}.bags[{i}]")) for i, b in enumerate(bags)]
    pairs = []
    for i, e in enumerate(edges):
        e = _int_list(e, f"{path}.tree_edges[{i}]")
        if len(e) != 2:
            raise GraphFormatError("tree edge must have two ends", f"{path}.tree_edges[{i}]")
        pairs.append(tuple(e))
    try:
        return TreeDecomposition.from_bags(bag_sets, pairs, is_path)
    except ValueError as exc:
        raise GraphFormatError(str(exc), f"{path}.tree_edges") from None


def layering_from_obj(obj, path: str = "$") -> Layering:
    layers = _get(obj, "layers", path, list)
    return Layering(tuple(frozenset(_int_list(l, f"{path}.layers[{i}]")) for i, l in enumerate(layers)))


def ld_from_obj(obj, path: str = "$") -> LayeredDecomposition:
    return LayeredDecomposition(layering_from_obj(_get(obj, "layering", path), f"{path}.layering"),
                                td_from_obj(_get(obj, "decomposition", path), f"{path}.decomposition"))


def hp_from_obj(obj, path: str = "$") -> HPartition:
    host = graph_from_obj(_get(obj, "host", path), f"{path}.host")
    return HPartition(host, tuple(_int_list(_get(obj, "part_of", path), f"{path}.part_of")))


def model_from_obj(obj, path: str = "$") -> MinorModel:
    sets = _get(obj, "branch_sets", path, list)
    return MinorModel(tuple(frozenset(_int_list(b, f"{path}.branch_sets[{i}]")) for i, b in enumerate(sets)))


def embedding_from_obj(obj, guest: Graph, path: str = "$") -> ProductEmbedding:
    host = graph_from_obj(_get(obj, "host", path), f"{path}.host")
    w = _get(obj, "width_factor", path, int)
    coords = []
    for i, c in enumerate(_get(obj, "coords", path, list)):
        c = _int_list(c, f"{path}.coords[{i}]")
        if len(c) != 3:
            raise GraphFormatError("coordinate must be [host, row, copy]", f"{path}.coords[{i}]")
        coords.append(tuple(c))
    return ProductEmbedding(guest, host, w, tuple(coords))


def parse_envelope(data: bytes | str) -> tuple[Graph, str, dict]:
    obj = loads(data)
    if isinstance(obj, dict) and "witness" in obj and "param" in obj:
        obj = obj["witness"]
    graph = graph_from_obj(_get(obj, "graph", "$"), "$.graph")
    kind = _get(obj, "kind", "$", str)
    if kind not in KINDS:
        raise GraphFormatError(f"unknown certificate kind {kind!r}", "$.kind")
    return graph, kind, _get(obj, "payload", "$", dict)


# ---------------------------------------------------------------- verification

def verify_envelope(graph: Graph, kind: str, payload: dict) -> Verdict:
    """Run the verifier matching ``kind``. Raises GraphFormatError on malformed payloads."""
    p = "$.payload"
    if kind == "tree_decomposition":
        return verify_tree_decomposition(graph, td_from_obj(payload, p))
    if kind == "layering":
        return verify_layering(graph, layering_from_obj(payload, p))
    if kind == "layered_decomposition":
        return verify_layered_decomposition(graph, ld_from_obj(payload, p))
    if kind == "h_partition":
        hp = hp_from_obj(payload, p)
        verdict = verify_h_partition(graph, hp)
        if not verdict or "layering" not in payload:
            return verdict
        layering = layering_from_obj(payload["layering"], f"{p}.layering")
        lv = verify_layering(graph, layering)
        return lv if not lv else Verdict.ok(h_partition_layered_width(hp, layering))
    if kind == "minor_model":
        m = model_from_obj(payload, p)
        verdict = verify_model(graph, m)
        if not verdict or "respects" not in payload:
            return verdict
        hp = hp_from_obj(payload["respects"], f"{p}.respects")
        hv = verify_h_partition(graph, hp)
        if not hv:
            return hv
        if not model_respects(m, hp):
            return Verdict.fail("model-not-respecting", "a part meets two branch sets")
        return verdict
    if kind == "product_embedding":
        pe = embedding_from_obj(payload, graph, p)
        verdict = pe.check()
        if not verdict or "host_decomposition" not in payload:
            return verdict
        return verify_tree_decomposition(pe.host, td_from_obj(payload["host_decomposition"],
                                                              f"{p}.host_decomposition"))
    if kind == "tree_embedding":
        emb = _int_list(_get(payload, "map", p, list), f"{p}.map")
        ell = _get(payload, "ell", p, int)
        h = _get(payload, "h", p, int)
        verdict = verify_tree_embedding(graph, ell, h, emb, payload.get("root"))
        return Verdict.ok(ell) if verdict else verdict
    if kind == "subdivision":
        sub = subdivision_from_obj(payload, p)
        if sub.derived != graph:
            return Verdict.fail("graph-mismatch", "envelope graph differs from the derived graph")
        return Verdict.ok(sub.s_bound)
    raise GraphFormatError(f"unknown certificate kind {kind!r}", "$.kind")


def verify_bytes(data: bytes | str) -> Verdict:
    return verify_envelope(*parse_envelope(data))


def subdivision_envelope(sub) -> dict:
    return envelope(sub.derived, "subdivision", subdivision_to_obj(sub))

