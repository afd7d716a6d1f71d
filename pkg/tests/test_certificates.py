import json

import pytest
from hypothesis import given, settings

from widthlab import certificates as cert
from widthlab.constructions import find_respecting_model, find_tree_in_host, tree_host_degree
from widthlab.constructions.separator import build_separator_graph
from widthlab.decomp import HPartition, Layering, bfs_layering
from widthlab.errors import GraphFormatError
from widthlab.graph import build_dary_tree, complete_graph, cycle_graph, dumps, subdivide
from widthlab.oracles import exact_layered_treewidth, exact_row_treewidth, exact_treewidth, host_decomposition

from conftest import graphs


def _round(env: dict) -> dict:
    return json.loads(dumps(env))


@settings(max_examples=30)
@given(graphs(min_n=1, max_n=7))
def test_decomposition_envelopes_round_trip(g):
    _, td = exact_treewidth(g)
    env = _round(cert.envelope(g, "tree_decomposition", cert.td_to_obj(td)))
    assert cert.td_from_obj(env["payload"]) == td
    assert cert.verify_bytes(dumps(env)).width == td.width
    k, ld = exact_layered_treewidth(g)
    env = _round(cert.envelope(g, "layered_decomposition", cert.ld_to_obj(ld)))
    assert cert.verify_bytes(dumps(env)).width == k


def test_embedding_envelope_with_host_decomposition():
    g = complete_graph(5)
    k, pe = exact_row_treewidth(g)
    _, td = host_decomposition(pe)
    env = cert.envelope(g, "product_embedding", cert.embedding_to_obj(pe, td))
    assert cert.verify_bytes(dumps(env)).width == k
    parsed = cert.embedding_from_obj(_round(env)["payload"], g)
    assert parsed == pe


def test_oracle_result_unwraps_to_witness():
    g = cycle_graph(5)
    _, td = exact_treewidth(g)
    res = cert.oracle_result("tw", 2, cert.envelope(g, "tree_decomposition", cert.td_to_obj(td)))
    assert cert.verify_bytes(dumps(res)).width == 2


def test_partition_envelope_reports_layered_width():
    g = complete_graph(6)
    hp = HPartition(complete_graph(3), (0, 0, 1, 1, 2, 2))
    env = cert.envelope(g, "h_partition", cert.hp_to_obj(hp, Layering.from_assignment([0, 1] * 3)))
    assert cert.verify_bytes(dumps(env)).width == 1


def test_model_envelope_respecting():
    g, meta = build_separator_graph(0, 1, 1)
    hp = HPartition.singletons(g)
    m = find_respecting_model(g, meta, hp, bfs_layering(g))
    env = cert.envelope(g, "minor_model", cert.model_to_obj(m, hp))
    assert cert.verify_bytes(dumps(env)).width == 2
    merged = HPartition.quotient(g, [0] * g.n)
    env = cert.envelope(g, "minor_model", cert.model_to_obj(m, merged))
    assert cert.verify_bytes(dumps(env)).violation.code == "model-not-respecting"


def test_tree_embedding_envelope():
    tree, meta = build_dary_tree(tree_host_degree(1, 1, 2), 1)
    hp = HPartition.singletons(tree)
    emb = find_tree_in_host(meta, hp, bfs_layering(tree), 1, 2)
    env = cert.envelope(hp.host, "tree_embedding", {"ell": 2, "h": 1, "map": list(emb), "root": 0})
    assert cert.verify_bytes(dumps(env)).width == 2
    env["payload"]["map"][1] = env["payload"]["map"][2]
    assert cert.verify_bytes(dumps(env)).violation.code == "not-injective"


def test_subdivision_envelope():
    sub = subdivide(complete_graph(4), 2)
    env = cert.subdivision_envelope(sub)
    assert cert.verify_bytes(dumps(env)).width == 2
    env["graph"]["edges"] = env["graph"]["edges"][1:]
    assert cert.verify_bytes(dumps(env)).violation.code == "graph-mismatch"


def test_tampered_bag_names_uncovered_edge():
    g = complete_graph(3)
    env = cert.envelope(g, "tree_decomposition", {"tree_edges": [], "bags": [[0, 1, 2]], "is_path": True})
    env["payload"]["bags"][0].remove(2)
    v = cert.verify_bytes(dumps(env))
    assert v.violation.code in {"vertex-not-covered", "edge-uncovered"}


@pytest.mark.parametrize("text", [
    '{"graph": {"n": 1, "edges": []}, "kind": "nonsense", "payload": {}}',
    '{"graph": {"n": 1, "edges": []}, "kind": "layering", "payload": {"layers": [[0, "x"]]}}',
    '{"graph": {"n": 1, "edges": []}, "kind": "tree_decomposition", "payload": {"bags": [[0]]}}',
    '{"graph": {"n": 1}, "kind": "layering", "payload": {}}',
    '{"graph": {"n": 1, "edges": []}, "kind": "layering"',
    '[1, 2]',
])
def test_malformed_envelopes_raise(text):
    with pytest.raises(GraphFormatError):
        cert.verify_bytes(text)


def test_unknown_kind_rejected_by_encoder():
    with pytest.raises(ValueError):
        cert.envelope(complete_graph(1), "bogus", {})
