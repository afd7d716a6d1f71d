import pytest
from hypothesis import assume, given, strategies as st

from widthlab.decomp import (HPartition, Layering, LayeredDecomposition, MinorModel, TreeDecomposition,
                             bfs_layering, h_partition_layered_width, layered_width, model_respects,
                             project_model, verify_h_partition, verify_layering, verify_model,
                             verify_tree_decomposition)
from widthlab.errors import InvalidCertificate, PreconditionError
from widthlab.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph
from widthlab.oracles import find_clique_minor

from conftest import graphs


# ---------------------------------------------------------------- tree decompositions

def test_single_bag_complete_graph():
    v = verify_tree_decomposition(complete_graph(4), TreeDecomposition.single_bag(range(4)))
    assert v.valid and v.width == 3


def test_path_two_bags():
    v = verify_tree_decomposition(path_graph(3), TreeDecomposition.path([{0, 1}, {1, 2}]))
    assert v.valid and v.width == 1


def test_cycle_missing_edge_named():
    v = verify_tree_decomposition(cycle_graph(4), TreeDecomposition.path([{0, 1}, {1, 2}, {2, 3}]))
    assert not v and v.violation.code == "edge-uncovered"
    assert v.violation.where["edge"] == [0, 3]


@pytest.mark.parametrize("bags,edges,is_path,code", [
    ([{0, 1}, {1, 2}], [], False, "tree-not-a-tree"),
    ([{0, 1}, {1, 2}, {0}], [(0, 1), (1, 2)], False, "vertex-disconnected"),
    ([{0, 1}, {1, 5}], [(0, 1)], False, "bag-vertex-out-of-range"),
    ([{0, 1}], [], False, "vertex-not-covered"),
    ([{1}, {0, 1}, {1, 2}, {1}], [(0, 1), (0, 2), (0, 3)], True, "not-a-path"),
])
def test_tree_decomposition_violations(bags, edges, is_path, code):
    td = TreeDecomposition.from_bags(bags, edges, is_path)
    assert verify_tree_decomposition(path_graph(3), td).violation.code == code


@given(graphs(max_n=7))
def test_single_bag_always_valid(g):
    v = verify_tree_decomposition(g, TreeDecomposition.single_bag(range(g.n)))
    assert v.valid and v.width == g.n - 1


# ---------------------------------------------------------------- layerings

def test_one_layer_always_valid():
    assert verify_layering(complete_graph(5), Layering.single(5))


def test_triangle_spanning_layers():
    v = verify_layering(complete_graph(3), Layering.from_assignment([0, 1, 2]))
    assert v.violation.code == "edge-spans-layers" and v.violation.where["edge"] == [0, 2]


def test_empty_layer_rejected():
    v = verify_layering(path_graph(2), Layering((frozenset({0}), frozenset(), frozenset({1}))))
    assert v.violation.code == "layering-not-normalized"


def test_from_assignment_squeezes_gaps():
    assert Layering.from_assignment([3, 5, 3]).assignment(3) == [0, 1, 0]


@pytest.mark.parametrize("g,root,sizes", [
    (star_graph(4), 0, [1, 4]),
    (path_graph(4), 0, [1, 1, 1, 1]),
    (cycle_graph(6), 2, [1, 2, 2, 1]),
])
def test_bfs_layer_sizes(g, root, sizes):
    assert [len(l) for l in bfs_layering(g, root).layers] == sizes


def test_bfs_needs_connected():
    with pytest.raises(PreconditionError):
        bfs_layering(Graph(2))


@given(graphs(min_n=1, max_n=8, connected=True), st.data())
def test_bfs_layering_valid(g, data):
    root = data.draw(st.integers(0, g.n - 1))
    assert verify_layering(g, bfs_layering(g, root))


# ---------------------------------------------------------------- layered width

def test_layered_width_examples():
    k6 = complete_graph(6)
    assert layered_width(LayeredDecomposition(Layering.single(6), TreeDecomposition.single_bag(range(6)))) == 6
    split = Layering.from_assignment([0, 0, 0, 1, 1, 1])
    assert layered_width(LayeredDecomposition(split, TreeDecomposition.single_bag(range(6))), k6) == 3
    p = path_graph(7)
    ld = LayeredDecomposition(bfs_layering(p), TreeDecomposition.path([{i, i + 1} for i in range(6)]))
    assert layered_width(ld, p) == 1


def test_layered_width_rejects_invalid_carriers():
    ld = LayeredDecomposition(Layering.single(2), TreeDecomposition.single_bag(range(3)))
    with pytest.raises(InvalidCertificate):
        layered_width(ld)
    with pytest.raises(InvalidCertificate):
        layered_width(ld, path_graph(3))


@given(graphs(min_n=1, max_n=7, connected=True))
def test_width_one_means_one_per_layer(g):
    from widthlab.oracles import exact_layered_treewidth
    k, ld = exact_layered_treewidth(g)
    assume(k == 1)
    idx = ld.layering.index
    for bag in ld.decomposition.bags:
        layers = [idx[v] for v in bag]
        assert len(layers) == len(set(layers))


# ---------------------------------------------------------------- H-partitions

def test_h_partition_examples():
    k3 = complete_graph(3)
    assert verify_h_partition(k3, HPartition.singletons(k3))
    assert verify_h_partition(k3, HPartition(complete_graph(2), (0, 0, 1)))
    bad = verify_h_partition(k3, HPartition(path_graph(3), (0, 1, 2)))
    assert bad.violation.code == "host-edge-missing" and bad.violation.where["edge"] == [0, 2]


def test_h_partition_empty_host_node():
    v = verify_h_partition(path_graph(2), HPartition(complete_graph(3), (0, 1)))
    assert v.violation.code == "host-node-empty"


def test_h_partition_width_examples():
    k4, k6 = complete_graph(4), complete_graph(6)
    assert h_partition_layered_width(HPartition.singletons(k4), Layering.single(4)) == 1
    assert h_partition_layered_width(HPartition(Graph(1), (0,) * 4), Layering.single(4)) == 4
    hp = HPartition(complete_graph(3), (0, 0, 1, 1, 2, 2))
    assert verify_h_partition(k6, hp)
    assert h_partition_layered_width(hp, Layering.from_assignment([0, 1, 0, 1, 0, 1])) == 1


def test_h_partition_width_mismatch():
    with pytest.raises(PreconditionError):
        h_partition_layered_width(HPartition.singletons(path_graph(3)), Layering.single(2))


@given(graphs(max_n=7), st.data())
def test_quotient_is_valid(g, data):
    part_of = data.draw(st.lists(st.integers(0, 3), min_size=g.n, max_size=g.n))
    hp = HPartition.quotient(g, part_of)
    assert verify_h_partition(g, hp)


# ---------------------------------------------------------------- minor models

def test_model_examples():
    k4 = complete_graph(4)
    assert verify_model(k4, MinorModel(tuple(frozenset([v]) for v in range(4)))).width == 4
    overlap = verify_model(k4, MinorModel((frozenset({0, 1}), frozenset({1, 2}))))
    assert overlap.violation.code == "model-overlap"
    arcs = MinorModel((frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5})))
    assert verify_model(cycle_graph(6), arcs).width == 3


@pytest.mark.parametrize("sets,code", [
    ([set()], "model-empty"),
    ([{0, 2}], "model-disconnected"),
    ([{0}, {2}], "model-nonadjacent"),
    ([{7}], "model-vertex-out-of-range"),
])
def test_model_violations(sets, code):
    m = MinorModel(tuple(frozenset(s) for s in sets))
    assert verify_model(path_graph(3), m).violation.code == code


def test_respects_and_project():
    k3 = complete_graph(3)
    m = MinorModel(tuple(frozenset([v]) for v in range(3)))
    assert model_respects(m, HPartition.singletons(k3))
    merged = HPartition(complete_graph(2), (0, 0, 1))
    assert not model_respects(m, merged)
    with pytest.raises(PreconditionError):
        project_model(m, merged)
    single = MinorModel((frozenset({0}),))
    assert project_model(single, HPartition(Graph(1), (0,) * 3)).t == 1


@given(graphs(min_n=1, max_n=7), st.data())
def test_projection_of_respecting_model_is_valid(g, data):
    part_of = data.draw(st.lists(st.integers(0, 4), min_size=g.n, max_size=g.n))
    hp = HPartition.quotient(g, part_of)
    t = data.draw(st.integers(1, 4))
    m = find_clique_minor(g, t, respect=hp)
    assume(m is not None)
    assert verify_model(g, m) and model_respects(m, hp)
    proj = project_model(m, hp)
    assert verify_model(hp.host, proj).width == t
