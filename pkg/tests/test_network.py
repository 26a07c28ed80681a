import json

import pytest
from hypothesis import given

from bpk.errors import BadPair, BadWidth, MissingConsecutivePair, PathCountGuardExceeded
from bpk.network import (Edge, NodeId, SubstructurePath, alpha_vector, beta_vector, edge_incidence,
                         enumerate_substructure_paths, induce_subgraph, lift_path, load_network,
                         make_network, network_to_json, validate_network)
from bpk.oracle import enumerate_all_paths
from strategies import networks


def test_validate_minimal_mlp():
    spec = validate_network({"widths": [2, 2, 2], "connections": [[0, 1], [1, 2]]})
    assert spec.m == 8 and spec.is_no_skip()


def test_validate_skip_network(two_skip_net):
    assert two_skip_net.connections == ((0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4))


def test_missing_consecutive_pair():
    with pytest.raises(MissingConsecutivePair) as exc:
        validate_network({"widths": [1, 1, 1], "connections": [[0, 2]]})
    assert exc.value.layer == 0
    assert str(exc.value).startswith("MissingConsecutivePair(0)")


@pytest.mark.parametrize("raw, err", [
    ({"widths": [1], "connections": []}, BadWidth),
    ({"widths": [1, 0], "connections": [[0, 1]]}, BadWidth),
    ({"widths": [1, True], "connections": [[0, 1]]}, BadWidth),
    ({"widths": [1, 1], "connections": [[0, 1], [0, 1]]}, BadPair),
    ({"widths": [1, 1], "connections": [[1, 0], [0, 1]]}, BadPair),
    ({"widths": [1, 1], "connections": [[0, 1], [0, 5]]}, BadPair),
    ({"widths": [1, 1], "connections": [[0, 1, 2]]}, BadPair),
])
def test_bad_inputs(raw, err):
    with pytest.raises(err):
        validate_network(raw)


def test_weights_roundtrip(tmp_path):
    raw = {"widths": [1, 2], "connections": [[0, 1]], "weights": {"0.0->1.1": "-3/4"}}
    f = tmp_path / "n.json"
    f.write_text(json.dumps(raw))
    spec = load_network(f)
    assert str(spec.weights[Edge(NodeId(0, 0), NodeId(1, 1))]) == "-3/4"
    assert network_to_json(spec)["weights"] == {"0.0->1.1": "-3/4"}


def test_substructures_two_skip_net(two_skip_net):
    got = [p.layers for p in enumerate_substructure_paths(two_skip_net)]
    assert got == [(0, 1, 2, 3, 4), (0, 1, 2, 4), (0, 2, 3, 4), (0, 2, 4)]


def test_substructures_no_skip():
    assert [p.layers for p in enumerate_substructure_paths(make_network([3, 1, 2, 2]))] == [(0, 1, 2, 3)]


def test_substructures_complete_dag():
    spec = make_network([1] * 4, [(0, 2), (0, 3), (1, 3)])
    assert len(enumerate_substructure_paths(spec)) == 4


def test_substructure_guard():
    spec = make_network([1] * 8, [(j, l) for j in range(8) for l in range(j + 2, 8)])
    with pytest.raises(PathCountGuardExceeded):
        enumerate_substructure_paths(spec, cap=10)


def test_encodings():
    assert beta_vector(SubstructurePath((0, 2, 4)), 4) == (1, 0, 1, 0, 1)
    a = alpha_vector(SubstructurePath((0, 1, 2, 3, 4)), 4)
    assert [i for i, v in enumerate(a) if v] == [0 * 5 + 1, 1 * 5 + 2, 2 * 5 + 3, 3 * 5 + 4]
    assert sum(alpha_vector(SubstructurePath((0, 2, 3, 4)), 4)) == 3


@given(networks())
def test_alpha_beta_consistent(spec):
    L = spec.L
    subs = enumerate_substructure_paths(spec)
    assert sum(1 for p in subs if all(beta_vector(p, L))) == 1
    for p in subs:
        a, b = alpha_vector(p, L), beta_vector(p, L)
        assert sum(a) == len(p.layers) - 1
        rows = [int(any(a[j * (L + 1):(j + 1) * (L + 1)])) for j in range(L + 1)]
        cols = [int(any(a[j * (L + 1) + l] for j in range(L + 1))) for l in range(L + 1)]
        assert rows[:L] == list(b[:L]) and rows[L] == 0
        assert cols[1:] == list(b[1:]) and cols[0] == 0


def test_induce_subgraph():
    fig = make_network([1] * 5, [(0, 2), (2, 4)])
    sub, relabel = induce_subgraph(fig, SubstructurePath((0, 2, 4)))
    assert sub.widths == (1, 1, 1) and relabel == (0, 2, 4)
    spec = make_network([2, 3, 2, 2, 2], [(0, 2)])
    sub, _ = induce_subgraph(spec, SubstructurePath((0, 2, 3, 4)))
    assert sub.widths == (2, 2, 2, 2) and sub.m == 12


@given(networks())
def test_induce_underlying_is_identity(spec):
    und = SubstructurePath(tuple(range(spec.layer_count)))
    sub, relabel = induce_subgraph(spec, und)
    assert sub.widths == spec.widths and relabel == tuple(range(spec.layer_count))


def test_lift_path():
    p = (NodeId(0, 1), NodeId(1, 0), NodeId(2, 1))
    assert lift_path(p, (0, 2, 4)) == (NodeId(0, 1), NodeId(2, 0), NodeId(4, 1))


def test_edge_incidence_small():
    assert edge_incidence((NodeId(0, 0), NodeId(1, 0)), make_network([1, 1])) == (1,)
    spec = make_network([2, 2])
    assert edge_incidence((NodeId(0, 1), NodeId(1, 0)), spec) == (0, 0, 1, 0)


@given(networks())
def test_edge_order_and_injectivity(spec):
    keys = [(e.tail.layer, e.head.layer, e.tail.index, e.head.index) for e in spec.edges]
    assert keys == sorted(keys) and len(set(keys)) == spec.m
    space = enumerate_all_paths(spec)
    vecs = {edge_incidence(p, spec) for p in space.all_paths}
    assert len(vecs) == len(space.all_paths)
