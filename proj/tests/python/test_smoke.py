"""End-to-end smoke tests for the python module."""

import json
import math

import pytest

import quasiclust as qc

EXAMPLE3 = [[0, 1, 3], [2, 0, 3], [2, 1, 0]]


@pytest.fixture
def example_network():
    return qc.Network(["x1", "x2", "x3"], EXAMPLE3)


def test_network_basics(example_network):
    assert len(example_network) == 3
    assert example_network.labels == ["x1", "x2", "x3"]
    assert example_network.strongly_connected
    assert example_network.matrix() == [[0, 1, 3], [2, 0, 3], [2, 1, 0]]
    assert example_network.at(0, 1) == 1.0


def test_validation_errors():
    assert qc.network_violations(["a", "b"], [[0, 0], [2, 0]]) != []
    with pytest.raises(qc.QuasiclustError):
        qc.Network(["a", "b"], [[0, -1], [2, 0]])


def test_out_of_range_indices_raise(example_network):
    with pytest.raises(qc.QuasiclustError):
        example_network.at(0, 99)
    with pytest.raises(qc.QuasiclustError):
        qc.chain_cost_oracle(example_network, -1, 0)
    cut = qc.cut_at(qc.dsl(example_network), 0.0)
    with pytest.raises(qc.QuasiclustError):
        cut.block_of(17)


def test_dsl_fixes_quasi_ultrametrics(example_network):
    u = qc.dsl(example_network)
    assert u.matrix() == EXAMPLE3


def test_dsl_minimax_chain():
    net = qc.Network(["a", "b", "c"], [[0, 5, 10], [1, 0, 2], [3, 7, 0]])
    u = qc.dsl(net)
    assert u.at(0, 2) == 5.0
    assert u.at(0, 2) == qc.chain_cost_oracle(net, 0, 2)


def test_missing_pairs_are_infinite():
    net = qc.Network(["a", "b"], [[0, 1], [math.inf, 0]])
    assert not net.strongly_connected
    u = qc.dsl(net)
    assert u.at(1, 0) == math.inf


def test_cut_and_influence(example_network):
    u = qc.dsl(example_network)
    cut = qc.cut_at(u, 2.0)
    assert cut.blocks == [[0, 1], [2]]
    assert cut.edges == [(1, 0)]
    order = qc.InfluenceOrder(cut)
    assert order.dominates(1, 0)
    assert order.is_total_order()


def test_dendrogram_events_and_round_trip(example_network):
    u = qc.dsl(example_network)
    d = qc.upsilon(u)
    assert [m.delta for m in d.merges] == [2.0, 3.0]
    assert [(e.delta, e.from_rep, e.to_rep) for e in d.edges] == [
        (1.0, 0, 1),
        (1.0, 2, 1),
        (2.0, 2, 0),
    ]
    assert d.max_resolution == 3.0
    assert qc.psi(d) == u
    assert d.partition_at(1.5) == qc.cut_at(u, 1.5)


def test_dendrogram_json(example_network):
    d = qc.upsilon(qc.dsl(example_network))
    text = qc.dendrogram_to_json(d)
    payload = json.loads(text)
    assert payload["labels"] == ["x1", "x2", "x3"]
    assert payload["max_resolution"] == 3.0
    assert qc.dendrogram_from_json(text) == d


def test_dot_export(example_network):
    cut = qc.cut_at(qc.dsl(example_network), 2.0)
    dot = qc.partition_to_dot(cut, ["x1", "x2", "x3"])
    assert "subgraph cluster_0" in dot
    assert '"x3" -> "x1"' in dot


def test_network_distance(example_network):
    assert qc.network_distance_exact(example_network, example_network) == 0.0
    permuted = qc.Network(["x3", "x1", "x2"], [[0, 2, 1], [3, 0, 1], [3, 2, 0]])
    assert qc.network_distance_exact(example_network, permuted) == 0.0
    other = qc.Network(["x1", "x2", "x3"], [[0, 1.5, 3], [2, 0, 3], [2, 1, 0]])
    exact = qc.network_distance_exact(example_network, other)
    assert exact > 0.0
    assert qc.network_distance_upper(example_network, other) >= exact
    ok, out_d, in_d = qc.stability_check(example_network, other)
    assert ok and out_d <= in_d


def test_transforms(example_network):
    doubled = qc.scale_transform(example_network, "2x")
    assert doubled.matrix() == [[0, 2, 6], [4, 0, 6], [4, 2, 0]]
    assert qc.dsl(doubled).matrix() == doubled.matrix()

    closed = qc.metric_closure(example_network)
    assert qc.dsl(closed) == qc.dsl(example_network)

    sym = qc.max_symmetrize(qc.dsl(example_network))
    assert sym.at(0, 1) == 2.0 and sym.at(1, 0) == 2.0


def test_dioid_algebra():
    a = [[0, 5, 10], [1, 0, 2], [3, 7, 0]]
    assert qc.dioid_product(a, a)[0][2] == 5.0
    assert qc.dioid_power(a, 1) == a


def test_flow_transform():
    net, warnings = qc.transform_flow(
        ["a", "b", "c"], [[0, 30, 5], [70, 0, 5], [10, 20, 0]]
    )
    assert warnings == []
    assert net.at(1, 0) == 1.0 - 70.0 / 80.0
    assert net.at(0, 2) == 0.5

    _, warned = qc.transform_flow(["a", "b"], [[0, 0], [3, 0]])
    assert len(warned) == 2


def test_separation(example_network):
    assert qc.separation(example_network) == 1.0
