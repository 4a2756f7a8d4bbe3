from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from conftest import random_relabel, weighted_graphs
from nashgraph import corpus
from nashgraph.errors import InvalidGraphError, SearchLimitError
from nashgraph.graph import (
    Vertex,
    WeightedGraph,
    are_isomorphic,
    automorphisms,
    incidence_matrix,
    is_negative_definite,
    is_simple,
    leading_minors,
)
from oracles import brute_automorphisms, brute_isomorphisms, oracle_leading_minors, oracle_negative_definite


def test_incidence_matrix_examples():
    assert incidence_matrix(WeightedGraph.chain(-2)).as_lists() == [[-2]]
    assert incidence_matrix(WeightedGraph.chain(-2, -2)).as_lists() == [[-2, 1], [1, -2]]
    double = corpus.get("double-edge").graph
    assert incidence_matrix(double).as_lists() == [[-3, 2], [2, -3]]
    assert incidence_matrix(double).vertex_order == ("a", "b")


@given(weighted_graphs())
def test_incidence_matrix_symmetric_with_weight_diagonal(g):
    m = incidence_matrix(g).entries
    for i, j in itertools.product(range(len(g)), repeat=2):
        assert m[i][j] == m[j][i]
    assert [m[i][i] for i in range(len(g))] == [v.weight for v in g.vertices]


@pytest.mark.parametrize(
    "weights, verdict, failed_at",
    [((-1,), True, None), ((0,), False, 1), ((-2, -2), True, None), ((-2, -1, -2), False, 3)],
)
def test_definiteness_examples(weights, verdict, failed_at):
    cert = is_negative_definite(WeightedGraph.chain(*weights))
    assert cert.negative_definite is verdict
    assert cert.failed_at == failed_at


def test_a2_minors_and_zero_witness():
    assert is_negative_definite(WeightedGraph.chain(-2, -2)).minors == (-2, 3)
    cert = is_negative_definite(WeightedGraph.chain(-2, -1, -2))
    assert cert.minors == (-2, 1, 0)


def test_e8_is_negative_definite_with_unimodular_determinant():
    g = corpus.get("E8").graph
    cert = is_negative_definite(g)
    assert cert.negative_definite
    assert list(cert.minors) == oracle_leading_minors(g)
    assert cert.minors[-1] == 1


@settings(max_examples=300)
@given(weighted_graphs())
def test_definiteness_agrees_with_cofactor_oracle(g):
    cert = is_negative_definite(g)
    assert cert.negative_definite == oracle_negative_definite(g)
    oracle = oracle_leading_minors(g)
    assert list(cert.minors) == oracle[: len(cert.minors)]


def test_bareiss_minors_on_large_integers():
    m = [[10**30, 7, 3], [7, 10**20, 5], [3, 5, 11]]
    rows = [[row[:k] for row in m[:k]] for k in (1, 2, 3)]
    from oracles import cofactor_det

    assert list(leading_minors(m)) == [cofactor_det(r) for r in rows]


@pytest.mark.parametrize(
    "name, order",
    [("A1", 1), ("A3", 2), ("star-3x3", 6), ("E8", 1), ("E6", 2), ("D4", 6), ("theta", 12)],
)
def test_automorphism_group_orders(name, order):
    g = corpus.get(name).graph
    group = automorphisms(g)
    assert len(group) == order
    assert sorted(map(sorted_items, group)) == sorted(map(sorted_items, brute_automorphisms(g)))


def sorted_items(phi):
    return tuple(sorted(phi.items()))


@given(weighted_graphs(max_vertices=5, min_weight=-3, max_weight=-2))
def test_automorphisms_match_brute_force_and_form_group(g):
    group = automorphisms(g)
    assert sorted(map(sorted_items, group)) == sorted(map(sorted_items, brute_automorphisms(g)))
    keys = {sorted_items(p) for p in group}
    assert sorted_items({v: v for v in g.ids}) in keys
    for p, q in itertools.product(group, repeat=2):
        assert sorted_items({v: p[q[v]] for v in g.ids}) in keys
    for p in group:
        assert sorted_items({w: v for v, w in p.items()}) in keys


def test_automorphisms_identity_first_and_lexicographic():
    group = automorphisms(corpus.get("star-3x3").graph)
    assert group[0] == {v: v for v in ("c", "l1", "l2", "l3")}
    images = [tuple(p[v] for v in ("c", "l1", "l2", "l3")) for p in group]
    assert images == sorted(images)


def test_automorphism_search_limit():
    g = WeightedGraph.chain(*([-2] * 13))
    with pytest.raises(SearchLimitError):
        automorphisms(g)
    assert len(automorphisms(g, limit=13)) == 2


def test_isomorphism_examples():
    a3 = corpus.get("A3").graph
    assert are_isomorphic(a3, a3) == {"v1": "v1", "v2": "v2", "v3": "v3"}
    assert are_isomorphic(WeightedGraph.chain(-2, -2), WeightedGraph.chain(-2, -3)) is None
    reversed_listing = WeightedGraph.chain(-2, -2, -2, ids=["w3", "w2", "w1"])
    # lexicographically least under vertex order: v1 -> w3 comes first
    assert are_isomorphic(a3, reversed_listing) == {"v1": "w3", "v2": "w2", "v3": "w1"}
    asym = WeightedGraph.chain(-2, -3, -4)
    flipped = WeightedGraph.chain(-4, -3, -2, ids=["p", "q", "r"])
    assert are_isomorphic(asym, flipped) == {"v1": "r", "v2": "q", "v3": "p"}


@given(weighted_graphs(max_vertices=5, min_weight=-3, max_weight=-2))
def test_isomorphism_first_witness_matches_brute_force(g):
    h, _ = random_relabel(g, seed=len(g))
    witness = are_isomorphic(g, h)
    candidates = brute_isomorphisms(g, h)
    assert witness is not None and witness in candidates
    back = are_isomorphic(h, g)
    assert back is not None
    assert is_negative_definite(g).negative_definite == is_negative_definite(h).negative_definite
    order = {v: i for i, v in enumerate(h.ids)}
    least = min(candidates, key=lambda phi: [order[phi[v]] for v in g.ids])
    assert witness == least


def test_is_simple():
    assert is_simple(corpus.get("A2").graph)
    assert not is_simple(corpus.get("double-edge").graph)
    assert is_simple(corpus.get("E8").graph)


@pytest.mark.parametrize(
    "vertices, edges, kind",
    [
        ([("a", 0, -2)], [("a", "a")], "self-loop"),
        ([("a", 0, -2)], [("a", "b")], "dangling edge"),
        ([("a", 0, -2), ("b", 0, -2)], [], "disconnected"),
        ([("a", -1, -2)], [], "negative genus"),
        ([("a", 0, -2), ("a", 0, -3)], [], "duplicate id"),
        ([], [], "empty"),
    ],
)
def test_invalid_graphs_rejected(vertices, edges, kind):
    with pytest.raises(InvalidGraphError) as info:
        WeightedGraph.build(vertices, edges)
    assert info.value.kind == kind


def test_graph_is_immutable_and_hashable():
    g = WeightedGraph.chain(-2, -2)
    with pytest.raises(AttributeError):
        g.name = "x"
    assert hash(g) == hash(WeightedGraph.chain(-2, -2))
    assert Vertex("a", 0, -2) == Vertex("a", 0, -2)
