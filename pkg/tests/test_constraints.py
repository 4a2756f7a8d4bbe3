from __future__ import annotations

import pytest

from conftest import random_relabel
from nashgraph import corpus
from nashgraph.calculus import trivial_arrows
from nashgraph.constraints import (
    FORBIDDEN,
    POSSIBLE,
    TRIVIAL,
    ArrowStatus,
    ConstraintReport,
    KnownArrowSet,
    certify,
    derive_constraints,
    enumerate_consistent_digraphs,
    is_extremal,
    transfer_subgraph,
    transfer_weight_decrease,
)
from nashgraph.errors import (
    NotAnEmbeddingError,
    NotAWeightDecreaseError,
    NotNegativeDefiniteError,
    PreconditionError,
    TooManyPairsError,
    TransferContradictionError,
)
from nashgraph.graph import WeightedGraph, automorphisms

ANALYSABLE = [
    e for e in corpus.CORPUS.values() if not e.flags & {"non-definite", "non-representable"}
]
VERTEX_TRANSITIVE = ["A1", "A2", "cq-3-3", "double-edge", "triple-edge", "triangle-3", "hexagon-3",
                     "genus2-single"]


def status(report, u, v):
    return report.statuses[(u, v)].status


def rules(report, u, v):
    return {j.rule.split()[0] for j in report.statuses[(u, v)].justifications}


# ----------------------------------------------------------------------
# derive_constraints


def test_a2_symmetry_forbids_both_arrows():
    report = derive_constraints(corpus.get("A2").graph)
    assert status(report, "v1", "v2") == status(report, "v2", "v1") == FORBIDDEN
    assert rules(report, "v1", "v2") == {"R3"}
    (just,) = report.statuses[("v1", "v2")].justifications
    assert just.params["automorphism"] == {"v1": "v2", "v2": "v1"}
    assert report.certified_in_image == {"v1", "v2"}
    assert report.bijectivity_certified


def test_genus_star():
    report = derive_constraints(corpus.get("genus1-star").graph)
    assert "c" in report.certified_in_image
    for leaf in ("l1", "l2"):
        assert status(report, leaf, "c") == FORBIDDEN
        assert rules(report, leaf, "c") == {"R2"}
        assert status(report, "c", leaf) == POSSIBLE
    assert status(report, "l1", "l2") == FORBIDDEN
    assert rules(report, "l1", "l2") == {"R2", "R3"}


def test_nonminimal_chain():
    report = derive_constraints(corpus.get("nonmin-313").graph)
    assert status(report, "l", "m") == status(report, "r", "m") == TRIVIAL
    assert status(report, "l", "r") == status(report, "r", "l") == FORBIDDEN
    assert report.essential == {"l", "r"}
    # nothing rules out the exceptional curve m adjacent to an outer curve
    assert status(report, "m", "l") == POSSIBLE
    assert report.certified_in_image == frozenset()
    (just,) = report.statuses[("l", "m")].justifications
    assert just.params["order"] == ["m"]


def test_report_covers_every_ordered_pair_once():
    for entry in ANALYSABLE:
        g = entry.graph
        report = derive_constraints(g)
        assert set(report.statuses) == {(u, v) for u in g.ids for v in g.ids if u != v}
        assert report.structural_constraints == {
            "irreflexive": True, "antisymmetric": True, "acyclic": True
        }


def test_requires_negative_definite():
    with pytest.raises(NotNegativeDefiniteError):
        derive_constraints(corpus.get("triangle").graph)


def test_no_pair_trivial_and_forbidden():
    for entry in ANALYSABLE:
        report = derive_constraints(entry.graph)
        trivial = trivial_arrows(entry.graph).arrows
        for pair, st in report.statuses.items():
            assert (st.status == TRIVIAL) == (pair in trivial)
            if st.status == TRIVIAL:
                assert {j.rule.split()[0] for j in st.justifications} == {"R1"}


def test_symmetry_rule_soundness():
    for entry in ANALYSABLE:
        g = entry.graph
        report = derive_constraints(g)
        for phi in automorphisms(g):
            for u in report.essential:
                if phi[u] != u:
                    assert status(report, u, phi[u]) == FORBIDDEN


def test_rationality_rule():
    for entry in ANALYSABLE:
        g = entry.graph
        report = derive_constraints(g)
        for v in g.vertices:
            if v.genus > 0:
                assert v.id in report.certified_in_image
                for u in g.ids:
                    if u != v.id:
                        assert status(report, u, v.id) == FORBIDDEN


def test_isomorphism_invariance():
    for entry in ANALYSABLE:
        g = entry.graph
        base = derive_constraints(g)
        for seed in range(3):
            h, phi = random_relabel(g, seed)
            other = derive_constraints(h)
            for (u, v), st in base.statuses.items():
                assert other.statuses[(phi[u], phi[v])].status == st.status
            assert other.certified_in_image == {phi[v] for v in base.certified_in_image}


def test_certified_set_monotone_in_group():
    for entry in ANALYSABLE:
        g = entry.graph
        full = certify(g).certified
        group = automorphisms(g)
        for k in range(1, len(group) + 1):
            assert certify(g, group=group[:k]).certified <= full
        assert certify(g, group=[group[0]]).certified <= certify(g, group=group[:2]).certified


@pytest.mark.parametrize("name", VERTEX_TRANSITIVE)
def test_vertex_transitive_graphs_certified(name):
    g = corpus.get(name).graph
    result = certify(g)
    assert result.bijectivity_certified
    assert result.certified == result.report.essential == frozenset(g.ids)


def test_single_vertex_certified():
    result = certify(WeightedGraph.chain(-7))
    assert result.certified == {"v1"} and result.bijectivity_certified


# ----------------------------------------------------------------------
# transfers


def test_subgraph_transfer():
    a2, a3 = corpus.get("A2").graph, corpus.get("A3").graph
    empty = KnownArrowSet.asserted(a2, [])
    assert transfer_subgraph(a2, a3, {"v1": "v1", "v2": "v2"}, empty).arrows == frozenset()
    known = KnownArrowSet.asserted(a2, [("v1", "v2")])
    out = transfer_subgraph(a2, a3, {"v1": "v1", "v2": "v2"}, known)
    assert out.arrows == {("v1", "v2")}
    assert out.provenance[("v1", "v2")].source == "subgraph transfer"
    assert out.graph_name == "A3"


def test_subgraph_transfer_refusals():
    a2, a3 = corpus.get("A2").graph, corpus.get("A3").graph
    known = KnownArrowSet.asserted(a2, [("v1", "v2")])
    with pytest.raises(NotAnEmbeddingError):
        transfer_subgraph(a2, a3, {"v1": "v1", "v2": "v3"}, known)
    with pytest.raises(NotAnEmbeddingError):
        transfer_subgraph(a2, a3, {"v1": "v1", "v2": "v1"}, known)
    with pytest.raises(NotAnEmbeddingError):
        transfer_subgraph(a2, corpus.get("cq-3-2").graph, {"v1": "v1", "v2": "v2"}, known)
    big = WeightedGraph.chain(-2, -2, 0)
    with pytest.raises(NotNegativeDefiniteError):
        transfer_subgraph(a2, big, {"v1": "v1", "v2": "v2"}, known)


def test_subgraph_transfer_contradiction_reported():
    a2 = corpus.get("A2").graph
    known = KnownArrowSet.asserted(a2, [("v1", "v2")])
    with pytest.raises(TransferContradictionError):
        transfer_subgraph(a2, a2, {"v1": "v1", "v2": "v2"}, known)


def test_weight_decrease_transfer():
    a2 = corpus.get("A2").graph
    lowered = WeightedGraph.chain(-2, -4)
    ident = {"v1": "v1", "v2": "v2"}
    assert transfer_weight_decrease(a2, lowered, ident, KnownArrowSet.asserted(lowered, [])).arrows == frozenset()
    known = KnownArrowSet.asserted(lowered, [("v1", "v2")])
    # pure propagation; A2 itself forbids the arrow, which the cross-check catches
    out = transfer_weight_decrease(a2, lowered, ident, known, check=False)
    assert out.arrows == {("v1", "v2")}
    prov = out.provenance[("v1", "v2")]
    assert prov.source == "weight-decrease transfer"
    assert [v.weight for v in prov.witness.vertices] == [-2, -4, -1, -1]
    with pytest.raises(TransferContradictionError):
        transfer_weight_decrease(a2, lowered, ident, known)


def test_weight_decrease_transfer_sound_case():
    a3 = corpus.get("A3").graph
    lowered = a3.with_weight("v3", -4)
    ident = {v: v for v in a3.ids}
    known = KnownArrowSet.asserted(lowered, [("v1", "v2")])
    assert transfer_weight_decrease(a3, lowered, ident, known).arrows == {("v1", "v2")}
    same = KnownArrowSet.asserted(a3, [("v1", "v2"), ("v3", "v2")])
    assert transfer_weight_decrease(a3, a3, ident, same).arrows == same.arrows


def test_weight_decrease_refusal():
    a2 = corpus.get("A2").graph
    raised = WeightedGraph.chain(-2, -1)
    with pytest.raises(NotAWeightDecreaseError):
        transfer_weight_decrease(a2, raised, {"v1": "v1", "v2": "v2"}, KnownArrowSet.asserted(raised, []))


def test_known_arrow_set_validation():
    a2 = corpus.get("A2").graph
    with pytest.raises(ValueError):
        KnownArrowSet.asserted(a2, [("v1", "v1")])
    with pytest.raises(ValueError):
        KnownArrowSet.asserted(a2, [("v1", "zz")])


# ----------------------------------------------------------------------
# extremality


def test_extremality_examples():
    single2 = is_extremal(WeightedGraph.chain(-2))
    assert not single2.extremal
    (w,) = single2.witnesses
    assert (w.negative_definite, w.trivial_arrows_before, w.trivial_arrows_after, w.clause) == (
        True, 0, 0, "neither"
    )
    single1 = is_extremal(WeightedGraph.chain(-1))
    assert single1.extremal and single1.witnesses[0].clause == "not negative definite"
    a2 = is_extremal(corpus.get("A2").graph)
    assert a2.extremal
    assert [(w.vertex, w.clause, w.trivial_arrows_after) for w in a2.witnesses] == [
        ("v1", "trivial arrows increase", 1),
        ("v2", "trivial arrows increase", 1),
    ]


def test_extremality_preconditions():
    with pytest.raises(PreconditionError, match="positive genus"):
        is_extremal(corpus.get("genus1-star").graph)
    with pytest.raises(PreconditionError, match="has loop"):
        is_extremal(corpus.get("triangle-3").graph)
    with pytest.raises(NotNegativeDefiniteError):
        is_extremal(WeightedGraph.chain(-1, -1))


# ----------------------------------------------------------------------
# enumeration


def synthetic(possible, trivial=(), forbidden=(), essential=("a", "b", "c")):
    g = WeightedGraph.build([(v, 0, -2) for v in ("a", "b", "c")], [("a", "b"), ("b", "c")])
    statuses = {}
    for u in g.ids:
        for v in g.ids:
            if u == v:
                continue
            pair = (u, v)
            if pair in possible:
                statuses[pair] = ArrowStatus(POSSIBLE)
            elif pair in trivial:
                statuses[pair] = ArrowStatus(TRIVIAL)
            else:
                statuses[pair] = ArrowStatus(FORBIDDEN)
    return ConstraintReport(g, frozenset(essential), statuses, frozenset(), {})


def test_enumeration_examples():
    assert enumerate_consistent_digraphs(synthetic(set())) == [frozenset()]
    assert enumerate_consistent_digraphs(synthetic({("a", "b")})) == [
        frozenset(), frozenset({("a", "b")})
    ]
    assert enumerate_consistent_digraphs(synthetic({("a", "b"), ("b", "a")})) == [
        frozenset(), frozenset({("a", "b")}), frozenset({("b", "a")})
    ]


def test_enumeration_uses_transitivity():
    # a->b and b->c would force a->c, which is Forbidden here
    report = synthetic({("a", "b"), ("b", "c")})
    out = enumerate_consistent_digraphs(report)
    assert frozenset({("a", "b"), ("b", "c")}) not in out
    assert len(out) == 3


def test_enumeration_keeps_trivial_arrows():
    report = derive_constraints(corpus.get("nonmin-313").graph)
    out = enumerate_consistent_digraphs(report)
    trivial = frozenset(report.pairs_with(TRIVIAL))
    assert out[0] == trivial
    assert all(trivial <= d for d in out)


def test_enumeration_cap():
    pairs = {(u, v) for u in "abc" for v in "abc" if u != v}
    with pytest.raises(TooManyPairsError):
        enumerate_consistent_digraphs(synthetic(pairs), cap=5)
