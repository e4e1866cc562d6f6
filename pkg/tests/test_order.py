import itertools

import pytest
from hypothesis import given, settings

from raagout.graph import Graph, distance, link, star
from raagout.order import (
    DisconnectedGraphError,
    LeqCase,
    NotAChainError,
    all_chains,
    chain_shape,
    class_of,
    class_poset,
    equivalence_classes,
    gamma_zero,
    gamma_zero_adjacency_consistent,
    gamma_zero_connected,
    leq,
    leq_case,
)
from raagout.special import every_vertex_in_maximal_join

from conftest import graphs


def reps(classes):
    return [(c.representative, c.members, c.kind) for c in classes]


def test_leq_examples(p3):
    assert leq(p3, "a", "b")
    assert not leq(p3, "b", "a")
    assert all(leq(p3, v, v) for v in p3)


def test_leq_case_examples(p3):
    assert leq_case(p3, "a", "b") is LeqCase.ADJACENT_ST
    assert leq_case(p3, "a", "c") is LeqCase.DISTANCE2_LK
    assert leq_case(p3, "b", "b") is LeqCase.EQUAL
    assert leq_case(p3, "b", "a") is LeqCase.NOT_LEQ


def test_leq_case_on_disconnected_input_is_flagged():
    g = Graph(["a", "b", "c"], [("a", "b")])
    # c has an empty link, so it sits below everything without a case applying
    assert leq_case(g, "c", "a") is LeqCase.UNCLASSIFIED


def test_classes_examples(p3, p4):
    assert reps(equivalence_classes(p3)) == [("a", ("a", "c"), "free"), ("b", ("b",), "abelian")]
    assert reps(equivalence_classes(Graph.complete(4))) == [("a", ("a", "b", "c", "d"), "abelian")]
    assert [c.members for c in equivalence_classes(p4)] == [("a",), ("b",), ("c",), ("d",)]
    assert str(class_of(p3, "c")) == "[a,c]"


def test_disconnected_rejected():
    with pytest.raises(DisconnectedGraphError):
        equivalence_classes(Graph.discrete(2))


def test_poset_and_gamma_zero_examples(p3, p4):
    poset = class_poset(p3)
    ac, b = poset.classes
    assert poset.lt(ac, b) and poset.maximal == [b]
    poset4 = class_poset(p4)
    assert [c.representative for c in poset4.maximal] == ["b", "c"]
    assert {(a.representative, c.representative) for a, c in poset4.covers()} == {
        ("a", "b"), ("a", "c"), ("d", "b"), ("d", "c")
    }
    g0 = gamma_zero(p4)
    assert [c.representative for c in g0.classes] == ["b", "c"]
    assert g0.edges == {frozenset("bc")}
    assert [c.representative for c in gamma_zero(p3).classes] == ["b"]
    assert len(gamma_zero(Graph.complete(5)).classes) == 1


def test_chain_shape_examples(p4, star3):
    assert chain_shape(p4, ["a", "c"]) == 1
    assert chain_shape(p4, ["a"]) == 0
    assert chain_shape(star3, ["x", "z"]) == 0
    with pytest.raises(NotAChainError):
        chain_shape(p4, ["b", "a"])


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8, connected=True))
def test_order_properties(g):
    vs = g.vertices
    for u, v, w in itertools.product(vs, repeat=3):
        if leq(g, u, v) and leq(g, v, w):
            assert leq(g, u, w)
            if distance(g, u, v) == 1:
                assert distance(g, v, w) <= 1
    for u, v in itertools.product(vs, repeat=2):
        if leq(g, u, v):
            assert leq_case(g, u, v) is not LeqCase.UNCLASSIFIED


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8, connected=True))
def test_classes_against_pairwise_oracle(g):
    classes = equivalence_classes(g)
    # independent: group vertices by the pair (link, star) relation directly
    for c in classes:
        for x, y in itertools.combinations(c.members, 2):
            assert link(g, x) <= star(g, y) and link(g, y) <= star(g, x)
            assert distance(g, x, y) == (1 if c.is_abelian else 2)
        assert c.representative == c.members[0]
    members = [v for c in classes for v in c.members]
    assert sorted(members) == sorted(g.vertices)
    for a, b in itertools.combinations(classes, 2):
        assert not (leq(g, a.representative, b.representative) and leq(g, b.representative, a.representative))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8, connected=True))
def test_gamma_zero_lemmas(g):
    assert gamma_zero_connected(g)
    assert every_vertex_in_maximal_join(g)
    assert gamma_zero_adjacency_consistent(g)
    poset = class_poset(g)
    for a in poset.classes:
        for b in poset.classes:
            if poset.leq(a, b) and poset.leq(b, a):
                assert a == b
    for chain in all_chains(g):
        j = chain_shape(g, chain)
        assert 0 <= j <= len(chain)
