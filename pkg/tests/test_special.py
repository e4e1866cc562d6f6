import itertools
import random

import pytest
from hypothesis import given, settings

from raagout.graph import Graph, perp, star
from raagout.order import class_of, class_poset, gamma_zero
from raagout.special import (
    adjacent_join_intersection,
    brute_centralizer,
    godelle_ncz,
    join_of_class,
    joins,
    ncz_of_maximal_join,
)
from raagout.suites import atlas_graphs, ball_commute_profile, suite_godelle_oracle
from raagout.words import enumerate_ball, support

from conftest import graphs


def sets(r):
    return r.normalizer, r.centralizer, r.center


def test_join_examples(p3, p4):
    jd = join_of_class(p3, class_of(p3, "b"))
    assert jd.L == set("ac") and jd.J == set("abc")
    k = Graph.complete(3)
    jd = join_of_class(k, class_of(k, "a"))
    assert jd.L == set() and jd.J == set("abc")
    jd = join_of_class(p4, class_of(p4, "c"))
    assert jd.L == set("bd") and jd.J == set("bcd")


def test_godelle_examples(p3):
    assert sets(godelle_ncz(p3, {"a", "c"})) == (set("abc"), {"b"}, set())
    k = Graph.complete(3)
    assert sets(godelle_ncz(k, "abc")) == (set("abc"),) * 3
    f2 = Graph.discrete(2)
    assert sets(godelle_ncz(f2, {"a"})) == ({"a"}, {"a"}, {"a"})


def test_maximal_join_examples(p3, p4, c5):
    assert sets(ncz_of_maximal_join(p3, joins(p3)["b"])) == (set("abc"), {"b"}, {"b"})
    assert sets(ncz_of_maximal_join(p4, joins(p4)["b"])) == (set("abc"), {"b"}, {"b"})
    for c in gamma_zero(c5).classes:
        ncz_of_maximal_join(c5, joins(c5)[c.representative])
    with pytest.raises(ValueError):
        ncz_of_maximal_join(p4, joins(p4)["a"])


def test_adjacent_join_examples(p4):
    js = joins(p4)
    jvw, ncz = adjacent_join_intersection(p4, js["b"], js["c"])
    assert jvw == set("bc") and ncz.center == set("bc") and ncz.normalizer == set("bc")
    sq = Graph.cycle(4)
    js = joins(sq)
    jvw, ncz = adjacent_join_intersection(sq, js["a"], js["b"])
    assert jvw == set("abcd") and ncz.center == set()


def test_brute_centralizer_examples(p3):
    got = {str(w) for w in brute_centralizer(p3, {"a", "c"}, 2)}
    assert got == {"", "b", "b^-1", "b b", "b^-1 b^-1"}
    assert len(brute_centralizer(p3, set(), 2)) == sum(1 for _ in enumerate_ball(p3, 2))
    f2 = Graph.discrete(2)
    assert {str(w) for w in brute_centralizer(f2, {"a"}, 2)} == {"", "a", "a^-1", "a a", "a^-1 a^-1"}


@pytest.mark.parametrize("g", [Graph.path(3), Graph.path(4), Graph.cycle(4), Graph(["a", "b", "c"], [("a", "b")])])
def test_heap_profile_matches_brute_centralizer(g):
    r = 3
    profile = ball_commute_profile(g, r)
    for k in range(len(g) + 1):
        for th in itertools.combinations(g.vertices, k):
            brute = brute_centralizer(g, th, r)
            mask = sum(1 << g.index(v) for v in th)
            assert len(brute) == sum(n for (sup, com), n in profile.items() if com & mask == mask)
            p = perp(g, th)
            assert all(support(w) <= p for w in brute)
            inside = [w for w in enumerate_ball(g, r) if support(w) <= p]
            assert set(inside) == brute


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=7, connected=True))
def test_join_properties(g):
    poset = class_poset(g)
    js = joins(g)
    for c in poset.classes:
        jd = js[c.representative]
        assert all(g.adjacent(x, y) for x in jd.L for y in c.members)
        assert star(g, c.representative) <= jd.J
        if poset.is_maximal(c):
            assert perp(g, jd.J) <= c.member_set
    for v, w in itertools.permutations(g.vertices, 2):
        lv = js[class_of(g, v).representative].L
        lw = js[class_of(g, w).representative].L
        assert (w in lv) == (v in lw)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=7))
def test_ncz_chain(g):
    for k in range(min(len(g), 3) + 1):
        for th in itertools.combinations(g.vertices, k):
            r = godelle_ncz(g, th)
            assert r.center <= r.centralizer <= r.normalizer


def test_small_oracle_suite():
    res = suite_godelle_oracle(atlas_graphs(4, connected=True), random.Random(0), radius=4)
    assert res.ok, res.violations
