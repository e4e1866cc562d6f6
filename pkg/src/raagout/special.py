"""Maximal joins and the normalizer/centralizer/center formulas for special subgroups.

All results are vertex sets; the subgroup meant is the special subgroup
generated by the set.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass

from .graph import Graph, link, perp, star
from .order import LemmaViolation, VertexClass, class_poset, equivalence_classes, gamma_zero
from .words import NormalForm, Word, enumerate_ball, equal


@dataclass(frozen=True)
class JoinData:
    cls: VertexClass
    L: frozenset[str]
    J: frozenset[str]


@dataclass(frozen=True)
class NCZResult:
    normalizer: frozenset[str]
    centralizer: frozenset[str]
    center: frozenset[str]


def join_of_class(g: Graph, cls: VertexClass) -> JoinData:
    if cls not in equivalence_classes(g):
        raise ValueError(f"{cls} is not a class of this graph")
    members = cls.member_set
    Ls = {frozenset(link(g, v) - members) for v in cls.members}
    if len(Ls) != 1:
        raise LemmaViolation(f"L of {cls} depends on the representative")
    (L,) = Ls
    for x in L:
        for y in members:
            if not g.adjacent(x, y):
                raise LemmaViolation(f"{x} in L{cls} is not adjacent to {y}")
    J = L | members
    st = star(g, cls.representative)
    if not st <= J or (st == J) != cls.is_abelian:
        raise LemmaViolation(f"star/join relation fails for {cls}")
    return JoinData(cls, L, J)


def joins(g: Graph) -> dict[str, JoinData]:
    """Join data for every class, keyed by representative."""
    cached = g._cache.get("joins")
    if cached is None:
        cached = {c.representative: join_of_class(g, c) for c in equivalence_classes(g)}
        g._cache["joins"] = cached
    return cached


def godelle_ncz(g: Graph, th: Iterable[str]) -> NCZResult:
    th = g.check(th)
    p = perp(g, th)
    return NCZResult(normalizer=th | p, centralizer=p, center=th & p)


def _z_of(g: Graph, vs: frozenset[str]) -> frozenset[str]:
    return vs & perp(g, vs)


def ncz_of_maximal_join(g: Graph, jd: JoinData) -> NCZResult:
    if not class_poset(g).is_maximal(jd.cls):
        raise ValueError(f"{jd.cls} is not maximal")
    z = jd.cls.member_set if jd.cls.is_abelian else frozenset()
    res = NCZResult(normalizer=jd.J, centralizer=z, center=z)
    direct = godelle_ncz(g, jd.J)
    if direct != res:
        raise LemmaViolation(f"maximal join formula disagrees with the direct computation for {jd.cls}")
    return res


def adjacent_join_intersection(g: Graph, jv: JoinData, jw: JoinData) -> tuple[frozenset[str], NCZResult]:
    g0 = gamma_zero(g)
    if jv.cls not in g0.classes or jw.cls not in g0.classes:
        raise ValueError("both classes must be maximal")
    if not g0.adjacent(jv.cls, jw.cls):
        raise ValueError(f"{jv.cls} and {jw.cls} are not adjacent in the graph of maximal classes")
    jvw = jv.J & jw.J
    v_part, w_part = jv.cls.member_set, jw.cls.member_set
    common = jv.L & jw.L
    if not (w_part <= jv.L and v_part <= jw.L):
        raise LemmaViolation("adjacent maximal classes must lie in each other's L")
    parts = [v_part, w_part, common]
    if frozenset().union(*parts) != jvw or sum(map(len, parts)) != len(jvw):
        raise LemmaViolation("intersection of adjacent joins is not [v] u [w] u (L_v n L_w)")
    for a, b in itertools.combinations(parts, 2):
        if not all(g.adjacent(x, y) for x in a for y in b):
            raise LemmaViolation("intersection of adjacent joins is not a join")
    z = _z_of(g, v_part) | _z_of(g, w_part) | _z_of(g, common)
    res = NCZResult(normalizer=jvw, centralizer=z, center=z)
    if godelle_ncz(g, jvw) != res:
        raise LemmaViolation("adjacent-join formula disagrees with the direct computation")
    return jvw, res


def brute_centralizer(g: Graph, th: Iterable[str], radius: int) -> set[NormalForm]:
    """Elements of length <= radius commuting with every generator in ``th``."""
    gens = [Word.gen(g, v) for v in g.sort(g.check(th))]
    return {w for w in enumerate_ball(g, radius) if all(equal(w * x, x * w) for x in gens)}


def every_vertex_in_maximal_join(g: Graph) -> bool:
    js = joins(g)
    covered = frozenset().union(*(js[c.representative].J for c in gamma_zero(g).classes))
    return covered == frozenset(g.vertices)


def word_supported_in(w: Word, vs: frozenset[str]) -> bool:
    names = w.graph.vertices
    return all(names[abs(c) - 1] in vs for c in w.codes)
