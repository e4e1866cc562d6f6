import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from raagout.automorphisms import (
    GeneratorSpec,
    as_automorphism,
    automorphism_of_word,
    common_conjugator,
    compose,
    enumerate_laurence_generators,
    identity,
    inner_conjugator,
    is_inner_bounded,
)
from raagout.graph import Graph
from raagout.kernel import (
    KernelVector,
    LeafTransvection,
    NotInKernelError,
    SingletonGammaZeroError,
    assemble_RP,
    canonical_representative,
    canonicalize,
    check_KP_membership,
    conjugators_on_joins,
    in_kernel,
    kernel_f,
    leaf_like_vertices,
    leaf_transvections,
    out_equal,
    partial_conjugations_in_kernel,
    preserving_representative,
    project_P,
    restrict_R,
    singleton_conditions,
    singleton_decomposition,
)
from raagout.order import class_of, gamma_zero
from raagout.report import dumps, kernel_report
from raagout.special import joins
from raagout.suites import kernel_generators, random_trees
from raagout.words import Word, enumerate_ball, equal

from conftest import graphs

G = GeneratorSpec
T_AB = G.transvection("a", "b")
PI_B = G.partial_conjugation("b", "d")


def images(x):
    return {v: str(w) for v, w in x.images.items()}


def test_restriction_examples(p4):
    cb, cc = class_of(p4, "b"), class_of(p4, "c")
    assert restrict_R(p4, [], cb).automorphism.is_identity()
    assert images(restrict_R(p4, [T_AB], cb)) == {"a": "a b", "b": "b", "c": "c"}
    assert restrict_R(p4, [G.partial_conjugation("c", "a")], cc).automorphism.is_identity()


def test_projection_examples(p4):
    cb, cc = class_of(p4, "b"), class_of(p4, "c")
    assert project_P(p4, [T_AB], cb).automorphism.is_identity()
    assert project_P(p4, [], cc).automorphism.is_identity()
    assert images(project_P(p4, [PI_B], cc)) == {"b": "b", "d": "b d b^-1"}
    with pytest.raises(ValueError):
        project_P(p4, [T_AB], class_of(p4, "a"))


def test_assembled_examples(p4):
    rp = assemble_RP(p4, [T_AB])
    assert all(p.automorphism.is_identity() for _, p in rp.values())
    rp = assemble_RP(p4, [G.inversion("b")])
    assert rp["b"][1].automorphism.is_identity()
    assert images(rp["c"][1]) == {"b": "b^-1", "d": "d"}


def test_preserving_representative_cases(p4, p5):
    full, h = preserving_representative(p4, [PI_B], class_of(p4, "c"))
    assert not h and full == as_automorphism(p4, PI_B)
    full, h = preserving_representative(p4, [G.inversion("b")], class_of(p4, "b"))
    assert not h and full == as_automorphism(p4, G.inversion("b"))
    # conjugating vertex outside the join, component meeting it: corrected
    full, h = preserving_representative(p5, [G.partial_conjugation("a", "cde")], class_of(p5, "d"))
    assert str(h) == "a^-1" and full.is_identity()
    # conjugating vertex inside the join: passes through
    full, h = preserving_representative(p5, [G.partial_conjugation("c", "a")], class_of(p5, "b"))
    assert not h and images(full)["a"] == "c a c^-1"
    with pytest.raises(ValueError):
        preserving_representative(p4, [G.symmetry({"a": "d", "b": "c", "c": "b", "d": "a"})], class_of(p4, "b"))


def random_word(rng, gens, max_len):
    return [rng.choice(gens) for _ in range(rng.randint(0, max_len))]


def supported(word, vs):
    return all(v in vs for v in (x.generator for x in word.letters))


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=6, connected=True), st.randoms(use_true_random=False))
def test_representatives_preserve_joins(g, rnd):
    gens = enumerate_laurence_generators(g)
    word = random_word(rnd, gens, 4)
    raw = automorphism_of_word(g, word)
    for cls in gamma_zero(g).classes:
        full, h = preserving_representative(g, word, cls)
        jd = joins(g)[cls.representative]
        for v in jd.J:
            assert supported(full.image(v), jd.J)
            assert supported(full.inverse().image(v), jd.J)
        for v in cls.members:
            assert supported(full.image(v), cls.member_set)
        # differs from the plain product by conjugation
        assert inner_conjugator(g, compose(full, raw.inverse())) is not None


def test_leaf_like_examples(p3, p4):
    assert [(c.representative, w.representative) for c, w in leaf_like_vertices(p4)] == [("a", "b"), ("d", "c")]
    assert [(c.members, w.members) for c, w in leaf_like_vertices(p3)] == [(("a", "c"), ("b",))]
    assert leaf_like_vertices(Graph.complete(4)) == []
    assert leaf_transvections(p4) == [LeafTransvection("a", "b"), LeafTransvection("d", "c")]
    assert leaf_transvections(p3) == [LeafTransvection("a", "b"), LeafTransvection("c", "b")]
    assert leaf_transvections(Graph.complete(3)) == []


def test_kernel_f_examples(p4, p5):
    zero = kernel_f(p4, [])
    assert zero.is_zero() and set(zero) == {"b", "c"}
    assert set(zero["b"]) == {"a", "c", "d"}
    f = kernel_f(p5, [G.partial_conjugation("c", "e")])
    assert f["d"].nonzero() == {"c": 1} and f["b"].is_zero() and f["c"].is_zero()
    f2 = kernel_f(p5, [G.partial_conjugation("c", "e")] * 2)
    assert f2["d"].nonzero() == {"c": 2}


def test_kernel_f_vanishes_on_inner_classes(p4):
    # on a path of four vertices each partial conjugation is an inner automorphism
    for s in enumerate_laurence_generators(p4):
        if s.kind == "partial_conjugation":
            assert kernel_f(p4, [s]).is_zero()
            assert canonical_representative(p4, [s]).is_identity()


def test_kernel_errors(p3, p4):
    with pytest.raises(NotInKernelError):
        kernel_f(p4, [G.inversion("b")])
    with pytest.raises(SingletonGammaZeroError):
        canonical_representative(p3, [])
    assert kernel_f(p3, [G.inner("a")]).is_zero()
    with pytest.raises(NotInKernelError):
        kernel_f(p3, [G.transvection("a", "b")])


def test_canonical_representative_on_free_base(c5):
    # every maximal class of the 5-cycle is a singleton; pick an element of K
    gens = partial_conjugations_in_kernel(c5)
    if gens:
        f0 = canonical_representative(c5, gens[:1])
        assert canonicalize(c5, f0) == f0


def conjugator_by_ball(g, f, vs, radius):
    for h in enumerate_ball(g, radius):
        if all(equal(h * Word.gen(g, v) * h.inverse(), f.image(v)) for v in vs):
            return h
    return None


def kernel_cases():
    rng = random.Random(11)
    return [Graph.path(4), Graph.path(5), Graph.cycle(5)] + random_trees(rng, 6, min_n=5, max_n=7)


@pytest.mark.parametrize("g", kernel_cases(), ids=lambda g: repr(g))
def test_kernel_properties(g):
    rng = random.Random(len(g.edges) * 31 + len(g))
    gens = kernel_generators(g)
    if not gens:
        pytest.skip("no partial conjugation lies in K")
    g0 = gamma_zero(g)
    for _ in range(25):
        u, v = random_word(rng, gens, 3), random_word(rng, gens, 3)
        fu, fv, fuv = kernel_f(g, u), kernel_f(g, v), kernel_f(g, u + v)
        assert isinstance(fuv, KernelVector)
        assert fuv == fu + fv
        phi = automorphism_of_word(g, u)
        f0 = canonicalize(g, phi)
        assert canonicalize(g, f0) == f0
        assert out_equal(g, f0, phi, 4) is not None
        if fu.is_zero():
            assert f0.is_identity()
        # conjugators on joins agree with a ball search
        conj = conjugators_on_joins(g, f0)
        for cls in g0.classes:
            J = g.sort(joins(g)[cls.representative].J)
            x = conj[cls.representative]
            assert all(equal(x * Word.gen(g, a) * x.inverse(), f0.image(a)) for a in J)
            assert conjugator_by_ball(g, f0, J, 2) is not None or len(x) > 2


def test_kp_examples(p4):
    r = check_KP_membership(p4, [T_AB], 6)
    assert r.outcome == "in-KP-via-leaf-part"
    assert r.leaf_coefficients == {("a", "b"): 1, ("d", "c"): 0}
    assert r.kernel_vector.is_zero() and r.radius == 6
    r = check_KP_membership(p4, [PI_B], 6)
    assert r.outcome == "in-K" and not any(r.leaf_coefficients.values())
    r = check_KP_membership(p4, [G.inversion("b")], 6)
    assert r.outcome == "not-detected" and "[c]" in r.detail


def test_kp_leaf_part_and_kernel_combined(p5):
    word = [G.transvection("a", "b"), G.partial_conjugation("c", "e"), G.transvection("a", "b")]
    r = check_KP_membership(p5, word, 6)
    assert r.outcome == "in-KP-via-leaf-part"
    assert r.leaf_coefficients[("a", "b")] == 2 and r.leaf_coefficients[("e", "d")] == 0
    assert r.kernel_vector["d"].nonzero() == {"c": 1}


@pytest.mark.parametrize("g", kernel_cases(), ids=lambda g: repr(g))
def test_leaf_transvections_commute_with_partial_conjugations_by_other_classes(g):
    pcs = [s for s in enumerate_laurence_generators(g) if s.kind == "partial_conjugation"]
    for lt in leaf_transvections(g):
        t = as_automorphism(g, lt.spec)
        for s in pcs:
            if class_of(g, s.v) == class_of(g, lt.v):
                continue
            p = as_automorphism(g, s)
            assert compose(t, p) == compose(p, t)


def test_leaf_transvection_against_own_vertex_is_not_exact(p4):
    t = as_automorphism(p4, T_AB)
    p = as_automorphism(p4, G.partial_conjugation("a", "cd"))
    assert compose(t, p) != compose(p, t)
    assert str(is_inner_bounded(p4, compose(compose(t, p), compose(p, t).inverse()), 2)) == "b"


@pytest.mark.parametrize("g", kernel_cases(), ids=lambda g: repr(g))
def test_leaf_and_kernel_parts_are_independent(g):
    rng = random.Random(5)
    gens = kernel_generators(g)
    leaves = [lt.spec for lt in leaf_transvections(g)]
    leaves += [s.inverse() for s in leaves]
    if not gens and not leaves:
        pytest.skip("nothing to combine")
    for _ in range(20):
        word = random_word(rng, gens + leaves, 4)
        r = check_KP_membership(g, word, 4)
        assert r.outcome != "not-detected"
        if r.kernel_vector.is_zero() and not any(r.leaf_coefficients.values()):
            assert canonicalize(g, automorphism_of_word(g, word)).is_identity()


def test_projection_homomorphism_small(p4, c5):
    rng = random.Random(2)
    for g in (p4, c5):
        gens = enumerate_laurence_generators(g)
        for _ in range(15):
            u, v = random_word(rng, gens, 3), random_word(rng, gens, 3)
            for cls in gamma_zero(g).classes:
                puv = project_P(g, u + v, cls).automorphism
                pu = project_P(g, u, cls).automorphism
                pv = project_P(g, v, cls).automorphism
                assert out_equal(puv.graph, puv, compose(pu, pv), 4) is not None


def test_singleton_examples(p3, star3):
    d = singleton_decomposition(p3)
    assert d.tr_basis == (LeafTransvection("a", "b"), LeafTransvection("c", "b"))
    assert d.central_class.members == ("b",) and d.L == {"a", "c"}
    k = singleton_decomposition(Graph.complete(3))
    assert k.tr_basis == () and k.central_class.members == ("a", "b", "c") and k.L == set()
    s = singleton_decomposition(star3)
    assert [str(t) for t in s.tr_basis] == ["t(x,z)", "t(y,z)", "t(w,z)"]
    with pytest.raises(ValueError):
        singleton_decomposition(Graph.path(4))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7, connected=True))
def test_singleton_conditions_agree(g):
    a, b, c = singleton_conditions(g)
    assert a == b == c


def test_kernel_report_deterministic(p5):
    word = [G.transvection("a", "b"), G.partial_conjugation("c", "e")]
    one = dumps(kernel_report(p5, word))
    two = dumps(kernel_report(Graph.path(5), list(word)))
    assert one == two
    assert '"outcome": "in-KP-via-leaf-part"' in one


def test_in_kernel_identity(p4):
    assert in_kernel(p4, identity(p4))
    assert not in_kernel(p4, as_automorphism(p4, T_AB))
    assert common_conjugator(p4, []) is not None
