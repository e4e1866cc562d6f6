"""Named invariant suites run by ``raagout verify`` and the acceptance tests.

Every suite takes a list of graphs plus a seeded RNG and returns a
:class:`SuiteResult` listing violations with enough data to reproduce them.
"""
from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .automorphisms import (
    as_automorphism,
    abelianization_matrix,
    automorphism_of_word,
    compose,
    enumerate_laurence_generators,
    verify_automorphism,
)
from .graph import Graph, distance, is_connected, perp
from .kernel import (
    canonicalize,
    kernel_f,
    leaf_transvections,
    partial_conjugations_in_kernel,
)
from .order import (
    LemmaViolation,
    LeqCase,
    all_chains,
    chain_shape,
    equivalence_classes,
    gamma_zero,
    gamma_zero_adjacency_consistent,
    gamma_zero_connected,
    leq,
    leq_case,
)
from .special import adjacent_join_intersection, every_vertex_in_maximal_join, joins, ncz_of_maximal_join
from .words import enumerate_ball, heap_key

NAMES = "abcdefghijklmnopqrstuvwxyz"


class UnknownSuiteError(KeyError):
    def __str__(self):
        return f"unknown suite {self.args[0]!r}; expected one of {', '.join(SUITES)}"


@dataclass
class SuiteResult:
    suite: str
    cases: int = 0
    checks: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, g: Graph, check: str, detail: str):
        self.violations.append({"graph": g.to_dict(), "check": check, "detail": detail})

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "cases": self.cases,
            "checks": self.checks,
            "violations": self.violations,
        }


# graph sources


def from_networkx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes)
    name = {v: NAMES[i] for i, v in enumerate(nodes)}
    return Graph([name[v] for v in nodes], [(name[u], name[v]) for u, v in h.edges])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    vs = list(NAMES[:n])
    return Graph(vs, [(u, v) for u, v in itertools.combinations(vs, 2) if rng.random() < p])


def random_connected_graphs(rng: random.Random, count: int, max_n: int, p: float = 0.4, min_n: int = 1) -> list[Graph]:
    out = []
    while len(out) < count:
        g = random_graph(rng, rng.randint(min_n, max_n), p)
        if is_connected(g):
            out.append(g)
    return out


def random_tree(rng: random.Random, n: int) -> Graph:
    """Uniform labeled tree on ``n >= 2`` vertices from a random Pruefer sequence."""
    if n == 2:
        return Graph.path(2)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    h = nx.from_prufer_sequence(seq)
    return from_networkx(h)


def random_trees(rng: random.Random, count: int, min_n: int = 4, max_n: int = 7, allow_stars: bool = False) -> list[Graph]:
    """Random trees; stars (a single maximal class) are skipped unless allowed."""
    out = []
    while len(out) < count:
        g = random_tree(rng, rng.randint(min_n, max_n))
        if allow_stars or len(gamma_zero(g).classes) >= 2:
            out.append(g)
    return out


def atlas_graphs(max_n: int, connected: bool = False, min_n: int = 1) -> list[Graph]:
    """Every graph with ``min_n..max_n`` vertices up to isomorphism (``max_n <= 7``)."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n < min_n or n > max_n:
            continue
        g = from_networkx(h)
        if connected and not is_connected(g):
            continue
        out.append(g)
    return out


# order lemmas


def suite_order_lemmas(graphs: Iterable[Graph], rng: random.Random, radius: int = 6) -> SuiteResult:
    res = SuiteResult("order-lemmas")
    for g in graphs:
        res.cases += 1
        vs = g.vertices
        le = {(u, v): leq(g, u, v) for u in vs for v in vs}
        for u, v, w in itertools.product(vs, repeat=3):
            res.checks += 1
            if le[u, v] and le[v, w]:
                if not le[u, w]:
                    res.fail(g, "transitive", f"{u}<={v}<={w} but not {u}<={w}")
                if distance(g, u, v) == 1 and distance(g, v, w) > 1:
                    res.fail(g, "one-step", f"{u}<={v}<={w}, d({u},{v})=1, d({v},{w})={distance(g, v, w)}")
        for u, v in itertools.product(vs, repeat=2):
            if le[u, v] and leq_case(g, u, v) is LeqCase.UNCLASSIFIED:
                res.fail(g, "leq-case", f"{u}<={v} fits none of the three cases")
        for c in equivalence_classes(g):
            ds = {distance(g, x, y) for x, y in itertools.combinations(c.members, 2)}
            res.checks += 1
            if len(ds) > 1 or (ds and ds != ({1} if c.is_abelian else {2})):
                res.fail(g, "same-distance", f"class {c} has member distances {sorted(ds)}")
        for chain in all_chains(g):
            res.checks += 1
            try:
                chain_shape(g, chain)
            except LemmaViolation as exc:
                res.fail(g, "chain", str(exc))
        res.checks += 3
        if not gamma_zero_connected(g):
            res.fail(g, "gamma0-connected", "graph of maximal classes is disconnected")
        if not every_vertex_in_maximal_join(g):
            res.fail(g, "coverage", "some vertex lies in no maximal join")
        if not gamma_zero_adjacency_consistent(g):
            res.fail(g, "gamma0-adjacency", "adjacency of maximal classes depends on members")
    return res


# centralizer oracle


def ball_commute_profile(g: Graph, radius: int) -> dict[tuple[int, int], int]:
    """Distinct (support mask, commuting-generator mask) pairs over the ball, with multiplicities.

    Commutation with generator ``x`` is decided by comparing heap encodings of
    ``x w x^-1`` and ``w``, independently of the normal-form routine.
    """
    n = len(g.vertices)
    profile: dict[tuple[int, int], int] = {}
    for w in enumerate_ball(g, radius):
        codes = w.codes
        sup = 0
        for c in codes:
            sup |= 1 << (abs(c) - 1)
        key_w = heap_key(g, codes)
        com = 0
        for i in range(n):
            if heap_key(g, (i + 1,) + codes + (-(i + 1),)) == key_w:
                com |= 1 << i
        key = (sup, com)
        profile[key] = profile.get(key, 0) + 1
    return profile


def _mask(g: Graph, vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << g.index(v)
    return m


def suite_godelle_oracle(graphs: Iterable[Graph], rng: random.Random, radius: int = 6) -> SuiteResult:
    """Centralizers of every vertex subset against the ball, plus the join formulas."""
    res = SuiteResult("godelle-oracle")
    for g in graphs:
        res.cases += 1
        n = len(g.vertices)
        profile = ball_commute_profile(g, radius)
        for size in range(n + 1):
            for th in itertools.combinations(g.vertices, size):
                tm = _mask(g, th)
                pm = _mask(g, perp(g, th))
                for sup, com in profile:
                    res.checks += 1
                    commutes = com & tm == tm
                    inside = sup & ~pm == 0
                    if commutes and not inside:
                        res.fail(g, "centralizer-support", f"theta={list(th)}: a commuting element leaves the perp")
                        break
                    if inside and not commutes:
                        res.fail(g, "perp-commutes", f"theta={list(th)}: an element of A_perp fails to commute")
                        break
        if is_connected(g) and n:
            js = joins(g)
            g0 = gamma_zero(g)
            for c in g0.classes:
                res.checks += 1
                try:
                    ncz_of_maximal_join(g, js[c.representative])
                except LemmaViolation as exc:
                    res.fail(g, "maximal-join", str(exc))
            for a, b in itertools.combinations(g0.classes, 2):
                if g0.adjacent(a, b):
                    res.checks += 1
                    try:
                        adjacent_join_intersection(g, js[a.representative], js[b.representative])
                    except LemmaViolation as exc:
                        res.fail(g, "adjacent-joins", str(exc))
    return res


# generators


def suite_generator_wellformed(
    graphs: Iterable[Graph], rng: random.Random, radius: int = 6, pairs: int = 200
) -> SuiteResult:
    """Every generator verifies and inverts; abelianization is unimodular and multiplicative."""
    res = SuiteResult("generator-wellformed")
    pool = []
    for g in graphs:
        res.cases += 1
        specs = enumerate_laurence_generators(g, include_symmetries=True)
        autos = []
        for s in specs:
            res.checks += 1
            try:
                f = as_automorphism(g, s)
            except ValueError as exc:
                res.fail(g, "construct", f"{s.label(g)}: {exc}")
                continue
            rep = verify_automorphism(g, f)
            if not rep.ok:
                res.fail(g, "verify", f"{s.label(g)}: {rep.violations}")
            if not compose(f, as_automorphism(g, s.inverse())).is_identity():
                res.fail(g, "inverse", f"{s.label(g)} composed with its inverse is not the identity")
            try:
                abelianization_matrix(g, f)
            except ArithmeticError as exc:
                res.fail(g, "determinant", f"{s.label(g)}: {exc}")
            autos.append(f)
        if autos:
            pool.append((g, autos))
    for _ in range(pairs if pool else 0):
        g, autos = rng.choice(pool)
        f, h = rng.choice(autos), rng.choice(autos)
        res.checks += 1
        lhs = abelianization_matrix(g, compose(f, h))
        rhs = abelianization_matrix(g, f) @ abelianization_matrix(g, h)
        if not np.array_equal(lhs, rhs):
            res.fail(g, "matrix-homomorphism", f"{f!r} o {h!r}")
    return res


# kernel


def suite_leaf_commute(graphs: Iterable[Graph], rng: random.Random, radius: int = 6) -> SuiteResult:
    """Leaf transvections against every partial conjugation, as automorphisms."""
    res = SuiteResult("leaf-commute")
    for g in graphs:
        res.cases += 1
        pcs = [s for s in enumerate_laurence_generators(g) if s.kind == "partial_conjugation"]
        for lt in leaf_transvections(g):
            t = as_automorphism(g, lt.spec)
            for s in pcs:
                res.checks += 1
                p = as_automorphism(g, s)
                if compose(t, p) != compose(p, t):
                    res.fail(g, "commute", f"{lt} and {s.label(g)} do not commute")
    return res


def kernel_generators(g: Graph) -> list:
    gens = partial_conjugations_in_kernel(g)
    return gens + [s.inverse() for s in gens]


def random_product(rng: random.Random, gens: list, max_len: int) -> list:
    return [rng.choice(gens) for _ in range(rng.randint(0, max_len))]


def suite_kernel_f(
    graphs: Iterable[Graph], rng: random.Random, radius: int = 6, pairs: int = 100, products: int = 200, max_len: int = 4
) -> SuiteResult:
    """Additivity of the kernel map and triviality of its zero set on products of K-generators.

    ``pairs`` additivity checks are spread over the graphs; each graph also
    gets ``products`` random products of length at most ``max_len``.
    """
    res = SuiteResult("kernel-f")
    pool = []
    for g in graphs:
        res.cases += 1
        if len(gamma_zero(g).classes) < 2:
            # K is trivial with a single maximal class
            continue
        gens = kernel_generators(g)
        if not gens:
            continue
        pool.append((g, gens))
        for _ in range(products):
            word = random_product(rng, gens, max_len)
            res.checks += 1
            f = automorphism_of_word(g, word)
            if kernel_f(g, f).is_zero() and not canonicalize(g, f).is_identity():
                res.fail(g, "zero-is-identity", " ".join(s.label(g) for s in word))
            f0 = canonicalize(g, f)
            if canonicalize(g, f0) != f0:
                res.fail(g, "canonical-idempotent", " ".join(s.label(g) for s in word))
    for _ in range(pairs if pool else 0):
        g, gens = rng.choice(pool)
        u, v = random_product(rng, gens, max_len), random_product(rng, gens, max_len)
        res.checks += 1
        if kernel_f(g, u + v) != kernel_f(g, u) + kernel_f(g, v):
            res.fail(
                g,
                "additive",
                f"u={' '.join(s.label(g) for s in u)} v={' '.join(s.label(g) for s in v)}",
            )
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "order-lemmas": suite_order_lemmas,
    "godelle-oracle": suite_godelle_oracle,
    "generator-wellformed": suite_generator_wellformed,
    "leaf-commute": suite_leaf_commute,
    "kernel-f": suite_kernel_f,
}

# suites whose checks need connected inputs
NEEDS_CONNECTED = frozenset({"order-lemmas", "leaf-commute", "kernel-f"})


def run_suite(name: str, graphs: Iterable[Graph], seed: int = 0, radius: int = 6) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuiteError(name) from None
    return fn(list(graphs), random.Random(seed), radius=radius)
