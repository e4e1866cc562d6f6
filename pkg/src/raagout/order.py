"""The domination order on vertices, its equivalence classes and the graph of maximal classes."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .graph import Graph, components, distance, is_connected, link, star


class DisconnectedGraphError(ValueError):
    pass


class LemmaViolation(RuntimeError):
    """A structural statement that must hold for every finite graph failed."""


class NotAChainError(ValueError):
    pass


class LeqCase(enum.Enum):
    EQUAL = "equal"
    ADJACENT_ST = "adjacent-st"
    DISTANCE2_LK = "distance2-lk"
    NOT_LEQ = "not-leq"
    # leq holds but none of the three connected-graph cases applies
    UNCLASSIFIED = "unclassified"


def leq(g: Graph, v: str, w: str) -> bool:
    """``v <= w`` iff the link of v lies in the star of w."""
    return link(g, v) <= star(g, w)


def leq_case(g: Graph, v: str, w: str) -> LeqCase:
    if not leq(g, v, w):
        return LeqCase.NOT_LEQ
    if v == w:
        return LeqCase.EQUAL
    d = distance(g, v, w)
    if d == 1 and star(g, v) <= star(g, w):
        return LeqCase.ADJACENT_ST
    if d == 2 and link(g, v) <= link(g, w):
        return LeqCase.DISTANCE2_LK
    return LeqCase.UNCLASSIFIED


@dataclass(frozen=True)
class VertexClass:
    representative: str
    members: tuple[str, ...]
    kind: str  # "abelian" or "free"

    @property
    def is_abelian(self) -> bool:
        return self.kind == "abelian"

    @property
    def member_set(self) -> frozenset[str]:
        return frozenset(self.members)

    def __contains__(self, v) -> bool:
        return v in self.members

    def __str__(self):
        return "[" + ",".join(self.members) + "]"


def _require_connected(g: Graph):
    if len(g) == 0 or not is_connected(g):
        raise DisconnectedGraphError(
            "graph must be non-empty and connected; split it with free_product_factors first"
        )


def equivalence_classes(g: Graph) -> list[VertexClass]:
    """The classes of ``v ~ w`` (``v <= w`` and ``w <= v``), ordered by representative."""
    cached = g._cache.get("classes")
    if cached is not None:
        return cached
    _require_connected(g)
    assigned: dict[str, str] = {}
    classes = []
    for v in g.vertices:
        if v in assigned:
            continue
        members = [w for w in g.vertices if w not in assigned and leq(g, v, w) and leq(g, w, v)]
        for w in members:
            assigned[w] = v
        abelian = all(g.adjacent(x, y) for x, y in itertools.combinations(members, 2))
        classes.append(VertexClass(v, tuple(members), "abelian" if abelian else "free"))
    g._cache["classes"] = classes
    return classes


def class_of(g: Graph, v: str) -> VertexClass:
    g.index(v)
    for c in equivalence_classes(g):
        if v in c.members:
            return c
    raise AssertionError("vertex without a class")


@dataclass(frozen=True)
class ClassPoset:
    classes: tuple[VertexClass, ...]
    # pairs (rep_u, rep_w) with [u] <= [w]; reflexive
    relation: frozenset[tuple[str, str]]

    def leq(self, a: VertexClass, b: VertexClass) -> bool:
        return (a.representative, b.representative) in self.relation

    def lt(self, a: VertexClass, b: VertexClass) -> bool:
        return a != b and self.leq(a, b)

    def is_maximal(self, c: VertexClass) -> bool:
        return not any(self.lt(c, d) for d in self.classes)

    @property
    def maximal(self) -> list[VertexClass]:
        return [c for c in self.classes if self.is_maximal(c)]

    def covers(self) -> list[tuple[VertexClass, VertexClass]]:
        """Hasse-diagram edges ``(lower, upper)``."""
        out = []
        for a in self.classes:
            for b in self.classes:
                if self.lt(a, b) and not any(self.lt(a, c) and self.lt(c, b) for c in self.classes):
                    out.append((a, b))
        return out

    def by_rep(self, rep: str) -> VertexClass:
        for c in self.classes:
            if c.representative == rep:
                return c
        raise KeyError(rep)


def class_poset(g: Graph) -> ClassPoset:
    cached = g._cache.get("poset")
    if cached is not None:
        return cached
    classes = tuple(equivalence_classes(g))
    rel = frozenset(
        (a.representative, b.representative)
        for a in classes
        for b in classes
        if leq(g, a.representative, b.representative)
    )
    poset = ClassPoset(classes, rel)
    g._cache["poset"] = poset
    return poset


def maximal_classes(g: Graph) -> list[VertexClass]:
    return class_poset(g).maximal


def is_maximal_class(g: Graph, cls: VertexClass) -> bool:
    poset = class_poset(g)
    if cls not in poset.classes:
        raise ValueError(f"{cls} is not a class of this graph")
    return poset.is_maximal(cls)


@dataclass(frozen=True)
class GammaZero:
    classes: tuple[VertexClass, ...]
    edges: frozenset[frozenset[str]]  # pairs of representatives

    @property
    def graph(self) -> Graph:
        reps = [c.representative for c in self.classes]
        return Graph(reps, [tuple(e) for e in self.edges])

    def adjacent(self, a: VertexClass, b: VertexClass) -> bool:
        return frozenset((a.representative, b.representative)) in self.edges

    def by_rep(self, rep: str) -> VertexClass:
        for c in self.classes:
            if c.representative == rep:
                return c
        raise KeyError(rep)


def gamma_zero(g: Graph) -> GammaZero:
    cached = g._cache.get("gamma0")
    if cached is not None:
        return cached
    maxi = tuple(maximal_classes(g))
    edges = set()
    for a, b in itertools.combinations(maxi, 2):
        if g.adjacent(a.representative, b.representative):
            edges.add(frozenset((a.representative, b.representative)))
    g0 = GammaZero(maxi, frozenset(edges))
    g._cache["gamma0"] = g0
    return g0


def gamma_zero_adjacency_consistent(g: Graph) -> bool:
    """Adjacency of maximal classes does not depend on the chosen members."""
    maxi = maximal_classes(g)
    for a, b in itertools.combinations(maxi, 2):
        flags = {g.adjacent(x, y) for x in a.members for y in b.members}
        if len(flags) > 1:
            return False
    return True


def chain_shape(g: Graph, chain: list[str]) -> int:
    """Breakpoint of a strictly increasing chain of class representatives.

    Gaps are indexed from 0: gap ``i`` joins ``chain[i]`` and ``chain[i+1]``.
    Returns the least ``j`` with gaps of distance 2 before ``j`` and distance 1
    from ``j`` on; every ``chain[i]`` with ``i > j`` is checked to be abelian.
    """
    if not chain:
        raise NotAChainError("empty chain")
    cls = [class_of(g, v) for v in chain]
    poset = class_poset(g)
    for a, b in zip(cls, cls[1:]):
        if not poset.lt(a, b):
            raise NotAChainError(f"{a} < {b} does not hold")
    gaps = [distance(g, u, v) for u, v in zip(chain, chain[1:])]
    j = 0
    while j < len(gaps) and gaps[j] == 2:
        j += 1
    if any(d != 1 for d in gaps[j:]):
        raise LemmaViolation(f"chain {chain} has gap distances {gaps}")
    for i in range(j + 1, len(chain)):
        if not cls[i].is_abelian:
            raise LemmaViolation(f"chain {chain}: {cls[i]} past the breakpoint {j} is not abelian")
    return j


def all_chains(g: Graph) -> list[list[str]]:
    """Every strictly increasing chain of classes (as representatives), length >= 1."""
    poset = class_poset(g)
    out = []

    def extend(chain):
        out.append([c.representative for c in chain])
        for c in poset.classes:
            if poset.lt(chain[-1], c):
                extend(chain + [c])

    for c in poset.classes:
        extend([c])
    return out


def gamma_zero_connected(g: Graph) -> bool:
    g0 = gamma_zero(g).graph
    return len(components(g0)) == 1
