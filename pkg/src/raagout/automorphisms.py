"""Laurence generators and automorphisms stored as generator-to-word maps.

An :class:`Automorphism` keeps the images of every generator and, built
alongside, the images under its inverse.  Products are formed by
substitution; nothing is ever inverted by search.
"""
from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, components_minus_star, star
from .order import leq
from .words import (
    NormalForm,
    Word,
    _nf_codes,
    _tables,
    abelianize,
    enumerate_ball,
    equal,
    extract_conjugator,
    heap_key,
    normal_form,
)


class InvalidGeneratorError(ValueError):
    pass


class AutomorphismLoadError(ValueError):
    pass


KINDS = ("inversion", "transvection", "partial_conjugation", "inner", "symmetry")


@dataclass(frozen=True)
class GeneratorSpec:
    """Symbolic Laurence generator, or its inverse when ``exponent == -1``."""

    kind: str
    v: str | None = None
    w: str | None = None
    component: frozenset[str] | None = None
    permutation: tuple[tuple[str, str], ...] | None = None
    exponent: int = 1

    @classmethod
    def inversion(cls, v):
        return cls("inversion", v)

    @classmethod
    def transvection(cls, v, w):
        return cls("transvection", v, w)

    @classmethod
    def partial_conjugation(cls, v, component):
        return cls("partial_conjugation", v, component=frozenset(component))

    @classmethod
    def inner(cls, v):
        return cls("inner", v)

    @classmethod
    def symmetry(cls, mapping: Mapping[str, str]):
        return cls("symmetry", permutation=tuple(sorted(mapping.items())))

    def inverse(self) -> GeneratorSpec:
        if self.kind == "inversion":
            return self
        if self.kind == "symmetry":
            return GeneratorSpec("symmetry", permutation=tuple(sorted((b, a) for a, b in self.permutation)))
        return GeneratorSpec(self.kind, self.v, self.w, self.component, None, -self.exponent)

    @property
    def is_pure(self) -> bool:
        return self.kind != "symmetry"

    def label(self, g: Graph | None = None) -> str:
        sort = g.sort if g is not None else sorted
        if self.kind == "inversion":
            s = f"inv({self.v})"
        elif self.kind == "transvection":
            s = f"t({self.v},{self.w})"
        elif self.kind == "partial_conjugation":
            s = f"pc({self.v};{','.join(sort(self.component))})"
        elif self.kind == "inner":
            s = f"inn({self.v})"
        else:
            s = "sym(" + ",".join(f"{a}>{b}" for a, b in self.permutation if a != b) + ")"
        return s if self.exponent == 1 else s + "^-1"

    def __str__(self):
        return self.label()


def validate_spec(g: Graph, spec: GeneratorSpec) -> None:
    if spec.kind not in KINDS:
        raise InvalidGeneratorError(f"unknown generator kind {spec.kind!r}")
    if spec.exponent not in (1, -1):
        raise InvalidGeneratorError("exponent must be +1 or -1")
    if spec.kind == "symmetry":
        perm = dict(spec.permutation or ())
        if set(perm) != set(g.vertices) or set(perm.values()) != set(g.vertices):
            raise InvalidGeneratorError("symmetry must permute all vertices")
        for u, v in g.sorted_edges():
            if not g.adjacent(perm[u], perm[v]):
                raise InvalidGeneratorError(f"symmetry breaks edge {u}-{v}")
        return
    if spec.v not in g:
        raise InvalidGeneratorError(f"unknown vertex {spec.v!r}")
    if spec.kind == "transvection":
        if spec.w not in g:
            raise InvalidGeneratorError(f"unknown vertex {spec.w!r}")
        if spec.v == spec.w or not leq(g, spec.v, spec.w):
            raise InvalidGeneratorError(f"transvection {spec.v}->{spec.v}{spec.w} needs {spec.v} <= {spec.w}")
    elif spec.kind == "partial_conjugation":
        if spec.component not in components_minus_star(g, spec.v):
            raise InvalidGeneratorError(
                f"{sorted(spec.component or ())} is not a component of the graph minus st({spec.v})"
            )


class Automorphism:
    """Automorphism of the RAAG of ``graph`` given by generator images."""

    __slots__ = ("graph", "_img", "_inv")

    def __init__(self, graph: Graph, images: Sequence[tuple[int, ...]], inverse_images: Sequence[tuple[int, ...]]):
        # images are code tuples in vertex order, already in normal form
        self.graph = graph
        self._img = tuple(images)
        self._inv = tuple(inverse_images)

    @classmethod
    def from_maps(cls, graph: Graph, images: Mapping[str, Word], inverse_images: Mapping[str, Word]) -> Automorphism:
        img = tuple(_nf_codes(graph, _coerce(graph, images[v]).codes) for v in graph.vertices)
        inv = tuple(_nf_codes(graph, _coerce(graph, inverse_images[v]).codes) for v in graph.vertices)
        return cls(graph, img, inv)

    @property
    def images(self) -> dict[str, NormalForm]:
        return {v: NormalForm(self.graph, c) for v, c in zip(self.graph.vertices, self._img)}

    @property
    def inverse_images(self) -> dict[str, NormalForm]:
        return {v: NormalForm(self.graph, c) for v, c in zip(self.graph.vertices, self._inv)}

    def image(self, v: str) -> NormalForm:
        return NormalForm(self.graph, self._img[self.graph.index(v)])

    def inverse(self) -> Automorphism:
        return Automorphism(self.graph, self._inv, self._img)

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.graph == other.graph and self._img == other._img

    def __hash__(self):
        return hash(self._img)

    def __matmul__(self, other: Automorphism) -> Automorphism:
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(c == (i + 1,) for i, c in enumerate(self._img))

    def __repr__(self):
        body = ", ".join(f"{v}->{w}" for v, w in self.images.items())
        return f"Automorphism({body})"

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.fingerprint(),
            "images": {v: str(w) for v, w in self.images.items()},
            "inverse_images": {v: str(w) for v, w in self.inverse_images.items()},
        }

    @classmethod
    def from_dict(cls, graph: Graph, data: Mapping) -> Automorphism:
        """Rebuild from :meth:`to_dict` output; both invariants are re-verified."""
        if data.get("graph") != graph.fingerprint():
            raise AutomorphismLoadError("graph fingerprint does not match")
        try:
            img = {v: Word.parse(graph, data["images"][v]) for v in graph.vertices}
            inv = {v: Word.parse(graph, data["inverse_images"][v]) for v in graph.vertices}
        except KeyError as exc:
            raise AutomorphismLoadError(f"missing or unknown generator {exc}") from None
        f = cls.from_maps(graph, img, inv)
        report = verify_automorphism(graph, f)
        if not report.ok:
            raise AutomorphismLoadError("; ".join(report.violations))
        return f


def _coerce(g: Graph, w) -> Word:
    if isinstance(w, Word):
        return w
    return Word.parse(g, w)


def _apply_codes(img, inv, codes) -> list[int]:
    out: list[int] = []
    for c in codes:
        if c > 0:
            out += img[c - 1]
        else:
            # image of x^-1 is the inverse of the image of x
            out += [-d for d in reversed(img[-c - 1])]
    return out


def apply(f: Automorphism, w: Word) -> Word:
    if w.graph is not f.graph and w.graph != f.graph:
        raise ValueError("word and automorphism over different graphs")
    return Word(f.graph, _apply_codes(f._img, f._inv, w.codes))


def compose(f: Automorphism, h: Automorphism) -> Automorphism:
    """``f o h``: apply ``h`` first."""
    if f.graph is not h.graph and f.graph != h.graph:
        raise ValueError("automorphisms over different graphs")
    g = f.graph
    img = tuple(_nf_codes(g, _apply_codes(f._img, f._inv, c)) for c in h._img)
    inv = tuple(_nf_codes(g, _apply_codes(h._inv, h._img, c)) for c in f._inv)
    return Automorphism(g, img, inv)


def compose_all(g: Graph, fs: Iterable[Automorphism]) -> Automorphism:
    out = identity(g)
    for f in fs:
        out = compose(out, f)
    return out


def identity(g: Graph) -> Automorphism:
    gens = tuple((i + 1,) for i in range(len(g.vertices)))
    return Automorphism(g, gens, gens)


def inner_automorphism(g: Graph, h: Word) -> Automorphism:
    """Conjugation ``x -> h x h^-1``."""
    hc = normal_form(h).codes
    hi = tuple(-c for c in reversed(hc))
    img = tuple(_nf_codes(g, hc + (i + 1,) + hi) for i in range(len(g.vertices)))
    inv = tuple(_nf_codes(g, hi + (i + 1,) + hc) for i in range(len(g.vertices)))
    return Automorphism(g, img, inv)


def as_automorphism(g: Graph, spec: GeneratorSpec) -> Automorphism:
    validate_spec(g, spec)
    n = len(g.vertices)
    img = [(i + 1,) for i in range(n)]
    inv = [(i + 1,) for i in range(n)]
    e = spec.exponent
    if spec.kind == "symmetry":
        perm = dict(spec.permutation)
        for u, v in perm.items():
            img[g.index(u)] = (g.index(v) + 1,)
            inv[g.index(v)] = (g.index(u) + 1,)
        return Automorphism(g, img, inv)
    a = g.index(spec.v) + 1
    if spec.kind == "inversion":
        img[a - 1] = inv[a - 1] = (-a,)
    elif spec.kind == "transvection":
        b = g.index(spec.w) + 1
        img[a - 1] = _nf_codes(g, (a, e * b))
        inv[a - 1] = _nf_codes(g, (a, -e * b))
    else:
        if spec.kind == "inner":
            targets = range(n)
        else:
            targets = [g.index(u) for u in spec.component]
        for i in targets:
            img[i] = _nf_codes(g, (e * a, i + 1, -e * a))
            inv[i] = _nf_codes(g, (-e * a, i + 1, e * a))
    return Automorphism(g, img, inv)


def automorphism_of_word(g: Graph, specs: Iterable[GeneratorSpec]) -> Automorphism:
    """The product ``s1 o s2 o ... o sk`` of a word in generators."""
    return compose_all(g, (as_automorphism(g, s) for s in specs))


@dataclass
class VerificationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)


def verify_automorphism(g: Graph, f: Automorphism) -> VerificationReport:
    bad = []
    if f.graph != g:
        return VerificationReport(False, ["automorphism is over a different graph"])
    imgs = f.images
    inv_imgs = f.inverse_images
    for u, v in g.sorted_edges():
        if not equal(imgs[u] * imgs[v], imgs[v] * imgs[u]):
            bad.append(f"images of {u} and {v} do not commute")
    finv = f.inverse()
    for v in g.vertices:
        x = Word.gen(g, v)
        if not equal(apply(f, inv_imgs[v]), x):
            bad.append(f"f(f^-1({v})) != {v}")
        if not equal(apply(finv, imgs[v]), x):
            bad.append(f"f^-1(f({v})) != {v}")
    for u, v in g.sorted_edges():
        if not equal(inv_imgs[u] * inv_imgs[v], inv_imgs[v] * inv_imgs[u]):
            bad.append(f"inverse images of {u} and {v} do not commute")
    return VerificationReport(not bad, bad)


def int_det(m) -> int:
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    a = [[int(x) for x in row] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def abelianization_matrix(g: Graph, f: Automorphism) -> np.ndarray:
    """Integer matrix of the induced map on Z^V; column v is the exponent-sum vector of f(v)."""
    n = len(g.vertices)
    m = np.zeros((n, n), dtype=np.int64)
    for j, v in enumerate(g.vertices):
        vec = abelianize(f.image(v))
        for i, u in enumerate(g.vertices):
            m[i, j] = vec[u]
    d = int_det(m)
    if d not in (1, -1):
        raise ArithmeticError(f"abelianized automorphism has determinant {d}")
    return m


def is_inner_bounded(g: Graph, f: Automorphism, radius: int) -> Word | None:
    """First ``h`` of length <= radius (shortlex) with ``f(v) = h v h^-1`` for all v."""
    n = len(g.vertices)
    targets = [heap_key(g, f._img[i]) for i in range(n)]
    for h in enumerate_ball(g, radius):
        hc = h.codes
        hi = tuple(-c for c in reversed(hc))
        if all(heap_key(g, hc + (i + 1,) + hi) == targets[i] for i in range(n)):
            return Word(g, hc)
    return None


def _peel_prefix(g: Graph, codes: tuple[int, ...], allowed: frozenset[int]) -> tuple[list[int], list[int]]:
    """Split a normal form as (largest front part inside ``allowed`` generators, rest)."""
    commute = _tables(g)[0]
    rest = list(codes)
    prefix = []
    while True:
        pick = None
        for j, c in enumerate(rest):
            i = abs(c) - 1
            if i in allowed and all((abs(rest[k]) - 1) in commute[i] for k in range(j)):
                pick = j
                break
        if pick is None:
            return prefix, rest
        prefix.append(rest.pop(pick))


def common_conjugator(g: Graph, pairs: Iterable[tuple[str, Word]]) -> Word | None:
    """An element ``h`` with ``y = h x h^-1`` for every pair ``(x, y)``, or None.

    The solutions for a single generator ``x`` form the coset
    ``h_x C(x) = h_x A_st(x)``.  Cosets of special subgroups are intersected
    one at a time: the running solution set is ``base A_S``.
    """
    pairs = list(pairs)
    base: tuple[int, ...] = ()
    allowed = frozenset(range(len(g.vertices)))
    for x, y in pairs:
        h = extract_conjugator(Word.gen(g, x), y)
        if h is None:
            return None
        m = _nf_codes(g, tuple(-c for c in reversed(base)) + h.codes)
        prefix, rest = _peel_prefix(g, m, allowed)
        st = frozenset(g.index(u) for u in star(g, x))
        if any((abs(c) - 1) not in st for c in rest):
            return None
        base = _nf_codes(g, base + tuple(prefix))
        allowed = allowed & st
    hw = Word(g, base)
    for x, y in pairs:
        if not equal(hw * Word.gen(g, x) * hw.inverse(), y):
            raise ArithmeticError(f"reconciled conjugator fails on {x}")
    return NormalForm(g, base)


def inner_conjugator(g: Graph, f: Automorphism) -> Word | None:
    """Exact test for innerness: some ``h`` with ``f = conjugation by h``, else None."""
    return common_conjugator(g, [(v, f.image(v)) for v in g.vertices])


def enumerate_graph_symmetries(g: Graph) -> list[dict[str, str]]:
    """All adjacency-preserving permutations of the vertices, identity first."""
    vs = list(g.vertices)
    deg = {v: len(g.neighbors(v)) for v in vs}
    out = []
    assign: dict[str, str] = {}
    used: set[str] = set()

    def extend(k):
        if k == len(vs):
            out.append(dict(assign))
            return
        v = vs[k]
        for w in vs:
            if w in used or deg[w] != deg[v]:
                continue
            if all(g.adjacent(v, u) == g.adjacent(w, assign[u]) for u in vs[:k]):
                assign[v] = w
                used.add(w)
                extend(k + 1)
                used.discard(w)
                del assign[v]

    extend(0)
    return out


def enumerate_laurence_generators(g: Graph, include_symmetries: bool = False) -> list[GeneratorSpec]:
    """Inversions, inner automorphisms, transvections, partial conjugations (in that order)."""
    out = [GeneratorSpec.inversion(v) for v in g.vertices]
    out += [GeneratorSpec.inner(v) for v in g.vertices]
    out += [GeneratorSpec.transvection(v, w) for v in g.vertices for w in g.vertices if v != w and leq(g, v, w)]
    for v in g.vertices:
        out += [GeneratorSpec.partial_conjugation(v, c) for c in components_minus_star(g, v)]
    if include_symmetries:
        out += [GeneratorSpec.symmetry(p) for p in enumerate_graph_symmetries(g) if any(a != b for a, b in p.items())]
    return out


def generator_inventory(g: Graph) -> dict[str, int]:
    counts = {k: 0 for k in KINDS}
    for s in enumerate_laurence_generators(g, include_symmetries=True):
        counts[s.kind] += 1
    return counts


_LABEL = re.compile(r"^(inv|t|pc|inn)\(([^()]*)\)(\^-1)?$")


def parse_generator(g: Graph, text: str) -> GeneratorSpec:
    """Parse a label as printed by :meth:`GeneratorSpec.label` (symmetries excluded)."""
    m = _LABEL.match(text.strip())
    if not m:
        raise InvalidGeneratorError(f"cannot parse generator {text!r}")
    kind, body, inv = m.groups()
    if kind == "pc":
        v, _, rest = body.partition(";")
        spec = GeneratorSpec.partial_conjugation(v.strip(), [x.strip() for x in rest.split(",") if x.strip()])
    elif kind == "t":
        parts = [x.strip() for x in body.split(",")]
        if len(parts) != 2:
            raise InvalidGeneratorError(f"transvection needs two vertices: {text!r}")
        spec = GeneratorSpec.transvection(*parts)
    else:
        spec = GeneratorSpec.inversion(body.strip()) if kind == "inv" else GeneratorSpec.inner(body.strip())
    if inv:
        spec = spec.inverse()
    validate_spec(g, spec)
    return spec


def parse_generator_word(g: Graph, text: str) -> list[GeneratorSpec]:
    return [parse_generator(g, tok) for tok in text.split()]
