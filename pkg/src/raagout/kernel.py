"""Restriction and projection homomorphisms on pure outer automorphisms, and their kernels.

Elements of the pure outer automorphism group always arrive as words in
:class:`GeneratorSpec` (a product ``s1 o s2 o ... o sk``).  For a maximal
class ``[v]`` each generator is replaced by a representative preserving
both ``A_[v]`` and ``A_J`` (``J`` the join of ``[v]``), and the
representatives are multiplied.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .automorphisms import (
    Automorphism,
    GeneratorSpec,
    abelianization_matrix,
    as_automorphism,
    automorphism_of_word,
    common_conjugator,
    compose,
    identity,
    inner_automorphism,
    is_inner_bounded,
    verify_automorphism,
)
from .graph import Graph
from .order import LemmaViolation, VertexClass, class_poset, equivalence_classes, gamma_zero
from .special import adjacent_join_intersection, godelle_ncz, joins
from .words import IntVector, NormalForm, Word, _nf_codes, abelianize, normal_form


class RepresentativeError(RuntimeError):
    """A constructed representative failed to preserve the subgroups it must preserve."""


class NotInKernelError(ValueError):
    pass


class SingletonGammaZeroError(ValueError):
    pass


@dataclass(frozen=True)
class RestrictedAutomorphism:
    ambient_class: VertexClass
    automorphism: Automorphism  # over the subgraph induced on J

    @property
    def images(self) -> dict[str, NormalForm]:
        return self.automorphism.images


@dataclass(frozen=True)
class ProjectedAutomorphism:
    base: VertexClass
    automorphism: Automorphism  # over the subgraph induced on L

    @property
    def images(self) -> dict[str, NormalForm]:
        return self.automorphism.images


@dataclass(frozen=True)
class LeafTransvection:
    v: str
    w: str

    @property
    def spec(self) -> GeneratorSpec:
        return GeneratorSpec.transvection(self.v, self.w)

    def __str__(self):
        return f"t({self.v},{self.w})"


class KernelVector(Mapping):
    """One integer vector over ``V - [v]`` per maximal class, keyed by representative."""

    def __init__(self, parts: Mapping[str, IntVector]):
        self._parts = dict(parts)

    def __getitem__(self, k):
        return self._parts[k]

    def __iter__(self):
        return iter(self._parts)

    def __len__(self):
        return len(self._parts)

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return self._parts == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple((k, v) for k, v in self._parts.items()))

    def __add__(self, other: KernelVector) -> KernelVector:
        return KernelVector({k: v + other[k] for k, v in self._parts.items()})

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self._parts.values())

    def __repr__(self):
        return "KernelVector(" + "; ".join(f"[{k}]: {dict(v.nonzero())}" for k, v in self._parts.items()) + ")"


def _maximal(g: Graph, cls: VertexClass) -> VertexClass:
    poset = class_poset(g)
    if cls not in poset.classes:
        raise ValueError(f"{cls} is not a class of this graph")
    if not poset.is_maximal(cls):
        raise ValueError(f"{cls} is not maximal")
    return cls


def _transfer(src: Graph, dst: Graph, codes) -> tuple[int, ...]:
    names = src.vertices
    out = []
    for c in codes:
        i = dst.index(names[abs(c) - 1]) + 1
        out.append(i if c > 0 else -i)
    return _nf_codes(dst, out)


def _supported(g: Graph, codes, vs: frozenset[str]) -> bool:
    return all(g.vertices[abs(c) - 1] in vs for c in codes)


def _gen_word(g: Graph, v: str, e: int = 1) -> Word:
    return Word.gen(g, v, e)


def representative_of_generator(g: Graph, spec: GeneratorSpec, cls: VertexClass) -> tuple[Automorphism, Word]:
    """Representative of one generator preserving ``A_[v]`` and ``A_J``.

    Returns ``(full, h)`` with ``full = c(h) o spec`` where ``c(h)`` is
    conjugation by ``h``.
    """
    if not spec.is_pure:
        raise ValueError("graph symmetries are not pure automorphisms")
    J = joins(g)[cls.representative].J
    raw = as_automorphism(g, spec)
    h = Word(g)
    if spec.kind == "inner":
        # trivial in Out; the identity is the representative
        h = _gen_word(g, spec.v, -spec.exponent)
    elif spec.kind == "partial_conjugation" and spec.v not in J:
        # J minus st(w) is connected, so the action on A_J is trivial or
        # conjugation by w^e on all of it
        if spec.component & J:
            h = _gen_word(g, spec.v, -spec.exponent)
    full = compose(inner_automorphism(g, h), raw) if h else raw
    return full, h


def _check_preserves(g: Graph, f: Automorphism, cls: VertexClass, J: frozenset[str]):
    members = cls.member_set
    for v in g.vertices:
        i = g.index(v)
        for codes, name in ((f._img[i], "image"), (f._inv[i], "inverse image")):
            if v in J and not _supported(g, codes, J):
                raise RepresentativeError(f"{name} of {v} leaves A_J for {cls}")
            if v in members and not _supported(g, codes, members):
                raise RepresentativeError(f"{name} of {v} leaves A_{cls}")


def preserving_representative(
    g: Graph, word_in_generators: Sequence[GeneratorSpec], cls: VertexClass
) -> tuple[Automorphism, Word]:
    """Representative of the product preserving ``A_[v]`` and ``A_J`` for maximal ``[v]``.

    Returns ``(full, h)`` with ``full = c(h) o raw`` where ``raw`` is the
    plain product of the generators.
    """
    _maximal(g, cls)
    J = joins(g)[cls.representative].J
    full = identity(g)
    raw = identity(g)
    h = Word(g)
    for spec in word_in_generators:
        rep, hs = representative_of_generator(g, spec, cls)
        # F o (c(hs) o s) = c(H raw(hs)) o (raw o s)
        h = normal_form(h * raw(hs))
        full = compose(full, rep)
        raw = compose(raw, as_automorphism(g, spec))
    if compose(inner_automorphism(g, h), raw) != full:
        raise RepresentativeError("inner correction does not account for the representative")
    _check_preserves(g, full, cls, J)
    return full, h


def restrict_R(g: Graph, word_in_generators: Sequence[GeneratorSpec], cls: VertexClass) -> RestrictedAutomorphism:
    full, _ = preserving_representative(g, word_in_generators, cls)
    return restrict_automorphism(g, full, cls)


def restrict_automorphism(g: Graph, full: Automorphism, cls: VertexClass) -> RestrictedAutomorphism:
    J = joins(g)[cls.representative].J
    gJ = g.induced(J)
    img = [_transfer(g, gJ, full._img[g.index(v)]) for v in gJ.vertices]
    inv = [_transfer(g, gJ, full._inv[g.index(v)]) for v in gJ.vertices]
    return RestrictedAutomorphism(cls, Automorphism(gJ, img, inv))


def _kill(g: Graph, gL: Graph, codes, killed: frozenset[str]) -> tuple[int, ...]:
    names = g.vertices
    return _transfer(g, gL, [c for c in codes if names[abs(c) - 1] not in killed])


def project_automorphism(g: Graph, full: Automorphism, cls: VertexClass) -> ProjectedAutomorphism:
    L = joins(g)[cls.representative].L
    gL = g.induced(L)
    members = cls.member_set
    img = [_kill(g, gL, full._img[g.index(v)], members) for v in gL.vertices]
    inv = [_kill(g, gL, full._inv[g.index(v)], members) for v in gL.vertices]
    p = Automorphism(gL, img, inv)
    report = verify_automorphism(gL, p)
    if not report.ok:
        raise RepresentativeError(f"projection to L{cls} is not an automorphism: {report.violations}")
    return ProjectedAutomorphism(cls, p)


def project_P(g: Graph, word_in_generators: Sequence[GeneratorSpec], cls: VertexClass) -> ProjectedAutomorphism:
    full, _ = preserving_representative(g, word_in_generators, cls)
    return project_automorphism(g, full, cls)


def assemble_RP(
    g: Graph, word_in_generators: Sequence[GeneratorSpec]
) -> dict[str, tuple[RestrictedAutomorphism, ProjectedAutomorphism]]:
    """Restriction and projection for every maximal class, keyed by representative."""
    out = {}
    for cls in gamma_zero(g).classes:
        full, _ = preserving_representative(g, word_in_generators, cls)
        out[cls.representative] = (restrict_automorphism(g, full, cls), project_automorphism(g, full, cls))
    return out


def out_equal(h: Graph, f1: Automorphism, f2: Automorphism, radius: int) -> Word | None:
    """A conjugator witnessing ``f1 = c(x) o f2`` within the radius, else None."""
    return is_inner_bounded(h, compose(f1, f2.inverse()), radius)


# leaf-like classes


def _classes_inside(g: Graph, vs: frozenset[str], classes: Iterable[VertexClass]) -> list[VertexClass]:
    return [c for c in classes if c.member_set <= vs]


def leaf_like_vertices(g: Graph) -> list[tuple[VertexClass, VertexClass]]:
    """Classes ``[v]`` whose L contains exactly one maximal class ``[w]``, with ``[v] < [w]``."""
    poset = class_poset(g)
    maxi = gamma_zero(g).classes
    js = joins(g)
    out = []
    for c in equivalence_classes(g):
        inside = _classes_inside(g, js[c.representative].L, maxi)
        if len(inside) == 1 and poset.lt(c, inside[0]):
            w = inside[0]
            if not w.is_abelian:
                raise LemmaViolation(f"leaf partner {w} of {c} is not abelian")
            out.append((c, w))
    return out


def leaf_transvections(g: Graph) -> list[LeafTransvection]:
    return [LeafTransvection(v, w) for c, m in leaf_like_vertices(g) for v in c.members for w in m.members]


# kernel of R


def conjugators_on_joins(g: Graph, f: Automorphism) -> dict[str, Word | None]:
    """For each maximal class, an element ``x`` with ``f = c(x)`` on ``A_J`` (None if none exists)."""
    js = joins(g)
    out = {}
    for cls in gamma_zero(g).classes:
        J = js[cls.representative].J
        out[cls.representative] = common_conjugator(g, [(u, f.image(u)) for u in g.sort(J)])
    return out


def in_kernel(g: Graph, f: Automorphism) -> bool:
    return all(x is not None for x in conjugators_on_joins(g, f).values())


def _as_automorphism(g: Graph, element) -> Automorphism:
    if isinstance(element, Automorphism):
        return element
    return automorphism_of_word(g, element)


def base_classes(g: Graph) -> tuple[VertexClass, VertexClass | None]:
    """Base for canonical representatives: least free maximal class, else least adjacent pair."""
    g0 = gamma_zero(g)
    if len(g0.classes) < 2:
        raise SingletonGammaZeroError("the graph of maximal classes is a single vertex")
    free = [c for c in g0.classes if not c.is_abelian]
    if free:
        return free[0], None
    for y in g0.classes:
        for z in g0.classes:
            if y != z and g0.adjacent(y, z):
                return y, z
    raise LemmaViolation("graph of maximal classes has no edge")


def canonicalize(g: Graph, f: Automorphism) -> Automorphism:
    """The canonical representative of the outer class of ``f`` (which must lie in K)."""
    y, z = base_classes(g)
    conj = conjugators_on_joins(g, f)
    missing = [k for k, x in conj.items() if x is None]
    if missing:
        raise NotInKernelError(f"not inner on the joins of {missing}")
    gy = conj[y.representative]
    k = gy
    if z is not None:
        gz = conj[z.representative]
        a = normal_form(gy.inverse() * gz)
        js = joins(g)
        _, ncz = adjacent_join_intersection(g, js[y.representative], js[z.representative])
        names = g.vertices
        if not all(names[abs(c) - 1] in ncz.centralizer for c in a.codes):
            raise LemmaViolation("conjugators on adjacent joins differ outside the centralizer")
        r = Word(g, [c for c in a.codes if names[abs(c) - 1] in y.member_set])
        k = gy * r
    return compose(inner_automorphism(g, k.inverse()), f)


def canonical_representative(g: Graph, word_in_generators) -> Automorphism:
    return canonicalize(g, _as_automorphism(g, word_in_generators))


def kernel_f(g: Graph, element) -> KernelVector:
    """Exponent sums of the conjugators by which the canonical representative acts on each maximal join.

    ``element`` is a word in generators or an automorphism; it must lie in K.
    """
    f = _as_automorphism(g, element)
    g0 = gamma_zero(g)
    if len(g0.classes) == 1:
        # K is trivial here; membership means f is inner
        (cls,) = g0.classes
        if conjugators_on_joins(g, f)[cls.representative] is None:
            raise NotInKernelError("not inner")
        rest = [v for v in g.vertices if v not in cls.member_set]
        return KernelVector({cls.representative: IntVector((v, 0) for v in rest)})
    f0 = canonicalize(g, f)
    conj = conjugators_on_joins(g, f0)
    parts = {}
    for cls in g0.classes:
        rest = [v for v in g.vertices if v not in cls.member_set]
        parts[cls.representative] = abelianize(conj[cls.representative]).restricted(rest)
    return KernelVector(parts)


def partial_conjugations_in_kernel(g: Graph) -> list[GeneratorSpec]:
    from .automorphisms import enumerate_laurence_generators

    return [
        s
        for s in enumerate_laurence_generators(g)
        if s.kind == "partial_conjugation" and in_kernel(g, as_automorphism(g, s))
    ]


# kernel of P


@dataclass
class KPResult:
    outcome: str  # "in-K", "in-KP-via-leaf-part" or "not-detected"
    radius: int
    leaf_coefficients: dict[tuple[str, str], int] = field(default_factory=dict)
    kernel_vector: KernelVector | None = None
    detail: str = ""


def check_KP_membership(g: Graph, word_in_generators: Sequence[GeneratorSpec], radius: int) -> KPResult:
    """Semi-decide membership in the kernel of the assembled projection.

    Projections are compared with the identity by a bounded conjugator search;
    leaf coefficients are read from the abelianized images of leaf-like
    vertices, and the remainder must lie in K.
    """
    word = list(word_in_generators)
    for rep, (_, proj) in assemble_RP(g, word).items():
        gL = proj.automorphism.graph
        if is_inner_bounded(gL, proj.automorphism, radius) is None:
            return KPResult("not-detected", radius, detail=f"projection at [{rep}] not inner within radius {radius}")
    raw = automorphism_of_word(g, word)
    m = abelianization_matrix(g, raw)
    coeffs = {}
    correction = []
    for lt in leaf_transvections(g):
        c = int(m[g.index(lt.w), g.index(lt.v)])
        coeffs[(lt.v, lt.w)] = c
        step = lt.spec if c < 0 else lt.spec.inverse()
        correction += [step] * abs(c)
    remainder = automorphism_of_word(g, word + correction)
    conj = conjugators_on_joins(g, remainder)
    missing = [k for k, x in conj.items() if x is None]
    if missing:
        return KPResult("not-detected", radius, coeffs, detail=f"remainder not inner on the joins of {missing}")
    vec = kernel_f(g, remainder)
    outcome = "in-K" if not any(coeffs.values()) else "in-KP-via-leaf-part"
    return KPResult(outcome, radius, coeffs, vec)


# single maximal class


@dataclass(frozen=True)
class SingletonDecomposition:
    tr_basis: tuple[LeafTransvection, ...]
    central_class: VertexClass
    L: frozenset[str]


def singleton_decomposition(g: Graph) -> SingletonDecomposition:
    g0 = gamma_zero(g)
    if len(g0.classes) != 1:
        raise ValueError("the graph of maximal classes is not a single vertex")
    (cls,) = g0.classes
    if not cls.is_abelian:
        raise LemmaViolation(f"the unique maximal class {cls} is not abelian")
    jd = joins(g)[cls.representative]
    if jd.J != frozenset(g.vertices):
        raise LemmaViolation("the unique maximal join is not the whole graph")
    basis = tuple(LeafTransvection(u, w) for u in g.sort(jd.L) for w in cls.members)
    return SingletonDecomposition(basis, cls, jd.L)


def singleton_conditions(g: Graph) -> tuple[bool, bool, bool]:
    """(single maximal class, nontrivial center, graph equals an abelian class's join), computed independently."""
    single = len(gamma_zero(g).classes) == 1
    center = bool(godelle_ncz(g, g.vertices).center)
    js = joins(g)
    whole = frozenset(g.vertices)
    is_join = any(c.is_abelian and js[c.representative].J == whole for c in equivalence_classes(g))
    return single, center, is_join
