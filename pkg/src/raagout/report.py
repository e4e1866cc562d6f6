"""Structured analysis and kernel reports, serialized as deterministic JSON."""
from __future__ import annotations

import json
from collections.abc import Sequence

from .automorphisms import GeneratorSpec, enumerate_laurence_generators, generator_inventory
from .graph import Graph, dimension, free_product_factors
from .kernel import (
    KernelVector,
    check_KP_membership,
    conjugators_on_joins,
    leaf_like_vertices,
    leaf_transvections,
    preserving_representative,
    restrict_automorphism,
    singleton_decomposition,
)
from .order import VertexClass, class_poset, gamma_zero
from .special import godelle_ncz, joins, ncz_of_maximal_join

FORMAT_VERSION = 1


def _vs(g: Graph, vs) -> list[str]:
    return g.sort(vs)


def _cls(c: VertexClass) -> dict:
    return {"representative": c.representative, "members": list(c.members), "kind": c.kind}


def _ncz(g: Graph, r) -> dict:
    return {"normalizer": _vs(g, r.normalizer), "centralizer": _vs(g, r.centralizer), "center": _vs(g, r.center)}


def analyze_factor(g: Graph) -> dict:
    poset = class_poset(g)
    g0 = gamma_zero(g)
    order = {c.representative: i for i, c in enumerate(g0.classes)}
    js = joins(g)
    join_rows = []
    for c in poset.classes:
        jd = js[c.representative]
        maximal = poset.is_maximal(c)
        ncz = ncz_of_maximal_join(g, jd) if maximal else godelle_ncz(g, jd.J)
        join_rows.append({
            "class": c.representative,
            "maximal": maximal,
            "L": _vs(g, jd.L),
            "J": _vs(g, jd.J),
            "ncz": _ncz(g, ncz),
        })
    gens = enumerate_laurence_generators(g, include_symmetries=True)
    out = {
        "vertices": list(g.vertices),
        "edges": [list(e) for e in g.sorted_edges()],
        "classes": [_cls(c) for c in poset.classes],
        "poset": {
            "maximal": [c.representative for c in poset.maximal],
            "covers": [[a.representative, b.representative] for a, b in poset.covers()],
        },
        "gamma0": {
            "vertices": [c.representative for c in g0.classes],
            "edges": sorted(
                (sorted(e, key=order.__getitem__) for e in g0.edges), key=lambda e: (order[e[0]], order[e[1]])
            ),
        },
        "joins": join_rows,
        "generators": {
            "counts": generator_inventory(g),
            "list": [s.label(g) for s in gens],
        },
        "leaf_like": [[c.representative, w.representative] for c, w in leaf_like_vertices(g)],
        "leaf_transvections": [str(t) for t in leaf_transvections(g)],
        "singleton": None,
    }
    if len(g0.classes) == 1:
        dec = singleton_decomposition(g)
        out["singleton"] = {
            "class": _cls(dec.central_class),
            "L": _vs(g, dec.L),
            "tr_basis": [str(t) for t in dec.tr_basis],
            "tr_rank": len(dec.tr_basis),
            "gl_rank": len(dec.central_class.members),
            "shape": f"Z^{len(dec.tr_basis)} x| (GL_{len(dec.central_class.members)}(Z) x Out(A_L))",
        }
    return out


def analyze(g: Graph) -> dict:
    isolated, factors = free_product_factors(g)
    return {
        "format": FORMAT_VERSION,
        "graph": {"vertices": list(g.vertices), "edges": [list(e) for e in g.sorted_edges()]},
        "fingerprint": g.fingerprint(),
        "isolated_count": isolated,
        "dimension": dimension(g) if len(g) else 0,
        "factors": [analyze_factor(f) for f in factors],
    }


def _vector(v: KernelVector | None):
    if v is None:
        return None
    return {k: dict(x.items()) for k, x in v.items()}


def kernel_report(g: Graph, word: Sequence[GeneratorSpec], radius: int = 6) -> dict:
    """Restrictions, conjugators and leaf decomposition of one pure outer automorphism."""
    word = list(word)
    rows = []
    for cls in gamma_zero(g).classes:
        full, h = preserving_representative(g, word, cls)
        r = restrict_automorphism(g, full, cls)
        conj = conjugators_on_joins(g, full)[cls.representative]
        rows.append({
            "class": cls.representative,
            "inner_correction": str(h),
            "restriction": {v: str(w) for v, w in r.images.items()},
            "conjugator": None if conj is None else str(conj),
        })
    kp = check_KP_membership(g, word, radius)
    return {
        "format": FORMAT_VERSION,
        "fingerprint": g.fingerprint(),
        "word": [s.label(g) for s in word],
        "classes": rows,
        "kp": {
            "outcome": kp.outcome,
            "radius": kp.radius,
            "leaf_coefficients": [[v, w, c] for (v, w), c in kp.leaf_coefficients.items()],
            "kernel_vector": _vector(kp.kernel_vector),
            "detail": kp.detail,
        },
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
