"""Deterministic Graphviz DOT text for a graph, its class poset and its graph of maximal classes."""
from __future__ import annotations

from .graph import Graph
from .order import class_poset, gamma_zero

SELECTORS = ("gamma0", "poset", "graph")


class UnknownSelectorError(ValueError):
    pass


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _emit(kind: str, name: str, nodes: list[tuple[str, str]], edges: list[tuple[str, str]]) -> str:
    arrow = "->" if kind == "digraph" else "--"
    lines = [f"{kind} {name} {{"]
    for node, label in nodes:
        lines.append(f"  {_quote(node)} [label={_quote(label)}];")
    for u, v in edges:
        lines.append(f"  {_quote(u)} {arrow} {_quote(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_dot(g: Graph) -> str:
    return _emit("graph", "G", [(v, v) for v in g.vertices], g.sorted_edges())


def poset_dot(g: Graph) -> str:
    """Hasse diagram of the class poset; edges point from a class to the classes covering it."""
    poset = class_poset(g)
    nodes = [(c.representative, str(c)) for c in poset.classes]
    edges = [(a.representative, b.representative) for a, b in poset.covers()]
    return _emit("digraph", "poset", nodes, edges)


def gamma0_dot(g: Graph) -> str:
    g0 = gamma_zero(g)
    nodes = [(c.representative, str(c)) for c in g0.classes]
    order = {c.representative: i for i, c in enumerate(g0.classes)}
    edges = sorted((tuple(sorted(e, key=order.__getitem__)) for e in g0.edges), key=lambda e: (order[e[0]], order[e[1]]))
    return _emit("graph", "gamma0", nodes, edges)


def emit_dot(g: Graph, which: str) -> str:
    if which == "graph":
        return graph_dot(g)
    if which == "poset":
        return poset_dot(g)
    if which == "gamma0":
        return gamma0_dot(g)
    raise UnknownSelectorError(f"unknown selector {which!r}; expected one of {', '.join(SELECTORS)}")
