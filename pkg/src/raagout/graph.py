"""Finite simplicial graphs and the combinatorial primitives built on them.

Vertex names are opaque strings.  Whenever a function returns an ordered
collection of vertices, the order is the order of ``Graph.vertices``.
"""
from __future__ import annotations

import hashlib
import itertools
import math
from collections import deque
from collections.abc import Iterable
from pathlib import Path

import yaml


class UnknownVertexError(KeyError):
    def __init__(self, vertex):
        super().__init__(vertex)
        self.vertex = vertex

    def __str__(self):
        return f"unknown vertex {self.vertex!r}"


class GraphFormatError(ValueError):
    """Raised by the graph loader; carries the 1-based line of the offending item."""

    def __init__(self, message: str, line: int | None = None, source: str = "<graph>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


class Graph:
    """A finite simplicial graph with an ordered vertex list."""

    __slots__ = ("vertices", "edges", "_index", "_adj", "_cache")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex names")
        index = {v: i for i, v in enumerate(vertices)}
        adj: dict[str, set[str]] = {v: set() for v in vertices}
        edge_set = set()
        for e in edges:
            u, v = tuple(e)
            for x in (u, v):
                if x not in index:
                    raise UnknownVertexError(x)
            if u == v:
                raise ValueError(f"loop at vertex {u!r}")
            pair = frozenset((u, v))
            if pair in edge_set:
                raise ValueError(f"duplicate edge {u!r}-{v!r}")
            edge_set.add(pair)
            adj[u].add(v)
            adj[v].add(u)
        self.vertices = vertices
        self.edges = frozenset(edge_set)
        self._index = index
        self._adj = {v: frozenset(s) for v, s in adj.items()}
        # per-graph memo for derived tables (word engine, class data); never part of equality
        self._cache = {}

    # basic protocol

    def __contains__(self, v) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        es = ", ".join("-".join(self.sort(e)) for e in self.sorted_edges())
        return f"Graph({list(self.vertices)}, [{es}])"

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    def check(self, vs: Iterable[str]) -> frozenset[str]:
        vs = frozenset(vs)
        for v in vs:
            if v not in self._index:
                raise UnknownVertexError(v)
        return vs

    def adjacent(self, u: str, v: str) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: str) -> frozenset[str]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    def sort(self, vs: Iterable[str]) -> list[str]:
        """Order a collection of vertices by the vertex list."""
        return sorted(vs, key=self.index)

    def sorted_edges(self) -> list[tuple[str, str]]:
        pairs = [tuple(self.sort(e)) for e in self.edges]
        return sorted(pairs, key=lambda p: (self.index(p[0]), self.index(p[1])))

    def induced(self, vs: Iterable[str]) -> Graph:
        keep = self.check(vs)
        order = [v for v in self.vertices if v in keep]
        return Graph(order, [e for e in self.sorted_edges() if e[0] in keep and e[1] in keep])

    def fingerprint(self) -> str:
        """Stable hash of the vertex list and edge set."""
        text = "\n".join(["V " + " ".join(self.vertices)] + [f"E {u} {v}" for u, v in self.sorted_edges()])
        return hashlib.sha256(text.encode()).hexdigest()

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}

    # convenience constructors

    @classmethod
    def path(cls, n: int, names: str = "abcdefghijklmnopqrstuvwxyz") -> Graph:
        vs = list(names[:n])
        return cls(vs, zip(vs, vs[1:]))

    @classmethod
    def cycle(cls, n: int, names: str = "abcdefghijklmnopqrstuvwxyz") -> Graph:
        vs = list(names[:n])
        return cls(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])

    @classmethod
    def complete(cls, n: int, names: str = "abcdefghijklmnopqrstuvwxyz") -> Graph:
        vs = list(names[:n])
        return cls(vs, itertools.combinations(vs, 2))

    @classmethod
    def discrete(cls, n: int, names: str = "abcdefghijklmnopqrstuvwxyz") -> Graph:
        return cls(list(names[:n]))


def link(g: Graph, v: str) -> frozenset[str]:
    return g.neighbors(v)


def star(g: Graph, v: str) -> frozenset[str]:
    return g.neighbors(v) | {v}


def distance(g: Graph, u: str, v: str) -> float:
    """Edge-path distance; ``math.inf`` when u and v lie in different components."""
    g.index(u)
    g.index(v)
    if u == v:
        return 0
    seen = {u}
    frontier = deque([(u, 0)])
    while frontier:
        x, d = frontier.popleft()
        for y in g.neighbors(x):
            if y == v:
                return d + 1
            if y not in seen:
                seen.add(y)
                frontier.append((y, d + 1))
    return math.inf


def distances_from(g: Graph, u: str) -> dict[str, float]:
    dist = {v: math.inf for v in g.vertices}
    dist[u] = 0
    frontier = deque([u])
    while frontier:
        x = frontier.popleft()
        for y in g.neighbors(x):
            if dist[y] == math.inf:
                dist[y] = dist[x] + 1
                frontier.append(y)
    return dist


def _components_within(g: Graph, allowed: frozenset[str]) -> list[frozenset[str]]:
    comps = []
    seen: set[str] = set()
    for v in g.vertices:
        if v not in allowed or v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y in allowed and y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def components(g: Graph) -> list[frozenset[str]]:
    """Connected components, ordered by their first vertex in the vertex list."""
    return _components_within(g, frozenset(g.vertices))


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def components_minus_star(g: Graph, v: str) -> list[frozenset[str]]:
    return _components_within(g, frozenset(g.vertices) - star(g, v))


def perp(g: Graph, th: Iterable[str]) -> frozenset[str]:
    """Vertices commuting with every vertex of ``th`` (members of ``th`` included when they qualify)."""
    th = g.check(th)
    return frozenset(u for u in g.vertices if all(u == w or g.adjacent(u, w) for w in th))


def free_product_factors(g: Graph) -> tuple[int, list[Graph]]:
    isolated = 0
    factors = []
    for comp in components(g):
        if len(comp) == 1:
            isolated += 1
        else:
            factors.append(g.induced(comp))
    return isolated, factors


def dimension(g: Graph) -> int:
    """Size of a largest clique (branch and bound over the vertex order)."""
    best = 0
    order = list(g.vertices)

    def grow(size: int, candidates: list[str]):
        nonlocal best
        if size > best:
            best = size
        for i, v in enumerate(candidates):
            if size + len(candidates) - i <= best:
                return
            nbrs = g.neighbors(v)
            grow(size + 1, [w for w in candidates[i + 1:] if w in nbrs])

    grow(0, order)
    return best


# loading


def _line(node) -> int:
    return node.start_mark.line + 1


def parse_graph(text: str, source: str = "<graph>") -> Graph:
    """Parse a graph document (JSON or YAML) with ``vertices`` and ``edges`` fields."""
    try:
        root = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        raise GraphFormatError(f"syntax error: {getattr(exc, 'problem', exc)}", line, source) from None
    if not isinstance(root, yaml.MappingNode):
        raise GraphFormatError("expected a mapping with 'vertices' and 'edges'", _line(root) if root else 1, source)
    fields = {}
    for key, value in root.value:
        if not isinstance(key, yaml.ScalarNode):
            raise GraphFormatError("non-scalar key", _line(key), source)
        if key.value in fields:
            raise GraphFormatError(f"duplicate field {key.value!r}", _line(key), source)
        fields[key.value] = value
    for name in ("vertices", "edges"):
        if name not in fields:
            raise GraphFormatError(f"missing field {name!r}", _line(root), source)
    vnode = fields["vertices"]
    if not isinstance(vnode, yaml.SequenceNode):
        raise GraphFormatError("'vertices' must be a list", _line(vnode), source)
    vertices = []
    for item in vnode.value:
        if not isinstance(item, yaml.ScalarNode) or item.value == "":
            raise GraphFormatError("vertex names must be non-empty strings", _line(item), source)
        if item.value in vertices:
            raise GraphFormatError(f"duplicate vertex {item.value!r}", _line(item), source)
        vertices.append(item.value)
    enode = fields["edges"]
    if not isinstance(enode, yaml.SequenceNode):
        raise GraphFormatError("'edges' must be a list", _line(enode), source)
    edges = []
    seen = set()
    known = set(vertices)
    for item in enode.value:
        if not isinstance(item, yaml.SequenceNode) or len(item.value) != 2 or not all(
            isinstance(x, yaml.ScalarNode) for x in item.value
        ):
            raise GraphFormatError("each edge must be a 2-element list of vertex names", _line(item), source)
        u, v = (x.value for x in item.value)
        for x in (u, v):
            if x not in known:
                raise GraphFormatError(f"edge endpoint {x!r} is not a listed vertex", _line(item), source)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u!r}", _line(item), source)
        pair = frozenset((u, v))
        if pair in seen:
            raise GraphFormatError(f"duplicate edge {u!r}-{v!r}", _line(item), source)
        seen.add(pair)
        edges.append((u, v))
    return Graph(vertices, edges)


def load_graph(path) -> Graph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphFormatError(f"cannot read file: {exc.strerror}", None, str(path)) from None
    return parse_graph(text, str(path))
