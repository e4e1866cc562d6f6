"""Exact arithmetic in the right-angled Artin group of a graph.

Elements are words over signed generators.  Internally a letter is an int
code ``+(i+1)`` / ``-(i+1)`` for the vertex with index ``i``; the public
surface speaks in vertex names through :class:`Letter`.

The normal form of an element is its reduced word (no cancellable pair
``x u x^-1`` with ``x`` commuting with all of ``u``), shuffled into the
lexicographically least arrangement under the vertex-list order.  Reduced
words of one element differ only by commutations, so this is canonical.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from typing import NamedTuple

from .graph import Graph, UnknownVertexError


class Letter(NamedTuple):
    generator: str
    sign: int = 1

    def __str__(self):
        return self.generator if self.sign == 1 else f"{self.generator}^-1"


class AmbientMismatchError(ValueError):
    pass


def _tables(g: Graph):
    """(commute, blocks) indexed by vertex index.

    ``commute[i]`` are the indices of generators adjacent to ``i``;
    ``blocks[i]`` are those that do not commute with ``i``, ``i`` itself
    included.
    """
    t = g._cache.get("words")
    if t is None:
        n = len(g.vertices)
        commute = []
        blocks = []
        for i, v in enumerate(g.vertices):
            nb = frozenset(g.index(u) for u in g.neighbors(v))
            commute.append(nb)
            blocks.append(tuple(j for j in range(n) if j not in nb))
        t = (tuple(commute), tuple(blocks))
        g._cache["words"] = t
    return t


class Word:
    """A word over the generators of the RAAG of ``graph``.

    ``==`` compares letters literally; use :func:`equal` for equality in the group.
    """

    __slots__ = ("graph", "codes")

    def __init__(self, graph: Graph, codes: Iterable[int] = ()):
        self.graph = graph
        self.codes = tuple(codes)

    @classmethod
    def from_letters(cls, graph: Graph, letters: Iterable) -> Word:
        codes = []
        for item in letters:
            gen, sign = (item, 1) if isinstance(item, str) else tuple(item)
            if sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {sign!r}")
            codes.append(sign * (graph.index(gen) + 1))
        return cls(graph, codes)

    @classmethod
    def gen(cls, graph: Graph, v: str, sign: int = 1) -> Word:
        return cls(graph, (sign * (graph.index(v) + 1),))

    @classmethod
    def parse(cls, graph: Graph, text: str) -> Word:
        """Parse whitespace-separated tokens ``v`` or ``v^-1``."""
        codes = []
        for tok in text.split():
            if tok.endswith("^-1"):
                name, sign = tok[:-3], -1
            else:
                name, sign = tok, 1
            if name not in graph:
                raise UnknownVertexError(name)
            codes.append(sign * (graph.index(name) + 1))
        return cls(graph, codes)

    @property
    def letters(self) -> tuple[Letter, ...]:
        vs = self.graph.vertices
        return tuple(Letter(vs[abs(c) - 1], 1 if c > 0 else -1) for c in self.codes)

    def __len__(self):
        return len(self.codes)

    def __bool__(self):
        return bool(self.codes)

    def __str__(self):
        return " ".join(str(x) for x in self.letters)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.codes == other.codes and self.graph == other.graph

    def __hash__(self):
        return hash(self.codes)

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def inverse(self) -> Word:
        return invert(self)


class NormalForm(Word):
    """A word known to be the canonical representative of its element."""

    __slots__ = ()


def _same_ambient(*words: Word) -> Graph:
    g = words[0].graph
    for w in words[1:]:
        if w.graph is not g and w.graph != g:
            raise AmbientMismatchError("words over different graphs")
    return g


def multiply(w1: Word, w2: Word) -> Word:
    g = _same_ambient(w1, w2)
    return Word(g, w1.codes + w2.codes)


def invert(w: Word) -> Word:
    return Word(w.graph, tuple(-c for c in reversed(w.codes)))


def conjugate(h: Word, w: Word) -> Word:
    """The word ``h w h^-1``."""
    return Word(_same_ambient(h, w), h.codes + w.codes + invert(h).codes)


# core routines on code tuples


def _reduce(commute, codes) -> list[int]:
    """Cancel pairs ``x ... x^-1`` whose intervening letters all commute with ``x``.

    Letters are appended to a reduced prefix; the backward scan from the
    new letter stops at the first letter it cannot pass.
    """
    out: list[int] = []
    for x in codes:
        i = abs(x) - 1
        cx = commute[i]
        k = len(out) - 1
        cancelled = False
        while k >= 0:
            y = out[k]
            if y == -x:
                del out[k]
                cancelled = True
                break
            if y == x or (abs(y) - 1) not in cx:
                break
            k -= 1
        if not cancelled:
            out.append(x)
    return out


def _lex_shuffle(commute, codes) -> tuple[int, ...]:
    """Lexicographically least rearrangement by commutations of a word."""
    n = len(codes)
    if n < 2:
        return tuple(codes)
    gens = [abs(c) - 1 for c in codes]
    blockers = [0] * n
    for j in range(n):
        gj = gens[j]
        cj = commute[gj]
        blockers[j] = sum(1 for k in range(j) if gens[k] not in cj)
    alive = [True] * n
    out = []
    for _ in range(n):
        best = -1
        for j in range(n):
            if alive[j] and blockers[j] == 0 and (best < 0 or gens[j] < gens[best]):
                best = j
        alive[best] = False
        out.append(codes[best])
        cb = commute[gens[best]]
        for j in range(best + 1, n):
            if alive[j] and gens[j] not in cb:
                blockers[j] -= 1
    return tuple(out)


def _nf_codes(g: Graph, codes) -> tuple[int, ...]:
    commute = _tables(g)[0]
    return _lex_shuffle(commute, _reduce(commute, codes))


def _check_codes(g: Graph, codes):
    n = len(g.vertices)
    for c in codes:
        if c == 0 or abs(c) > n:
            raise UnknownVertexError(c)


def normal_form(w: Word) -> NormalForm:
    if isinstance(w, NormalForm):
        return w
    _check_codes(w.graph, w.codes)
    return NormalForm(w.graph, _nf_codes(w.graph, w.codes))


def equal(w1: Word, w2: Word) -> bool:
    _same_ambient(w1, w2)
    return normal_form(w1).codes == normal_form(w2).codes


def is_identity(w: Word) -> bool:
    return not normal_form(w).codes


def heap_key(g: Graph, codes) -> tuple[tuple[int, ...], ...]:
    """Canonical heap-of-pieces encoding of the element spelled by ``codes``.

    Independent of :func:`normal_form`: one stack per generator, a letter
    pushes its sign on its own stack and a 0 on every stack it does not
    commute with; a letter whose stack top is its inverse cancels it.
    """
    blocks = _tables(g)[1]
    piles: list[list[int]] = [[] for _ in g.vertices]
    for c in codes:
        i = abs(c) - 1
        s = 1 if c > 0 else -1
        p = piles[i]
        if p and p[-1] == -s:
            for j in blocks[i]:
                piles[j].pop()
        else:
            for j in blocks[i]:
                piles[j].append(0)
            p[-1] = s
    return tuple(tuple(p) for p in piles)


def _minimal_positions(commute, codes) -> list[int]:
    """Positions of letters that can be shuffled to the front."""
    out = []
    for j, c in enumerate(codes):
        cj = commute[abs(c) - 1]
        if all((abs(codes[k]) - 1) in cj for k in range(j)):
            out.append(j)
    return out


def _maximal_positions(commute, codes) -> list[int]:
    n = len(codes)
    out = []
    for j, c in enumerate(codes):
        cj = commute[abs(c) - 1]
        if all((abs(codes[k]) - 1) in cj for k in range(j + 1, n)):
            out.append(j)
    return out


def cyclically_reduce(w: Word) -> tuple[NormalForm, Word]:
    """Return ``(core, conjugator)`` with ``w = conjugator core conjugator^-1``.

    Repeatedly peels a letter that can be brought to the front while its
    inverse can be brought to the back.
    """
    g = w.graph
    commute = _tables(g)[0]
    codes = list(normal_form(w).codes)
    conj: list[int] = []
    while True:
        found = None
        lasts = {codes[j]: j for j in _maximal_positions(commute, codes)}
        for i in _minimal_positions(commute, codes):
            j = lasts.get(-codes[i])
            if j is not None:
                found = (i, j)
                break
        if found is None:
            break
        i, j = found
        conj.append(codes[i])
        codes = [c for k, c in enumerate(codes) if k not in found]
    return NormalForm(g, _lex_shuffle(commute, codes)), Word(g, conj)


def is_cyclically_reduced(w: Word) -> bool:
    return not cyclically_reduce(w)[1].codes


def support(w: Word) -> frozenset[str]:
    vs = w.graph.vertices
    return frozenset(vs[abs(c) - 1] for c in normal_form(w).codes)


class IntVector(Mapping):
    """Integer vector indexed by vertex names, ordered by the graph's vertex list."""

    __slots__ = ("_items",)

    def __init__(self, entries: Mapping[str, int] | Iterable[tuple[str, int]]):
        items = entries.items() if isinstance(entries, Mapping) else entries
        self._items = dict(items)

    def __getitem__(self, k):
        return self._items[k]

    def __iter__(self):
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return self._items == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._items.items()))

    def __repr__(self):
        return "IntVector(" + ", ".join(f"{k}:{v}" for k, v in self._items.items()) + ")"

    def __add__(self, other: IntVector) -> IntVector:
        if set(self) != set(other):
            raise ValueError("vectors over different index sets")
        return IntVector((k, v + other[k]) for k, v in self._items.items())

    def __neg__(self) -> IntVector:
        return IntVector((k, -v) for k, v in self._items.items())

    def __sub__(self, other: IntVector) -> IntVector:
        return self + (-other)

    def restricted(self, keys: Iterable[str]) -> IntVector:
        keep = set(keys)
        return IntVector((k, v) for k, v in self._items.items() if k in keep)

    def is_zero(self) -> bool:
        return not any(self._items.values())

    def nonzero(self) -> dict[str, int]:
        return {k: v for k, v in self._items.items() if v}


def abelianize(w: Word) -> IntVector:
    """Exponent-sum vector of ``w`` over every vertex of the ambient graph."""
    vs = w.graph.vertices
    sums = [0] * len(vs)
    for c in w.codes:
        sums[abs(c) - 1] += 1 if c > 0 else -1
    return IntVector(zip(vs, sums))


def extract_conjugator(x: Word, y: Word) -> Word | None:
    """Some ``h`` with ``y = h x h^-1``, or ``None`` if the peel-and-match fails.

    ``x`` must be cyclically reduced.  ``y`` is cyclically reduced and its
    core is then rotated (a front-movable letter moved to the back) until it
    matches the normal form of ``x``.  The answer is determined only up to
    right multiplication by the centralizer of ``x``.
    """
    g = _same_ambient(x, y)
    commute = _tables(g)[0]
    target = normal_form(x).codes
    if not is_cyclically_reduced(x):
        raise ValueError("extract_conjugator requires a cyclically reduced x")
    core, conj = cyclically_reduce(y)
    if len(core.codes) != len(target):
        return None
    if sorted(core.codes) != sorted(target):
        return None
    start = core.codes
    seen = {start: ()}
    frontier = [start]
    while frontier:
        nxt = []
        for state in frontier:
            acc = seen[state]
            if state == target:
                return Word(g, conj.codes + acc)
            for i in _minimal_positions(commute, state):
                z = state[i]
                rotated = _lex_shuffle(commute, state[:i] + state[i + 1:] + (z,))
                if rotated not in seen:
                    seen[rotated] = acc + (z,)
                    nxt.append(rotated)
        frontier = nxt
    return None


def _extends(commute, codes, x) -> bool:
    """Whether appending ``x`` to the normal form ``codes`` gives a normal form."""
    i = abs(x) - 1
    cx = commute[i]
    for k in range(len(codes) - 1, -1, -1):
        y = codes[k]
        j = abs(y) - 1
        if j == i:
            return y == x
        if j not in cx:
            return True
        if j > i:
            return False
    return True


def enumerate_ball(g: Graph, radius: int) -> Iterator[NormalForm]:
    """Every element of length at most ``radius``, once each, in shortlex order.

    Normal forms are closed under prefixes, so the ball is grown one letter at
    a time and an extension is kept exactly when it is still a normal form.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    commute = _tables(g)[0]
    alphabet = []
    for i in range(len(g.vertices)):
        alphabet += [i + 1, -(i + 1)]
    level: list[tuple[int, ...]] = [()]
    yield NormalForm(g, ())
    for _ in range(radius):
        nxt = []
        for codes in level:
            for x in alphabet:
                if _extends(commute, codes, x):
                    w = codes + (x,)
                    nxt.append(w)
                    yield NormalForm(g, w)
        if not nxt:
            break
        level = nxt


def commutes_with_generator(w: Word, v: str) -> bool:
    g = w.graph
    x = (g.index(v) + 1,)
    return heap_key(g, w.codes + x) == heap_key(g, x + w.codes)
