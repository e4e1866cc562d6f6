import itertools

import pytest
from hypothesis import strategies as st

from raagout.graph import Graph

NAMES = "abcdefgh"


@st.composite
def graphs(draw, min_n=1, max_n=6, connected=False):
    n = draw(st.integers(min_n, max_n))
    vs = list(NAMES[:n])
    pairs = list(itertools.combinations(vs, 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph(vs, [p for p, keep in zip(pairs, mask) if keep])
    if connected:
        from raagout.graph import is_connected

        if not is_connected(g):
            # join the components into a path through their first vertices
            from raagout.graph import components

            heads = [g.sort(c)[0] for c in components(g)]
            extra = list(zip(heads, heads[1:]))
            g = Graph(vs, list(g.sorted_edges()) + extra)
    return g


@st.composite
def graph_and_codes(draw, max_n=6, max_len=12, min_n=1, connected=False):
    g = draw(graphs(min_n=min_n, max_n=max_n, connected=connected))
    n = len(g.vertices)
    letter = st.integers(1, n).flatmap(lambda i: st.sampled_from([i, -i]))
    codes = draw(st.lists(letter, max_size=max_len))
    return g, tuple(codes)


@pytest.fixture
def p3():
    return Graph.path(3)


@pytest.fixture
def p4():
    return Graph.path(4)


@pytest.fixture
def p5():
    return Graph.path(5)


@pytest.fixture
def c5():
    return Graph.cycle(5)


@pytest.fixture
def star3():
    return Graph(["z", "x", "y", "w"], [("z", "x"), ("z", "y"), ("z", "w")])
