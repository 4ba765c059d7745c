from itertools import combinations

import networkx as nx
import pytest
from hypothesis import settings, strategies as st

from contractdom.generators import named
from contractdom.graph import Graph, from_edge_list

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edge_list(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def connected_graphs(draw, min_n=1, max_n=9):
    """Random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    for e in combinations(range(n), 2):
        if draw(st.booleans()) and draw(st.booleans()):
            edges.add(e)
    return from_edge_list(n, sorted(edges))


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@pytest.fixture
def p4():
    return named("path", 4)


@pytest.fixture
def c4():
    return named("cycle", 4)


@pytest.fixture
def c6():
    return named("cycle", 6)


# Three legs of length two hanging from vertex 0.  It has regular vertices
# (4 and 5) and is the smallest instance where an open-neighbourhood cover
# gives the wrong answer.
SPIDER_EDGES = [(0, 2), (0, 3), (0, 6), (1, 6), (2, 5), (3, 4)]


@pytest.fixture
def spider():
    return from_edge_list(7, SPIDER_EDGES)
