from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import SPIDER_EDGES, connected_graphs, graphs, to_nx
from contractdom.generators import GeneratorSpec, generate, named, random_free_connected
from contractdom.graph import distances, from_edge_list, is_stable
from contractdom.structure import (
    PatternSpec,
    StructuralViolation,
    clique_neighbourhood_set,
    f_bound,
    far_tuples,
    find_induced,
    induces_pattern,
    is_free,
    partition_abc,
    regular_vertices,
    structural_context,
)

P3 = PatternSpec.p3_plus(0)
P3P2 = PatternSpec.p3_plus(1)
P3_2P2 = PatternSpec.p3_plus(2)


def pattern_graph(p):
    h = nx.Graph()
    start = 0
    for order in p.paths:
        nx.add_path(h, range(start, start + order))
        start += order
    return h


def blind_scan(g, p):
    """All vertex sets whose induced subgraph is isomorphic to ``p`` (networkx)."""
    target = pattern_graph(p)
    h = to_nx(g)
    return [set(c) for c in combinations(range(g.n), p.order) if nx.is_isomorphic(h.subgraph(c), target)]


def test_pattern_spec():
    assert str(P3_2P2) == "P3+2P2"
    assert P3_2P2.order == 7
    assert PatternSpec((2, 3, 2)) == P3_2P2
    with pytest.raises(ValueError):
        PatternSpec.p3_plus(-1)
    with pytest.raises(ValueError):
        PatternSpec(())


def test_find_induced_examples(c6):
    assert find_induced(c6, P3) == {0, 1, 2}
    assert find_induced(c6, P3P2) is None
    assert is_free(c6, P3P2)
    p7 = named("path", 7)
    hit = find_induced(p7, P3P2)
    assert hit == {0, 1, 2, 4, 5}
    assert induces_pattern(p7, hit, P3P2)
    assert not is_free(p7, P3P2)
    for n in range(1, 8):
        assert is_free(named("complete", n), P3)


@given(graphs(max_n=10), st.integers(0, 2))
def test_find_induced_matches_blind_scan(g, j):
    p = PatternSpec.p3_plus(j)
    hits = blind_scan(g, p)
    found = find_induced(g, p)
    assert (found is None) == (not hits)
    assert is_free(g, p) == (not hits)
    if found is not None:
        assert found in hits
        assert induces_pattern(g, found, p)


@given(graphs(max_n=9))
def test_generic_linear_forest_search(g):
    p = PatternSpec((2, 2, 1))
    hits = blind_scan(g, p)
    found = find_induced(g, p)
    assert (found is None) == (not hits)
    assert is_free(g, p) == (not hits)
    if found is not None:
        assert found in hits


def test_partition_examples(c6):
    star = named("star", 4)
    assert partition_abc(star, [1, 0, 2]) == ({3}, frozenset())
    assert partition_abc(c6, [0, 1, 2]) == ({3, 5}, {4})
    p3 = named("path", 3)
    assert partition_abc(p3, [0, 1, 2]) == (frozenset(), frozenset())


def test_partition_rejects_far_vertex():
    with pytest.raises(StructuralViolation):
        partition_abc(named("path", 6), [0, 1, 2])
    with pytest.raises(StructuralViolation):
        partition_abc(from_edge_list(4, [(0, 1), (1, 2)]), [0, 1, 2])


def test_clique_neighbourhood_examples(c6):
    assert clique_neighbourhood_set(c6, {4}) == frozenset()
    assert clique_neighbourhood_set(named("path", 5), {4}) == {4}
    assert clique_neighbourhood_set(c6, set()) == frozenset()


@pytest.mark.parametrize("k,a,f", [(1, 3, 20), (2, 5, 46), (3, 7, 80)])
def test_f_bound(k, a, f):
    assert f_bound(k, a) == f


def test_regular_empty_for_small_diameter(c6):
    ctx = structural_context(c6, 1)
    assert ctx.regular == frozenset() and ctx.clique_c == frozenset()
    g = named("complete_bipartite", 2, 3)
    assert regular_vertices(g, range(5), 1) == frozenset()


def test_spider_context(spider):
    ctx = structural_context(spider, 1)
    assert ctx.to_dict() == {"k": 1, "A": [0, 1, 6], "B": [2, 3], "C": [4, 5],
                             "clique_C": [4, 5], "regular": [4, 5], "f": 20}


def test_golden_regular_fixture():
    # The first instance of this seed-fixed stream with regular vertices.
    spec = GeneratorSpec("random-free", n=10, n_min=7, p=0.25, k=1, seed=0, count=3)
    items = list(generate(spec))
    for it in items[:-1]:
        assert not structural_context(it.graph, 1).regular
    last = items[-1]
    assert last.index == 2
    assert last.graph == from_edge_list(9, [(0, 6), (1, 3), (2, 8), (3, 8), (4, 8), (5, 7), (6, 8), (7, 8)])
    assert last.graph == random_free_connected(9, 0.25, 1, seed=0, index=2)
    ctx = structural_context(last.graph, 1)
    assert ctx.to_dict() == {"k": 1, "A": [0, 6, 8], "B": [2, 3, 4, 7], "C": [1, 5],
                             "clique_C": [1, 5], "regular": [1, 5], "f": 20}


def _regular_by_definition(g, cc, k):
    d = distances(g)
    out = set()
    for tup in combinations(sorted(cc), k + 1):
        if all(d[u][v] >= 4 or d[u][v] < 0 for u, v in combinations(tup, 2)):
            out.update(tup)
    return out


@given(connected_graphs(min_n=3, max_n=11), st.integers(1, 2))
def test_context_invariants(g, k):
    if not is_free(g, PatternSpec.p3_plus(k)) or find_induced(g, PatternSpec.p3_plus(k - 1)) is None:
        return
    ctx = structural_context(g, k)
    assert len(ctx.a) == 3 + 2 * (k - 1)
    assert ctx.a | ctx.b | ctx.c == set(range(g.n))
    assert not (ctx.a & ctx.b or ctx.a & ctx.c or ctx.b & ctx.c)
    assert is_stable(g, ctx.c)
    assert ctx.regular <= ctx.clique_c <= ctx.c
    assert ctx.regular == _regular_by_definition(g, ctx.clique_c, k)


def test_far_tuples(spider):
    assert list(far_tuples(spider, [4, 5], 2)) == [(4, 5)]
    # Vertex 1 ends the third leg.
    assert list(far_tuples(spider, [1, 4, 5], 2)) == [(1, 4), (1, 5), (4, 5)]
    assert list(far_tuples(spider, [1, 4, 5], 3)) == [(1, 4, 5)]
    assert list(far_tuples(spider, [0, 4], 2)) == []


def test_structural_context_rejections(c6):
    with pytest.raises(StructuralViolation):
        structural_context(named("complete", 4), 1)
    with pytest.raises(StructuralViolation):
        structural_context(c6, 1, a=[0, 1, 3])
    with pytest.raises(ValueError):
        structural_context(c6, 0)


def test_spider_is_free(spider):
    assert spider.edges == tuple(SPIDER_EDGES)
    assert is_free(spider, P3P2)
