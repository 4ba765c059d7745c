from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import connected_graphs
from contractdom.generators import GeneratorSpec, generate, named
from contractdom.graph import from_edge_list, mask_of
from contractdom.oracle import decide_bruteforce, decide_characterization, validate_decision
from contractdom.polyalgo import (
    CoverProblem,
    PreconditionError,
    cover_problem,
    decide_driver,
    decide_structural,
    effective_parameter,
    min_v2_cover,
    min_v2_cover_mask,
)
from contractdom.structure import PatternSpec, is_free, structural_context


def test_c6_no_via_gamma_step(c6):
    d = decide_structural(c6, 1)
    assert not d.answer
    assert d.provenance["fired_step"] == "1.1.2"
    assert d.provenance["gamma_if_computed"] == 2
    assert d.provenance["f"] == 20


def test_p4_yes(p4):
    d = decide_structural(p4, 1)
    assert d.answer and d.provenance["fired_step"] == "1.1.2"
    assert d.witness_edge == (1, 2) and d.witness_set == {1, 2}


def test_star_no():
    d = decide_structural(named("star", 5), 1)
    assert not d.answer and d.provenance["gamma_if_computed"] == 1


def test_driver_clique_fast_path():
    for k in (0, 1, 2):
        d = decide_driver(named("complete", 7), k)
        assert not d.answer
        assert d.provenance == {"fired_step": "clique", "j": 0, "A": None, "A_size": 0, "f": None,
                                "regular": [], "gamma_if_computed": None}


def test_driver_resolves_parameter(p4, c6):
    assert effective_parameter(p4, 2) == 1
    d = decide_driver(p4, 2)
    assert d.answer and d.provenance["j"] == 1
    assert decide_driver(c6, 1).provenance["j"] == 1
    p8 = named("path", 8)
    assert effective_parameter(p8, 2) == 2
    assert effective_parameter(named("complete", 3), 2) == 0


def test_precondition_errors(c6):
    p7 = named("path", 7)
    with pytest.raises(PreconditionError) as err:
        decide_driver(p7, 1)
    assert err.value.witness == {0, 1, 2, 4, 5}
    with pytest.raises(PreconditionError):
        decide_structural(p7, 1)
    with pytest.raises(PreconditionError):
        decide_structural(named("complete", 4), 1)
    with pytest.raises(ValueError):
        decide_structural(c6, 0)


def test_spider_closed_cover_is_correct(spider):
    cp = cover_problem(spider, [4, 5], 20)
    assert (cp.v1, cp.v2) == ({0}, {1, 6})
    assert min_v2_cover(spider, cp) == (1, {1})
    d = decide_driver(spider, 1)
    assert not d.answer and d.provenance["fired_step"] == "6"
    assert d.provenance["regular"] == [4, 5]
    assert not decide_bruteforce(spider).answer


def test_spider_open_cover_is_wrong(spider):
    # With open neighbourhoods the only minimum covers are {0,6} and {1,6},
    # both containing an edge, so step 5(i) answers yes.
    cp = cover_problem(spider, [4, 5], 20, closed=False)
    assert min_v2_cover(spider, cp) == (2, {0, 6})
    d = decide_driver(spider, 1, closed_cover=False)
    assert d.answer and d.provenance["fired_step"] == "5(i)"


def test_golden_regular_fixture_decision():
    g = from_edge_list(9, [(0, 6), (1, 3), (2, 8), (3, 8), (4, 8), (5, 7), (6, 8), (7, 8)])
    d = decide_driver(g, 1)
    assert d.answer and d.provenance["fired_step"] == "5(i)"
    assert decide_bruteforce(g).answer


def test_verify_witness_mode():
    g = from_edge_list(9, [(0, 6), (1, 3), (2, 8), (3, 8), (4, 8), (5, 7), (6, 8), (7, 8)])
    d = decide_driver(g, 1, verify_witness=True)
    assert d.witness_edge is not None and validate_decision(g, d)
    assert d.provenance["fired_step"] == "5(i)"


def test_cover_examples():
    g = from_edge_list(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    empty = CoverProblem(frozenset({1, 3}), frozenset(), 20)
    assert min_v2_cover(g, empty, [3]) == (1, {3})
    assert min_v2_cover(g, empty) == (0, frozenset())
    single = CoverProblem(frozenset({1}), frozenset({0}), 20, closed=False)
    assert min_v2_cover(g, single) == (1, {1})
    # 0 and 2 share their only neighbour 1.
    shared = CoverProblem(frozenset({1, 3}), frozenset({0, 2}), 20)
    assert min_v2_cover(g, shared) == (1, {1})
    assert min_v2_cover(g, CoverProblem(frozenset({1, 3}), frozenset({0, 2}), 0)) is None
    with pytest.raises(ValueError):
        min_v2_cover(g, shared, [4])


@st.composite
def cover_instances(draw):
    g = draw(connected_graphs(min_n=2, max_n=9))
    roles = draw(st.lists(st.sampled_from("12x"), min_size=g.n, max_size=g.n))
    v1 = frozenset(v for v, r in enumerate(roles) if r == "1")
    v2 = frozenset(v for v, r in enumerate(roles) if r == "2")
    closed = draw(st.booleans())
    return g, CoverProblem(v1, v2, g.n, closed=closed)


def _family(g, cp, size):
    nb = g.closed_neighbourhood if cp.closed else g.neighbours
    universe = sorted(cp.v1 | cp.v2)
    return [set(s) for s in combinations(universe, size) if all(nb(x) & set(s) for x in cp.v2)]


@given(cover_instances())
def test_cover_solver_matches_family_enumeration(inst):
    g, cp = inst
    universe = sorted(cp.v1 | cp.v2)
    sizes = [s for s in range(len(universe) + 1) if _family(g, cp, s)]
    res = min_v2_cover(g, cp)
    if not sizes:
        assert res is None
        return
    s_star = sizes[0]
    family = _family(g, cp, s_star)
    assert res == (s_star, min(family, key=sorted))
    # Step 5(i): some minimum cover contains an edge.
    has_edge = any(g.has_edge(u, v) for s in family for u, v in combinations(sorted(s), 2))
    by_solver = any(
        min_v2_cover_mask(g, cp, mask_of((u, v)), s_star) is not None
        for u, v in g.edges if u in cp.v1 | cp.v2 and v in cp.v1 | cp.v2
    )
    assert has_edge == by_solver
    # Step 5(ii): some minimum cover meets V1.
    meets_v1 = any(s & cp.v1 for s in family)
    assert meets_v1 == any(min_v2_cover_mask(g, cp, 1 << v, s_star) is not None for v in cp.v1)


@given(connected_graphs(min_n=1, max_n=10), st.integers(1, 2))
def test_driver_matches_bruteforce(g, k):
    if not is_free(g, PatternSpec.p3_plus(k)):
        with pytest.raises(PreconditionError):
            decide_driver(g, k)
        return
    d = decide_driver(g, k)
    assert d.answer == decide_bruteforce(g).answer


def test_regular_instances_follow_oracle():
    """Every seed-fixed instance with regular vertices, checked step by step."""
    spec = GeneratorSpec("random-free", n=10, n_min=7, p=0.25, k=1, seed=0, count=200)
    seen = 0
    for it in generate(spec):
        ctx = structural_context(it.graph, 1) if effective_parameter(it.graph, 1) else None
        if ctx is None or not ctx.regular:
            continue
        seen += 1
        d = decide_driver(it.graph, 1, check_free=False)
        truth = decide_characterization(it.graph)
        assert d.answer == truth.answer
        if d.provenance["fired_step"] == "2":
            assert truth.answer
        if d.provenance["fired_step"] == "6":
            assert truth.witness_set is None
    assert seen >= 5
