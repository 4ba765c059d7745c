"""Executable checks of the structural lemmas behind the polynomial algorithm.

Each check inspects one graph and returns a :class:`ClaimOutcome`: ``pass``
when the hypothesis held somewhere and the conclusion held everywhere it
did, ``vacuous`` when the hypothesis never held, ``violation`` otherwise.
The conditional bounds only apply to no-instances, which are identified by
the brute-force decider.  Everything here enumerates all minimum dominating
sets, so it is meant for graphs with at most about a dozen vertices.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional

from contractdom.domination import enumerate_min_ds, private_neighbours_mask
from contractdom.graph import Graph, bits, is_clique_mask, is_dominating_mask, mask_of
from contractdom.oracle import decide_bruteforce
from contractdom.structure import (
    PatternSpec,
    StructuralContext,
    StructuralViolation,
    far_tuples,
    find_induced_mask,
    structural_context,
)

PASS, VACUOUS, VIOLATION = "pass", "vacuous", "violation"

CLAIMS = (
    "partition_and_stable_c",
    "vertex_completeness",
    "one_vertex_in_d_per_regular",
    "regular_no_common_neighbour",
    "regular_distance_three_is_yes",
    "regular_neighbourhood_shift",
    "only_one_pn_in_c",
    "shared_responsibilities_distributed",
    "few_vertices_in_c_without_pn",
    "b_cap_d_is_small",
    "most_vertices_in_c",
    "most_neighbourhoods_are_cliques",
    "almost_all_are_distance_three",
    "most_vertices_are_regular",
)


@dataclass(frozen=True)
class ClaimOutcome:
    status: str
    detail: str = ""


@dataclass
class ClaimTally:
    counts: dict[str, Counter] = field(default_factory=lambda: {c: Counter() for c in CLAIMS})
    violations: list[dict] = field(default_factory=list)
    instances: int = 0

    def add(self, index: int, outcomes: dict[str, ClaimOutcome], edges: list) -> None:
        self.instances += 1
        for name, out in outcomes.items():
            self.counts[name][out.status] += 1
            if out.status == VIOLATION:
                self.violations.append({"index": index, "claim": name, "detail": out.detail, "edges": edges})

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "instances": self.instances,
            "claims": {c: {s: self.counts[c][s] for s in (PASS, VACUOUS, VIOLATION)} for c in CLAIMS},
            "violations": self.violations,
        }


def _status(applied: bool, failure: Optional[str]) -> ClaimOutcome:
    if failure is not None:
        return ClaimOutcome(VIOLATION, failure)
    return ClaimOutcome(PASS if applied else VACUOUS)


class _Instance:
    """Shared precomputation for one graph."""

    def __init__(self, g: Graph, ctx: StructuralContext, no_instance: bool, min_ds: list[int]):
        self.g = g
        self.ctx = ctx
        self.no_instance = no_instance
        self.min_ds = min_ds
        self.a = mask_of(ctx.a)
        self.b = mask_of(ctx.b)
        self.c = mask_of(ctx.c)
        self.reg = mask_of(ctx.regular)
        self.k = ctx.k
        self.a_size = len(ctx.a)


# -- unconditional claims about regular vertices ------------------------------


def _vertex_completeness(inst: _Instance) -> ClaimOutcome:
    g = inst.g
    applied = False
    for c1 in bits(inst.reg):
        nc1 = g.adj[c1]
        for v in bits(g.full & ~g.closed[c1]):
            if not g.adj[v] & nc1:
                continue
            applied = True
            if not any(g.adj[c] & ~g.closed[v] == 0 for c in bits(inst.reg)):
                return ClaimOutcome(VIOLATION, f"v={v} adjacent to N({c1}) but complete to no N(c), c regular")
    return _status(applied, None)


def _one_vertex_per_regular(inst: _Instance) -> ClaimOutcome:
    g = inst.g
    if not inst.reg:
        return _status(False, None)
    for d in inst.min_ds:
        for c1 in bits(inst.reg):
            hit = (g.closed[c1] & d).bit_count()
            if hit != 1:
                return ClaimOutcome(VIOLATION, f"|D & N[{c1}]| = {hit} for D={sorted(bits(d))}")
    return _status(True, None)


def _no_common_neighbour(inst: _Instance) -> ClaimOutcome:
    g = inst.g
    regs = list(bits(inst.reg))
    applied = len(regs) >= 2
    for i, u in enumerate(regs):
        for v in regs[i + 1:]:
            if g.adj[u] & g.adj[v]:
                return ClaimOutcome(VIOLATION, f"regular {u} and {v} share a neighbour")
    return _status(applied, None)


def _distance_three_is_yes(inst: _Instance) -> ClaimOutcome:
    dist = inst.g.distance_matrix
    regs = list(bits(inst.reg))
    for i, u in enumerate(regs):
        for v in regs[i + 1:]:
            if dist[u][v] <= 3:
                if inst.no_instance:
                    return ClaimOutcome(VIOLATION, f"regular {u},{v} at distance {dist[u][v]} in a no-instance")
                return _status(True, None)
    return _status(False, None)


def _neighbourhood_shift(inst: _Instance, max_choices: int = 64) -> ClaimOutcome:
    g = inst.g
    applied = False
    for tup in far_tuples(g, bits(inst.reg), inst.k + 1):
        removed = 0
        for c in tup:
            removed |= g.closed[c]
        choices = list(product(*(tuple(bits(g.adj[c])) for c in tup)))[:max_choices]
        for d in inst.min_ds:
            for bs in choices:
                applied = True
                shifted = (d & ~removed) | mask_of(bs)
                if not is_dominating_mask(g, shifted) or shifted.bit_count() > d.bit_count():
                    return ClaimOutcome(
                        VIOLATION, f"shift of D={sorted(bits(d))} by {tup}->{bs} is not a minimum dominating set"
                    )
    return _status(applied, None)


# -- conditional bounds on no-instances ---------------------------------------


def _private_in(inst: _Instance, d: int, u: int, region: int) -> int:
    return private_neighbours_mask(inst.g, d, u) & region


def _only_one_pn_in_c(inst: _Instance) -> ClaimOutcome:
    bound = inst.k * inst.a_size
    applied = False
    for d in inst.min_ds:
        bd = d & inst.b
        if any(_private_in(inst, d, b0, inst.c).bit_count() >= 2 for b0 in bits(bd)):
            applied = True
            if bd.bit_count() > bound:
                return ClaimOutcome(VIOLATION, f"|B & D| = {bd.bit_count()} > {bound}")
    return _status(applied, None)


def _shared_responsibilities(inst: _Instance) -> ClaimOutcome:
    g = inst.g
    bound = inst.k * inst.a_size - 1
    applied = False
    for d in inst.min_ds:
        bd = d & inst.b
        for c in bits(inst.c):
            if (g.adj[c] & d).bit_count() >= 2:
                applied = True
                missed = (bd & ~g.adj[c]).bit_count()
                if missed > bound:
                    return ClaimOutcome(VIOLATION, f"c={c} misses {missed} > {bound} vertices of B & D")
    return _status(applied, None)


def _few_without_pn(inst: _Instance) -> ClaimOutcome:
    bound = (inst.k + 1) * inst.a_size - 1
    applied = False
    for d in inst.min_ds:
        bd = d & inst.b
        without = sum(1 for b0 in bits(bd) if not _private_in(inst, d, b0, inst.c))
        if without >= inst.a_size:
            applied = True
            if bd.bit_count() > bound:
                return ClaimOutcome(VIOLATION, f"|B & D| = {bd.bit_count()} > {bound}")
    return _status(applied, None)


def _b_cap_d_small(inst: _Instance) -> ClaimOutcome:
    g = inst.g
    bound = (inst.k + 1) * inst.a_size
    applied = False
    for d in inst.min_ds:
        bd = d & inst.b
        for v in bits(bd):
            pn = private_neighbours_mask(g, d, v)
            pn_c = pn & inst.c
            pn_open = pn & g.adj[v]
            if any(pn_open & ~g.closed[c] for c in bits(pn_c)):
                applied = True
                if bd.bit_count() > bound:
                    return ClaimOutcome(VIOLATION, f"|B & D| = {bd.bit_count()} > {bound}")
    return _status(applied, None)


def _most_in_c(inst: _Instance) -> ClaimOutcome:
    bound = (inst.k + 2) * inst.a_size
    if any((d & ~inst.c).bit_count() <= bound for d in inst.min_ds):
        return _status(True, None)
    return ClaimOutcome(VIOLATION, f"every minimum dominating set has more than {bound} vertices outside C")


def _max_far_subset(g: Graph, vertices: int, min_dist: int) -> int:
    dist = g.distance_matrix
    vs = list(bits(vertices))
    best = 0

    def grow(chosen: list[int], start: int) -> None:
        nonlocal best
        best = max(best, len(chosen))
        for i in range(start, len(vs)):
            v = vs[i]
            if all(dist[v][u] >= min_dist for u in chosen):
                grow(chosen + [v], i + 1)

    grow([], 0)
    return best


def _most_neighbourhoods_cliques(inst: _Instance) -> ClaimOutcome:
    g = inst.g
    bound = (inst.k + 1) ** 2 - 1
    applied = False
    for d in inst.min_ds:
        spread = mask_of(c for c in bits(d & inst.c) if not is_clique_mask(g, g.adj[c]))
        if spread:
            applied = True
            size = _max_far_subset(g, spread, 3)
            if size > bound:
                return ClaimOutcome(VIOLATION, f"{size} > {bound} far non-clique vertices of C & D")
    return _status(applied, None)


def _almost_all_distance_three(inst: _Instance) -> ClaimOutcome:
    dist = inst.g.distance_matrix
    bound = 2 * inst.a_size + (inst.k + 1) ** 2 - 3
    for d in inst.min_ds:
        cd = list(bits(d & inst.c))
        close = sum(1 for u in cd if any(v != u and dist[u][v] == 2 for v in cd))
        if close > bound:
            return ClaimOutcome(VIOLATION, f"{close} > {bound} vertices of C & D at distance two from another")
    return _status(True, None)


def _most_regular(inst: _Instance) -> ClaimOutcome:
    bound = inst.ctx.f_k
    if any((d & ~inst.reg).bit_count() <= bound for d in inst.min_ds):
        return _status(True, None)
    return ClaimOutcome(VIOLATION, f"every minimum dominating set has more than {bound} non-regular vertices")


_UNCONDITIONAL = {
    "vertex_completeness": _vertex_completeness,
    "one_vertex_in_d_per_regular": _one_vertex_per_regular,
    "regular_no_common_neighbour": _no_common_neighbour,
    "regular_distance_three_is_yes": _distance_three_is_yes,
    "regular_neighbourhood_shift": _neighbourhood_shift,
}

_NO_INSTANCE = {
    "only_one_pn_in_c": _only_one_pn_in_c,
    "shared_responsibilities_distributed": _shared_responsibilities,
    "few_vertices_in_c_without_pn": _few_without_pn,
    "b_cap_d_is_small": _b_cap_d_small,
    "most_vertices_in_c": _most_in_c,
    "most_neighbourhoods_are_cliques": _most_neighbourhoods_cliques,
    "almost_all_are_distance_three": _almost_all_distance_three,
    "most_vertices_are_regular": _most_regular,
}


def check_claims(g: Graph, k: int) -> dict[str, ClaimOutcome]:
    """Evaluate every claim on a connected ``P3+kP2``-free graph."""
    vacuous = {name: ClaimOutcome(VACUOUS) for name in CLAIMS}
    if g.n < 3 or find_induced_mask(g, PatternSpec.p3_plus(k - 1)) is None:
        return vacuous
    try:
        ctx = structural_context(g, k)
    except StructuralViolation as exc:
        out = dict(vacuous)
        out["partition_and_stable_c"] = ClaimOutcome(VIOLATION, str(exc))
        return out
    covered = mask_of(ctx.a) | mask_of(ctx.b) | mask_of(ctx.c)
    parts_ok = covered == g.full and not (ctx.a & ctx.b or ctx.a & ctx.c or ctx.b & ctx.c)
    out = {"partition_and_stable_c": _status(True, None if parts_ok else "A, B, C do not partition V")}

    no_instance = not decide_bruteforce(g).answer
    min_ds = [mask_of(d) for d in enumerate_min_ds(g)]
    inst = _Instance(g, ctx, no_instance, min_ds)
    for name, fn in _UNCONDITIONAL.items():
        out[name] = fn(inst)
    for name, fn in _NO_INSTANCE.items():
        out[name] = fn(inst) if no_instance else ClaimOutcome(VACUOUS)
    return out


def tally(items: Iterable[tuple[int, Graph]], k: int) -> ClaimTally:
    t = ClaimTally()
    for index, g in items:
        t.add(index, check_claims(g, k), [list(e) for e in g.edges])
    return t
