"""Exact minimum dominating sets.

The workhorse is :func:`min_dominating_mask`, a branch-and-bound search that
branches on the possible dominators of the most constrained undominated
vertex.  Public wrappers return the lexicographically smallest optimum (as a
sorted vertex list) so that witnesses are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from contractdom.graph import (
    Edge,
    Graph,
    bits,
    dominated_by,
    is_dominating_mask,
    mask_of,
    require_connected,
    set_of,
)


@dataclass(frozen=True)
class DominationResult:
    gamma: int
    witness: frozenset[int]

    def as_list(self) -> list[int]:
        return sorted(self.witness)


def _greedy(g: Graph, dom: int, allowed: int) -> Optional[int]:
    """Greedy completion of a partial solution; ``None`` if ``allowed`` cannot finish."""
    picked = 0
    while dom != g.full:
        undom = g.full & ~dom
        best_v, best_gain = -1, 0
        for v in bits(allowed & ~picked):
            gain = (g.closed[v] & undom).bit_count()
            if gain > best_gain:
                best_v, best_gain = v, gain
        if best_v < 0:
            return None
        picked |= 1 << best_v
        dom |= g.closed[best_v]
    return picked


def min_dominating_mask(
    g: Graph, forced: int = 0, allowed: Optional[int] = None, cap: Optional[int] = None
) -> Optional[int]:
    """Minimum dominating set ``D`` with ``forced <= D <= forced | allowed``.

    Returns the bitmask of one optimal ``D``, or ``None`` when no such set has
    at most ``cap`` vertices (or none exists at all).
    """
    closed = g.closed
    full = g.full
    if allowed is None:
        allowed = full
    allowed &= ~forced
    base = forced.bit_count()
    dom0 = dominated_by(g, forced)

    limit = (g.n if cap is None else cap) + 1
    best_size = limit
    best_mask: Optional[int] = None

    greedy = _greedy(g, dom0, allowed)
    if greedy is not None and base + greedy.bit_count() < best_size:
        best_size = base + greedy.bit_count()
        best_mask = forced | greedy

    def search(chosen: int, size: int, dom: int, avail: int) -> None:
        nonlocal best_size, best_mask
        if dom == full:
            if size < best_size:
                best_size, best_mask = size, chosen
            return
        if size + 1 >= best_size:
            return
        undom = full & ~dom
        # Each new vertex dominates at most max_gain undominated vertices.
        max_gain = 0
        pivot, pivot_opts = -1, g.n + 1
        for v in bits(avail):
            gain = (closed[v] & undom).bit_count()
            if gain > max_gain:
                max_gain = gain
        if max_gain == 0:
            return
        need = -(-undom.bit_count() // max_gain)
        if size + need >= best_size:
            return
        for w in bits(undom):
            opts = (closed[w] & avail).bit_count()
            if opts < pivot_opts:
                pivot, pivot_opts = w, opts
                if opts <= 1:
                    break
        if pivot_opts == 0:
            return
        cands = closed[pivot] & avail
        for c in bits(cands):
            search(chosen | (1 << c), size + 1, dom | closed[c], avail)
            avail &= ~(1 << c)

    search(forced, base, dom0, allowed)
    return best_mask


def lexmin_dominating_mask(g: Graph, size: int, forced: int = 0, allowed: Optional[int] = None) -> Optional[int]:
    """Lexicographically smallest dominating set of exactly ``size`` vertices.

    Restricted to sets ``forced <= D <= forced | allowed``; ``size`` must be
    the optimum for that restriction.
    """
    if allowed is None:
        allowed = g.full
    allowed &= ~forced
    chosen = forced
    if min_dominating_mask(g, chosen, allowed, size) is None:
        return None
    undecided = allowed
    for v in bits(allowed):
        if chosen.bit_count() == size:
            break
        undecided &= ~(1 << v)
        trial = chosen | (1 << v)
        if min_dominating_mask(g, trial, undecided, size) is not None:
            chosen = trial
    if not is_dominating_mask(g, chosen):
        raise AssertionError("lexmin reconstruction lost feasibility")
    return chosen


def gamma_value(g: Graph, forced: int = 0, cap: Optional[int] = None) -> Optional[int]:
    """Optimum size only (no witness reconstruction); ``None`` if above ``cap``."""
    m = min_dominating_mask(g, forced, None, cap)
    return None if m is None else m.bit_count()


def gamma(g: Graph, cap: Optional[int] = None) -> Optional[DominationResult]:
    """Domination number with the lexicographically smallest minimum dominating set.

    Returns ``None`` when ``cap`` is given and the domination number exceeds it.
    Raises :class:`~contractdom.graph.DisconnectedGraphError` on disconnected input.
    """
    return gamma_forced(g, (), cap)


def gamma_forced(g: Graph, forced: Iterable[int], cap: Optional[int] = None) -> Optional[DominationResult]:
    """Minimum dominating set among those containing every vertex of ``forced``."""
    require_connected(g)
    f = mask_of(forced)
    if f & ~g.full:
        raise ValueError("forced set contains vertices outside the graph")
    best = min_dominating_mask(g, f, None, cap)
    if best is None:
        return None
    size = best.bit_count()
    witness = lexmin_dominating_mask(g, size, f)
    return DominationResult(size, set_of(witness))


def gamma_exhaustive(g: Graph) -> int:
    """Domination number by plain subset enumeration (test oracle)."""
    if g.n == 0:
        return 0
    for size in range(1, g.n + 1):
        for combo in combinations(range(g.n), size):
            if is_dominating_mask(g, mask_of(combo)):
                return size
    raise AssertionError("unreachable: V(G) always dominates")


def enumerate_min_ds(g: Graph) -> list[frozenset[int]]:
    """Every minimum dominating set, in lexicographic order (small ``n`` only)."""
    require_connected(g)
    size = gamma_value(g)
    return [frozenset(c) for c in combinations(range(g.n), size) if is_dominating_mask(g, mask_of(c))]


def private_neighbours_mask(g: Graph, d: int, u: int) -> int:
    out = 0
    ubit = 1 << u
    for v in bits(g.closed[u]):
        if g.closed[v] & d == ubit:
            out |= 1 << v
    return out


def private_neighbours(g: Graph, d: Iterable[int], u: int) -> frozenset[int]:
    """Vertices ``v`` with ``N[v] & D == {u}``; may include ``u`` itself."""
    dm = mask_of(d)
    if not dm >> u & 1:
        raise ValueError(f"vertex {u} is not in the dominating set")
    return set_of(private_neighbours_mask(g, dm, u))


def has_nonstable_min_ds(g: Graph) -> Optional[tuple[Edge, frozenset[int]]]:
    """First edge (lexicographically) lying inside some minimum dominating set.

    Returns the edge and the lexicographically smallest minimum dominating set
    containing it, or ``None`` when every minimum dominating set is stable.
    """
    require_connected(g)
    if g.m == 0:
        return None
    target = gamma_value(g)
    for u, v in g.edges:
        f = (1 << u) | (1 << v)
        if min_dominating_mask(g, f, None, target) is not None:
            return (u, v), set_of(lexmin_dominating_mask(g, target, f))
    return None
