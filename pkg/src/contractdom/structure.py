"""Induced linear forests and the distance layering around a fixed copy.

A ``StructuralContext`` records, for a parameter ``k`` and an induced copy
``A`` of ``P3 + (k-1)P2``: the vertices at distance one (``B``) and two
(``C``) from ``A``, the members of ``C`` whose neighbourhood is a clique,
the regular vertices among those, and the cardinality bound ``f(k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

from contractdom.graph import (
    UNREACHABLE,
    Graph,
    bits,
    distance_from_set,
    is_clique_mask,
    is_stable_mask,
    mask_of,
    set_of,
)


class StructuralViolation(RuntimeError):
    """A structural precondition failed (e.g. a vertex at distance >= 3 from ``A``)."""


@dataclass(frozen=True)
class PatternSpec:
    """A linear forest given by its path orders, largest first.

    ``PatternSpec.p3_plus(j)`` is ``P3 + j*P2``.
    """

    paths: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.paths or any(p < 1 for p in self.paths):
            raise ValueError("a linear forest needs at least one path of order >= 1")
        object.__setattr__(self, "paths", tuple(sorted(self.paths, reverse=True)))

    @classmethod
    def p3_plus(cls, j: int) -> PatternSpec:
        if j < 0:
            raise ValueError("j must be non-negative")
        return cls((3,) + (2,) * j)

    @property
    def order(self) -> int:
        return sum(self.paths)

    def __str__(self) -> str:
        parts = []
        for p in sorted(set(self.paths), reverse=True):
            c = self.paths.count(p)
            parts.append(f"P{p}" if c == 1 else f"{c}P{p}")
        return "+".join(parts)


def _is_path_mask(g: Graph, s: int, order: int) -> bool:
    """``G[s]`` is an induced path on ``order`` vertices."""
    if order == 1:
        return True
    ends = 0
    edge_ends = 0
    for v in bits(s):
        d = (g.adj[v] & s).bit_count()
        if d == 0 or d > 2:
            return False
        if d == 1:
            ends += 1
        edge_ends += d
    # Connected with n-1 edges and two leaves; degree <= 2 rules out cycles
    # once the edge count is n-1.
    return ends == 2 and edge_ends == 2 * (order - 1) and _connected_within(g, s)


def _connected_within(g: Graph, s: int) -> bool:
    start = s & -s
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & s & ~seen
        seen |= frontier
    return seen == s


def _induced_paths(g: Graph, avail: int, order: int) -> Iterator[tuple[int, int]]:
    """Yield ``(mask, min_vertex)`` for induced ``P_order`` copies inside ``avail``, lexicographically."""
    verts = list(bits(avail))
    if order == 2:
        for u in verts:
            for v in bits(g.adj[u] & avail & ~((2 << u) - 1)):
                yield (1 << u) | (1 << v), u
        return
    for combo in combinations(verts, order):
        m = mask_of(combo)
        if _is_path_mask(g, m, order):
            yield m, combo[0]


def find_induced_mask(g: Graph, p: PatternSpec) -> Optional[int]:
    closed = g.closed
    paths = p.paths

    def extend(i: int, avail: int, chosen: int, prev_min: int) -> Optional[int]:
        if i == len(paths):
            return chosen
        same = i > 0 and paths[i] == paths[i - 1]
        for m, lo in _induced_paths(g, avail, paths[i]):
            if same and lo <= prev_min:
                continue
            blocked = 0
            for v in bits(m):
                blocked |= closed[v]
            found = extend(i + 1, avail & ~blocked, chosen | m, lo)
            if found is not None:
                return found
        return None

    if p.order > g.n:
        return None
    return extend(0, g.full, 0, -1)


def find_induced(g: Graph, p: PatternSpec) -> Optional[frozenset[int]]:
    """First induced copy of the linear forest ``p`` (deterministic order), or ``None``."""
    m = find_induced_mask(g, p)
    return None if m is None else set_of(m)


def _has_induced_matching(g: Graph, avail: int, j: int) -> bool:
    if j == 0:
        return True
    closed, adj = g.closed, g.adj
    for u in bits(avail):
        above = ~((2 << u) - 1)
        for w in bits(adj[u] & avail & above):
            if _has_induced_matching(g, avail & ~(closed[u] | closed[w]) & above, j - 1):
                return True
    return False


def _contains_p3_plus(g: Graph, j: int) -> bool:
    """Existence of an induced ``P3 + j*P2``, enumerating P3s by their centre."""
    closed, adj, full = g.closed, g.adj, g.full
    for v in range(g.n):
        nb = adj[v]
        for a in bits(nb):
            for b in bits(nb & ~adj[a] & ~((2 << a) - 1)):
                rest = full & ~(closed[v] | closed[a] | closed[b])
                if _has_induced_matching(g, rest, j):
                    return True
    return False


def is_free(g: Graph, p: PatternSpec) -> bool:
    """True iff ``G`` has no induced copy of ``p``."""
    if p.paths[0] == 3 and all(q == 2 for q in p.paths[1:]):
        return not _contains_p3_plus(g, len(p.paths) - 1)
    return find_induced_mask(g, p) is None


def induces_pattern(g: Graph, s: Iterable[int], p: PatternSpec) -> bool:
    """True iff ``G[s]`` is isomorphic to the linear forest ``p``."""
    m = mask_of(s)
    if m.bit_count() != p.order:
        return False
    comps = []
    rest = m
    while rest:
        start = rest & -rest
        seen = frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & m & ~seen
            seen |= frontier
        rest &= ~seen
        if not _is_path_mask(g, seen, seen.bit_count()):
            return False
        comps.append(seen.bit_count())
    return tuple(sorted(comps, reverse=True)) == p.paths


# -- distance layering ------------------------------------------------------


def f_bound(k: int, a_size: int) -> int:
    """Cardinality bound ``2(|A| + (k+1)^2) + (k+2)|A| + k - 4``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return 2 * (a_size + (k + 1) ** 2) + (k + 2) * a_size + k - 4


@dataclass(frozen=True)
class StructuralContext:
    k: int
    a: frozenset[int]
    b: frozenset[int]
    c: frozenset[int]
    clique_c: frozenset[int]
    regular: frozenset[int]
    f_k: int

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "A": sorted(self.a),
            "B": sorted(self.b),
            "C": sorted(self.c),
            "clique_C": sorted(self.clique_c),
            "regular": sorted(self.regular),
            "f": self.f_k,
        }


def partition_abc(g: Graph, a: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Vertices at distance exactly one (``B``) and two (``C``) from ``A``.

    Raises :class:`StructuralViolation` if some vertex is farther away, which
    cannot happen for a connected ``P3+kP2``-free graph and a copy ``A`` of
    ``P3+(k-1)P2``.
    """
    am = mask_of(a)
    if not am:
        raise StructuralViolation("A is empty")
    dist = distance_from_set(g, am)
    b = c = 0
    for v, d in enumerate(dist):
        if d == 1:
            b |= 1 << v
        elif d == 2:
            c |= 1 << v
        elif d == UNREACHABLE or d >= 3:
            raise StructuralViolation(
                f"vertex {v} is at distance {'inf' if d == UNREACHABLE else d} from A; "
                "the graph is not P3+kP2-free for this A"
            )
    return set_of(b), set_of(c)


def clique_neighbourhood_set(g: Graph, c: Iterable[int]) -> frozenset[int]:
    """Members of ``c`` whose open neighbourhood is a clique."""
    return frozenset(v for v in c if is_clique_mask(g, g.adj[v]))


def _far_graph(g: Graph, vertices: Iterable[int], min_dist: int = 4) -> dict[int, int]:
    dist = g.distance_matrix
    vs = sorted(vertices)
    far = {v: 0 for v in vs}
    for i, u in enumerate(vs):
        for w in vs[i + 1:]:
            d = dist[u][w]
            if d == UNREACHABLE or d >= min_dist:
                far[u] |= 1 << w
                far[w] |= 1 << u
    return far


def _cliques_from(far: dict[int, int], cand: int, size: int, chosen: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if size == 0:
        yield chosen
        return
    for v in bits(cand):
        yield from _cliques_from(far, cand & far[v] & ~((2 << v) - 1), size - 1, chosen + (v,))


def regular_vertices(g: Graph, clique_c: Iterable[int], k: int) -> frozenset[int]:
    """Vertices of ``clique_c`` lying in ``k+1`` members pairwise at distance >= 4.

    Exact clique search in the "distance at least four" graph on ``clique_c``.
    """
    far = _far_graph(g, clique_c)
    out = set()
    for v in far:
        if v in out:
            continue
        tup = next(_cliques_from(far, far[v], k, (v,)), None)
        if tup is not None:
            out.update(tup)
    return frozenset(out)


def far_tuples(g: Graph, vertices: Iterable[int], size: int) -> Iterator[tuple[int, ...]]:
    """All increasing ``size``-tuples of ``vertices`` pairwise at distance >= 4."""
    far = _far_graph(g, vertices)
    yield from _cliques_from(far, mask_of(far), size, ())


def structural_context(g: Graph, k: int, a: Optional[Iterable[int]] = None) -> StructuralContext:
    """Compute the layering for parameter ``k``.

    When ``a`` is omitted the first induced ``P3+(k-1)P2`` found is used.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    pattern = PatternSpec.p3_plus(k - 1)
    if a is None:
        a = find_induced(g, pattern)
        if a is None:
            raise StructuralViolation(f"graph has no induced {pattern}")
    a = frozenset(a)
    if not induces_pattern(g, a, pattern):
        raise StructuralViolation(f"A does not induce {pattern}")
    b, c = partition_abc(g, a)
    if not is_stable_mask(g, mask_of(c)):
        raise StructuralViolation("C is not a stable set; the graph is not P3+kP2-free")
    cc = clique_neighbourhood_set(g, c)
    reg = regular_vertices(g, cc, k)
    return StructuralContext(k, a, b, c, cc, reg, f_bound(k, len(a)))
