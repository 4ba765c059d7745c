"""Instance factories for tests and cross-check corpora.

Random streams use numpy's PCG64 bit generator seeded through
``SeedSequence``; instance ``i`` of a spec draws from child ``i`` of the
spec's seed sequence, so streams are reproducible and can be split across
workers without changing their content.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Iterator, Optional

import numpy as np

from contractdom.graph import Graph, bits, format_edge_list, from_edge_list, is_connected
from contractdom.structure import PatternSpec, is_free

RNG_ALGORITHM = "numpy.PCG64/SeedSequence"
DEFAULT_BUDGET = 10_000
EXHAUSTIVE_MAX_N = 6
FAMILIES = ("path", "cycle", "complete", "star", "complete_bipartite")
_FAMILY_MIN = {"path": 1, "cycle": 3, "complete": 1, "star": 2, "complete_bipartite": 2}


def named(family: str, n: int, m: Optional[int] = None) -> Graph:
    """Standard families. ``star`` has centre 0 and ``n`` vertices in total;
    ``complete_bipartite`` is ``K_{n,m}`` (``m`` defaults to ``n``) with the
    ``n`` side first.
    """
    if family not in _FAMILY_MIN:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    lo = _FAMILY_MIN[family]
    if family == "complete_bipartite":
        m = n if m is None else m
        if n < 1 or m < 1:
            raise ValueError("complete_bipartite needs both sides non-empty")
        return from_edge_list(n + m, [(i, n + j) for i in range(n) for j in range(m)])
    if n < lo:
        raise ValueError(f"{family} needs at least {lo} vertices")
    if family == "path":
        return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])
    if family == "cycle":
        return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])
    if family == "complete":
        return from_edge_list(n, combinations(range(n), 2))
    return from_edge_list(n, [(0, i) for i in range(1, n)])


_CHUNK = 7


def _pair_tables(n: int, pairs: list[tuple[int, int]]) -> list[list[int]]:
    """Per 7-bit chunk of the pair mask, the packed adjacency it contributes.

    Row ``v`` of the packed word occupies bits ``8v .. 8v+7``.
    """
    tables = []
    for start in range(0, len(pairs), _CHUNK):
        chunk = pairs[start:start + _CHUNK]
        table = []
        for sub in range(1 << len(chunk)):
            word = 0
            for i, (u, v) in enumerate(chunk):
                if sub >> i & 1:
                    word |= (1 << (8 * u + v)) | (1 << (8 * v + u))
            table.append(word)
        tables.append(table)
    return tables


def exhaustive_connected(n: int, *, allow_large: bool = False) -> Iterator[Graph]:
    """Every connected labelled graph on ``n`` vertices, in edge-mask order.

    Bit ``i`` of the mask is the ``i``-th pair of ``combinations(range(n), 2)``.
    ``n = 7`` (two million masks) requires ``allow_large=True``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > 7 or (n > EXHAUSTIVE_MAX_N and not allow_large):
        raise ValueError(f"exhaustive enumeration at n={n} needs allow_large=True (max 7)")
    pairs = list(combinations(range(n), 2))
    tables = _pair_tables(n, pairs)
    shifts = [8 * v for v in range(n)]
    full = (1 << n) - 1
    lowmask = (1 << _CHUNK) - 1
    for mask in range(1 << len(pairs)):
        # A connected graph has at least n-1 edges.
        if mask.bit_count() < n - 1:
            continue
        word = 0
        rest = mask
        for table in tables:
            word |= table[rest & lowmask]
            rest >>= _CHUNK
        adj = tuple((word >> s) & 255 for s in shifts)
        seen = frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        if seen == full:
            yield Graph._trusted(n, adj)


def _rng(seed: int, index: int) -> np.random.Generator:
    child = np.random.SeedSequence(seed).spawn(index + 1)[index]
    return np.random.Generator(np.random.PCG64(child))


def _gnp(rng: np.random.Generator, n: int, p: float, pairs: list[tuple[int, int]]) -> Graph:
    draws = rng.random(len(pairs))
    return from_edge_list(n, [e for e, x in zip(pairs, draws) if x < p])


def random_connected(n: int, p: float, seed: int, index: int = 0, budget: int = DEFAULT_BUDGET) -> Optional[Graph]:
    """First connected ``G(n, p)`` draw from the stream ``(seed, index)``."""
    rng = _rng(seed, index)
    pairs = list(combinations(range(n), 2))
    for _ in range(budget):
        g = _gnp(rng, n, p, pairs)
        if is_connected(g):
            return g
    return None


def random_free_connected(
    n: int, p: float, k: int, seed: int, index: int = 0, budget: int = DEFAULT_BUDGET
) -> Optional[Graph]:
    """Rejection-sample a connected ``P3+kP2``-free ``G(n, p)`` graph.

    Returns ``None`` if ``budget`` draws are exhausted.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    return _sample_free(n, p, k, seed, index, budget)[0]


def _sample_free(n: int, p: float, k: int, seed: int, index: int, budget: int) -> tuple[Optional[Graph], int]:
    rng = _rng(seed, index)
    pairs = list(combinations(range(n), 2))
    pattern = PatternSpec.p3_plus(k)
    for attempt in range(1, budget + 1):
        g = _gnp(rng, n, p, pairs)
        if is_connected(g) and is_free(g, pattern):
            return g, attempt
    return None, budget


@dataclass(frozen=True)
class GeneratorSpec:
    """Description of a corpus.

    ``kind`` is one of ``named``, ``exhaustive``, ``random-gnp``,
    ``random-free``.  For random kinds ``n`` is the largest order and
    instances cycle through orders ``n_min..n``.
    """

    kind: str
    n: int
    p: float = 0.5
    k: int = 1
    seed: int = 0
    count: int = 1
    family: str = "path"
    n_min: Optional[int] = None
    allow_large: bool = False
    budget: int = DEFAULT_BUDGET

    def to_dict(self) -> dict:
        return asdict(self)

    def label(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class CorpusItem:
    index: int
    graph: Graph
    free_checked: bool
    attempts: int = 1


def generate(spec: GeneratorSpec) -> Iterator[CorpusItem]:
    """Materialise the stream described by ``spec``.

    For ``exhaustive`` all orders ``n_min..n`` are enumerated (``count`` is
    ignored).  For ``random-free`` every output is checked free of
    ``P3 + k*P2``; draws that exhaust the budget are skipped.
    """
    if spec.kind == "named":
        yield CorpusItem(0, named(spec.family, spec.n), False)
        return
    lo = spec.n if spec.n_min is None else spec.n_min
    if lo > spec.n or lo < 1:
        raise ValueError("need 1 <= n_min <= n")
    if spec.kind == "exhaustive":
        idx = 0
        for order in range(lo, spec.n + 1):
            for g in exhaustive_connected(order, allow_large=spec.allow_large):
                yield CorpusItem(idx, g, False)
                idx += 1
        return
    orders = list(range(lo, spec.n + 1))
    for i in range(spec.count):
        order = orders[i % len(orders)]
        if spec.kind == "random-gnp":
            g = random_connected(order, spec.p, spec.seed, i, spec.budget)
            if g is not None:
                yield CorpusItem(i, g, False)
        elif spec.kind == "random-free":
            g, tries = _sample_free(order, spec.p, spec.k, spec.seed, i, spec.budget)
            if g is not None:
                yield CorpusItem(i, g, True, tries)
        else:
            raise ValueError(f"unknown generator kind {spec.kind!r}")


def manifest_line(spec: GeneratorSpec, item: CorpusItem) -> str:
    """One JSONL corpus-manifest record."""
    g = item.graph
    rec = {
        "spec": {**spec.to_dict(), "rng": RNG_ALGORITHM},
        "index": item.index,
        "n": g.n,
        "m": g.m,
        "edges": [list(e) for e in g.edges],
        "free_checked": item.free_checked,
    }
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def parse_manifest_line(line: str) -> tuple[dict, Graph]:
    rec = json.loads(line)
    return rec, from_edge_list(rec["n"], rec["edges"])


def write_fixture(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
