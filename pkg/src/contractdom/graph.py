"""Immutable simple graphs backed by adjacency bitmasks.

Vertices are the dense ids ``0..n-1``.  Vertex sets cross the public API as
``frozenset[int]``; internally every set is an ``int`` bitmask so that the
solvers can intersect neighbourhoods with single machine operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]
VertexSet = frozenset

#: Marker stored in a distance matrix for pairs in different components.
UNREACHABLE = -1


class GraphError(ValueError):
    """Raised for malformed graph input or an invalid graph operation."""


class DisconnectedGraphError(GraphError):
    pass


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _bits_slow(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


_TABLE_BITS = 14
_BITS_TABLE = [tuple(_bits_slow(m)) for m in range(1 << _TABLE_BITS)]


def bits(mask: int) -> Iterable[int]:
    """Set bit positions of ``mask`` in increasing order."""
    if mask < (1 << _TABLE_BITS):
        return _BITS_TABLE[mask]
    return _bits_slow(mask)


def set_of(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


@dataclass(frozen=True, eq=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the bitmask of neighbours of ``v`` and ``closed[v]`` that of
    ``N[v]``.  Instances are immutable; the edge list and distance matrix are
    cached on first use.
    """

    n: int
    adj: tuple[int, ...]
    full: int = field(init=False, repr=False, compare=False)
    closed: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._derive()
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, a in enumerate(self.adj):
            if a & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if a >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for w in bits(a):
                if not self.adj[w] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        return from_edge_list(n, edges)

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> Graph:
        # Skips validation; only for callers that build symmetric loop-free masks.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        g._derive()
        return g

    def _derive(self) -> None:
        object.__setattr__(self, "full", (1 << self.n) - 1)
        object.__setattr__(self, "closed", tuple(a | (1 << v) for v, a in enumerate(self.adj)))

    # -- basic accessors --------------------------------------------------

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        out = []
        for u, a in enumerate(self.adj):
            for v in bits(a >> (u + 1) << (u + 1)):
                out.append((u, v))
        return tuple(out)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbours(self, v: int) -> frozenset[int]:
        return set_of(self.adj[v])

    def closed_neighbourhood(self, v: int) -> frozenset[int]:
        return set_of(self.closed[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @cached_property
    def distance_matrix(self) -> tuple[tuple[int, ...], ...]:
        return _all_pairs_bfs(self)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph on ``n`` vertices from ``(u, v)`` pairs.

    Duplicate edges (in either orientation) are merged.  Out-of-range ids and
    self-loops raise :class:`GraphError`.
    """
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    adj = [0] * n
    for e in edges:
        u, v = (int(x) for x in e)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``G[S]`` relabelled densely, plus the new-id -> old-id map."""
    order = tuple(sorted(set(vertices)))
    index = {v: i for i, v in enumerate(order)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return from_edge_list(len(order), edges), order


# -- contraction ----------------------------------------------------------


def contraction_map(n: int, e: Edge) -> tuple[int, ...]:
    """Old-id -> new-id map for contracting ``e`` in a graph on ``n`` vertices.

    The merged vertex keeps the smaller endpoint id; ids above the larger
    endpoint shift down by one.
    """
    u, v = sorted(e)
    return tuple(u if x == v else (x - 1 if x > v else x) for x in range(n))


def contract_edge(g: Graph, e: Edge) -> Graph:
    """Return ``G/e`` on ``n - 1`` vertices (see :func:`contraction_map`)."""
    u, v = sorted(e)
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    ub, vb = 1 << u, 1 << v
    low = vb - 1
    adj = []
    for x, a in enumerate(g.adj):
        if x == v:
            continue
        if x == u:
            a = (a | g.adj[v]) & ~(ub | vb)
        elif a & vb:
            a = (a & ~vb) | ub
        # Drop bit v and shift the higher ids down.
        adj.append((a & low) | ((a >> 1) & ~low))
    return Graph._trusted(g.n - 1, tuple(adj))


# -- distances and predicates ----------------------------------------------


def _bfs_layers(g: Graph, source_mask: int) -> list[int]:
    """Frontier bitmasks at distance 0, 1, 2, ... from ``source_mask``."""
    layers = []
    seen = source_mask
    frontier = source_mask
    while frontier:
        layers.append(frontier)
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return layers


def _all_pairs_bfs(g: Graph) -> tuple[tuple[int, ...], ...]:
    rows = []
    for s in range(g.n):
        row = [UNREACHABLE] * g.n
        for d, layer in enumerate(_bfs_layers(g, 1 << s)):
            for v in bits(layer):
                row[v] = d
        rows.append(tuple(row))
    return tuple(rows)


def distances(g: Graph) -> tuple[tuple[int, ...], ...]:
    """All-pairs hop distances; ``UNREACHABLE`` for disconnected pairs."""
    return g.distance_matrix


def distance_from_set(g: Graph, source: Iterable[int] | int) -> list[int]:
    """Distance from every vertex to the nearest vertex of ``source``."""
    src = source if isinstance(source, int) else mask_of(source)
    out = [UNREACHABLE] * g.n
    for d, layer in enumerate(_bfs_layers(g, src)):
        for v in bits(layer):
            out[v] = d
    return out


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    reach = 0
    for layer in _bfs_layers(g, 1):
        reach |= layer
    return reach == g.full


def is_clique_mask(g: Graph, s: int) -> bool:
    for v in bits(s):
        if (s & ~(1 << v)) & ~g.adj[v]:
            return False
    return True


def is_stable_mask(g: Graph, s: int) -> bool:
    for v in bits(s):
        if s & g.adj[v]:
            return False
    return True


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    return is_clique_mask(g, mask_of(s))


def is_stable(g: Graph, s: Iterable[int]) -> bool:
    return is_stable_mask(g, mask_of(s))


def dominated_by(g: Graph, d: int) -> int:
    """Bitmask of vertices in ``N[D]``."""
    out = 0
    for v in bits(d):
        out |= g.closed[v]
    return out


def is_dominating_mask(g: Graph, d: int) -> bool:
    return dominated_by(g, d) == g.full


def is_dominating(g: Graph, d: Iterable[int]) -> bool:
    """True iff every vertex outside ``D`` has a neighbour in ``D``."""
    return is_dominating_mask(g, mask_of(d))


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("input graph is not connected")


# -- edge-list text format --------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the ``"n m"`` header + ``m`` lines of ``"u v"`` interchange format.

    Blank lines and lines starting with ``#`` are skipped.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}") from None
    if not rows:
        raise GraphError("missing 'n m' header")
    (n, m), body = rows[0], rows[1:]
    if n < 1:
        raise GraphError("vertex count must be at least 1")
    if m != len(body):
        raise GraphError(f"header declares {m} edges but {len(body)} were given")
    return from_edge_list(n, body)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())
