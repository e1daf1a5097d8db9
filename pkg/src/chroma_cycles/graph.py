"""Simple undirected graphs, derived digraphs and named constructors.

Vertices are always the dense integers ``0..n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_N = 64


@dataclass(frozen=True, order=True)
class Edge:
    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError(f"loop at vertex {self.u} is not an edge")
        if self.u > self.v:
            lo, hi = self.v, self.u
            object.__setattr__(self, "u", lo)
            object.__setattr__(self, "v", hi)

    def __iter__(self) -> Iterator[int]:
        yield self.u
        yield self.v

    def __str__(self) -> str:
        return f"{self.u},{self.v}"


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "_adj", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a},{b}) out of range for n={n}")
            adj[a].add(b)
            adj[b].add(a)
        self.n = n
        self._adj = tuple(frozenset(s) for s in adj)
        self._m = sum(len(s) for s in adj) // 2

    @property
    def m(self) -> int:
        return self._m

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._adj[u]

    def edges(self) -> list[Edge]:
        """All edges, sorted."""
        return [Edge(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    def adjacency_matrix(self) -> list[list[int]]:
        return [[int(v in self._adj[u]) for v in range(self.n)] for u in range(self.n)]

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled in increasing order of the kept vertices."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        return Graph(len(keep), [(index[u], index[v]) for u, v in self.edges() if u in index and v in index])

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Digraph:
    """Directed graph on ``0..n-1`` without loops."""

    __slots__ = ("n", "_out", "_in")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        out: list[set[int]] = [set() for _ in range(n)]
        inn: list[set[int]] = [set() for _ in range(n)]
        for a, b in arcs:
            if a == b:
                raise ValueError(f"loop arc at vertex {a}")
            out[a].add(b)
            inn[b].add(a)
        self.n = n
        self._out = tuple(frozenset(s) for s in out)
        self._in = tuple(frozenset(s) for s in inn)

    def successors(self, v: int) -> frozenset[int]:
        return self._out[v]

    def predecessors(self, v: int) -> frozenset[int]:
        return self._in[v]

    def has_arc(self, u: int, v: int) -> bool:
        return v in self._out[u]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self._out[u])]

    def __len__(self) -> int:
        return sum(len(s) for s in self._out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Digraph) and self.n == other.n and self._out == other._out

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self)})"


def as_edge(g: Graph, e) -> Edge:
    edge = e if isinstance(e, Edge) else Edge(*e)
    if not g.has_edge(edge.u, edge.v):
        raise ValueError(f"({edge.u},{edge.v}) is not an edge of the graph")
    return edge


def edge_deleted(g: Graph, e) -> Graph:
    """The graph ``g - e``; ``e`` must be an edge of ``g``."""
    edge = as_edge(g, e)
    return Graph(g.n, [(a, b) for a, b in g.edges() if Edge(a, b) != edge])


# -- named graphs ---------------------------------------------------------


def complete(k: int) -> Graph:
    return Graph(k, combinations(range(k), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least 1 vertex")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise ValueError("part sizes must be non-negative")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def wheel(n: int) -> Graph:
    """C_n on ``0..n-1`` plus a hub ``n`` adjacent to every rim vertex."""
    rim = cycle(n)
    return Graph(n + 1, [*rim.edges(), *((i, n) for i in range(n))])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def circular_clique(k: int, d: int) -> Graph:
    """K_{k:d}: vertices Z_k, ``i ~ j`` iff ``d <= (j - i) mod k <= k - d``."""
    if d < 1 or k < 2 * d:
        raise ValueError(f"circular clique needs d >= 1 and k >= 2d, got k={k}, d={d}")
    return Graph(k, [(i, j) for i, j in combinations(range(k), 2) if d <= (j - i) % k <= k - d])


def mycielskian(g: Graph) -> Graph:
    n = g.n
    edges = [tuple(e) for e in g.edges()]
    for u, v in g.edges():
        edges.append((u, n + v))
        edges.append((v, n + u))
    edges.extend((n + i, 2 * n) for i in range(n))
    return Graph(2 * n + 1, edges)


def grotzsch() -> Graph:
    return mycielskian(cycle(5))


def toft() -> Graph:
    """K_{5,5} on parts {0..4}, {5..9}; 5-cycles on {10..14} and {15..19}.

    Each part is matched to one 5-cycle by ``i <-> i + 10``.
    """
    edges = list(complete_bipartite(5, 5).edges())
    for base in (10, 15):
        edges.extend((base + i, base + (i + 1) % 5) for i in range(5))
    edges.extend((i, i + 10) for i in range(10))
    return Graph(20, [tuple(e) for e in edges])


_NAMED = {
    "complete": (complete, 1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "wheel": (wheel, 1),
    "petersen": (petersen, 0),
    "circular_clique": (circular_clique, 2),
    "grotzsch": (grotzsch, 0),
    "toft": (toft, 0),
}

NAMED_GRAPHS = tuple(_NAMED)


def make_named(name: str, params: Iterable[int] = ()) -> Graph:
    """Build a named graph; ``name`` may use hyphens or underscores."""
    key = name.strip().lower().replace("-", "_")
    if key not in _NAMED:
        raise ValueError(f"unknown graph name {name!r}; known: {', '.join(NAMED_GRAPHS)}")
    ctor, arity = _NAMED[key]
    params = [int(p) for p in params]
    if len(params) != arity:
        raise ValueError(f"{key} takes {arity} parameter(s), got {len(params)}")
    return ctor(*params)


def parse_named(spec: str) -> Graph:
    """Parse ``name[:p1[:p2]]``, e.g. ``complete:5`` or ``circular-clique:7:3``."""
    name, *params = spec.split(":")
    try:
        values = [int(p) for p in params]
    except ValueError:
        raise ValueError(f"non-integer parameter in {spec!r}") from None
    return make_named(name, values)
