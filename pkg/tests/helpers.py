"""Shared test helpers."""

import random
from itertools import combinations, permutations

from chroma_cycles.coloring import Coloring
from chroma_cycles.graph import Edge, Graph


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p])


def random_colored_instance(rng: random.Random, n: int, k: int, p: float = 0.5):
    """A graph, an edge ``e`` and a proper k-coloring of ``g - e`` with equal colors on ``e``."""
    while True:
        colors = [rng.randint(1, k) for _ in range(n)]
        same = [(i, j) for i, j in combinations(range(n), 2) if colors[i] == colors[j]]
        if same:
            break
    x, y = rng.choice(same)
    edges = [(i, j) for i, j in combinations(range(n), 2) if colors[i] != colors[j] and rng.random() < p]
    edges.append((x, y))
    return Graph(n, edges), Edge(x, y), Coloring.proper(colors, k)


def brute_cycles(g: Graph):
    """All simple cycles as frozensets of edges, by brute force over vertex sequences.

    Independent of the library's DFS: tries every cyclic arrangement of every
    vertex subset of size >= 3.
    """
    found = set()
    for size in range(3, g.n + 1):
        for subset in combinations(range(g.n), size):
            first, rest = subset[0], subset[1:]
            for order in permutations(rest):
                seq = (first, *order)
                if order[0] > order[-1]:
                    continue
                if all(g.has_edge(seq[i], seq[(i + 1) % size]) for i in range(size)):
                    found.add(frozenset(Edge(seq[i], seq[(i + 1) % size]) for i in range(size)))
    return found


def restricted_growth_strings(n: int):
    """Every assignment of colors to ``0..n-1`` up to renaming of colors."""
    if n == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(top + 2):
            prefix.append(c)
            yield from rec(prefix, max(top, c))
            prefix.pop()

    yield from rec([0], 0)


def brute_chromatic_number(g: Graph) -> int:
    """Fewest colors over all assignments (enumerated up to color renaming)."""
    edges = [tuple(e) for e in g.edges()]
    best = g.n
    for a in restricted_growth_strings(g.n):
        used = max(a) + 1
        if used < best and all(a[u] != a[v] for u, v in edges):
            best = used
    return best


def independent_proper_check(g: Graph, colors, k: int) -> bool:
    return all(1 <= c <= k for c in colors) and all(colors[u] != colors[v] for u, v in g.edges())


def independent_circular_check(g: Graph, colors, k: int, d: int) -> bool:
    def dist(a, b):
        t = abs(a - b) % k
        return min(t, k - t)

    return all(0 <= c < k for c in colors) and all(dist(colors[u], colors[v]) >= d for u, v in g.edges())
