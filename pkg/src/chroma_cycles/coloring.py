"""Exact proper colorings, H-colorings and (k,d)-colorings.

Searches are plain backtracking with a fixed branching order, so results are
reproducible for a given input.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping

from .graph import Edge, Graph, circular_clique, edge_deleted


@dataclass(frozen=True)
class CircularSpec:
    k: int
    d: int

    def __post_init__(self):
        if self.d < 1 or self.k <= 2 * self.d:
            raise ValueError(f"(k,d)=({self.k},{self.d}) needs d >= 1 and k > 2d")
        if gcd(self.k, self.d) != 1:
            raise ValueError(f"k={self.k} and d={self.d} are not coprime")

    @property
    def s(self) -> int:
        """Inverse of d modulo k."""
        return pow(self.d, -1, self.k)


@dataclass(frozen=True)
class Coloring:
    """Vertex colors plus the palette they live in.

    With ``d is None`` this is a proper k-coloring over ``1..k``; otherwise a
    (k,d)-coloring over ``Z_k``.
    """

    colors: tuple[int, ...]
    k: int
    d: int | None = None

    @classmethod
    def proper(cls, colors: Iterable[int], k: int) -> Coloring:
        return cls(tuple(colors), k)

    @classmethod
    def circular(cls, colors: Iterable[int], spec: CircularSpec) -> Coloring:
        return cls(tuple(c % spec.k for c in colors), spec.k, spec.d)

    @property
    def is_circular(self) -> bool:
        return self.d is not None

    @property
    def spec(self) -> CircularSpec:
        if self.d is None:
            raise ValueError("proper coloring has no circular spec")
        return CircularSpec(self.k, self.d)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def with_colors(self, colors: Iterable[int]) -> Coloring:
        colors = tuple(colors)
        if self.d is not None:
            colors = tuple(c % self.k for c in colors)
        return Coloring(colors, self.k, self.d)

    def edge_ok(self, u: int, v: int) -> bool:
        a, b = self.colors[u], self.colors[v]
        if self.d is None:
            return a != b
        return self.d <= (b - a) % self.k <= self.k - self.d

    def to_dict(self) -> dict:
        out = {"kind": "circular" if self.d is not None else "proper", "k": self.k, "colors": list(self.colors)}
        if self.d is not None:
            out["d"] = self.d
        return out


def coloring_violations(g: Graph, phi: Coloring, skip: Edge | None = None) -> list[Edge]:
    """Edges of ``g`` (other than ``skip``) whose endpoints clash under ``phi``.

    A color outside the palette is reported as a violation on every incident
    edge, or as a ``ValueError`` when the vertex is isolated.
    """
    if len(phi) != g.n:
        raise ValueError(f"coloring has {len(phi)} entries for {g.n} vertices")
    lo, hi = (1, phi.k) if phi.d is None else (0, phi.k - 1)
    bad_palette = [v for v, c in enumerate(phi.colors) if not lo <= c <= hi]
    if bad_palette:
        raise ValueError(f"colors outside palette {lo}..{hi} at vertices {bad_palette}")
    return [e for e in g.edges() if e != skip and not phi.edge_ok(e.u, e.v)]


def is_valid_coloring(g: Graph, phi: Coloring, skip: Edge | None = None) -> bool:
    return not coloring_violations(g, phi, skip)


# -- proper coloring ------------------------------------------------------


def find_k_coloring(g: Graph, k: int) -> Coloring | None:
    """A proper coloring with colors ``1..k``, or ``None``.

    DSATUR branching (max saturation, then degree, then lowest id); a vertex may
    open at most one new color, which forces the first vertex to color 1.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = g.n
    nbrs = [sorted(g.neighbors(v)) for v in range(n)]
    colors = [0] * n
    # sat[v][c] = number of colored neighbours of v with color c
    sat = [[0] * (k + 1) for _ in range(n)]
    satdeg = [0] * n

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if colors[v]:
                continue
            cand = (satdeg[v], len(nbrs[v]), -v)
            if key is None or cand > key:
                best, key = v, cand
        return best

    def assign(v: int, c: int, sign: int):
        for w in nbrs[v]:
            row = sat[w]
            if sign > 0:
                if row[c] == 0:
                    satdeg[w] += 1
                row[c] += 1
            else:
                row[c] -= 1
                if row[c] == 0:
                    satdeg[w] -= 1

    def search(done: int, used: int) -> bool:
        if done == n:
            return True
        v = pick()
        if satdeg[v] >= k:
            return False
        for c in range(1, min(k, used + 1) + 1):
            if sat[v][c]:
                continue
            colors[v] = c
            assign(v, c, 1)
            if search(done + 1, max(used, c)):
                return True
            assign(v, c, -1)
            colors[v] = 0
        return False

    if search(0, 0):
        return Coloring.proper(colors, k)
    return None


def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        raise ValueError("chromatic number of the empty graph is undefined here")
    k = 1
    while find_k_coloring(g, k) is None:
        k += 1
    return k


def is_edge_critical(g: Graph, k: int) -> bool:
    """True iff chi(g) = k+1 and deleting any edge makes g k-colorable."""
    if g.n == 0 or find_k_coloring(g, k) is not None:
        return False
    if find_k_coloring(g, k + 1) is None:
        return False
    return all(find_k_coloring(edge_deleted(g, e), k) is not None for e in g.edges())


# -- homomorphisms --------------------------------------------------------


def find_homomorphism(g: Graph, h: Graph, fixed: Mapping[int, int] | None = None) -> dict[int, int] | None:
    """A map ``phi`` with ``uv in E(g) => phi(u)phi(v) in E(h)``, or ``None``.

    Backtracking with forward checking; branches on the vertex with the fewest
    remaining images (ties: more neighbours, then lower id) and tries images in
    increasing order. ``fixed`` pins chosen vertices to chosen images.
    """
    n = g.n
    if n == 0:
        return {}
    if h.n == 0:
        return None
    hn = [h.neighbors(a) for a in range(h.n)]
    nbrs = [sorted(g.neighbors(v)) for v in range(n)]
    everything = frozenset(range(h.n))
    domains: list[set[int]] = [set(everything) for _ in range(n)]
    for v in range(n):
        if nbrs[v]:
            domains[v] = {a for a in domains[v] if hn[a]}
    for v, a in (fixed or {}).items():
        if a not in domains[v]:
            return None
        domains[v] = {a}
    image = [-1] * n

    def search(done: int) -> bool:
        if done == n:
            return True
        v, key = -1, None
        for w in range(n):
            if image[w] < 0:
                cand = (len(domains[w]), -len(nbrs[w]), w)
                if key is None or cand < key:
                    v, key = w, cand
        for a in sorted(domains[v]):
            pruned: list[tuple[int, set[int]]] = []
            ok = True
            for w in nbrs[v]:
                if image[w] >= 0:
                    continue
                removed = domains[w] - hn[a]
                if removed:
                    domains[w] -= removed
                    pruned.append((w, removed))
                    if not domains[w]:
                        ok = False
                        break
            if ok:
                image[v] = a
                saved = domains[v]
                domains[v] = {a}
                if search(done + 1):
                    return True
                domains[v] = saved
                image[v] = -1
            for w, removed in pruned:
                domains[w] |= removed
        return False

    if search(0):
        return dict(enumerate(image))
    return None


def is_homomorphism(g: Graph, h: Graph, phi: Mapping[int, int]) -> bool:
    return all(h.has_edge(phi[u], phi[v]) for u, v in g.edges())


def find_kd_coloring(g: Graph, spec: CircularSpec) -> Coloring | None:
    """A (k,d)-coloring of ``g`` as a homomorphism into K_{k:d}.

    The highest-degree vertex is pinned to color 0; rotating colors preserves
    validity, so this loses no solutions.
    """
    if g.n == 0:
        return Coloring.circular((), spec)
    anchor = max(range(g.n), key=lambda v: (g.degree(v), -v))
    phi = find_homomorphism(g, circular_clique(spec.k, spec.d), fixed={anchor: 0})
    if phi is None:
        return None
    return Coloring.circular((phi[v] for v in range(g.n)), spec)
