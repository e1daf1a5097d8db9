"""Cycles forced through (and beside) an edge whose deletion lowers chi.

Fix a proper k-coloring ``phi`` of ``G - xy`` with ``phi(x) == phi(y)``. For a
cyclic permutation ``sigma`` of some colors including ``phi(x)``, the digraph
``D_sigma`` keeps ``u -> v`` whenever ``uv`` is an edge and
``sigma(phi(u)) == phi(v)``. Shifting colors by ``sigma`` on everything
reachable from ``x`` stays proper on ``G - xy``, so if ``y`` were unreachable
``G`` would be k-colorable. Hence every ``sigma`` yields an x->y path whose
length is a multiple of ``|sigma|``, i.e. a cycle through ``xy`` of length
``1 mod r``; distinct ``sigma`` give distinct cycles.

Recoloring one sink of ``D_sigma`` at a time instead shows that ``D_sigma``
must contain a directed cycle, whose length is ``0 mod r`` and which avoids
``xy``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import factorial, prod

from .certs import CycleCert, PreconditionError, Tag, TheoremViolation
from .coloring import Coloring, coloring_violations
from .graph import Digraph, Edge, Graph, as_edge, edge_deleted
from .search import find_directed_cycle, reachable, shortest_path, topological_sinks_first


@dataclass(frozen=True)
class CyclicPerm:
    """``support[i] -> support[i+1]`` cyclically; identity off the support."""

    support: tuple[int, ...]

    def __post_init__(self):
        if len(self.support) < 2:
            raise ValueError("a cyclic permutation needs at least two colors")
        if len(set(self.support)) != len(self.support):
            raise ValueError(f"repeated color in {self.support}")

    @property
    def r(self) -> int:
        return len(self.support)

    @property
    def anchor(self) -> int:
        return self.support[0]

    def __call__(self, c: int) -> int:
        try:
            i = self.support.index(c)
        except ValueError:
            return c
        return self.support[(i + 1) % self.r]

    def reverse(self) -> CyclicPerm:
        return CyclicPerm((self.support[0],) + self.support[:0:-1])

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.support)) + ")"


def cyclic_perms(k: int, anchor: int, r: int) -> list[CyclicPerm]:
    """All cyclic permutations of r-subsets of ``1..k`` containing ``anchor``.

    Subsets come in colex order; within a subset, the remaining colors follow
    the anchor in lexicographic order of arrangements. There are
    ``prod(k - i for i in 1..r-1)`` of them.
    """
    if not 2 <= r <= k:
        raise ValueError(f"need 2 <= r <= k, got r={r}, k={k}")
    if not 1 <= anchor <= k:
        raise ValueError(f"anchor {anchor} outside palette 1..{k}")
    others = [c for c in range(1, k + 1) if c != anchor]
    subsets = sorted(combinations(others, r - 1), key=lambda s: sorted((*s, anchor), reverse=True))
    return [CyclicPerm((anchor, *order)) for subset in subsets for order in permutations(subset)]


def one_mod_r_bound(k: int, r: int) -> int:
    return prod(k - i for i in range(1, r))


def zero_mod_r_bound(r: int) -> int:
    return factorial(r - 1) // 2


@dataclass
class ExtractionTrace:
    sigma: CyclicPerm
    reach_set: frozenset[int]
    path: list[int] | None
    shift_steps: list[tuple[int, int, int]] = field(default_factory=list)


@dataclass
class SinkOutcome:
    """Result of sink-by-sink recoloring: a directed cycle, or a coloring of all of G."""

    cycle: list[int] | None = None
    coloring: Coloring | None = None
    steps: list[tuple[int, int, int]] = field(default_factory=list)


def sigma_subdigraph(g: Graph, phi: Coloring, sigma: CyclicPerm) -> Digraph:
    if phi.is_circular:
        raise ValueError("sigma_subdigraph expects a proper coloring")
    outside = [c for c in sigma.support if not 1 <= c <= phi.k]
    if outside:
        raise ValueError(f"sigma support colors {outside} outside palette 1..{phi.k}")
    arcs = []
    for u, v in g.edges():
        if sigma(phi[u]) == phi[v]:
            arcs.append((u, v))
        if sigma(phi[v]) == phi[u]:
            arcs.append((v, u))
    return Digraph(g.n, arcs)


def _check_inputs(g: Graph, e, phi: Coloring, r: int | None = None, r_min: int = 2) -> Edge:
    e = as_edge(g, e)
    if phi.is_circular:
        raise PreconditionError("expected a proper k-coloring, got a circular one")
    if len(phi) != g.n:
        raise PreconditionError(f"coloring has {len(phi)} entries for {g.n} vertices")
    try:
        bad = coloring_violations(g, phi, skip=e)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    if bad:
        raise PreconditionError(f"coloring is not proper on G - e; clashes on {[str(b) for b in bad]}")
    if phi[e.u] != phi[e.v]:
        raise PreconditionError("coloring is already proper on G, so G is k-colorable")
    if r is not None and not r_min <= r <= phi.k:
        raise PreconditionError(f"need {r_min} <= r <= k={phi.k}, got r={r}")
    return e


def shift_recolor(g: Graph, e, phi: Coloring, sigma: CyclicPerm) -> tuple[frozenset[int], Coloring]:
    """Apply ``sigma`` to the colors of everything reachable from ``x = e.u``.

    The result is proper on ``g - e``; when ``y`` is not reached it is proper
    on ``g`` too.
    """
    e = _check_inputs(g, e, phi)
    if sigma.anchor != phi[e.u]:
        raise PreconditionError(f"sigma anchor {sigma.anchor} differs from phi(x)={phi[e.u]}")
    reach = reachable(sigma_subdigraph(edge_deleted(g, e), phi, sigma), e.u)
    shifted = phi.with_colors(sigma(c) if v in reach else c for v, c in enumerate(phi.colors))
    return reach, shifted


def trace_one_mod_r(g: Graph, e: Edge, phi: Coloring, sigma: CyclicPerm) -> ExtractionTrace:
    dg = sigma_subdigraph(edge_deleted(g, e), phi, sigma)
    reach = reachable(dg, e.u)
    p = shortest_path(dg, e.u, e.v) if e.v in reach else None
    return ExtractionTrace(sigma, reach, p)


def extract_one_mod_r_cycles(g: Graph, e, phi: Coloring, r: int) -> list[CycleCert]:
    """One cycle through ``e`` of length ``1 mod r`` per cyclic permutation.

    ``phi`` is a proper k-coloring of ``g - e`` (k taken from ``phi``). Raises
    ``TheoremViolation`` with a proper coloring of ``g`` if some permutation
    fails to connect ``x`` to ``y``.
    """
    e = _check_inputs(g, e, phi, r)
    x, y = e.u, e.v
    certs = []
    seen: set[tuple[int, ...]] = set()
    for sigma in cyclic_perms(phi.k, phi[x], r):
        tr = trace_one_mod_r(g, e, phi, sigma)
        if tr.path is None:
            shifted = phi.with_colors(sigma(c) if v in tr.reach_set else c for v, c in enumerate(phi.colors))
            raise TheoremViolation(f"y unreachable from x under sigma={sigma}; shifted coloring colors G", shifted, sigma)
        if (len(tr.path) - 1) % r:
            raise TheoremViolation(f"x,y-path of length {len(tr.path) - 1} under sigma={sigma} is not 0 mod {r}")
        cert = CycleCert(tuple(tr.path), r, Tag.ONE_MOD_R, phi, sigma, e, extra={"reach_size": len(tr.reach_set)})
        if cert.canonical in seen:
            raise TheoremViolation(f"sigma={sigma} repeated an earlier cycle {cert.canonical}")
        seen.add(cert.canonical)
        certs.append(cert)
    return certs


def sink_recolor_to_contradiction(g: Graph, e, phi: Coloring, sigma: CyclicPerm) -> SinkOutcome:
    """Find a directed cycle of ``D_sigma`` in ``g - e``, or recolor to a coloring of ``g``.

    When ``D_sigma`` is acyclic, vertices with colors in the support move to
    ``sigma(color)`` one at a time, always the least sink of the unchanged
    part, stopping once ``x`` or ``y`` has moved.
    """
    e = _check_inputs(g, e, phi)
    if sigma.anchor != phi[e.u]:
        raise PreconditionError(f"sigma anchor {sigma.anchor} differs from phi(x)={phi[e.u]}")
    dg = sigma_subdigraph(edge_deleted(g, e), phi, sigma)
    found = find_directed_cycle(dg)
    if found is not None:
        return SinkOutcome(cycle=found)
    support = set(sigma.support)
    order = topological_sinks_first(dg, [v for v in range(g.n) if phi[v] in support])
    colors = list(phi.colors)
    steps = []
    for v in order:
        old = colors[v]
        colors[v] = sigma(old)
        steps.append((v, old, colors[v]))
        if v in (e.u, e.v):
            break
    return SinkOutcome(coloring=phi.with_colors(colors), steps=steps)


def extract_zero_mod_r_cycles(g: Graph, e, phi: Coloring, r: int) -> list[CycleCert]:
    """Distinct cycles of length ``0 mod r`` in ``g - e``, one per sigma up to reversal.

    Each is a directed cycle of ``D_sigma``; cycles repeated across sigmas are
    dropped. At least ``(r-1)!/2`` come from each fixed r-subset of colors.
    """
    e = _check_inputs(g, e, phi, r, r_min=3)
    certs = []
    seen: set[tuple[int, ...]] = set()
    for sigma in cyclic_perms(phi.k, phi[e.u], r):
        if sigma.support[1] > sigma.support[-1]:
            continue  # its reverse selects the same cycles
        outcome = sink_recolor_to_contradiction(g, e, phi, sigma)
        if outcome.cycle is None:
            raise TheoremViolation(f"D_sigma acyclic for sigma={sigma}; sink recoloring colors G", outcome.coloring, sigma)
        if len(outcome.cycle) % r:
            raise TheoremViolation(f"directed cycle of length {len(outcome.cycle)} under sigma={sigma} is not 0 mod {r}")
        cert = CycleCert(tuple(outcome.cycle), r, Tag.ZERO_MOD_R, phi, sigma)
        if cert.canonical not in seen:
            seen.add(cert.canonical)
            certs.append(cert)
    return certs


def counts_by_support(certs: list[CycleCert]) -> dict[frozenset[int], int]:
    """Number of certificates per color subset of the witnessing permutation."""
    out: dict[frozenset[int], int] = {}
    for cert in certs:
        key = frozenset(cert.sigma.support)
        out[key] = out.get(key, 0) + 1
    return out
