"""Cycles through an edge whose deletion makes a graph (k,d)-colorable.

Colors live in ``Z_k`` and ``s = d^{-1} mod k``. With ``phi(y) = 0`` and
``phi(x) = j < d``, follow arcs ``u -> v`` with ``phi(v) - phi(u) = d`` from
``x``. If ``y`` is reached the x,y-path has length ``(d - j)s - 1 mod k``, so
together with ``xy`` it closes a cycle of length ``(d - j)s mod k``.
Otherwise adding 1 to every reached color keeps a (k,d)-coloring of ``G - xy``
and raises ``j`` by one; at ``j = d - 1`` an unreached ``y`` would give a
(k,d)-coloring of ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .certs import CycleCert, PreconditionError, Tag, TheoremViolation
from .coloring import CircularSpec, Coloring, coloring_violations
from .graph import Digraph, Edge, Graph, as_edge, edge_deleted
from .oracle import enumerate_cycles
from .search import find_directed_cycle, reachable, shortest_path, topological_sinks_first
from .tuza import CyclicPerm


def inverse_mod(d: int, k: int) -> int:
    try:
        return pow(d, -1, k)
    except ValueError:
        raise ValueError(f"{d} has no inverse modulo {k}") from None


def step_perm(spec: CircularSpec, step: int) -> CyclicPerm:
    """The color cycle ``(0, step, 2 step, ...)`` in ``Z_k``."""
    return CyclicPerm(tuple((i * step) % spec.k for i in range(spec.k)))


def step_subdigraph(g: Graph, phi: Coloring, step: int) -> Digraph:
    """Arcs ``u -> v`` over edges of ``g`` with ``phi(v) - phi(u) = step mod k``."""
    k = phi.k
    arcs = []
    for u, v in g.edges():
        diff = (phi[v] - phi[u]) % k
        if diff == step % k:
            arcs.append((u, v))
        if (-diff) % k == step % k:
            arcs.append((v, u))
    return Digraph(g.n, arcs)


@dataclass
class CircCaseState:
    spec: CircularSpec
    phi: Coloring
    x: int
    y: int
    j: int
    swap_applied: bool = False
    shift_log: list[tuple[frozenset[int], Coloring]] = field(default_factory=list)


def _check_circular(g: Graph, e, phi: Coloring) -> Edge:
    e = as_edge(g, e)
    if not phi.is_circular:
        raise PreconditionError("expected a (k,d)-coloring, got a proper one")
    try:
        phi.spec
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    if len(phi) != g.n:
        raise PreconditionError(f"coloring has {len(phi)} entries for {g.n} vertices")
    try:
        bad = coloring_violations(g, phi, skip=e)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    if bad:
        raise PreconditionError(f"not a (k,d)-coloring of G - e; violated on {[str(b) for b in bad]}")
    return e


def normalize(g: Graph, e, phi: Coloring) -> CircCaseState:
    """Rotate colors so ``phi(y) = 0`` and ``phi(x) = j`` with ``0 <= j < d``.

    A negative offset swaps the roles of the endpoints.
    """
    e = _check_circular(g, e, phi)
    spec = phi.spec
    k, d = spec.k, spec.d
    x, y = e.u, e.v
    offset = (phi[x] - phi[y]) % k
    if d <= offset <= k - d:
        raise PreconditionError(f"phi(x) - phi(y) = {offset} mod {k} is allowed, so phi already colors G")
    swap = offset > k - d
    if swap:
        x, y = y, x
    shift = phi[y]
    rotated = phi.with_colors(c - shift for c in phi.colors)
    return CircCaseState(spec, rotated, x, y, rotated[x], swap)


def _increment(phi: Coloring, vertices) -> Coloring:
    return phi.with_colors(c + 1 if v in vertices else c for v, c in enumerate(phi.colors))


def _run_induction(g: Graph, e: Edge, state: CircCaseState) -> CycleCert:
    spec = state.spec
    k, d, s = spec.k, spec.d, spec.s
    gm = edge_deleted(g, e)
    x, y = state.x, state.y
    while True:
        dg = step_subdigraph(gm, state.phi, d)
        reach = reachable(dg, x)
        if y in reach:
            break
        shifted = _increment(state.phi, reach)
        if coloring_violations(gm, shifted):
            raise TheoremViolation(f"incrementing the reach set broke the coloring at j={state.j}", shifted)
        if state.j == d - 1:
            raise TheoremViolation("y unreachable at j = d-1; the shifted coloring colors G", shifted, step_perm(spec, d))
        state.shift_log.append((reach, shifted))
        state.phi = shifted
        state.j += 1
    p = shortest_path(dg, x, y)
    i = d - state.j
    length = len(p)
    if (length * d) % k != i % k or (length - i * s) % k:
        raise TheoremViolation(f"cycle length {length} is not {i}*s mod {k}")
    return CycleCert(
        tuple(p), k, Tag.CIRC_IS, state.phi, step_perm(spec, d), e, i,
        extra={"j": state.j, "swap_applied": state.swap_applied, "shifts": len(state.shift_log)},
    )


def extract_circular_cycle(g: Graph, e, phi: Coloring) -> CycleCert:
    """A cycle through ``e`` of length ``i*s mod k`` for some ``1 <= i <= d``.

    The certificate's ``class_index`` is ``d - j`` at the step where ``y``
    was reached; its coloring is the (possibly shifted) one used for the path.
    """
    state = normalize(g, e, phi)
    return _run_induction(g, as_edge(g, e), state)


def forbidden_class_witness(g: Graph, e, spec: CircularSpec) -> tuple[int, tuple[int, ...]] | None:
    """``(i, cycle)`` for a cycle through ``e`` of length ``i*s mod k`` with ``1 <= i < d``."""
    e = as_edge(g, e)
    residues = {(i * spec.s) % spec.k: i for i in range(1, spec.d)}
    for cyc in enumerate_cycles(g, through=e):
        i = residues.get(len(cyc) % spec.k)
        if i is not None:
            return i, cyc
    return None


def sink_increment(g: Graph, e: Edge, state: CircCaseState) -> tuple[Coloring, list[tuple[int, int, int]]] | None:
    """Add 1 to reached colors one sink at a time until ``x`` or ``y`` moves.

    ``None`` when the step digraph restricted to the reach set has a cycle.
    """
    gm = edge_deleted(g, e)
    dg = step_subdigraph(gm, state.phi, state.spec.d)
    order = topological_sinks_first(dg, reachable(dg, state.x))
    if order is None:
        return None
    colors = list(state.phi.colors)
    steps = []
    for v in order:
        old = colors[v]
        colors[v] = (old + 1) % state.spec.k
        steps.append((v, old, colors[v]))
        if coloring_violations(gm, state.phi.with_colors(colors)):
            raise TheoremViolation(f"single-vertex increment at {v} broke the coloring", state.phi.with_colors(colors))
        if v in (state.x, state.y):
            break
    return state.phi.with_colors(colors), steps


def extract_circular_bonus(g: Graph, e, phi: Coloring) -> tuple[CycleCert, CycleCert, CycleCert]:
    """Two cycles through ``e`` of length ``1 mod k`` and one of length ``0 mod k`` in ``g - e``.

    Only valid when no cycle through ``e`` has length ``i*s mod k`` with
    ``1 <= i < d``; that is checked by exhaustive enumeration first.
    """
    e = _check_circular(g, e, phi)
    spec = phi.spec
    k, d = spec.k, spec.d
    witness = forbidden_class_witness(g, e, spec)
    if witness is not None:
        i, cyc = witness
        raise PreconditionError(f"cycle {list(cyc)} through {e} has length {len(cyc)} = {i}*s mod {k}")

    state = normalize(g, e, phi)
    first = _run_induction(g, e, CircCaseState(spec, state.phi, state.x, state.y, state.j, state.swap_applied))
    if first.class_index != d:
        raise TheoremViolation(f"found class i={first.class_index} < d although enumeration found none")
    first = CycleCert(first.vertices, k, Tag.CIRC_ONE, first.coloring, first.sigma, e, extra=first.extra)
    base = state.phi  # j = 0 here, so the induction never shifted

    gm = edge_deleted(g, e)
    back = step_subdigraph(gm, base, -d)
    p = shortest_path(back, state.x, state.y)
    if p is None:
        # -phi turns steps of -d into steps of +d
        negated = base.with_colors(-c for c in base.colors)
        cert = extract_circular_cycle(g, e, negated)
        raise TheoremViolation(f"no x,y-path stepping by -d, yet the negated coloring gives i={cert.class_index}")
    second = CycleCert(tuple(p), k, Tag.CIRC_ONE, base, step_perm(spec, -d), e)
    if second.length % k != 1 % k:
        raise TheoremViolation(f"second cycle has length {second.length}, not 1 mod {k}")
    if second.canonical == first.canonical:
        raise TheoremViolation("the two 1 mod k cycles coincide")

    found = find_directed_cycle(step_subdigraph(gm, base, d))
    if found is None:
        recolored, _ = sink_increment(g, e, state)
        if not coloring_violations(g, recolored):
            raise TheoremViolation("sink-by-sink increments colored G", recolored)
        cert = extract_circular_cycle(g, e, recolored)
        raise TheoremViolation(f"step digraph acyclic, and the reduced case gives i={cert.class_index} < d")
    if len(found) % k:
        raise TheoremViolation(f"directed cycle of length {len(found)} is not 0 mod {k}")
    zero = CycleCert(tuple(found), k, Tag.CIRC_ZERO, base, step_perm(spec, d))
    return first, second, zero

