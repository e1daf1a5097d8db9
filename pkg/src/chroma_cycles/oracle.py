"""Brute-force cycle enumeration, residue tables and the orientation experiment.

Nothing here depends on colorings, so it serves as an independent check on
the extractors.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterable, Iterator, Sequence

from .graph import Digraph, Edge, Graph, as_edge

DEFAULT_BUDGET = 10**7
BAD_ORDERING_MAX_LEN = 9


class BudgetExhausted(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"cycle budget of {budget} exhausted")
        self.budget = budget


def default_budget() -> int:
    return int(os.environ.get("CHROMA_CYCLES_BUDGET", DEFAULT_BUDGET))


def _simple_paths(nbrs: list[list[int]], start: int, target: int, allowed: int, max_vertices: int | None) -> Iterator[list[int]]:
    """Simple ``start -> target`` paths through vertices in the bitmask ``allowed``."""
    path = [start]
    used = 1 << start
    stack = [iter(nbrs[start])]
    while stack:
        for w in stack[-1]:
            bit = 1 << w
            if used & bit or not allowed & bit:
                continue
            if w == target:
                yield path + [w]
                continue
            if max_vertices is not None and len(path) + 1 >= max_vertices:
                continue
            path.append(w)
            used |= bit
            stack.append(iter(nbrs[w]))
            break
        else:
            stack.pop()
            used &= ~(1 << path.pop())


def enumerate_cycles(g: Graph, through: Edge | None = None, max_len: int | None = None, budget: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every simple cycle once, as a canonical vertex tuple.

    Canonical: starts at the least vertex, and its second vertex is smaller
    than its last. ``through`` keeps only cycles using that edge; ``max_len``
    caps the length. Raises ``BudgetExhausted`` after ``budget`` cycles.
    """
    nbrs = [sorted(g.neighbors(v)) for v in range(g.n)]
    count = 0

    def emit(cyc):
        nonlocal count
        count += 1
        if budget is not None and count > budget:
            raise BudgetExhausted(budget)
        return cyc

    if through is not None:
        e = as_edge(g, through)
        x, y = e.u, e.v
        nb = [list(ns) for ns in nbrs]
        nb[x].remove(y)
        nb[y].remove(x)
        everything = (1 << g.n) - 1
        for p in _simple_paths(nb, x, y, everything, max_len):
            yield emit(_canon(p))
        return

    for root in range(g.n):
        allowed = ((1 << g.n) - 1) & ~((1 << root) - 1)
        rn = nbrs[root]
        for first in rn:
            if first < root:
                continue
            for last in rn:
                if last <= first:
                    continue
                for p in _simple_paths(nbrs, first, last, allowed & ~(1 << root), None if max_len is None else max_len - 1):
                    yield emit((root, *p))


def _canon(seq: Sequence[int]) -> tuple[int, ...]:
    i = min(range(len(seq)), key=seq.__getitem__)
    fwd = list(seq[i:]) + list(seq[:i])
    back = [fwd[0]] + fwd[1:][::-1]
    return tuple(min(fwd, back))


@dataclass
class ResidueProfile:
    modulus: int
    counts: dict[int, int]
    through: Edge | None = None

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, residue: int) -> int:
        return self.counts.get(residue % self.modulus, 0)

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "scope": "whole" if self.through is None else f"through {self.through}",
            "counts": {str(r): self.counts.get(r, 0) for r in range(self.modulus)},
            "total": self.total,
        }


def residue_profile(g: Graph, r: int, through: Edge | None = None, budget: int | None = None, max_len: int | None = None) -> ResidueProfile:
    if r < 2:
        raise ValueError("modulus must be at least 2")
    counts = {res: 0 for res in range(r)}
    for cyc in enumerate_cycles(g, through, max_len, budget):
        counts[len(cyc) % r] += 1
    return ResidueProfile(r, counts, None if through is None else as_edge(g, through))


def edge_length_histograms(g: Graph, budget: int | None = None) -> dict[Edge, dict[int, int]]:
    """For every edge, cycle counts by length among cycles using it (one full enumeration)."""
    hists: dict[tuple[int, int], dict[int, int]] = {(e.u, e.v): {} for e in g.edges()}
    for cyc in enumerate_cycles(g, budget=budget):
        length = len(cyc)
        prev = cyc[-1]
        for v in cyc:
            h = hists[(prev, v) if prev < v else (v, prev)]
            h[length] = h.get(length, 0) + 1
            prev = v
    return {Edge(*key): dict(sorted(h.items())) for key, h in hists.items()}


def profile_from_lengths(hist: dict[int, int], r: int, through: Edge | None = None) -> ResidueProfile:
    counts = {res: 0 for res in range(r)}
    for length, c in hist.items():
        counts[length % r] += c
    return ResidueProfile(r, counts, through)


def length_histogram(cycles: Iterable[Sequence[int]]) -> dict[int, int]:
    hist: dict[int, int] = {}
    for cyc in cycles:
        hist[len(cyc)] = hist.get(len(cyc), 0) + 1
    return dict(sorted(hist.items()))


# -- orientations ---------------------------------------------------------


@dataclass(frozen=True)
class OrientedCycleStats:
    cycle: tuple[int, ...]
    direction: int  # +1 along ``cycle``, -1 against it
    forward: int
    backward: int


def oriented_stats(cycle: Sequence[int], orientation: Digraph, direction: int = 1) -> OrientedCycleStats:
    seq = list(cycle) if direction > 0 else [cycle[0], *reversed(cycle[1:])]
    fwd = sum(1 for i in range(len(seq)) if orientation.has_arc(seq[i], seq[(i + 1) % len(seq)]))
    return OrientedCycleStats(tuple(cycle), 1 if direction > 0 else -1, fwd, len(seq) - fwd)


def orientation_from_ordering(g: Graph, ordering: Sequence[int]) -> Digraph:
    """Point every edge toward its endpoint that comes later in ``ordering``."""
    rank = {v: i for i, v in enumerate(ordering)}
    return Digraph(g.n, [(u, v) if rank[u] < rank[v] else (v, u) for u, v in g.edges()])


def one_mod_k_cycles(g: Graph, k: int, budget: int | None = None) -> list[tuple[int, ...]]:
    return [c for c in enumerate_cycles(g, budget=budget) if len(c) % k == 1 % k]


def minty_check(g: Graph, orientation: Digraph, k: int, cycles: Iterable[Sequence[int]] | None = None) -> tuple[bool, OrientedCycleStats | None]:
    """Check that no cycle of length ``1 mod k`` has forward > (k-1) * backward.

    Both traversal directions are tested. Returns ``(ok, witness)``.
    """
    for u, v in g.edges():
        if orientation.has_arc(u, v) == orientation.has_arc(v, u):
            raise ValueError(f"edge {u},{v} must be oriented exactly once")
    if len(orientation) != g.m:
        raise ValueError("orientation has arcs that are not edges of the graph")
    if cycles is None:
        cycles = one_mod_k_cycles(g, k)
    for cyc in cycles:
        if len(cyc) % k != 1 % k:
            continue
        for direction in (1, -1):
            st = oriented_stats(cyc, orientation, direction)
            if st.forward > (k - 1) * st.backward:
                return False, st
    return True, None


@dataclass
class OrientationTrial:
    index: int
    ordering: tuple[int, ...]
    passed: bool
    witness: OrientedCycleStats | None = None

    def to_dict(self, k: int) -> dict:
        out = {"trial": self.index, "ordering": list(self.ordering), "pass": self.passed}
        if self.witness is not None:
            w = self.witness
            out["witness"] = {
                "cycle": list(w.cycle), "direction": w.direction,
                "forward": w.forward, "backward": w.backward, "q": (len(w.cycle) - 1) // k,
            }
        return out


@dataclass
class OrientationSearch:
    k: int
    seed: int
    trials: list[OrientationTrial] = field(default_factory=list)

    @property
    def first_pass(self) -> OrientationTrial | None:
        return next((t for t in self.trials if t.passed), None)


def random_orientation_search(g: Graph, k: int, trials: int, seed: int, stop_at_first: bool = True, budget: int | None = None) -> OrientationSearch:
    """Orient by uniformly random vertex orderings and test the Minty condition."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    cycles = one_mod_k_cycles(g, k, budget)
    result = OrientationSearch(k, seed)
    for t in range(1, trials + 1):
        ordering = list(range(g.n))
        rng.shuffle(ordering)
        ok, witness = minty_check(g, orientation_from_ordering(g, ordering), k, cycles)
        result.trials.append(OrientationTrial(t, tuple(ordering), ok, witness))
        if ok and stop_at_first:
            break
    return result


@dataclass(frozen=True)
class BadOrderingCount:
    k: int
    q: int
    length: int
    count: int
    total: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.count, self.total)

    @property
    def bound(self) -> Fraction:
        """Per-direction bound ``q^(qk+1) / (qk)!``."""
        return Fraction(self.q ** self.length, factorial(self.q * self.k))

    @property
    def two_over_kfact(self) -> Fraction:
        return Fraction(2, factorial(self.k))

    @property
    def within_bound(self) -> bool:
        return self.fraction <= self.bound

    @property
    def doubled_within(self) -> bool:
        return 2 * self.fraction <= self.two_over_kfact

    def to_dict(self) -> dict:
        return {
            "k": self.k, "q": self.q, "length": self.length, "count": self.count, "orderings": self.total,
            "fraction": str(self.fraction), "bound": str(self.bound), "two_over_kfact": str(self.two_over_kfact),
            "within_bound": self.within_bound, "doubled_within": self.doubled_within,
            "doubled_equals": 2 * self.fraction == self.two_over_kfact,
        }


def count_backward_steps(ranks: Sequence[int]) -> int:
    """Cyclic steps ``v_{i-1} -> v_i`` where ``v_i`` comes earlier in the ordering."""
    return sum(1 for i in range(len(ranks)) if ranks[i] < ranks[i - 1])


def bad_ordering_count(k: int, q: int) -> BadOrderingCount:
    """Exhaustively count orderings of a ``(qk+1)``-cycle with at most q backward steps.

    The traversal direction is fixed; the reverse direction has the same count.
    """
    length = q * k + 1
    if k < 2 or q < 1:
        raise ValueError("need k >= 2 and q >= 1")
    if length > BAD_ORDERING_MAX_LEN:
        raise ValueError(f"cycle length {length} exceeds exhaustive limit {BAD_ORDERING_MAX_LEN}")
    count = sum(1 for ranks in permutations(range(length)) if count_backward_steps(ranks) <= q)
    return BadOrderingCount(k, q, length, count, factorial(length))
