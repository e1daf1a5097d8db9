"""Reachability, path and cycle search in digraphs."""

from __future__ import annotations

import heapq
from collections import deque

from .graph import Digraph


def reachable(dg: Digraph, source: int) -> frozenset[int]:
    seen = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in dg.successors(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def shortest_path(dg: Digraph, source: int, target: int) -> list[int] | None:
    """Lexicographically least among the shortest ``source -> target`` paths."""
    dist = {target: 0}
    queue = deque([target])
    while queue:
        u = queue.popleft()
        for w in dg.predecessors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    if source not in dist:
        return None
    path = [source]
    v = source
    while v != target:
        v = min(w for w in dg.successors(v) if dist.get(w) == dist[v] - 1)
        path.append(v)
    return path


def find_directed_cycle(dg: Digraph) -> list[int] | None:
    """Some directed cycle, found by DFS from the lowest vertices first."""
    WHITE, GREY, BLACK = 0, 1, 2
    state = [WHITE] * dg.n
    for root in range(dg.n):
        if state[root] != WHITE:
            continue
        stack = [(root, iter(sorted(dg.successors(root))))]
        trail = [root]
        state[root] = GREY
        while stack:
            v, it = stack[-1]
            for w in it:
                if state[w] == GREY:
                    return trail[trail.index(w):]
                if state[w] == WHITE:
                    state[w] = GREY
                    trail.append(w)
                    stack.append((w, iter(sorted(dg.successors(w)))))
                    break
            else:
                state[v] = BLACK
                trail.pop()
                stack.pop()
    return None


def topological_sinks_first(dg: Digraph, vertices) -> list[int] | None:
    """Order ``vertices`` so each comes after all its successors inside the set.

    At every step the least available sink is taken. ``None`` if the induced
    subdigraph has a cycle.
    """
    members = set(vertices)
    pending = {v: sum(1 for w in dg.successors(v) if w in members) for v in members}
    heap = [v for v, c in pending.items() if c == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for u in dg.predecessors(v):
            if u in members:
                pending[u] -= 1
                if pending[u] == 0:
                    heapq.heappush(heap, u)
    return order if len(order) == len(members) else None
