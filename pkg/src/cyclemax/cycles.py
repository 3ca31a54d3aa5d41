"""Exact cycle counts: closed forms for complete and complete bipartite graphs,
and enumeration for arbitrary graphs.

Everything here is integer arithmetic. ``count_cycles`` visits every cycle, so
its running time grows with the answer; it is practical up to roughly 1e8
cycles and never truncates.
"""

from __future__ import annotations

from math import comb, factorial

from .graph import Graph, GraphError


def count_cycles_by_length(g: Graph) -> dict[int, int]:
    """Number of simple cycles of each length (lengths with zero cycles omitted).

    Each cycle is produced once: it is rooted at its smallest vertex ``s`` and
    walked in the direction whose second vertex is smaller than its last one.
    """
    adj = g.adj
    counts = [0] * (g.n + 1)

    for s in range(g.n):
        above = ~((1 << (s + 1)) - 1)
        closing = adj[s] & above

        def extend(v: int, visited: int, first: int, length: int) -> None:
            if length >= 3 and closing >> v & 1 and first < v:
                counts[length] += 1
            nxt = adj[v] & above & ~visited
            while nxt:
                low = nxt & -nxt
                nxt ^= low
                w = low.bit_length() - 1
                extend(w, visited | low, first, length + 1)

        start = closing
        while start:
            low = start & -start
            start ^= low
            first = low.bit_length() - 1
            # the last vertex must exceed ``first``, so some neighbour of s above it must exist
            if closing >> (first + 1):
                extend(first, (1 << s) | low, first, 2)

    return {length: c for length, c in enumerate(counts) if c}


def count_cycles(g: Graph) -> int:
    """Number of distinct edge subsets of ``g`` that form a cycle."""
    return sum(count_cycles_by_length(g).values())


def complete_bipartite_cycle_count(a: int, b: int) -> int:
    """Cycles in ``K_{a,b}``: sum over k of ``a! b! / (2k (a-k)! (b-k)!)``."""
    if a < 1 or a > b:
        raise GraphError("need 1 <= a <= b")
    total = 0
    # running falling factorials a(a-1)...(a-k+1) * b(b-1)...(b-k+1)
    falling = a * b
    for k in range(2, a + 1):
        falling *= (a - k + 1) * (b - k + 1)
        total += falling // (2 * k)
    return total


def turan_cycle_count(n: int) -> int:
    """Exact cycle count of ``T(n, 2)``; zero when the smaller part has < 2 vertices."""
    if n < 2:
        raise GraphError("T(n, 2) needs n >= 2")
    return complete_bipartite_cycle_count(n // 2, n - n // 2)


def complete_graph_cycle_count(n: int) -> int:
    if n < 1:
        raise GraphError("K_n needs n >= 1")
    return sum(comb(n, i) * factorial(i - 1) // 2 for i in range(3, n + 1))
