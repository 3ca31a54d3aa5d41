"""Simple undirected graphs on vertices ``0..n-1`` and the families used by the
cycle-count bounds (complete bipartite graphs, gamma graphs, blowups).

Adjacency is stored as one integer bitmask per vertex, so neighbourhood
intersections and subset tests are single integer operations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import inf
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or arguments outside an operation's domain."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError("adjacency must have one mask per vertex")
        for v, mask in enumerate(self.adj):
            if mask >> self.n:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if mask >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for w in _bits(mask):
                if not self.adj[w] >> v & 1:
                    raise GraphError(f"edge ({v}, {w}) is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def m(self) -> int:
        return sum(mask.bit_count() for mask in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbours(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if v > u]

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, self.edges() + [(u, v)])

    def delete_vertex(self, v: int) -> "Graph":
        keep = [w for w in range(self.n) if w != v]
        return self.induced(keep)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {w: i for i, w in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in self.edges() if u in index and v in index),
        )

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def adjacency_matrix(self) -> list[list[int]]:
        return [[self.adj[u] >> v & 1 for v in range(self.n)] for u in range(self.n)]


@dataclass(frozen=True)
class LabeledGraph(Graph):
    """A graph whose vertex order is its labelling: vertex ``j`` carries label ``j + 1``.

    The labelling fixes the meaning of part sizes in a blowup ``H(n_1, ..., n_p)``.
    """

    name: str = field(default="", compare=False)

    def label(self, v: int) -> int:
        return v + 1

    def vertex(self, label: int) -> int:
        if not 1 <= label <= self.n:
            raise GraphError(f"label {label} outside 1..{self.n}")
        return label - 1


@dataclass(frozen=True)
class BlowupSpec:
    base: LabeledGraph
    sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if len(self.sizes) != self.base.n:
            raise GraphError(f"expected {self.base.n} part sizes, got {len(self.sizes)}")
        if any(s < 0 for s in self.sizes):
            raise GraphError("part sizes must be nonnegative")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def m(self) -> int:
        return sum(self.sizes[i] * self.sizes[j] for i, j in self.base.edges())

    def parts(self) -> list[range]:
        """Contiguous vertex ranges of each part, in label order."""
        out, start = [], 0
        for s in self.sizes:
            out.append(range(start, start + s))
            start += s
        return out


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# --- constructors -----------------------------------------------------------


def make_complete_bipartite(a: int, b: int) -> Graph:
    """``K_{a,b}`` with parts ``0..a-1`` and ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise GraphError("complete bipartite parts must be nonempty")
    return Graph.from_edges(a + b, ((u, a + w) for u in range(a) for w in range(b)))


def make_turan(n: int) -> Graph:
    """Balanced complete bipartite graph ``T(n, 2) = K_{floor(n/2), ceil(n/2)}``."""
    return make_complete_bipartite(n // 2, n - n // 2)


def make_complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((v, (v + 1) % n) for v in range(n)))


def make_path(n: int) -> Graph:
    return Graph.from_edges(n, ((v, v + 1) for v in range(n - 1)))


def make_gamma(i: int) -> LabeledGraph:
    """Gamma (Andrasfai) graph on ``3i - 1`` vertices.

    Vertex ``v_j`` is adjacent to ``v_{j+i}, ..., v_{j+2i-1}`` with indices taken
    mod ``3i - 1``. The labelling is *not* the cyclic order of a drawing: for
    ``i = 2`` the result is ``C_5`` with ``v_1`` adjacent to ``v_3`` and ``v_4``,
    so part sizes of non-uniform blowups refer to that labelling.
    """
    if i < 1:
        raise GraphError("gamma graph index must be positive")
    p = 3 * i - 1
    edges = {tuple(sorted((j, (j + d) % p))) for j in range(p) for d in range(i, 2 * i)}
    g = Graph.from_edges(p, edges)
    return LabeledGraph(g.n, g.adj, name=f"Gamma_{i}")


def labeled(g: Graph, name: str = "") -> LabeledGraph:
    return LabeledGraph(g.n, g.adj, name=name)


def make_blowup(spec: BlowupSpec) -> Graph:
    parts = spec.parts()
    edges = [
        (u, w)
        for i, j in spec.base.edges()
        for u in parts[i]
        for w in parts[j]
    ]
    return Graph.from_edges(spec.n, edges)


def gamma_blowup(i: int, sizes: Sequence[int] | int) -> BlowupSpec:
    """``Gamma_i(n_1, ..., n_p)``; an int gives the uniform blowup ``Gamma_i(t)``."""
    base = make_gamma(i)
    if isinstance(sizes, int):
        sizes = (sizes,) * base.n
    return BlowupSpec(base, tuple(sizes))


def make_petersen() -> Graph:
    outer = [(v, (v + 1) % 5) for v in range(5)]
    spokes = [(v, v + 5) for v in range(5)]
    inner = [(5 + v, 5 + (v + 2) % 5) for v in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


# --- structural predicates --------------------------------------------------


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests.

    BFS from every vertex; a non-tree edge ``(u, w)`` met from root ``r`` closes a
    walk of length ``d(u) + d(w) + 1`` that contains a cycle no longer than that,
    and the minimum over all roots is attained by a shortest cycle.
    """
    best = inf
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in _bits(g.adj[u]):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def is_triangle_free(g: Graph) -> bool:
    return all(not (g.adj[u] & g.adj[v]) for u, v in g.edges())


def degree_stats(g: Graph) -> tuple[int, int, int]:
    """``(min degree, max degree, edge count)``."""
    if g.n < 1:
        raise GraphError("degree statistics need at least one vertex")
    degrees = [mask.bit_count() for mask in g.adj]
    return min(degrees), max(degrees), sum(degrees) // 2


def is_connected(g: Graph, removed: int = 0) -> bool:
    """Connectivity of ``g`` with the vertices in bitmask ``removed`` deleted."""
    alive = ((1 << g.n) - 1) & ~removed
    if not alive:
        return True
    start = alive & -alive
    seen = frontier = start
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & alive & ~seen
        seen |= frontier
    return seen == alive


def is_biconnected(g: Graph) -> bool:
    if g.n < 3:
        raise GraphError("2-connectivity is only defined here for n >= 3")
    return is_connected(g) and all(is_connected(g, 1 << v) for v in range(g.n))


def is_maximal_triangle_free(g: Graph) -> bool:
    if not is_triangle_free(g):
        raise GraphError("graph contains a triangle")
    return all(
        g.adj[u] & g.adj[v]
        for u, v in combinations(range(g.n), 2)
        if not g.has_edge(u, v)
    )


def every_edge_in_4cycle(g: Graph) -> bool:
    for u, v in g.edges():
        found = False
        for x in _bits(g.adj[u] & ~(1 << v)):
            # y ~ x and y ~ v, with y distinct from u and x
            if g.adj[x] & g.adj[v] & ~(1 << u) & ~(1 << x):
                found = True
                break
        if not found:
            return False
    return True


def is_complete_bipartite(g: Graph) -> tuple[int, int] | None:
    """Part sizes ``(a, b)`` with ``a <= b`` if ``g`` is complete bipartite, else None."""
    if g.n < 2:
        return None
    full = (1 << g.n) - 1
    side = g.adj[0]
    other = full & ~side
    if not side:
        return None
    for v in range(g.n):
        expected = other if side >> v & 1 else side
        if g.adj[v] != expected:
            return None
    a, b = sorted((side.bit_count(), other.bit_count()))
    return a, b


def find_homomorphism(g: Graph, h: Graph) -> list[int] | None:
    """An adjacency-preserving map ``V(g) -> V(h)`` as a list, or None.

    Backtracking over ``g``'s vertices in descending degree order (ties by
    index) with forward checking of neighbour domains. Exponential in the worst
    case; meant for targets with a few dozen vertices.
    """
    if h.n == 0:
        raise GraphError("target graph must be nonempty")
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    full = (1 << h.n) - 1
    assignment = [-1] * g.n

    def search(pos: int, domains: list[int]) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for target in _bits(domains[v]):
            new = domains
            ok = True
            for w in _bits(g.adj[v]):
                if assignment[w] >= 0:
                    continue
                if new is domains:
                    new = list(domains)
                new[w] &= h.adj[target]
                if not new[w]:
                    ok = False
                    break
            if not ok:
                continue
            assignment[v] = target
            if search(pos + 1, new):
                return True
            assignment[v] = -1
        return False

    domains = [full] * g.n
    if search(0, domains):
        return assignment
    return None


def is_homomorphism(g: Graph, h: Graph, mapping: Sequence[int]) -> bool:
    return len(mapping) == g.n and all(h.has_edge(mapping[u], mapping[v]) for u, v in g.edges())
