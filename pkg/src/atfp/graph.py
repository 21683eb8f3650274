"""Immutable simple-graph core used by every other module.

Vertices are dense integer ids ``0..n-1``.  Adjacency is stored both as
sorted tuples (deterministic iteration order) and frozensets (O(1)
membership).  Graphs are immutable after construction and all operations
here are pure functions, so values can be shared freely across workers.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Optional, Sequence

from .errors import OutOfRangeError


class GraphError(ValueError):
    """Malformed graph construction (self-loop, out-of-range edge)."""


class Graph:
    """Finite undirected graph without self-loops or parallel edges."""

    __slots__ = ("n", "_adj", "_sets")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        self.n = n
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            sets[u].add(v)
            sets[v].add(u)
        self._sets = tuple(frozenset(s) for s in sets)
        self._adj = tuple(tuple(sorted(s)) for s in sets)

    # -- basic accessors -------------------------------------------------

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise OutOfRangeError(f"vertex {v} out of range for n={self.n}")

    def neighbors(self, v: int) -> frozenset[int]:
        """Open neighborhood N(v)."""
        self.check_vertex(v)
        return self._sets[v]

    def adj_sorted(self, v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        return self._adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        """Closed neighborhood N[v]."""
        return self.neighbors(v) | {v}

    def has_edge(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        return v in self._sets[u]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    @property
    def m(self) -> int:
        return sum(len(s) for s in self._sets) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as sorted (u, v) pairs with u < v, in lexicographic order."""
        for u in range(self.n):
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    def neighborhood_of_set(self, vs: Iterable[int]) -> frozenset[int]:
        """Open neighborhood N(U) = vertices outside U adjacent to U."""
        vs = set(vs)
        out: set[int] = set()
        for v in vs:
            out |= self._sets[v]
        return frozenset(out - vs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- elementary operations ----------------------------------------------


def neighbors(g: Graph, v: int) -> frozenset[int]:
    return g.neighbors(v)


def is_induced_path(g: Graph, seq: Sequence[int]) -> bool:
    """True iff ``seq`` is a path whose only edges are the consecutive ones.

    Distinct vertices, consecutive ones adjacent, non-consecutive ones
    non-adjacent.  A single vertex is an induced path; an empty or otherwise
    malformed sequence is not.
    """
    if len(seq) == 0:
        return False
    if any(not (0 <= v < g.n) for v in seq):
        return False
    if len(set(seq)) != len(seq):
        return False
    for i in range(len(seq) - 1):
        if not g.has_edge(seq[i], seq[i + 1]):
            return False
    for i in range(len(seq)):
        for j in range(i + 2, len(seq)):
            if g.has_edge(seq[i], seq[j]):
                return False
    return True


def is_induced_cycle(g: Graph, seq: Sequence[int]) -> bool:
    """True iff ``seq`` lists the vertices of an induced cycle in order."""
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    if any(not (0 <= v < g.n) for v in seq):
        return False
    k = len(seq)
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = g.has_edge(seq[i], seq[j])
            consecutive = j - i == 1 or (i == 0 and j == k - 1)
            if adjacent != consecutive:
                return False
    return True


def connected_components(g: Graph) -> list[list[int]]:
    """Maximal connected vertex sets, each sorted, ordered by smallest vertex."""
    seen = [False] * g.n
    comps: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adj_sorted(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``keep`` with vertices relabeled ``0..|keep|-1``.

    Old ids are assigned new ids in sorted order; returns the new graph and
    the new-id -> old-id map.
    """
    old_ids = sorted(set(keep))
    for v in old_ids:
        g.check_vertex(v)
    new_of = {old: new for new, old in enumerate(old_ids)}
    edges = [
        (new_of[u], new_of[v])
        for u, v in g.edges()
        if u in new_of and v in new_of
    ]
    return Graph(len(old_ids), edges), old_ids


def bfs_shortest_path(
    g: Graph,
    src: int,
    dst: int,
    priority: Iterable[int] = (),
) -> Optional[list[int]]:
    """Deterministic shortest path from ``src`` to ``dst``.

    Tie-break: when a vertex is dequeued, its undiscovered neighbors that
    lie in ``priority`` are enqueued before the others, each group in
    ascending id order.  The parent of a vertex is the vertex that
    discovered it.  Returns None if ``dst`` is unreachable.
    """
    g.check_vertex(src)
    g.check_vertex(dst)
    prio = frozenset(priority)
    if src == dst:
        return [src]
    parent: dict[int, int] = {src: src}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        fresh = [w for w in g.adj_sorted(u) if w not in parent]
        ordered = [w for w in fresh if w in prio] + [w for w in fresh if w not in prio]
        for w in ordered:
            parent[w] = u
            if w == dst:
                path = [w]
                while path[-1] != src:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            queue.append(w)
    return None


def bfs_distances(g: Graph, src: int) -> dict[int, int]:
    """Plain BFS distance map from ``src`` (reachable vertices only)."""
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in g.adj_sorted(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


# -- small builders (used by tests, generators and fixtures) -------------


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and ``leaves`` leaves 1..leaves."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def spider_graph(legs: int, length: int) -> Graph:
    """Spider with center 0 and ``legs`` legs of the given length.

    Leg j uses vertices 1 + j*length .. (j+1)*length, center-outward.
    """
    edges = []
    for j in range(legs):
        base = 1 + j * length
        edges.append((0, base))
        for i in range(length - 1):
            edges.append((base + i, base + i + 1))
    return Graph(1 + legs * length, edges)
