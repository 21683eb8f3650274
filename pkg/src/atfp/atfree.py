"""Asteroidal-triple machinery: recognition, dominating pairs and paths.

An asteroidal triple (AT) is a set of three pairwise non-adjacent vertices
such that every two of them are joined by a path avoiding the closed
neighborhood of the third.  AT-free graphs (no such triple) include
interval, permutation, cobipartite and cocomparability graphs.

Recognition here is the definition-based check: for every vertex w,
compute the connected components of g - N[w]; a triple (a, b, c) is
asteroidal iff it is independent and each pair survives in one component
after deleting the third's closed neighborhood.  O(n^3 (n+m)) overall,
which is fine at the scale this package targets.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Optional

from .errors import DisconnectedError, InternalInvariantError, NotACycleError, NotATreeError
from .graph import Graph, bfs_shortest_path, connected_components, is_connected


def _component_labels_without(g: Graph, w: int) -> list[int]:
    """Component label per vertex in g - N[w]; -1 for deleted vertices."""
    removed = g.closed_neighborhood(w)
    label = [-1] * g.n
    current = 0
    for start in range(g.n):
        if start in removed or label[start] >= 0:
            continue
        label[start] = current
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for x in g.adj_sorted(u):
                if x not in removed and label[x] < 0:
                    label[x] = current
                    queue.append(x)
        current += 1
    return label


def is_asteroidal_triple(g: Graph, a: int, b: int, c: int) -> bool:
    """Definition-based check for a single triple of distinct vertices."""
    if len({a, b, c}) != 3:
        raise ValueError("triple vertices must be distinct")
    for v in (a, b, c):
        g.check_vertex(v)
    if g.has_edge(a, b) or g.has_edge(b, c) or g.has_edge(a, c):
        return False
    for x, y, third in ((a, b, c), (a, c, b), (b, c, a)):
        label = _component_labels_without(g, third)
        if label[x] < 0 or label[x] != label[y]:
            return False
    return True


def find_asteroidal_triple(g: Graph) -> Optional[tuple[int, int, int]]:
    """Lexicographically smallest asteroidal triple, or None if AT-free."""
    labels = [_component_labels_without(g, w) for w in range(g.n)]
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if g.has_edge(a, b):
                continue
            la, lb = labels[a], labels[b]
            for c in range(b + 1, g.n):
                if g.has_edge(a, c) or g.has_edge(b, c):
                    continue
                lc = labels[c]
                if lc[a] >= 0 and lc[a] == lc[b] and lb[a] >= 0 and lb[a] == lb[c] \
                        and la[b] >= 0 and la[b] == la[c]:
                    return (a, b, c)
    return None


def is_at_free(g: Graph) -> bool:
    return find_asteroidal_triple(g) is None


def dominates(g: Graph, vs: Iterable[int]) -> bool:
    """True iff every vertex of g is in the closed neighborhood of ``vs``."""
    covered = set()
    for v in vs:
        covered.add(v)
        covered |= g.neighbors(v)
    return len(covered) == g.n


def is_dominating_pair(g: Graph, x: int, y: int) -> bool:
    """True iff the vertex set of every (x, y)-path dominates g.

    Equivalent per-vertex test: an (x, y)-path can avoid N[v] only when
    neither endpoint is in N[v] and x, y stay connected in g - N[v].
    """
    if not is_connected(g):
        raise DisconnectedError("is_dominating_pair requires a connected graph")
    if x == y:
        raise ValueError("dominating pair needs two distinct vertices")
    g.check_vertex(x)
    g.check_vertex(y)
    for v in range(g.n):
        nb = g.closed_neighborhood(v)
        if x in nb or y in nb:
            continue
        label = _component_labels_without(g, v)
        if label[x] == label[y]:
            return False
    return True


def find_dominating_pair(
    g: Graph, restrict: Optional[Iterable[int]] = None
) -> Optional[tuple[int, int]]:
    """Smallest lexicographic dominating pair, drawn from ``restrict`` if given."""
    if not is_connected(g):
        raise DisconnectedError("find_dominating_pair requires a connected graph")
    pool = sorted(set(restrict)) if restrict is not None else list(range(g.n))
    for x, y in combinations(pool, 2):
        if is_dominating_pair(g, x, y):
            return (x, y)
    return None


def dominating_path(
    h: Graph, x: int, y: int, path_vertices: Iterable[int] = ()
) -> list[int]:
    """Shortest (x, y)-path with the path-vertex-first BFS tie-break.

    Precondition: {x, y} is a dominating pair of connected ``h``; the
    result is verified to dominate h and a failure signals a caller bug.
    """
    path = bfs_shortest_path(h, x, y, priority=path_vertices)
    if path is None:
        raise DisconnectedError(f"no path between {x} and {y}")
    if not dominates(h, path):
        raise InternalInvariantError(
            f"shortest ({x},{y})-path does not dominate the graph; "
            "dominating-pair precondition violated"
        )
    return path


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def is_caterpillar(g: Graph) -> bool:
    """True iff removing all leaves of the tree leaves a path (or < 2 vertices)."""
    if not is_tree(g):
        raise NotATreeError("is_caterpillar requires a tree")
    spine = [v for v in range(g.n) if g.degree(v) >= 2]
    if len(spine) < 2:
        return True
    inner = set(spine)
    degs = [len(g.neighbors(v) & inner) for v in spine]
    if any(d > 2 for d in degs):
        return False
    if sum(degs) != 2 * (len(spine) - 1):
        return False
    # connected + degree <= 2 + tree edge count: the spine is a path
    sub_edges = sum(degs) // 2
    return _subset_connected(g, inner) and sub_edges == len(spine) - 1


def _subset_connected(g: Graph, vs: set[int]) -> bool:
    if not vs:
        return True
    start = next(iter(vs))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w in vs and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == vs


def cycle_chord_property(g: Graph, cycle: list[int]) -> bool:
    """Short-chord property of cycles in AT-free graphs.

    For a cycle x_1..x_t (1-based, no wraparound indices): is there a pair
    x_i, x_{i+j} with 2 <= j <= 4 and i+j <= t that is adjacent?  Note the
    closing edge x_1 x_t itself counts when t <= 5.
    """
    t = len(cycle)
    if t < 3 or len(set(cycle)) != t:
        raise NotACycleError("input is not a cycle")
    for i in range(t):
        nxt = cycle[(i + 1) % t]
        if not g.has_edge(cycle[i], nxt):
            raise NotACycleError("consecutive cycle vertices must be adjacent")
    for i in range(t - 2):
        for j in range(2, 5):
            if i + j >= t:
                break
            if g.has_edge(cycle[i], cycle[i + j]):
                return True
    return False
