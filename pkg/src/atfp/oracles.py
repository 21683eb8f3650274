"""Exponential-time reference solvers for differential testing.

Everything here is deliberately naive: exhaustive enumeration with light
pruning, reviewed separately from the polynomial solvers.  This module may
import only the graph core (plus shared error types), so a bug in the
solver pipeline cannot leak into its own oracle.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, Optional, Sequence

from .errors import TooLargeError
from .graph import Graph

Path = list[int]


def _check_size(g: Graph, max_n: int, what: str) -> None:
    if g.n > max_n:
        raise TooLargeError(f"{what} oracle limited to n <= {max_n}, got {g.n}")


def _induced_paths(g: Graph, s: int, t: int) -> Iterator[Path]:
    """All induced s-t paths, DFS in ascending neighbor order."""
    if s == t:
        return
    stack: list[tuple[Path, frozenset[int]]] = [([s], frozenset([s]))]
    while stack:
        path, used = stack.pop()
        head = path[-1]
        # an extension may not touch any non-head vertex of the path
        for w in reversed(g.adj_sorted(head)):
            if w in used:
                continue
            if any(g.has_edge(w, v) for v in path[:-1]):
                continue
            if w == t:
                yield path + [w]
            else:
                stack.append((path + [w], used | {w}))


def _pair_ok(g: Graph, p: Path, q: Path, p_ends: set[int], q_ends: set[int]) -> bool:
    """Sharing and adjacency rules for one pair of candidate paths: shared
    vertices must be end-vertices of both; an inner vertex may be adjacent
    to the other path only at a vertex that is an end-vertex of both."""
    pset, qset = set(p), set(q)
    for v in pset & qset:
        if v not in p_ends or v not in q_ends:
            return False
    both_ends = p_ends & q_ends
    p_inner = pset - p_ends
    q_inner = qset - q_ends
    for u in p:
        for v in q:
            if u == v or not g.has_edge(u, v):
                continue
            if u in p_inner and v not in both_ends:
                return False
            if v in q_inner and u not in both_ends:
                return False
    return True


def oracle_idp(
    g: Graph, pairs: Sequence[tuple[int, int]], max_n: int = 12
) -> tuple[bool, Optional[list[Path]]]:
    """Ground-truth decision for induced disjoint paths.

    Backtracks over assignments of induced s_i-t_i paths, pruning each new
    path against the ones already fixed; exhaustive, so the verdict is
    authoritative on small graphs.
    """
    _check_size(g, max_n, "induced-disjoint-paths")
    k = len(pairs)
    ends = [set(p) for p in pairs]
    chosen: list[Path] = []

    def extend(i: int) -> bool:
        if i == k:
            return True
        s, t = pairs[i]
        for cand in _induced_paths(g, s, t):
            if all(_pair_ok(g, cand, chosen[j], ends[i], ends[j]) for j in range(i)):
                chosen.append(cand)
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    if extend(0):
        return True, [list(p) for p in chosen]
    return False, None


# -- subset-enumeration oracles -------------------------------------------


def _subsets_containing(g: Graph, required: frozenset[int]) -> Iterator[frozenset[int]]:
    rest = [v for v in range(g.n) if v not in required]
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            yield required | frozenset(extra)


def _induces_connected(g: Graph, vs: frozenset[int]) -> bool:
    start = next(iter(vs))
    seen = {start}
    todo = [start]
    while todo:
        u = todo.pop()
        for w in g.neighbors(u) & vs:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(vs)


def _induces_path(g: Graph, vs: frozenset[int]) -> bool:
    if not vs:
        return False
    if len(vs) == 1:
        return True
    degs = sorted(len(g.neighbors(v) & vs) for v in vs)
    if degs[:2] != [1, 1] or any(d != 2 for d in degs[2:]):
        return False
    return _induces_connected(g, vs)


def _induces_tree(g: Graph, vs: frozenset[int]) -> bool:
    if not vs:
        return False
    edges = sum(len(g.neighbors(v) & vs) for v in vs) // 2
    return edges == len(vs) - 1 and _induces_connected(g, vs)


def _induces_cycle(g: Graph, vs: frozenset[int]) -> bool:
    if len(vs) < 3:
        return False
    if any(len(g.neighbors(v) & vs) != 2 for v in vs):
        return False
    return _induces_connected(g, vs)


def oracle_k_in_a_path(g: Graph, terminals: Sequence[int], max_n: int = 12) -> bool:
    _check_size(g, max_n, "k-in-a-path")
    req = frozenset(terminals)
    return any(_induces_path(g, vs) for vs in _subsets_containing(g, req))


def oracle_k_in_a_tree(g: Graph, terminals: Sequence[int], max_n: int = 12) -> bool:
    _check_size(g, max_n, "k-in-a-tree")
    req = frozenset(terminals)
    return any(_induces_tree(g, vs) for vs in _subsets_containing(g, req))


def oracle_k_in_a_cycle(g: Graph, terminals: Sequence[int], max_n: int = 12) -> bool:
    _check_size(g, max_n, "k-in-a-cycle")
    req = frozenset(terminals)
    return any(_induces_cycle(g, vs) for vs in _subsets_containing(g, req))


def oracle_clique(g: Graph, k: int, max_n: int = 20) -> bool:
    _check_size(g, max_n, "clique")
    if k <= 0:
        return True
    if k > g.n:
        return False
    for vs in combinations(range(g.n), k):
        if all(g.has_edge(u, v) for u, v in combinations(vs, 2)):
            return True
    return False


def oracle_mis(g: Graph, max_n: int = 20) -> int:
    """Exact maximum independent set size."""
    _check_size(g, max_n, "independent-set")
    best = 0
    order = sorted(range(g.n))

    def grow(idx: int, chosen: list[int]) -> None:
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + (len(order) - idx) <= best:
            return
        for j in range(idx, len(order)):
            v = order[j]
            if all(not g.has_edge(v, c) for c in chosen):
                chosen.append(v)
                grow(j + 1, chosen)
                chosen.pop()

    grow(0, [])
    return best


# -- induced subdivision containment ---------------------------------------


def _chains_match(g: Graph, vs: frozenset[int], h: Graph, image: dict[int, int]) -> bool:
    """Does g[vs] equal a subdivision of h with branch images ``image``?

    Non-branch vertices must have degree 2 in g[vs]; walking from every
    branch image along every incident edge must decompose all edges of
    g[vs] into chains realizing E(h) exactly once each.
    """
    branch = set(image.values())
    sub_deg = {v: len(g.neighbors(v) & vs) for v in vs}
    for v in vs - branch:
        if sub_deg[v] != 2:
            return False
    inv = {gv: hv for hv, gv in image.items()}
    total_edges = sum(sub_deg.values()) // 2
    used: set[frozenset[int]] = set()
    found: list[tuple[int, int]] = []
    for hv in sorted(image):
        gv = image[hv]
        for first in sorted(g.neighbors(gv) & vs):
            e = frozenset((gv, first))
            if e in used:
                continue
            used.add(e)
            prev, cur = gv, first
            while cur not in branch:
                nxts = [w for w in g.neighbors(cur) & vs if w != prev]
                if len(nxts) != 1:
                    return False
                prev, cur = cur, nxts[0]
                ne = frozenset((prev, cur))
                if ne in used:
                    return False
                used.add(ne)
            if cur == gv:
                return False
            found.append(tuple(sorted((hv, inv[cur]))))
    if len(used) != total_edges:
        return False  # leftover edges (e.g. a stray induced cycle)
    want = sorted(tuple(sorted(e)) for e in h.edges())
    return sorted(found) == want


def _is_subdivision_of(
    g: Graph,
    vs: frozenset[int],
    h: Graph,
    anchors: Optional[dict[int, int]] = None,
) -> bool:
    sub_deg = {v: len(g.neighbors(v) & vs) for v in vs}
    fixed = dict(anchors) if anchors else {}
    for hv, gv in fixed.items():
        if gv not in vs or sub_deg[gv] != h.degree(hv):
            return False
    free_h = [hv for hv in range(h.n) if hv not in fixed]
    candidates = sorted(vs - set(fixed.values()))

    def assign(i: int, image: dict[int, int], taken: set[int]) -> bool:
        if i == len(free_h):
            return _chains_match(g, vs, h, image)
        hv = free_h[i]
        for gv in candidates:
            if gv in taken or sub_deg[gv] != h.degree(hv):
                continue
            image[hv] = gv
            taken.add(gv)
            if assign(i + 1, image, taken):
                return True
            del image[hv]
            taken.remove(gv)
        return False

    return assign(0, dict(fixed), set(fixed.values()))


def oracle_induced_subdivision(
    g: Graph,
    h: Graph,
    max_n: int = 12,
    anchors: Optional[dict[int, int]] = None,
) -> bool:
    """Exhaustive test: does g contain an induced subgraph isomorphic to a
    subdivision of h?  ``anchors`` optionally pins h-vertex -> g-vertex."""
    _check_size(g, max_n, "induced-subdivision")
    if anchors and len(set(anchors.values())) != len(anchors):
        return False
    required = frozenset(anchors.values()) if anchors else frozenset()
    for vs in _subsets_containing(g, required):
        if len(vs) < h.n:
            continue
        if _is_subdivision_of(g, vs, h, anchors):
            return True
    return False
