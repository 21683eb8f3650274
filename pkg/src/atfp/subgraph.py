"""Derived solvers: induced paths/trees/cycles through terminals, anchored
and plain induced topological minors, and the all-pairs-coincide case.

The path and tree solvers trace a growing induced path through the graph
keeping a five-vertex window, like the main walk DP.  In an AT-free graph
a vertex attached to the window head and nothing else in the window cannot
touch the older part of the path, so the window plus the set of terminals
still "ahead" fully determines the future.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from .atfree import find_asteroidal_triple, is_caterpillar
from .dp import solve_idp
from .errors import (
    BudgetExceededError,
    InternalInvariantError,
    NotATFreeError,
    PreconditionViolatedError,
)
from .graph import Graph, induced_subgraph, is_induced_path
from .preprocess import Instance


def _require_at_free(g: Graph) -> None:
    triple = find_asteroidal_triple(g)
    if triple is not None:
        raise NotATFreeError(triple)


def ahead_set(g: Graph, R: Sequence[int], terminals: Iterable[int]) -> frozenset[int]:
    """Terminals reachable from the window head.

    Deletes the closed neighborhoods of the window's interior vertices,
    re-adds the head, and collects the terminals in the head's component.
    """
    if not R:
        raise PreconditionViolatedError("window must be non-empty")
    interior = list(R[1:-1])
    removed: set[int] = set()
    for v in interior:
        removed |= g.closed_neighborhood(v)
    head = R[-1]
    allowed = (set(range(g.n)) - removed) | {head}
    comp = {head}
    todo = [head]
    while todo:
        u = todo.pop()
        for w in g.neighbors(u):
            if w in allowed and w not in comp:
                comp.add(w)
                todo.append(w)
    terms = frozenset(terminals)
    return frozenset(comp & terms)


WINDOW_TRACE = 5


def _ahead(g: Graph, R: tuple[int, ...], terms: frozenset[int]) -> frozenset[int]:
    # window vertices are never "ahead"; for short windows this removes the
    # start terminal the count bookkeeping already includes
    return ahead_set(g, R, terms) - set(R)


def _counted_legs(g: Graph, R: tuple[int, ...], terms: frozenset[int]) -> frozenset[int]:
    """Leg terminals already counted that are still attached to the window.

    Legs of a central vertex are counted the moment it gets a successor,
    so every terminal neighbor of a non-head window vertex has been
    counted; legs attached further back cannot touch new vertices in an
    AT-free graph (the cycle would be too long)."""
    near: set[int] = set()
    for w in R[:-1]:
        near |= g.neighbors(w)
    return (terms & frozenset(near)) - set(R)


def _ahead_tree(g: Graph, R: tuple[int, ...], terms: frozenset[int]) -> frozenset[int]:
    return ahead_set(g, R, terms) - set(R) - _counted_legs(g, R, terms)


@dataclass(slots=True)
class _TraceEntry:
    r: int
    window: tuple[int, ...]
    parent: Optional["_TraceEntry"]
    vertex: int
    legs: tuple[int, ...]


def _trace_path(g: Graph, entry: _TraceEntry) -> list[int]:
    out = []
    cur: Optional[_TraceEntry] = entry
    while cur is not None:
        out.append(cur.vertex)
        cur = cur.parent
    out.reverse()
    return out


def k_in_a_path(
    g: Graph, terminals: Iterable[int]
) -> tuple[bool, Optional[list[int]]]:
    """Is there an induced path containing every terminal?  Returns a
    witness path on yes."""
    _require_at_free(g)
    terms = frozenset(terminals)
    for v in terms:
        g.check_vertex(v)
    k = len(terms)
    if k == 0:
        return True, []

    seen: set[tuple[int, tuple[int, ...]]] = set()
    queue: deque[_TraceEntry] = deque()
    for x in sorted(terms):
        e = _TraceEntry(1, (x,), None, x, ())
        if k == 1:
            return True, [x]
        seen.add((1, (x,)))
        queue.append(e)

    while queue:
        e = queue.popleft()
        head = e.window[-1]
        ahead = _ahead(g, e.window, terms)
        for v in sorted(g.neighbors(head)):
            if v in e.window or any(g.has_edge(v, w) for w in e.window[:-1]):
                continue
            grown = e.window + (v,)
            ahead_after = ahead - {v}
            if ahead_after != _ahead(g, grown, terms):
                continue
            r_new = e.r + len(ahead) - len(ahead_after)
            window = grown[1:] if len(e.window) == WINDOW_TRACE else grown
            entry = _TraceEntry(r_new, window, e, v, ())
            if r_new == k:
                path = _trace_path(g, entry)
                _certify_path(g, path, terms)
                return True, path
            key = (r_new, window)
            if key not in seen:
                seen.add(key)
                queue.append(entry)
    return False, None


def _certify_path(g: Graph, path: list[int], terms: frozenset[int]) -> None:
    if not is_induced_path(g, path) or not terms <= set(path):
        raise InternalInvariantError("traced witness path failed certification")


def k_in_a_tree(
    g: Graph, terminals: Iterable[int]
) -> tuple[bool, Optional[frozenset[int]]]:
    """Is there an induced tree containing every terminal?

    In an AT-free graph every induced tree is a caterpillar, so the search
    traces an induced central path and hangs terminal legs off it.
    Returns the tree's vertex set on yes.
    """
    _require_at_free(g)
    terms = frozenset(terminals)
    for v in terms:
        g.check_vertex(v)
    k = len(terms)
    if k == 0:
        return True, frozenset()

    seen: set[tuple[int, tuple[int, ...]]] = set()
    queue: deque[_TraceEntry] = deque()
    for x in sorted(terms):
        if k == 1:
            return True, frozenset((x,))
        seen.add((1, (x,)))
        queue.append(_TraceEntry(1, (x,), None, x, ()))

    while queue:
        e = queue.popleft()
        head = e.window[-1]
        ahead = _ahead_tree(g, e.window, terms)
        counted = _counted_legs(g, e.window, terms)
        for v in sorted(g.neighbors(head)):
            if v in e.window or any(g.has_edge(v, w) for w in e.window[:-1]):
                continue
            # a counted leg adjacent to the new central vertex would gain a
            # second central neighbor: a short cycle no AT excludes
            if v in counted or any(g.has_edge(v, leg) for leg in counted):
                continue
            legs = tuple(sorted((g.neighbors(head) & ahead) - {v}))
            grown = e.window + (v,)
            ok = True
            for u in legs:
                if sum(1 for w in grown if g.has_edge(u, w)) != 1:
                    ok = False
                    break
                if any(g.has_edge(u, nb) for nb in counted):
                    ok = False
                    break
            if ok:
                for a, b in combinations(legs, 2):
                    if g.has_edge(a, b):
                        ok = False
                        break
            if not ok:
                continue
            ahead_after = ahead - ({v} | set(legs))
            if ahead_after != _ahead_tree(g, grown, terms):
                continue
            r_new = e.r + len(ahead) - len(ahead_after)
            window = grown[1:] if len(e.window) == WINDOW_TRACE else grown
            entry = _TraceEntry(r_new, window, e, v, legs)
            if r_new == k:
                tree = _collect_tree(g, entry, terms)
                return True, tree
            key = (r_new, window)
            if key not in seen:
                seen.add(key)
                queue.append(entry)
    return False, None


def _collect_tree(g: Graph, entry: _TraceEntry, terms: frozenset[int]) -> frozenset[int]:
    spine: list[int] = []
    legs: set[int] = set()
    cur: Optional[_TraceEntry] = entry
    while cur is not None:
        spine.append(cur.vertex)
        legs.update(cur.legs)
        cur = cur.parent
    spine.reverse()
    vs = frozenset(spine) | frozenset(legs)
    sub, old = induced_subgraph(g, vs)
    if sub.m != sub.n - 1 or not terms <= vs:
        raise InternalInvariantError("traced witness tree failed certification")
    if not is_caterpillar(sub):
        raise InternalInvariantError("traced witness tree is not a caterpillar")
    return vs


def k_in_a_cycle(
    g: Graph, terminals: Iterable[int]
) -> tuple[bool, Optional[list[int]]]:
    """Is there an induced cycle containing every terminal?

    AT-free graphs have no induced cycles with six or more vertices, so
    only subsets of size at most five need checking.
    """
    _require_at_free(g)
    terms = sorted(set(terminals))
    for v in terms:
        g.check_vertex(v)
    if len(terms) > 5:
        return False, None
    rest = [v for v in range(g.n) if v not in set(terms)]
    for size in range(max(3, len(terms)), 6):
        for extra in combinations(rest, size - len(terms)):
            vs = frozenset(terms) | frozenset(extra)
            cyc = _cycle_order(g, vs)
            if cyc is not None:
                return True, cyc
    return False, None


def _cycle_order(g: Graph, vs: frozenset[int]) -> Optional[list[int]]:
    if len(vs) < 3:
        return None
    if any(len(g.neighbors(v) & vs) != 2 for v in vs):
        return None
    start = min(vs)
    prev, cur = start, min(g.neighbors(start) & vs)
    order = [start]
    while cur != start:
        order.append(cur)
        nxts = [w for w in g.neighbors(cur) & vs if w != prev]
        if len(nxts) != 1:
            return None
        prev, cur = cur, nxts[0]
    return order if len(order) == len(vs) else None


# -- all terminal pairs coincide ---------------------------------------------


def _induced_st_paths_bounded(g: Graph, s: int, t: int, max_len: int) -> list[list[int]]:
    """Induced s-t paths with between 3 and ``max_len`` edges."""
    out: list[list[int]] = []
    stack: list[list[int]] = [[s]]
    while stack:
        path = stack.pop()
        if len(path) - 1 >= max_len:
            continue
        head = path[-1]
        for w in g.adj_sorted(head):
            if w in path or any(g.has_edge(w, v) for v in path[:-1]):
                continue
            if w == t:
                if len(path) >= 3:
                    out.append(path + [w])
            else:
                stack.append(path + [w])
    out.sort()
    return out


def _coinciding_compatible(g: Graph, p: list[int], q: list[int]) -> bool:
    pi, qi = set(p[1:-1]), set(q[1:-1])
    if pi & qi:
        return False
    return not any(g.has_edge(a, b) for a in pi for b in qi)


def verify_coinciding(
    g: Graph, s: int, t: int, k: int, paths: Optional[list[list[int]]]
) -> bool:
    """Witness check for the coinciding-pairs solver.

    Every path must run from s to t; paths are internally disjoint with no
    edges between internal vertices of different paths; each path is
    induced except that the s-t edge itself is tolerated as a chord (it is
    unavoidable when s and t are adjacent); the bare edge path may appear
    at most once.
    """
    if paths is None or len(paths) != k:
        return False
    edge_paths = 0
    for p in paths:
        if len(p) < 2 or p[0] != s or p[-1] != t or len(set(p)) != len(p):
            return False
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                return False
        for i in range(len(p)):
            for j in range(i + 2, len(p)):
                if g.has_edge(p[i], p[j]) and {p[i], p[j]} != {s, t}:
                    return False
        if len(p) == 2:
            edge_paths += 1
    if edge_paths > 1:
        return False
    for a in range(len(paths)):
        for b in range(a + 1, len(paths)):
            if not _coinciding_compatible(g, paths[a], paths[b]):
                return False
    return True


def coinciding_pairs(
    g: Graph, s: int, t: int, k: int
) -> tuple[bool, Optional[list[list[int]]]]:
    """Can k copies of the pair (s, t) be routed simultaneously?

    Structure on AT-free graphs: every routed path has length at most 4,
    at most two have length 3 or more, and after removing those long paths
    with their neighborhoods the rest are single middle vertices, i.e. an
    independent set of common neighbors.
    """
    if s == t:
        raise PreconditionViolatedError("coinciding pair needs two distinct vertices")
    g.check_vertex(s)
    g.check_vertex(t)
    if k <= 0:
        return True, []
    from .graph import bfs_shortest_path

    if k == 1:
        path = bfs_shortest_path(g, s, t)
        return (True, [path]) if path is not None else (False, None)

    adjacent = g.has_edge(s, t)
    long_cands = _induced_st_paths_bounded(g, s, t, 4)
    for r in (0, 1, 2):
        k_prime = k - r - (1 if adjacent else 0)
        if k_prime < 0:
            continue
        for chosen in combinations(long_cands, r):
            if any(
                not _coinciding_compatible(g, a, b)
                for a, b in combinations(chosen, 2)
            ):
                continue
            dead: set[int] = set()
            for p in chosen:
                for w in p[1:-1]:
                    dead.add(w)
                    dead |= g.neighbors(w)
            dead -= {s, t}
            alive = set(range(g.n)) - dead
            common = sorted(
                v for v in (g.neighbors(s) & g.neighbors(t))
                if v in alive and v != s and v != t
            )
            middles = _independent_subset(g, common, k_prime)
            if middles is None:
                continue
            paths = [list(p) for p in chosen]
            if adjacent:
                paths.append([s, t])
            paths.extend([s, w, t] for w in middles)
            return True, paths
    return False, None


def _independent_subset(g: Graph, pool: list[int], size: int) -> Optional[list[int]]:
    """Lexicographically first independent subset of the given size."""
    if size == 0:
        return []
    chosen: list[int] = []

    def grow(idx: int) -> bool:
        if len(chosen) == size:
            return True
        if size - len(chosen) > len(pool) - idx:
            return False
        for j in range(idx, len(pool)):
            v = pool[j]
            if all(not g.has_edge(v, c) for c in chosen):
                chosen.append(v)
                if grow(j + 1):
                    return True
                chosen.pop()
        return False

    return chosen if grow(0) else None


# -- induced topological minors ------------------------------------------------


@dataclass(frozen=True)
class AnchoredPattern:
    h: Graph
    anchors: tuple[tuple[int, int], ...]   # (g vertex, h vertex) covering V_H

    def validate(self, g: Graph) -> None:
        g_vs = [a for a, _ in self.anchors]
        h_vs = [b for _, b in self.anchors]
        if len(set(g_vs)) != len(g_vs):
            raise PreconditionViolatedError("anchor g-vertices must be distinct")
        if sorted(h_vs) != list(range(self.h.n)):
            raise PreconditionViolatedError("anchors must cover the pattern exactly once")
        for v in g_vs:
            g.check_vertex(v)


def anchored_itm(g: Graph, pattern: AnchoredPattern) -> bool:
    """Does g contain the pattern as an induced topological minor with the
    prescribed branch-vertex images?"""
    _require_at_free(g)
    return _anchored_itm_checked(g, pattern)


def _anchored_itm_checked(g: Graph, pattern: AnchoredPattern) -> bool:
    pattern.validate(g)
    h = pattern.h
    anchor_of = {hv: gv for gv, hv in pattern.anchors}
    anchor_vs = set(anchor_of.values())
    # branch images must reproduce the pattern's non-adjacencies: an induced
    # subgraph containing two adjacent anchors contains that edge, which no
    # subdivision of a non-edge can carry
    for p in range(h.n):
        for q in range(p + 1, h.n):
            if not h.has_edge(p, q) and g.has_edge(anchor_of[p], anchor_of[q]):
                return False
    isolated = [hv for hv in range(h.n) if h.degree(hv) == 0]
    for hv in isolated:
        a = anchor_of[hv]
        if g.neighbors(a) & (anchor_vs - {a}):
            return False
    alive = set(range(g.n))
    for hv in isolated:
        alive -= g.closed_neighborhood(anchor_of[hv])
    if len(isolated) == h.n:
        return True
    sub, old_ids = induced_subgraph(g, alive)
    new_of = {old: new for new, old in enumerate(old_ids)}
    pairs = [
        (new_of[anchor_of[u]], new_of[anchor_of[v]])
        for u, v in h.edges()
    ]
    ok, _ = solve_idp(Instance.make(sub, pairs))
    return ok


def itm(g: Graph, h: Graph, budget: int = 4) -> bool:
    """Does g contain h as an induced topological minor?

    Enumerates all ordered anchor tuples, so the pattern size is capped by
    ``budget`` (n^|V_H| blowup).
    """
    _require_at_free(g)
    if h.n > budget:
        raise BudgetExceededError(
            f"pattern has {h.n} vertices, allowed budget is {budget}"
        )
    if h.n == 0:
        return True
    if h.n > g.n:
        return False
    for tup in permutations(range(g.n), h.n):
        pattern = AnchoredPattern(h, tuple((tup[i], i) for i in range(h.n)))
        if _anchored_itm_checked(g, pattern):
            return True
    return False
