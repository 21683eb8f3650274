"""Decision-and-search core for induced disjoint paths on AT-free graphs.

Pipeline per instance: validation and reduction (preprocess), auxiliary
graph H and its AT-freeness test, interference graph and decomposition
into independent chains, then a two-level dynamic program per chain:

  sol(i, Y)          -- are components 1..i jointly realizable when the
                        non-terminal N(Z_i) vertices used by component i
                        form a subset of Y?
  component(i, X, Y) -- is component i alone realizable with its paths not
                        adjacent to X and its N(Z_i) usage inside Y?

component() traces a walk through F_i (the graph with every other
component's terminal neighborhoods deleted) that subdivides the dominating
path D_i of H_i, keeping only a five-vertex window of the walk, the
template position on D_i, and the short connector paths currently in
scope.  AT-freeness guarantees the window suffices: any defect of a traced
walk shows up within five consecutive vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Optional, Sequence

from .atfree import find_asteroidal_triple, find_dominating_pair, dominating_path
from .errors import InternalInvariantError, NotATFreeError, PreconditionViolatedError
from .graph import Graph, induced_subgraph, is_induced_path
from .preprocess import Instance, Verdict, _gi_vertices, preprocess, validate_instance
from .structure import (
    PATH_VERTEX,
    TERMINAL,
    AuxiliaryH,
    build_H,
    build_interference_graph,
    compute_Zi,
    decompose_step6,
    order_components,
    step5,
)

Solution = list[list[int]]

# Window of the traced walk kept in a table entry.
WINDOW = 5
# Cap on the non-terminal connector vertices one entry may hold in scope:
# at most 9 window-near terminals contribute at most 5 helpers each, plus
# the 2 vertices a dominating path may fail to dominate.
MAX_SCOPED_VERTICES = 47
# Cap on the enumerated X/Y sets: two cover terminals, at most five pairs each.
MAX_XY = 10


@dataclass
class SolveStats:
    n: int = 0
    m: int = 0
    k: int = 0
    components: int = 0
    interference_edges: int = 0
    subinstances: int = 0
    table_entries: int = 0
    component_calls: int = 0
    sol_calls: int = 0
    max_scoped_vertices: int = 0
    max_connector_length: int = 0
    max_undominated: int = 0


# -- solution verifier ------------------------------------------------------


def _paths_pair_ok(
    g: Graph, p: Sequence[int], q: Sequence[int],
    p_ends: frozenset[int], q_ends: frozenset[int],
) -> bool:
    """Sharing/adjacency conditions between two paths: a shared vertex must
    be an end-vertex of both; an inner vertex may be adjacent to the other
    path only at a vertex that is an end-vertex of both."""
    pset, qset = set(p), set(q)
    for v in pset & qset:
        if v not in p_ends or v not in q_ends:
            return False
    shared_ends = p_ends & q_ends
    p_inner = pset - p_ends
    q_inner = qset - q_ends
    for u in pset:
        for v in qset:
            if u == v or not g.has_edge(u, v):
                continue
            if u in p_inner and v not in shared_ends:
                return False
            if v in q_inner and u not in shared_ends:
                return False
    return True


def verify_solution(inst: Instance, sol: Optional[Solution]) -> bool:
    """Check all four solution conditions against the instance.

    Endpoints may appear in either orientation; malformed input returns
    False rather than raising.
    """
    if sol is None or len(sol) != inst.k:
        return False
    g = inst.g
    ends = []
    for (s, t), path in zip(inst.pairs, sol):
        if not path or len(path) < 2:
            return False
        if {path[0], path[-1]} != {s, t}:
            return False
        if not is_induced_path(g, path):
            return False
        ends.append(frozenset((s, t)))
    for i in range(len(sol)):
        for j in range(i + 1, len(sol)):
            if not _paths_pair_ok(g, sol[i], sol[j], ends[i], ends[j]):
                return False
    return True


# -- terminal layout along a dominating path --------------------------------


@dataclass(frozen=True)
class TerminalLayout:
    tokens: tuple[tuple[str, int], ...]   # ('terminal', g vertex) | ('path-vertex', pair)
    u_list: tuple[int, ...]               # terminal g-vertices on D in order
    u_pos: dict[int, int]                 # on-D terminal -> ordinal in u_list
    u_sets: tuple[frozenset[int], ...]    # terminal cluster U_j per ordinal
    on_d_pairs: frozenset[int]            # pairs whose connector vertex lies on D
    term_of: tuple[Optional[int], ...]    # walk-extension pair per token position
    first_idx: dict[int, int]             # terminal g-vertex -> first cluster ordinal
    oriented: dict[int, tuple[int, int]]  # pair -> (front, back) terminals


def terminal_layout(auxh: AuxiliaryH, i: int, d_path: Sequence[int]) -> TerminalLayout:
    """Layout data for component ``i`` (0-based) along the h-id path ``d_path``.

    The path must be a dominating path of the component with terminal
    endpoints.  Produces the terminal order, the per-position terminal
    clusters U_j, the traced pair set, and the template map for the walk DP.
    """
    comp = auxh.components[i]
    h = auxh.h
    dset = set(d_path)
    if not dset <= comp.vertices:
        raise PreconditionViolatedError("path leaves the component")
    for a, b in zip(d_path, d_path[1:]):
        if not h.has_edge(a, b):
            raise PreconditionViolatedError("input is not a path in H")
    covered = set(d_path)
    for v in d_path:
        covered |= h.neighbors(v)
    if not comp.vertices <= covered:
        raise PreconditionViolatedError("path does not dominate the component")
    if auxh.kind[d_path[0]] != TERMINAL or auxh.kind[d_path[-1]] != TERMINAL:
        raise PreconditionViolatedError("path endpoints must be terminals")

    tokens: list[tuple[str, int]] = []
    u_list: list[int] = []
    for hv in d_path:
        if auxh.kind[hv] == TERMINAL:
            gv = auxh.to_g[hv]
            tokens.append((TERMINAL, gv))
            u_list.append(gv)
        else:
            tokens.append((PATH_VERTEX, auxh.pair_of[hv]))

    on_d = frozenset(
        auxh.pair_of[hv] for hv in d_path if auxh.kind[hv] == PATH_VERTEX
    )

    on_d_terms = set(u_list)
    u_sets: list[frozenset[int]] = []
    for gv in u_list:
        hv = auxh.g_to_h[gv]
        cluster = {
            auxh.to_g[w]
            for w in h.neighbors(hv)
            if auxh.kind[w] == TERMINAL and auxh.to_g[w] not in on_d_terms
        }
        cluster.add(gv)
        u_sets.append(frozenset(cluster))

    all_terms: set[int] = set()
    for s in u_sets:
        all_terms |= s
    if all_terms != set(comp.terminals):
        raise InternalInvariantError(
            "terminal clusters along the dominating path must cover the component"
        )

    first_idx: dict[int, int] = {}
    for j, s in enumerate(u_sets):
        for v in s:
            first_idx.setdefault(v, j)

    oriented: dict[int, tuple[int, int]] = {}
    for l in comp.pair_indices:
        pv = auxh.path_vertex_of_pair[l]
        a_h, b_h = sorted(auxh.h.neighbors(pv))
        a, b = auxh.to_g[a_h], auxh.to_g[b_h]
        if first_idx[a] > first_idx[b]:
            a, b = b, a
        elif first_idx[a] == first_idx[b]:
            raise InternalInvariantError("pair terminals share a first cluster")
        oriented[l] = (a, b)

    term_of: list[Optional[int]] = []
    for pos, tok in enumerate(tokens):
        if tok[0] == PATH_VERTEX:
            term_of.append(tok[1])
        elif pos + 1 < len(tokens) and tokens[pos + 1][0] == PATH_VERTEX:
            term_of.append(tokens[pos + 1][1])
        else:
            term_of.append(None)

    return TerminalLayout(
        tokens=tuple(tokens),
        u_list=tuple(u_list),
        u_pos={gv: j for j, gv in enumerate(u_list)},
        u_sets=tuple(u_sets),
        on_d_pairs=on_d,
        term_of=tuple(term_of),
        first_idx=first_idx,
        oriented=oriented,
    )


# -- the component walk DP ---------------------------------------------------


@dataclass(slots=True)
class _Entry:
    ell: int
    zpos: int
    window: tuple[int, ...]
    scoped: tuple[tuple[int, tuple[int, ...]], ...]  # (pair, internals) in scope
    nv: frozenset[int]                               # union of scoped internals
    parent: Optional["_Entry"]
    vertex: int                                      # walk vertex appended here
    added: tuple[tuple[int, tuple[int, ...]], ...]   # (pair, full path) chosen here


@dataclass(frozen=True)
class _ComponentData:
    index: int
    layout: TerminalLayout
    f_vertices: frozenset[int]
    offd_candidates: dict[int, list[tuple[int, ...]]]  # pair -> full paths front..back
    d_path_h: tuple[int, ...]


class _ChainSolver:
    """Solves one subinstance whose interference graph is a single path.

    ``auxh`` must already be ordered so interference holds only between
    consecutive components.
    """

    def __init__(self, inst: Instance, auxh: AuxiliaryH, stats: Optional[SolveStats] = None):
        self.inst = inst
        self.g = inst.g
        self.auxh = auxh
        self.r = auxh.r
        self.stats = stats if stats is not None else SolveStats()
        self.terminals = inst.terminal_set()
        self.gl = {
            l: frozenset(_gi_vertices(self.g, inst.pairs, l))
            for l in range(inst.k)
        }
        self.z: dict[int, frozenset[int]] = {0: frozenset(), self.r: frozenset()}
        for i in range(1, self.r):
            self.z[i] = compute_Zi(inst, auxh, i)
        self.nz_nonterm: dict[int, tuple[int, ...]] = {}
        for i in range(self.r + 1):
            zi = self.z.get(i, frozenset())
            nz = self.g.neighborhood_of_set(zi) if zi else frozenset()
            self.nz_nonterm[i] = tuple(sorted(v for v in nz if v not in self.terminals))
        self.comp_data = [self._build_component_data(ci) for ci in range(self.r)]
        self._sol_memo: dict[tuple[int, frozenset[int]], bool] = {}
        self._sol_witness: dict[
            tuple[int, frozenset[int]], tuple[frozenset[int], dict[int, list[int]]]
        ] = {}
        self._comp_memo: dict[
            tuple[int, frozenset[int], frozenset[int]],
            tuple[bool, Optional[dict[int, list[int]]]],
        ] = {}

    # -- per-component precomputation ------------------------------------

    def _build_component_data(self, ci: int) -> _ComponentData:
        comp = self.auxh.components[ci]
        hi, old_ids = induced_subgraph(self.auxh.h, comp.vertices)
        new_of = {old: new for new, old in enumerate(old_ids)}
        local_terms = sorted(new_of[self.auxh.g_to_h[t]] for t in comp.terminals)
        pair_local = find_dominating_pair(hi, restrict=local_terms)
        if pair_local is None:
            raise InternalInvariantError(
                "connected AT-free component without a terminal dominating pair"
            )
        prio = [v for v in range(hi.n) if self.auxh.kind[old_ids[v]] == PATH_VERTEX]
        d_local = dominating_path(hi, pair_local[0], pair_local[1], prio)
        d_h = tuple(old_ids[v] for v in d_local)
        self._check_path_load(ci, d_h)
        layout = terminal_layout(self.auxh, ci, d_h)

        removed: set[int] = set()
        for cj in range(self.r):
            if cj == ci:
                continue
            for u in self.auxh.components[cj].terminals:
                removed |= self.g.closed_neighborhood(u)
        f_vertices = frozenset(range(self.g.n)) - removed
        if not set(comp.terminals) <= f_vertices:
            raise InternalInvariantError("component terminal lost while building F")

        cands: dict[int, list[tuple[int, ...]]] = {}
        for l in comp.pair_indices:
            if l not in layout.on_d_pairs:
                cands[l] = self._enumerate_connectors(l, layout, f_vertices)
        return _ComponentData(ci, layout, f_vertices, cands, d_h)

    def _check_path_load(self, ci: int, d_h: tuple[int, ...]) -> None:
        """Structural bounds every dominating path satisfies on AT-free
        inputs: it meets every pair, and each of its vertices sees at most
        five off-path connector vertices and two off-path terminals."""
        comp = self.auxh.components[ci]
        dset = set(d_h)
        for l in comp.pair_indices:
            pv = self.auxh.path_vertex_of_pair[l]
            if pv not in dset and not (self.auxh.h.neighbors(pv) & dset):
                raise InternalInvariantError("dominating path misses a pair")
        for hv in d_h:
            off = [w for w in self.auxh.h.neighbors(hv) if w not in dset]
            off_pv = sum(1 for w in off if self.auxh.kind[w] == PATH_VERTEX)
            off_t = sum(1 for w in off if self.auxh.kind[w] == TERMINAL)
            if off_pv > 5 or off_t > 2:
                raise InternalInvariantError(
                    "dominating path vertex exceeds AT-free adjacency bounds"
                )

    def _enumerate_connectors(
        self, l: int, layout: TerminalLayout, f_vertices: frozenset[int]
    ) -> list[tuple[int, ...]]:
        """All induced front-back paths of length 2 or 3 for pair ``l``
        inside both its private graph and F_i."""
        front, back = layout.oriented[l]
        g = self.g
        allowed = (self.gl[l] & f_vertices) - {front, back}
        out: list[tuple[int, ...]] = []
        for w in sorted(g.neighbors(front) & g.neighbors(back) & allowed):
            out.append((front, w, back))
        near_back = g.neighbors(back) & allowed
        for w1 in sorted(g.neighbors(front) & allowed):
            if w1 in g.neighbors(back):
                continue
            for w2 in sorted(g.neighbors(w1) & near_back):
                if w2 not in g.neighbors(front):
                    out.append((front, w1, w2, back))
        return out

    # -- filters -----------------------------------------------------------

    def nz_nonterm_set(self, i: int) -> frozenset[int]:
        return frozenset(self.nz_nonterm[i])

    def _xy_ok_vertex(self, v: int, X: frozenset[int], ci: int, Y: frozenset[int]) -> bool:
        g = self.g
        if any(g.has_edge(v, x) for x in X):
            return False
        if v in self.nz_nonterm_set(ci + 1) and v not in Y:
            return False
        return True

    def _u_of_window(self, layout: TerminalLayout, window: tuple[int, ...]) -> frozenset[int]:
        out: set[int] = set()
        for v in window:
            j = layout.u_pos.get(v)
            if j is not None:
                out |= layout.u_sets[j]
        return frozenset(out)

    def _connector_fits(
        self,
        path: tuple[int, ...],
        forbidden: frozenset[int],
        X: frozenset[int],
        ci: int,
        Y: frozenset[int],
    ) -> bool:
        front, back = path[0], path[-1]
        g = self.g
        for w in path[1:-1]:
            if w in forbidden:
                return False
            if not self._xy_ok_vertex(w, X, ci, Y):
                return False
            for v in forbidden:
                if v != front and v != back and g.has_edge(w, v):
                    return False
        return True

    def _connectors_compatible(self, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
        return _paths_pair_ok(
            self.g, a, b, frozenset((a[0], a[-1])), frozenset((b[0], b[-1]))
        )

    # -- component DP --------------------------------------------------------

    def component(
        self, i: int, X: Iterable[int], Y: Iterable[int]
    ) -> tuple[bool, Optional[dict[int, list[int]]]]:
        """Solve component ``i`` (1-based) under side conditions X and Y.

        Returns the verdict and, on yes, a pair-index -> path map with
        paths oriented front to back along the layout.
        """
        Xf, Yf = frozenset(X), frozenset(Y)
        ci = i - 1
        if not (0 <= ci < self.r):
            raise PreconditionViolatedError(f"component index {i} out of range")
        if len(Xf) > MAX_XY or len(Yf) > MAX_XY:
            raise PreconditionViolatedError("X and Y are limited to 10 vertices each")
        if not Xf <= self.nz_nonterm_set(ci):
            raise PreconditionViolatedError(
                "X must consist of non-terminal cover neighbors of the previous component"
            )
        if not Yf <= self.nz_nonterm_set(ci + 1):
            raise PreconditionViolatedError(
                "Y must consist of non-terminal cover neighbors of this component"
            )
        key = (ci, Xf, Yf)
        if key in self._comp_memo:
            return self._comp_memo[key]
        self.stats.component_calls += 1
        result = self._run_component(ci, Xf, Yf)
        self._comp_memo[key] = result
        return result

    def _run_component(
        self, ci: int, X: frozenset[int], Y: frozenset[int]
    ) -> tuple[bool, Optional[dict[int, list[int]]]]:
        data = self.comp_data[ci]
        layout = data.layout
        g = self.g
        tokens = layout.tokens
        last_pos = len(tokens) - 1
        fset = data.f_vertices

        cands: dict[int, list[tuple[int, ...]]] = {
            l: [
                p for p in paths
                if all(self._xy_ok_vertex(w, X, ci, Y) for w in p[1:-1])
            ]
            for l, paths in data.offd_candidates.items()
        }

        seen: set[tuple] = set()
        queue: deque[_Entry] = deque()
        accepted: list[_Entry] = []

        def push(entry: _Entry) -> None:
            if len(entry.nv) > MAX_SCOPED_VERTICES:
                return
            key = (entry.zpos, entry.window, entry.scoped)
            if key in seen:
                return
            seen.add(key)
            self.stats.table_entries += 1
            self.stats.max_scoped_vertices = max(
                self.stats.max_scoped_vertices, len(entry.nv)
            )
            if entry.zpos == last_pos and not accepted:
                accepted.append(entry)
            queue.append(entry)

        x0 = layout.u_list[0]
        exposed0 = [
            l for l in sorted(cands)
            if set(layout.oriented[l]) & self._u_of_window(layout, (x0,))
        ]
        for combo in self._connector_combos(
            exposed0, cands, (x0,), (x0,), frozenset(), X, ci, Y
        ):
            scoped = tuple(sorted((l, p[1:-1]) for l, p in combo))
            nv = frozenset(w for _, ints in scoped for w in ints)
            push(_Entry(0, 0, (x0,), scoped, nv, None, x0, tuple(combo)))

        while queue and not accepted:
            e = queue.popleft()
            if e.zpos == last_pos:
                continue
            head = e.window[-1]
            rest = e.window[:-1]
            for u in sorted(g.neighbors(head) & fset):
                if u in e.window:
                    continue
                if any(g.has_edge(u, w) for w in rest):
                    continue
                if u in self.terminals:
                    self._case_terminal(e, u, ci, X, Y, cands, push)
                else:
                    self._case_connector(e, u, ci, X, Y, push)

        if not accepted:
            return False, None
        paths = self._reconstruct(ci, accepted[0])
        self._verify_component_result(ci, X, Y, paths)
        return True, paths

    def _slide(
        self, e: _Entry, u: int, layout: TerminalLayout
    ) -> tuple[tuple[int, ...], tuple[tuple[int, tuple[int, ...]], ...]]:
        """Window slide; dropping a terminal prunes out-of-scope connectors."""
        if len(e.window) < WINDOW:
            return e.window + (u,), e.scoped
        dropped = e.window[0]
        wnew = e.window[1:] + (u,)
        if dropped not in self.terminals:
            return wnew, e.scoped
        live = self._u_of_window(layout, wnew)
        scoped = tuple(
            (l, ints) for l, ints in e.scoped
            if set(layout.oriented[l]) & live
        )
        return wnew, scoped

    def _case_connector(self, e: _Entry, u: int, ci: int,
                        X: frozenset[int], Y: frozenset[int], push) -> None:
        """Extend the walk by a non-terminal vertex implementing the current
        template connector."""
        layout = self.comp_data[ci].layout
        tokens = layout.tokens
        if u in e.nv or any(self.g.has_edge(u, w) for w in e.nv):
            return
        if not self._xy_ok_vertex(u, X, ci, Y):
            return
        if tokens[e.zpos][0] == PATH_VERTEX:
            znew = e.zpos
        elif e.zpos + 1 < len(tokens) and tokens[e.zpos + 1][0] == PATH_VERTEX:
            znew = e.zpos + 1
        else:
            return
        if u not in self.gl[tokens[znew][1]]:
            return
        wnew, scoped = self._slide(e, u, layout)
        nv = frozenset(w for _, ints in scoped for w in ints)
        push(_Entry(e.ell + 1, znew, wnew, scoped, nv, e, u, ()))

    def _case_terminal(self, e: _Entry, u: int, ci: int,
                       X: frozenset[int], Y: frozenset[int],
                       cands: dict[int, list[tuple[int, ...]]], push) -> None:
        """Extend the walk by the next template terminal, choosing connector
        paths for pairs that just entered the window's scope."""
        layout = self.comp_data[ci].layout
        tokens = layout.tokens
        if e.zpos + 1 >= len(tokens) or tokens[e.zpos + 1] != (TERMINAL, u):
            return
        znew = e.zpos + 1
        wnew, scoped = self._slide(e, u, layout)
        u_old = self._u_of_window(layout, e.window)
        u_new = self._u_of_window(layout, wnew)
        in_scope = {l for l, _ in scoped}
        newly = [
            l for l in sorted(cands)
            if l not in in_scope
            and not (set(layout.oriented[l]) & u_old)
            and (set(layout.oriented[l]) & u_new)
        ]
        for combo in self._connector_combos(
            newly, cands, e.window, wnew, e.nv, X, ci, Y
        ):
            scoped2 = tuple(sorted(scoped + tuple((l, p[1:-1]) for l, p in combo)))
            nv = frozenset(w for _, ints in scoped2 for w in ints)
            push(_Entry(e.ell + 1, znew, wnew, scoped2, nv, e, u, tuple(combo)))

    def _connector_combos(
        self,
        pairs_needed: list[int],
        cands: dict[int, list[tuple[int, ...]]],
        window_old: tuple[int, ...],
        window_new: tuple[int, ...],
        nv_old: frozenset[int],
        X: frozenset[int],
        ci: int,
        Y: frozenset[int],
    ) -> Iterator[list[tuple[int, tuple[int, ...]]]]:
        """All consistent choices of one connector path per newly exposed
        pair (a single empty combination when none are needed)."""
        if not pairs_needed:
            yield []
            return
        forbidden = frozenset(window_old) | frozenset(window_new) | nv_old
        per_pair: list[list[tuple[int, ...]]] = []
        for l in pairs_needed:
            fits = [
                p for p in cands.get(l, [])
                if self._connector_fits(p, forbidden, X, ci, Y)
            ]
            if not fits:
                return
            per_pair.append(fits)
        for choice in product(*per_pair):
            ok = True
            for a in range(len(choice)):
                for b in range(a + 1, len(choice)):
                    if not self._connectors_compatible(choice[a], choice[b]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                yield list(zip(pairs_needed, choice))

    # -- reconstruction and certification ------------------------------------

    def _reconstruct(self, ci: int, accept: _Entry) -> dict[int, list[int]]:
        layout = self.comp_data[ci].layout
        walk: list[int] = []
        chosen: dict[int, tuple[int, ...]] = {}
        cur: Optional[_Entry] = accept
        while cur is not None:
            walk.append(cur.vertex)
            for l, p in cur.added:
                chosen.setdefault(l, p)   # first seen walking backwards = last chosen
            cur = cur.parent
        walk.reverse()

        term_positions = [(idx, v) for idx, v in enumerate(walk) if v in self.terminals]
        if tuple(v for _, v in term_positions) != layout.u_list:
            raise InternalInvariantError("walk does not visit terminals in order")

        tok_term_pos = [
            idx for idx, tok in enumerate(layout.tokens) if tok[0] == TERMINAL
        ]
        paths: dict[int, list[int]] = {}
        for j in range(len(layout.u_list) - 1):
            lo = term_positions[j][0]
            hi = term_positions[j + 1][0]
            between = layout.tokens[tok_term_pos[j] + 1: tok_term_pos[j + 1]]
            segment = walk[lo: hi + 1]
            if between and between[0][0] == PATH_VERTEX:
                if len(segment) < 3:
                    raise InternalInvariantError("traced connector shorter than two edges")
                paths[between[0][1]] = segment
            elif len(segment) != 2:
                raise InternalInvariantError("direct template edge traced with a detour")
        for l, p in chosen.items():
            paths[l] = list(p)
        if set(paths) != set(self.auxh.components[ci].pair_indices):
            raise InternalInvariantError("component solution misses a pair")
        return paths

    def _walk_of(self, ci: int, paths: dict[int, list[int]]) -> list[int]:
        """Stitch the traced walk back together from the on-template paths."""
        layout = self.comp_data[ci].layout
        walk = [layout.u_list[0]]
        tok_term_pos = [
            idx for idx, tok in enumerate(layout.tokens) if tok[0] == TERMINAL
        ]
        for j in range(len(layout.u_list) - 1):
            between = layout.tokens[tok_term_pos[j] + 1: tok_term_pos[j + 1]]
            if between and between[0][0] == PATH_VERTEX:
                walk.extend(paths[between[0][1]][1:])
            else:
                walk.append(layout.u_list[j + 1])
        return walk

    def _verify_component_result(
        self, ci: int, X: frozenset[int], Y: frozenset[int],
        paths: dict[int, list[int]],
    ) -> None:
        """Certify a yes answer: each path induced with correct endpoints,
        connectors short, everything mutually induced, the traced walk an
        induced path dominating all but at most two used vertices, and the
        X/Y side conditions honored."""
        g = self.g
        layout = self.comp_data[ci].layout
        items = sorted(paths.items())
        for l, p in items:
            if not is_induced_path(g, p):
                raise InternalInvariantError("component produced a non-induced path")
            if (p[0], p[-1]) != layout.oriented[l]:
                raise InternalInvariantError("component path endpoints wrong")
            if l not in layout.on_d_pairs:
                length = len(p) - 1
                self.stats.max_connector_length = max(
                    self.stats.max_connector_length, length
                )
                if length > 3:
                    raise InternalInvariantError("off-template connector too long")
        for a in range(len(items)):
            for b in range(a + 1, len(items)):
                pa, pb = items[a][1], items[b][1]
                if not _paths_pair_ok(
                    g, pa, pb,
                    frozenset((pa[0], pa[-1])), frozenset((pb[0], pb[-1])),
                ):
                    raise InternalInvariantError("component paths are not mutually induced")
        walk = self._walk_of(ci, paths)
        if not is_induced_path(g, walk):
            raise InternalInvariantError("traced dominating path is not induced")
        hull: set[int] = set()
        for v in walk:
            hull.add(v)
            hull |= g.neighbors(v)
        body = set(self.auxh.components[ci].terminals) | set(walk)
        for _, p in items:
            body |= set(p)
        missed = len(body - hull)
        self.stats.max_undominated = max(self.stats.max_undominated, missed)
        if missed > 2:
            raise InternalInvariantError("traced path misses too many used vertices")
        used_nonterm = {v for _, p in items for v in p if v not in self.terminals}
        for v in used_nonterm:
            if any(g.has_edge(v, x) for x in X):
                raise InternalInvariantError("solution adjacent to a forbidden X vertex")
            if v in self.nz_nonterm_set(ci + 1) and v not in Y:
                raise InternalInvariantError("solution uses an undeclared cover neighbor")

    # -- the outer recurrence --------------------------------------------------

    def _xy_subsets(self, pool: tuple[int, ...]) -> Iterator[frozenset[int]]:
        for size in range(0, min(MAX_XY, len(pool)) + 1):
            for combo in combinations(pool, size):
                yield frozenset(combo)

    def sol(self, i: int, Y: Iterable[int]) -> bool:
        """Memoized: can components 1..i be realized with component i's
        non-terminal N(Z_i) usage inside Y?"""
        Yf = frozenset(Y)
        key = (i, Yf)
        if key in self._sol_memo:
            return self._sol_memo[key]
        self.stats.sol_calls += 1
        ok = False
        if i == 1:
            ok, paths = self.component(1, frozenset(), Yf)
            if ok:
                self._sol_witness[key] = (frozenset(), paths or {})
        else:
            for X in self._xy_subsets(self.nz_nonterm[i - 1]):
                if not self.sol(i - 1, X):
                    continue
                got, paths = self.component(i, X, Yf)
                if got:
                    ok = True
                    self._sol_witness[key] = (X, paths or {})
                    break
        self._sol_memo[key] = ok
        return ok

    def solve(self) -> tuple[bool, Optional[dict[int, list[int]]]]:
        if self.r == 0:
            return True, {}
        if not self.sol(self.r, frozenset()):
            return False, None
        out: dict[int, list[int]] = {}
        y: frozenset[int] = frozenset()
        for i in range(self.r, 0, -1):
            x, paths = self._sol_witness[(i, y)]
            out.update(paths)
            y = x
        return True, out


# -- public wrappers -----------------------------------------------------------


def component(
    inst: Instance, auxh: AuxiliaryH, i: int,
    X: Iterable[int], Y: Iterable[int],
    stats: Optional[SolveStats] = None,
) -> tuple[bool, Optional[dict[int, list[int]]]]:
    """One-shot component solve on an ordered auxiliary graph (i is 1-based)."""
    return _ChainSolver(inst, auxh, stats).component(i, X, Y)


def sol(
    inst: Instance, auxh: AuxiliaryH, i: int, Y: Iterable[int],
    stats: Optional[SolveStats] = None,
) -> bool:
    """One-shot outer recurrence on an ordered auxiliary graph (i is 1-based)."""
    return _ChainSolver(inst, auxh, stats).sol(i, Y)


# -- full pipeline ---------------------------------------------------------------


def _check_terminal_structure(inst: Instance) -> None:
    """Facts that hold once H is AT-free: the terminal-induced subgraph is
    triangle-free and no vertex serves more than five pairs."""
    g = inst.g
    terms = sorted(inst.terminal_set())
    for ai, a in enumerate(terms):
        for bi in range(ai + 1, len(terms)):
            b = terms[bi]
            if not g.has_edge(a, b):
                continue
            for c in terms[bi + 1:]:
                if g.has_edge(a, c) and g.has_edge(b, c):
                    raise InternalInvariantError("terminal subgraph contains a triangle")
    load: dict[int, int] = {}
    for s, t in inst.pairs:
        load[s] = load.get(s, 0) + 1
        load[t] = load.get(t, 0) + 1
    if load and max(load.values()) > 5:
        raise InternalInvariantError("a terminal vertex serves more than five pairs")


def _oriented(path: list[int], s: int) -> list[int]:
    return path if path[0] == s else list(reversed(path))


def solve_idp(
    inst: Instance, *, stats: Optional[SolveStats] = None
) -> tuple[bool, Optional[Solution]]:
    """Full solver: verdict plus, on yes, a verified solution for the
    original instance (pairs dropped during reduction realized by their
    edges)."""
    st = stats if stats is not None else SolveStats()
    validate_instance(inst)
    st.n, st.m, st.k = inst.g.n, inst.g.m, inst.k
    triple = find_asteroidal_triple(inst.g)
    if triple is not None:
        raise NotATFreeError(triple)

    pre = preprocess(inst)
    if pre.verdict is Verdict.NO:
        return False, None
    chosen: dict[int, list[int]] = {
        idx: [inst.pairs[idx][0], inst.pairs[idx][1]] for idx in pre.removed_pairs
    }
    red = pre.instance
    if red.k > 0:
        auxh = build_H(red)
        if not step5(auxh):
            return False, None
        _check_terminal_structure(red)
        igraph = build_interference_graph(red, auxh)
        st.components = auxh.r
        st.interference_edges = len(igraph.edges)
        subs = decompose_step6(red, auxh, igraph)
        st.subinstances = len(subs)
        for sub in subs:
            sub_auxh = build_H(sub.instance)
            sub_ig = build_interference_graph(sub.instance, sub_auxh)
            ordered = order_components(sub_ig, sub_auxh)
            solver = _ChainSolver(sub.instance, ordered, st)
            ok, local_paths = solver.solve()
            if not ok:
                return False, None
            assert local_paths is not None
            for local_idx, path in local_paths.items():
                red_idx = sub.pair_map[local_idx]
                orig_idx = pre.kept_pairs[red_idx]
                orig_path = [pre.vertex_map[sub.vertex_map[v]] for v in path]
                chosen[orig_idx] = orig_path

    solution = [_oriented(chosen[i], inst.pairs[i][0]) for i in range(inst.k)]
    if not verify_solution(inst, solution):
        raise InternalInvariantError("assembled solution failed verification")
    return True, solution
