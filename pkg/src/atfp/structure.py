"""Structural phase: auxiliary graph H, interference analysis, W/Z sets.

H is the subgraph induced by the terminal vertices plus, per terminal
pair, one fresh degree-2 vertex adjacent to exactly that pair ("path
vertex").  Its connected components group the pairs; interference between
components is located near the terminals and summarized by the sets W_i
(cross-conflict vertices between consecutive components) and Z_i (at most
two terminals whose neighborhoods cover W_i).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations
from typing import Optional, Sequence

from .atfree import find_asteroidal_triple
from .errors import (
    InternalInvariantError,
    NoCoverError,
    NotUnionOfPathsError,
    SameComponentError,
)
from .graph import Graph, connected_components, induced_subgraph
from .preprocess import Instance, _gi_vertices

TERMINAL = "terminal"
PATH_VERTEX = "path-vertex"


@dataclass(frozen=True)
class HComponent:
    vertices: frozenset[int]          # h-ids
    pair_indices: tuple[int, ...]     # indices into the instance pair list
    terminals: frozenset[int]         # g-ids


@dataclass(frozen=True)
class AuxiliaryH:
    h: Graph
    kind: tuple[str, ...]             # per h-vertex tag
    pair_of: dict[int, int]           # path vertex (h-id) -> pair index
    to_g: dict[int, int]              # terminal h-id -> g vertex
    g_to_h: dict[int, int]            # g vertex -> terminal h-id
    path_vertex_of_pair: dict[int, int]
    components: tuple[HComponent, ...]

    @property
    def r(self) -> int:
        return len(self.components)

    def component_of_pair(self, pair_idx: int) -> int:
        for ci, comp in enumerate(self.components):
            if pair_idx in comp.pair_indices:
                return ci
        raise KeyError(f"pair {pair_idx} not in any component")


@dataclass(frozen=True)
class InterferenceGraph:
    r: int
    edges: frozenset[frozenset[int]]  # unordered component-index pairs

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in e)

    def neighbors_of(self, i: int) -> list[int]:
        return sorted(next(iter(e - {i})) for e in self.edges if i in e)


def build_H(inst: Instance) -> AuxiliaryH:
    """Construct H for an instance satisfying the preprocessed conditions
    (distinct non-degenerate pairs, endpoints non-adjacent and connected in
    their private graphs)."""
    terminals = sorted(inst.terminal_set())
    g_to_h = {v: i for i, v in enumerate(terminals)}
    to_g = {i: v for i, v in enumerate(terminals)}
    nt = len(terminals)
    edges = [
        (g_to_h[u], g_to_h[v])
        for u, v in inst.g.edges()
        if u in g_to_h and v in g_to_h
    ]
    pv_of_pair: dict[int, int] = {}
    kind = [TERMINAL] * nt
    for idx, (s, t) in enumerate(inst.pairs):
        pv = nt + idx
        pv_of_pair[idx] = pv
        kind.append(PATH_VERTEX)
        edges.append((g_to_h[s], pv))
        edges.append((g_to_h[t], pv))
    h = Graph(nt + inst.k, edges)

    comps = []
    for comp in connected_components(h):
        cs = frozenset(comp)
        pair_idx = tuple(sorted(i for i, pv in pv_of_pair.items() if pv in cs))
        term_g = frozenset(to_g[v] for v in comp if v < nt)
        comps.append(HComponent(cs, pair_idx, term_g))

    auxh = AuxiliaryH(
        h=h,
        kind=tuple(kind),
        pair_of={pv: i for i, pv in pv_of_pair.items()},
        to_g=to_g,
        g_to_h=g_to_h,
        path_vertex_of_pair=pv_of_pair,
        components=tuple(comps),
    )
    for idx, (s, t) in enumerate(inst.pairs):
        ci = auxh.component_of_pair(idx)
        comp = auxh.components[ci]
        if g_to_h[s] not in comp.vertices or g_to_h[t] not in comp.vertices:
            raise InternalInvariantError("pair split across H components")
    return auxh


def step5(auxh: AuxiliaryH) -> bool:
    """True (Ok) iff H is AT-free; a triple in H proves a No instance."""
    return find_asteroidal_triple(auxh.h) is None


def _connected_within(g: Graph, allowed: frozenset[int], a: int, b: int) -> bool:
    if a not in allowed or b not in allowed:
        return False
    if a == b:
        return True
    seen = {a}
    todo = [a]
    while todo:
        u = todo.pop()
        for w in g.neighbors(u):
            if w in allowed and w not in seen:
                if w == b:
                    return True
                seen.add(w)
                todo.append(w)
    return False


def pairs_interfere(inst: Instance, auxh: AuxiliaryH, i: int, j: int) -> bool:
    """Can private induced paths of pairs i and j (from different
    H components) fail to be mutually induced?

    Localized test: a 4-tuple u1 in N(s_i), u2 in N(t_i), v1 in N(s_j),
    v2 in N(t_j) such that u1,u2 are connected in G_i - {s_i,t_i}, v1,v2
    are connected in G_j - {s_j,t_j}, and some edge joins {u1,u2} to
    {v1,v2}.
    """
    if auxh.component_of_pair(i) == auxh.component_of_pair(j):
        raise SameComponentError(f"pairs {i} and {j} share an H component")
    g = inst.g
    si, ti = inst.pairs[i]
    sj, tj = inst.pairs[j]
    gi = frozenset(_gi_vertices(g, inst.pairs, i))
    gj = frozenset(_gi_vertices(g, inst.pairs, j))
    gi_open = gi - {si, ti}
    gj_open = gj - {sj, tj}
    u1s = sorted(g.neighbors(si) & gi_open)
    u2s = sorted(g.neighbors(ti) & gi_open)
    v1s = sorted(g.neighbors(sj) & gj_open)
    v2s = sorted(g.neighbors(tj) & gj_open)
    for u1 in u1s:
        for u2 in u2s:
            if not _connected_within(g, gi_open, u1, u2):
                continue
            for v1 in v1s:
                for v2 in v2s:
                    if not _connected_within(g, gj_open, v1, v2):
                        continue
                    for u in (u1, u2):
                        for v in (v1, v2):
                            if g.has_edge(u, v):
                                return True
    return False


def build_interference_graph(inst: Instance, auxh: AuxiliaryH) -> InterferenceGraph:
    """One vertex per H component; an edge where any two pairs interfere.

    The result must be a disjoint union of paths; a violation means the
    input was not AT-free (recognition is the caller's duty) or a bug.
    """
    edges: set[frozenset[int]] = set()
    r = auxh.r
    for a in range(r):
        for b in range(a + 1, r):
            hit = False
            for p in auxh.components[a].pair_indices:
                for q in auxh.components[b].pair_indices:
                    if pairs_interfere(inst, auxh, p, q):
                        hit = True
                        break
                if hit:
                    break
            if hit:
                edges.add(frozenset((a, b)))
    igraph = InterferenceGraph(r, frozenset(edges))
    _assert_union_of_paths(igraph)
    return igraph


def _assert_union_of_paths(igraph: InterferenceGraph) -> None:
    for i in range(igraph.r):
        if igraph.degree(i) > 2:
            raise NotUnionOfPathsError(f"interference vertex {i} has degree > 2")
    # acyclicity: a union of paths has |edges| < |vertices| per component
    for comp in _igraph_components(igraph):
        ecount = sum(1 for e in igraph.edges if e <= frozenset(comp))
        if ecount != len(comp) - 1 and len(comp) > 1:
            raise NotUnionOfPathsError("interference graph contains a cycle")


def _igraph_components(igraph: InterferenceGraph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for start in range(igraph.r):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        todo = [start]
        while todo:
            u = todo.pop()
            for w in igraph.neighbors_of(u):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    todo.append(w)
        comps.append(sorted(comp))
    return comps


def ordered_component_indices(igraph: InterferenceGraph) -> list[int]:
    """Component indices with every interference path laid out consecutively.

    Paths are each traversed from their smallest endpoint and concatenated
    in order of their smallest member.
    """
    out: list[int] = []
    for comp in sorted(_igraph_components(igraph), key=min):
        if len(comp) == 1:
            out.extend(comp)
            continue
        ends = sorted(v for v in comp if igraph.degree(v) <= 1)
        cur = ends[0]
        prev = None
        walk = [cur]
        while len(walk) < len(comp):
            nxts = [w for w in igraph.neighbors_of(cur) if w != prev]
            if len(nxts) != 1:
                raise NotUnionOfPathsError("interference component is not a path")
            prev, cur = cur, nxts[0]
            walk.append(cur)
        out.extend(walk)
    return out


def order_components(igraph: InterferenceGraph, auxh: AuxiliaryH) -> AuxiliaryH:
    """Renumber H components so interference holds only between consecutive
    indices within each interference path."""
    order = ordered_component_indices(igraph)
    return replace(auxh, components=tuple(auxh.components[i] for i in order))


@dataclass(frozen=True)
class SubInstance:
    instance: Instance
    component_indices: tuple[int, ...]   # indices into the parent auxh
    vertex_map: tuple[int, ...]          # sub id -> parent id
    pair_map: tuple[int, ...]            # sub pair index -> parent pair index


def decompose_step6(
    inst: Instance, auxh: AuxiliaryH, igraph: InterferenceGraph
) -> list[SubInstance]:
    """One independent subinstance per connected interference component:
    its pairs, on the graph with all other components' terminal
    neighborhoods deleted."""
    subs: list[SubInstance] = []
    for comp in sorted(_igraph_components(igraph), key=min):
        pair_ids = sorted(
            p for ci in comp for p in auxh.components[ci].pair_indices
        )
        keep_terms = set()
        for ci in comp:
            keep_terms |= auxh.components[ci].terminals
        removed: set[int] = set()
        for v in inst.terminal_set() - keep_terms:
            removed |= inst.g.closed_neighborhood(v)
        alive = set(range(inst.g.n)) - removed
        if not keep_terms <= alive:
            raise InternalInvariantError("terminal deleted while splitting instance")
        sub_g, old_ids = induced_subgraph(inst.g, alive)
        new_of = {old: new for new, old in enumerate(old_ids)}
        sub_pairs = [
            (new_of[inst.pairs[p][0]], new_of[inst.pairs[p][1]]) for p in pair_ids
        ]
        subs.append(
            SubInstance(
                instance=Instance.make(sub_g, sub_pairs),
                component_indices=tuple(comp),
                vertex_map=tuple(old_ids),
                pair_map=tuple(pair_ids),
            )
        )
    return subs


def _has_induced_path_through(
    g: Graph, gi: frozenset[int], s: int, t: int, u: int
) -> bool:
    """Is there an induced s-t path inside G_i passing through u?

    Only callers with u adjacent to s or t need this.  For u in N(s):
    such a path exists iff u reaches t in G_i restricted to
    (V(G_i) - N[s]) | {u, t}; a shortest such path prefixed by s is
    induced.  Symmetric for u in N(t).
    """
    for a, b in ((s, t), (t, s)):
        if u in g.neighbors(a):
            allowed = (gi - g.closed_neighborhood(a)) | {u, b}
            if _connected_within(g, frozenset(allowed), u, b):
                return True
    return False


def compute_Wi(inst: Instance, auxh: AuxiliaryH, i: int) -> set[int]:
    """Cross-conflict vertices between ordered components i and i+1 (1-based).

    A vertex u belongs to W_i when some edge uv has u on an induced
    private path of an interfering pair in component i and v likewise in
    component i+1.
    """
    if not (1 <= i <= auxh.r - 1):
        raise ValueError(f"W index {i} out of range for r={auxh.r}")
    g = inst.g
    left = auxh.components[i - 1]
    right = auxh.components[i]
    out: set[int] = set()
    for p in left.pair_indices:
        for q in right.pair_indices:
            if not pairs_interfere(inst, auxh, p, q):
                continue
            sp, tp = inst.pairs[p]
            sq, tq = inst.pairs[q]
            gp = frozenset(_gi_vertices(g, inst.pairs, p))
            gq = frozenset(_gi_vertices(g, inst.pairs, q))
            us = sorted(((g.neighbors(sp) | g.neighbors(tp)) & gp) - {sp, tp})
            vs = sorted(((g.neighbors(sq) | g.neighbors(tq)) & gq) - {sq, tq})
            good_v = {
                v for v in vs if _has_induced_path_through(g, gq, sq, tq, v)
            }
            for u in us:
                if u in out:
                    continue
                if not any(g.has_edge(u, v) for v in good_v):
                    continue
                if _has_induced_path_through(g, gp, sp, tp, u):
                    out.add(u)
    return out


def compute_Zi(inst: Instance, auxh: AuxiliaryH, i: int) -> frozenset[int]:
    """Smallest (by size, then lexicographic) set of at most two terminals
    of component i whose neighborhood covers W_i."""
    wi = compute_Wi(inst, auxh, i)
    if not wi:
        return frozenset()
    terms = sorted(auxh.components[i - 1].terminals)
    for z in terms:
        if wi <= inst.g.neighbors(z):
            return frozenset((z,))
    for z1, z2 in combinations(terms, 2):
        if wi <= (inst.g.neighbors(z1) | inst.g.neighbors(z2)):
            return frozenset((z1, z2))
    raise NoCoverError(
        f"no cover of size <= 2 for W_{i}; input is likely not AT-free"
    )
