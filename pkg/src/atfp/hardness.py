"""Clique-to-induced-topological-minor instance generator.

Maps a clique question (G, k) to a cobipartite host G' and a pattern H:
G' is a clique U on the vertices of G plus a clique W with one vertex per
edge of G, each edge vertex also adjacent to its two endpoints in U; H is
a k-clique X joined to a k(k-1)/2-clique Y, with y_ij adjacent to x_i and
x_j.  G has a k-clique iff G' contains H as an induced topological minor
(equivalently, as an induced subgraph: subdivision vertices cannot occur).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import PreconditionViolatedError, TooLargeError
from .graph import Graph
from .oracles import oracle_clique


@dataclass(frozen=True)
class ReductionOutput:
    g_prime: Graph
    h: Graph
    u_clique: tuple[int, ...]                      # copies of V_G in G'
    w_clique: tuple[int, ...]                      # edge vertices in G'
    edge_vertex: dict[tuple[int, int], int]        # sorted G-edge -> W vertex


def reduce_clique_to_itm(g: Graph, k: int) -> ReductionOutput:
    """Build (G', H) for a clique instance with k >= 5 and min degree >= 4."""
    if k < 5:
        raise PreconditionViolatedError(f"clique size must be at least 5, got {k}")
    if g.n == 0 or min(g.degree(v) for v in range(g.n)) < 4:
        raise PreconditionViolatedError("input graph must have minimum degree 4")

    n = g.n
    edges = list(g.edges())
    edge_vertex = {e: n + i for i, e in enumerate(edges)}
    gp_edges: list[tuple[int, int]] = []
    gp_edges.extend((u, v) for u, v in combinations(range(n), 2))
    gp_edges.extend(
        (edge_vertex[a], edge_vertex[b])
        for a, b in combinations(edges, 2)
    )
    for (u, v), ev in edge_vertex.items():
        gp_edges.append((u, ev))
        gp_edges.append((v, ev))
    g_prime = Graph(n + len(edges), gp_edges)

    kk = k * (k - 1) // 2
    h_edges: list[tuple[int, int]] = []
    h_edges.extend(combinations(range(k), 2))
    h_edges.extend((k + a, k + b) for a, b in combinations(range(kk), 2))
    for pos, (i, j) in enumerate(combinations(range(k), 2)):
        h_edges.append((i, k + pos))
        h_edges.append((j, k + pos))
    h = Graph(k + kk, h_edges)

    return ReductionOutput(
        g_prime=g_prime,
        h=h,
        u_clique=tuple(range(n)),
        w_clique=tuple(range(n, n + len(edges))),
        edge_vertex=edge_vertex,
    )


def _induced_subgraph_present(big: Graph, small: Graph) -> bool:
    """Exact induced-subgraph isomorphism search.

    Bitmask forward-checking with fail-first variable order; candidate sets
    shrink through both adjacency and non-adjacency constraints, which is
    what makes clique-heavy instances tractable.
    """
    if small.n > big.n:
        return False
    if small.n == 0:
        return True
    big_adj = [0] * big.n
    for u, v in big.edges():
        big_adj[u] |= 1 << v
        big_adj[v] |= 1 << u
    full = (1 << big.n) - 1
    cand = []
    for hv in range(small.n):
        need = small.degree(hv)
        mask = 0
        for gv in range(big.n):
            if big.degree(gv) >= need:
                mask |= 1 << gv
        cand.append(mask)

    def search(cands: list[int], unmapped: list[int]) -> bool:
        if not unmapped:
            return True
        hv = min(unmapped, key=lambda x: cands[x].bit_count())
        rest = [x for x in unmapped if x != hv]
        choices = cands[hv]
        while choices:
            bit = choices & -choices
            choices ^= bit
            gv = bit.bit_length() - 1
            nxt = list(cands)
            ok = True
            for other in rest:
                if small.has_edge(hv, other):
                    nxt[other] &= big_adj[gv]
                else:
                    nxt[other] &= full & ~big_adj[gv]
                nxt[other] &= ~bit
                if nxt[other] == 0:
                    ok = False
                    break
            if ok and search(nxt, rest):
                return True
        return False

    return search(cand, list(range(small.n)))


def verify_reduction_small(
    g: Graph, k: int, out: ReductionOutput, max_gprime: int = 24
) -> bool:
    """Equivalence check by exact search: g has a k-clique iff H is an
    induced subgraph of G'.  Only for small outputs."""
    if out.g_prime.n > max_gprime:
        raise TooLargeError(
            f"exact verification limited to |V(G')| <= {max_gprime}, got {out.g_prime.n}"
        )
    has_clique = oracle_clique(g, k)
    contained = _induced_subgraph_present(out.g_prime, out.h)
    return has_clique == contained


def pad_to_min_degree(g: Graph, target: int = 4) -> Graph:
    """Add a dominating clique raising every degree to at least ``target``.

    This alters the instance: the new vertices are adjacent to everything,
    so clique sizes grow by the number of added vertices.
    """
    if g.n == 0:
        deficit = target + 1
    else:
        deficit = max(0, target - min(g.degree(v) for v in range(g.n)))
    if deficit == 0:
        return g
    n = g.n
    edges = list(g.edges())
    for i in range(deficit):
        for v in range(n + i):
            edges.append((v, n + i))
    return Graph(n + deficit, edges)
