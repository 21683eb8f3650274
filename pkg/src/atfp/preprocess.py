"""Instance model, validation and the reduction steps run before solving.

The reduction pipeline establishes, in order:
  - every pair is non-degenerate and pairs are distinct as unordered pairs
    (validation);
  - common non-terminal neighbors of adjacent terminals are deleted (step 1);
  - terminal vertices all of whose partners are neighbors are resolved by
    single edges and deleted together with their non-terminal neighborhood
    (step 2);
  - adjacent pairs are resolved by their edge and dropped (step 3);
  - pairs whose endpoints are separated in their private graph G_i force an
    immediate No (step 4).

Steps 1-3 each run to a fixpoint, in that order, without an outer loop.
Dropped pairs are recorded so a final solution for the original instance
can re-add their one-edge paths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import DegeneratePairError, DuplicatePairError, OutOfRangeError
from .graph import Graph, connected_components, induced_subgraph


@dataclass(frozen=True)
class Instance:
    g: Graph
    pairs: tuple[tuple[int, int], ...]

    @staticmethod
    def make(g: Graph, pairs: Sequence[tuple[int, int]]) -> "Instance":
        return Instance(g, tuple((int(s), int(t)) for s, t in pairs))

    @property
    def k(self) -> int:
        return len(self.pairs)

    def terminal_set(self) -> frozenset[int]:
        out: set[int] = set()
        for s, t in self.pairs:
            out.add(s)
            out.add(t)
        return frozenset(out)


class Verdict(Enum):
    REDUCED = "reduced"
    NO = "no"


@dataclass(frozen=True)
class PreprocessResult:
    instance: Instance
    removed_pairs: tuple[int, ...]          # original indices dropped by steps 2-3
    kept_pairs: tuple[int, ...]             # original indices surviving, in order
    vertex_map: tuple[int, ...]             # reduced id -> original id
    verdict: Verdict


def validate_instance(inst: Instance) -> None:
    seen: set[frozenset[int]] = set()
    for s, t in inst.pairs:
        if not (0 <= s < inst.g.n):
            raise OutOfRangeError(f"terminal {s} out of range")
        if not (0 <= t < inst.g.n):
            raise OutOfRangeError(f"terminal {t} out of range")
        if s == t:
            raise DegeneratePairError(f"pair ({s},{t}) is degenerate")
        key = frozenset((s, t))
        if key in seen:
            raise DuplicatePairError(f"pair ({s},{t}) occurs twice (unordered)")
        seen.add(key)


# -- internal fixpoint steps over alive-vertex sets ------------------------
#
# The public step functions materialize new Instance values; preprocess()
# works on vertex sets over the original graph and materializes once.


def _terminals(pairs: Sequence[tuple[int, int]]) -> set[int]:
    out: set[int] = set()
    for s, t in pairs:
        out.add(s)
        out.add(t)
    return out


def _step1_sets(g: Graph, alive: set[int], pairs: list[tuple[int, int]]) -> set[int]:
    terminals = _terminals(pairs)
    while True:
        doomed: set[int] = set()
        for s in terminals:
            for t in g.neighbors(s):
                if t in terminals and t in alive and s in alive and s < t:
                    common = (g.neighbors(s) & g.neighbors(t) & alive) - terminals
                    doomed |= common
        if not doomed:
            return alive
        alive = alive - doomed


def _step2_sets(
    g: Graph, alive: set[int], pairs: list[tuple[int, int]], pair_ids: list[int]
) -> tuple[set[int], list[tuple[int, int]], list[int], list[int]]:
    removed_ids: list[int] = []
    while True:
        terminals = _terminals(pairs)
        partners: dict[int, set[int]] = {v: set() for v in terminals}
        for s, t in pairs:
            partners[s].add(t)
            partners[t].add(s)
        u_set = {v for v in terminals if partners[v] <= g.neighbors(v)}
        if not u_set:
            return alive, pairs, pair_ids, removed_ids
        doomed = set(u_set)
        for u in u_set:
            doomed |= (g.neighbors(u) & alive) - terminals
        alive = alive - doomed
        keep = [i for i, (s, t) in enumerate(pairs) if s not in u_set and t not in u_set]
        removed_ids.extend(pair_ids[i] for i in range(len(pairs)) if i not in set(keep))
        pairs = [pairs[i] for i in keep]
        pair_ids = [pair_ids[i] for i in keep]


def _step3_sets(
    g: Graph, pairs: list[tuple[int, int]], pair_ids: list[int]
) -> tuple[list[tuple[int, int]], list[int], list[int]]:
    keep = [i for i, (s, t) in enumerate(pairs) if not g.has_edge(s, t)]
    removed = [pair_ids[i] for i in range(len(pairs)) if i not in set(keep)]
    return [pairs[i] for i in keep], [pair_ids[i] for i in keep], removed


def _gi_vertices(g: Graph, pairs: Sequence[tuple[int, int]], i: int) -> set[int]:
    """Vertex set of G_i: drop closed neighborhoods of all other terminals,
    keeping s_i and t_i themselves."""
    s, t = pairs[i]
    others = _terminals(pairs) - {s, t}
    removed: set[int] = set()
    for v in others:
        removed |= g.closed_neighborhood(v)
    return (set(range(g.n)) - removed) | {s, t}


def _materialize(
    g: Graph, alive: set[int], pairs: Sequence[tuple[int, int]]
) -> tuple[Instance, list[int]]:
    sub, old_ids = induced_subgraph(g, alive)
    new_of = {old: new for new, old in enumerate(old_ids)}
    return Instance.make(sub, [(new_of[s], new_of[t]) for s, t in pairs]), old_ids


# -- public step operations ------------------------------------------------


def step1(inst: Instance) -> Instance:
    validate_instance(inst)
    alive = _step1_sets(inst.g, set(range(inst.g.n)), list(inst.pairs))
    return _materialize(inst.g, alive, inst.pairs)[0]


def step2(inst: Instance) -> tuple[Instance, list[int]]:
    validate_instance(inst)
    alive, pairs, _, removed = _step2_sets(
        inst.g, set(range(inst.g.n)), list(inst.pairs), list(range(inst.k))
    )
    return _materialize(inst.g, alive, pairs)[0], removed


def step3(inst: Instance) -> tuple[Instance, list[int]]:
    validate_instance(inst)
    pairs, _, removed = _step3_sets(inst.g, list(inst.pairs), list(range(inst.k)))
    return Instance.make(inst.g, pairs), removed


def build_Gi(inst: Instance, i: int) -> tuple[Graph, list[int]]:
    """The private graph G_i of pair i, with its new-id -> old-id map."""
    validate_instance(inst)
    return induced_subgraph(inst.g, _gi_vertices(inst.g, inst.pairs, i))


def step4(inst: Instance) -> Verdict:
    validate_instance(inst)
    for i, (s, t) in enumerate(inst.pairs):
        keep = _gi_vertices(inst.g, inst.pairs, i)
        sub, old_ids = induced_subgraph(inst.g, keep)
        new_of = {old: new for new, old in enumerate(old_ids)}
        comp_of: dict[int, int] = {}
        for ci, comp in enumerate(connected_components(sub)):
            for v in comp:
                comp_of[v] = ci
        if comp_of[new_of[s]] != comp_of[new_of[t]]:
            return Verdict.NO
    return Verdict.REDUCED


def preprocess(inst: Instance) -> PreprocessResult:
    """Validate, run steps 1-3 to fixpoint in order, then the step-4 cut test."""
    validate_instance(inst)
    g = inst.g
    alive = set(range(g.n))
    pairs = list(inst.pairs)
    pair_ids = list(range(len(pairs)))

    alive = _step1_sets(g, alive, pairs)
    alive, pairs, pair_ids, removed2 = _step2_sets(g, alive, pairs, pair_ids)
    pairs, pair_ids, removed3 = _step3_sets(g, pairs, pair_ids)
    removed = tuple(sorted(removed2 + removed3))

    reduced, old_ids = _materialize(g, alive, pairs)
    verdict = step4(reduced)
    return PreprocessResult(
        instance=reduced,
        removed_pairs=removed,
        kept_pairs=tuple(pair_ids),
        vertex_map=tuple(old_ids),
        verdict=verdict,
    )
