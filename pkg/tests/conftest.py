"""Shared fixtures: deterministic corpora and the named instance fixtures."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

import pytest

from atfp.dp import SolveStats, solve_idp
from atfp.errors import GenerationFailedError
from atfp.graph import Graph, connected_components, cycle_graph, path_graph
from atfp.atfree import find_asteroidal_triple
from atfp.io import GENERATOR_MODELS, gen_random
from atfp.oracles import oracle_idp
from atfp.preprocess import Instance

CORPUS_SEED = 2024
CORPUS_SIZE = 500


def corpus_instance(trial: int, n_max: int = 10, k_max: int = 3) -> Instance:
    seed = CORPUS_SEED * 1_000_003 + trial
    rng = random.Random(seed)
    model = GENERATOR_MODELS[trial % len(GENERATOR_MODELS)]
    n = rng.randint(4, n_max)
    k = rng.randint(1, max(1, min(k_max, n // 2)))
    try:
        return gen_random(model, n, k, seed)
    except GenerationFailedError:
        return gen_random("interval", n, k, seed)


@dataclass
class CorpusRecord:
    trial: int
    inst: Instance
    solver_yes: bool
    witness: Optional[list[list[int]]]
    oracle_yes: bool
    stats: SolveStats


@pytest.fixture(scope="session")
def corpus() -> list[CorpusRecord]:
    records = []
    for trial in range(CORPUS_SIZE):
        inst = corpus_instance(trial)
        stats = SolveStats()
        got, witness = solve_idp(inst, stats=stats)
        want, _ = oracle_idp(inst.g, inst.pairs)
        records.append(CorpusRecord(trial, inst, got, witness, want, stats))
    return records


# -- named fixed fixtures ------------------------------------------------------


def caterpillar_tree_instance() -> Instance:
    # legs s1=0, t1=2 at spine vertex a=1; s2=3, t2=5 at b=4; spine edge a-b
    g = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5), (1, 4)])
    return Instance.make(g, [(0, 2), (3, 5)])


def caterpillar_tree_no_bridge() -> Instance:
    g = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    return Instance.make(g, [(0, 2), (3, 5)])


def caterpillar_tree_detour() -> Instance:
    # extra connector 6 adjacent to s2, t2 and the spine vertex b=4
    g = Graph(7, [(0, 1), (1, 2), (3, 4), (4, 5), (1, 4), (3, 6), (5, 6), (4, 6)])
    return Instance.make(g, [(0, 2), (3, 5)])


def chain3_instance() -> Instance:
    # three leg pairs along spine 1-4-7; unique routes collide at the spine
    g = Graph(9, [(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8), (1, 4), (4, 7)])
    return Instance.make(g, [(0, 2), (3, 5), (6, 8)])


def chain3_detour_instance() -> Instance:
    # middle pair gains an alternative connector 9 (also tied to the spine)
    g = Graph(
        10,
        [(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8), (1, 4), (4, 7),
         (3, 9), (5, 9), (4, 9)],
    )
    return Instance.make(g, [(0, 2), (3, 5), (6, 8)])


def fixed_fixtures() -> list[tuple[str, Instance]]:
    """The named instances exercised by every differential run."""
    triangle_plus = Graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    k4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    return [
        ("p4-single", Instance.make(path_graph(4), [(0, 3)])),
        ("c5-two-pair", Instance.make(cycle_graph(5), [(0, 2), (2, 4)])),
        ("caterpillar-tree", caterpillar_tree_instance()),
        ("caterpillar-no-bridge", caterpillar_tree_no_bridge()),
        ("caterpillar-detour", caterpillar_tree_detour()),
        ("chain3", chain3_instance()),
        ("chain3-detour", chain3_detour_instance()),
        ("step2-p3", Instance.make(path_graph(3), [(0, 1), (1, 2)])),
        ("step2-edge", Instance.make(Graph(2, [(0, 1)]), [(0, 1)])),
        ("step3-c4", Instance.make(cycle_graph(4), [(0, 1)])),
        ("step1-triangle", Instance.make(triangle_plus, [(0, 3), (1, 3)])),
        ("step1-k4", Instance.make(k4, [(0, 1)])),
        ("disconnected-pair", Instance.make(Graph(2, []), [(0, 1)])),
        ("c4-antipodal", Instance.make(cycle_graph(4), [(0, 2)])),
        ("c5-single", Instance.make(cycle_graph(5), [(0, 2)])),
        ("k1", Instance.make(Graph(1, []), [])),
    ]


@pytest.fixture(scope="session")
def fixtures() -> list[tuple[str, Instance]]:
    return fixed_fixtures()


def random_at_free_graph(
    rng: random.Random, n: int, p: float = 0.7, connected: bool = True,
    cap: int = 400,
) -> Optional[Graph]:
    """Rejection-sampled AT-free graph, or None if the cap is hit."""
    for _ in range(cap):
        edges = [
            (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
        ]
        g = Graph(n, edges)
        if connected and len(connected_components(g)) != 1:
            continue
        if find_asteroidal_triple(g) is None:
            return g
    return None
