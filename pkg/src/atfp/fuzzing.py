"""Seeded solver-vs-oracle differential testing with reproducer shrinking.

Trial generation is a pure function of (base seed, trial index), so runs
are reproducible and trials can be dispatched to worker processes without
coordination.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from .dp import solve_idp, verify_solution
from .errors import AtfpError, GenerationFailedError
from .graph import induced_subgraph
from .io import GENERATOR_MODELS, gen_random
from .oracles import oracle_idp
from .preprocess import Instance

_TRIAL_STRIDE = 1_000_003


def trial_instance(base_seed: int, trial: int, n_max: int = 10, k_max: int = 3) -> Instance:
    """Deterministic instance for one fuzz trial."""
    trial_seed = base_seed * _TRIAL_STRIDE + trial
    rng = random.Random(trial_seed)
    model = GENERATOR_MODELS[trial % len(GENERATOR_MODELS)]
    n = rng.randint(4, n_max)
    k = rng.randint(1, max(1, min(k_max, n // 2)))
    try:
        return gen_random(model, n, k, trial_seed)
    except GenerationFailedError:
        return gen_random("interval", n, k, trial_seed)


@dataclass
class TrialResult:
    trial: int
    ok: bool
    detail: str
    instance: Optional[Instance] = None
    reproducer: Optional[Instance] = None


def check_instance(inst: Instance) -> tuple[bool, str]:
    """Run both routes on one instance; ok means verdicts agree and any
    yes-witness verifies."""
    try:
        got, witness = solve_idp(inst)
    except AtfpError as exc:
        return False, f"solver raised {type(exc).__name__}: {exc}"
    want, _ = oracle_idp(inst.g, inst.pairs)
    if got != want:
        return False, f"solver said {got}, oracle said {want}"
    if got and not verify_solution(inst, witness):
        return False, "yes-witness failed verification"
    return True, "ok"


def _is_bad(inst: Instance) -> bool:
    ok, _ = check_instance(inst)
    return not ok


def shrink_instance(inst: Instance, is_bad: Callable[[Instance], bool] = _is_bad) -> Instance:
    """Greedy minimization: drop pairs, then non-terminal vertices, as long
    as the failure persists."""
    cur = inst
    changed = True
    while changed:
        changed = False
        for i in range(cur.k):
            cand = Instance.make(cur.g, cur.pairs[:i] + cur.pairs[i + 1:])
            if is_bad(cand):
                cur = cand
                changed = True
                break
        if changed:
            continue
        terms = cur.terminal_set()
        for v in range(cur.g.n):
            if v in terms:
                continue
            sub, old = induced_subgraph(cur.g, set(range(cur.g.n)) - {v})
            remap = {o: i for i, o in enumerate(old)}
            cand = Instance.make(
                sub, [(remap[s], remap[t]) for s, t in cur.pairs]
            )
            if is_bad(cand):
                cur = cand
                changed = True
                break
    return cur


def run_trial(base_seed: int, trial: int, n_max: int = 10, k_max: int = 3) -> TrialResult:
    inst = trial_instance(base_seed, trial, n_max, k_max)
    ok, detail = check_instance(inst)
    if ok:
        return TrialResult(trial, True, detail)
    repro = shrink_instance(inst)
    return TrialResult(trial, False, detail, instance=inst, reproducer=repro)


def run_trial_args(args: tuple[int, int, int, int]) -> TrialResult:
    """Picklable adapter for process pools."""
    return run_trial(*args)
