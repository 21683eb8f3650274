"""Command-line interface.

Exit codes: 0 yes/ok, 1 no, 2 usage or parse error, 3 precondition
violated (e.g. input not AT-free), 4 internal invariant violation.
The environment variable ATFP_SEED overrides the default seed of the
seeded subcommands; an explicit --seed flag wins over both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .atfree import find_asteroidal_triple
from .dp import SolveStats, solve_idp, verify_solution
from .errors import (
    AtfpError,
    InternalInvariantError,
    ParseError,
    PreconditionError,
    ValidationError,
)
from .fuzzing import run_trial, run_trial_args
from .graph import Graph
from .hardness import pad_to_min_degree, reduce_clique_to_itm
from .io import (
    GENERATOR_MODELS,
    gen_random,
    load_instance,
    parse_solution,
    save_instance,
    serialize_instance,
    serialize_solution,
)
from .oracles import (
    oracle_idp,
    oracle_k_in_a_cycle,
    oracle_k_in_a_path,
    oracle_k_in_a_tree,
)
from .preprocess import Instance
from .subgraph import (
    AnchoredPattern,
    anchored_itm,
    coinciding_pairs,
    itm,
    k_in_a_cycle,
    k_in_a_path,
    k_in_a_tree,
)

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4

_SOLVER_ID = f"atfp {__version__}"


def _resolve_seed(cli_seed: Optional[int]) -> int:
    if cli_seed is not None:
        return cli_seed
    env = os.environ.get("ATFP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"ATFP_SEED must be an integer, got {env!r}")
    return 0


def _terminals_of(inst: Instance) -> list[int]:
    return sorted(inst.terminal_set())


def _report_lines(fields: dict, paths: Optional[list[list[int]]]) -> str:
    lines = [f"{key}: {value}" for key, value in fields.items()]
    if paths is not None:
        lines.append("paths:")
        lines.extend(" ".join(str(v) for v in p) for p in paths)
    return "\n".join(lines) + "\n"


def _emit_report(
    fields: dict, paths: Optional[list[list[int]]], as_json: bool, out=sys.stdout
) -> None:
    if as_json:
        doc = dict(fields)
        if paths is not None:
            doc["paths"] = paths
        out.write(json.dumps(doc) + "\n")
    else:
        out.write(_report_lines(fields, paths))


# -- subcommands -------------------------------------------------------------


def _cmd_check_atfree(args) -> int:
    inst = load_instance(args.file)
    triple = find_asteroidal_triple(inst.g)
    if triple is None:
        print("at-free: yes")
        return EXIT_YES
    print(f"at-free: no\nasteroidal-triple: {triple[0]} {triple[1]} {triple[2]}")
    return EXIT_NO


def _cmd_solve(args) -> int:
    inst = load_instance(args.file)
    stats = SolveStats()
    started = time.perf_counter()
    ok, solution = solve_idp(inst, stats=stats)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    fields = {
        "answer": "yes" if ok else "no",
        "n": stats.n,
        "m": stats.m,
        "k": stats.k,
        "components": stats.components,
        "interference_edges": stats.interference_edges,
        "subinstances": stats.subinstances,
        "table_entries": stats.table_entries,
        "max_scoped_vertices": stats.max_scoped_vertices,
        "solver": _SOLVER_ID,
        "seed": _resolve_seed(None),
    }
    if args.timing:
        fields["wall_time_ms"] = round(elapsed_ms, 3)
    paths = solution if (ok and args.emit_paths) else None
    _emit_report(fields, paths, args.json)
    if ok and args.solution_out:
        with open(args.solution_out, "w", encoding="utf-8") as fh:
            fh.write(serialize_solution(solution))
    return EXIT_YES if ok else EXIT_NO


def _cmd_oracle(args) -> int:
    inst = load_instance(args.file)
    if args.problem == "idp":
        ok, _ = oracle_idp(inst.g, inst.pairs)
    else:
        terms = _terminals_of(inst)
        fn = {
            "path": oracle_k_in_a_path,
            "tree": oracle_k_in_a_tree,
            "cycle": oracle_k_in_a_cycle,
        }[args.problem]
        ok = fn(inst.g, terms)
    print("yes" if ok else "no")
    return EXIT_YES if ok else EXIT_NO


def _cmd_kpath(args) -> int:
    inst = load_instance(args.file)
    ok, path = k_in_a_path(inst.g, _terminals_of(inst))
    print("yes" if ok else "no")
    if ok and path:
        print(" ".join(str(v) for v in path))
    return EXIT_YES if ok else EXIT_NO


def _cmd_ktree(args) -> int:
    inst = load_instance(args.file)
    ok, tree = k_in_a_tree(inst.g, _terminals_of(inst))
    print("yes" if ok else "no")
    if ok and tree:
        print(" ".join(str(v) for v in sorted(tree)))
    return EXIT_YES if ok else EXIT_NO


def _cmd_kcycle(args) -> int:
    inst = load_instance(args.file)
    ok, cyc = k_in_a_cycle(inst.g, _terminals_of(inst))
    print("yes" if ok else "no")
    if ok and cyc:
        print(" ".join(str(v) for v in cyc))
    return EXIT_YES if ok else EXIT_NO


def _cmd_coinciding(args) -> int:
    inst = load_instance(args.file)
    ok, paths = coinciding_pairs(inst.g, args.s, args.t, args.k)
    print("yes" if ok else "no")
    if ok and paths:
        sys.stdout.write(serialize_solution(paths))
    return EXIT_YES if ok else EXIT_NO


def _parse_anchor_list(spec: str) -> list[tuple[int, int]]:
    out = []
    for chunk in spec.split(","):
        left, _, right = chunk.partition(":")
        try:
            out.append((int(left), int(right)))
        except ValueError:
            raise ParseError(f"bad anchor {chunk!r}; expected G:H")
    return out


def _cmd_itm(args) -> int:
    g = load_instance(args.graph).g
    h = load_instance(args.pattern).g
    if args.anchors:
        anchors = _parse_anchor_list(args.anchors)
        ok = anchored_itm(g, AnchoredPattern(h, tuple(anchors)))
    else:
        ok = itm(g, h, budget=args.budget)
    print("yes" if ok else "no")
    return EXIT_YES if ok else EXIT_NO


def _cmd_gen(args) -> int:
    if args.model == "hardness":
        base = load_instance(args.graph).g
        if args.pad:
            base = pad_to_min_degree(base)
        out = reduce_clique_to_itm(base, args.clique_size)
        save_instance(Instance.make(out.g_prime, []), args.out_gprime)
        save_instance(Instance.make(out.h, []), args.out_h)
        print(
            f"wrote host ({out.g_prime.n} vertices) to {args.out_gprime} "
            f"and pattern ({out.h.n} vertices) to {args.out_h}"
        )
        return EXIT_YES
    seed = _resolve_seed(args.seed)
    inst = gen_random(args.model, args.n, args.k, seed)
    if args.out:
        save_instance(inst, args.out)
        print(f"wrote {args.out} (model={args.model}, n={inst.g.n}, seed={seed})")
    else:
        sys.stdout.write(serialize_instance(inst))
    return EXIT_YES


def _cmd_verify(args) -> int:
    inst = load_instance(args.file)
    with open(args.solution, "r", encoding="utf-8") as fh:
        paths = parse_solution(fh.read())
    ok = verify_solution(inst, paths)
    print("valid" if ok else "invalid")
    return EXIT_YES if ok else EXIT_NO


def _cmd_fuzz(args) -> int:
    seed = _resolve_seed(args.seed)
    trials = [(seed, t, args.n_max, args.k_max) for t in range(args.trials)]
    if args.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(run_trial_args, trials))
    else:
        results = [run_trial(*t) for t in trials]
    for res in results:
        if res.ok:
            continue
        path = os.path.join(args.out, f"fuzz-repro-{res.trial}.idp")
        assert res.reproducer is not None
        save_instance(res.reproducer, path)
        print(f"trial {res.trial}: {res.detail}")
        print(f"reproducer written to {path}")
        return EXIT_INTERNAL
    print(f"{args.trials} trials passed (seed={seed})")
    return EXIT_YES


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atfp",
        description="Induced disjoint paths and related solvers for AT-free graphs.",
    )
    parser.add_argument("--version", action="version", version=_SOLVER_ID)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-atfree", help="test a graph for asteroidal triples")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_check_atfree)

    p = sub.add_parser("solve", help="solve induced disjoint paths")
    p.add_argument("file")
    p.add_argument("--emit-paths", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true",
                   help="include wall time in the report (breaks byte-stability)")
    p.add_argument("--solution-out", metavar="FILE")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("oracle", help="run a brute-force reference solver")
    p.add_argument("problem", choices=["idp", "path", "tree", "cycle"])
    p.add_argument("file")
    p.set_defaults(fn=_cmd_oracle)

    for name, fn in (("kpath", _cmd_kpath), ("ktree", _cmd_ktree), ("kcycle", _cmd_kcycle)):
        p = sub.add_parser(name, help=f"{name}: pairs in FILE are read as a terminal set")
        p.add_argument("file")
        p.set_defaults(fn=fn)

    p = sub.add_parser("coinciding", help="route k copies of one terminal pair")
    p.add_argument("file")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=_cmd_coinciding)

    p = sub.add_parser("itm", help="induced topological minor containment")
    p.add_argument("graph")
    p.add_argument("pattern")
    p.add_argument("--anchors", help="comma-separated G:H vertex anchors")
    p.add_argument("--budget", type=int, default=4)
    p.set_defaults(fn=_cmd_itm)

    p = sub.add_parser("gen", help="generate instances")
    gen_sub = p.add_subparsers(dest="model", required=True)
    for model in GENERATOR_MODELS:
        q = gen_sub.add_parser(model)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--k", type=int, required=True)
        q.add_argument("--seed", type=int)
        q.add_argument("--out")
        q.set_defaults(fn=_cmd_gen)
    q = gen_sub.add_parser("hardness")
    q.add_argument("--graph", required=True, help="instance file; its graph is the clique input")
    q.add_argument("--clique-size", type=int, required=True)
    q.add_argument("--out-gprime", required=True)
    q.add_argument("--out-h", required=True)
    q.add_argument("--pad", action="store_true",
                   help="raise minimum degree by adding a dominating clique (alters the instance)")
    q.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("file")
    p.add_argument("solution")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("fuzz", help="solver-vs-oracle differential testing")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=".")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--k-max", type=int, default=3)
    p.set_defaults(fn=_cmd_fuzz)

    return parser


def cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (ParseError, ValidationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except AtfpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
