"""Instance file format and seeded random-instance generators.

Format: a header line ``n m k``, then m edge lines ``u v``, then k pair
lines ``s t``.  0-indexed decimal integers, single spaces, one record per
line, newline-terminated.  Lines starting with ``#`` are ignored.
Serialization is canonical: edges sorted, pairs in their original order,
so byte equality is meaningful in tests and golden files.
"""

from __future__ import annotations

import random
from typing import Callable

from .atfree import find_asteroidal_triple
from .errors import GenerationFailedError, ParseError, PreconditionViolatedError
from .graph import Graph
from .preprocess import Instance, validate_instance

REJECTION_CAP = 10_000


def parse_instance(text: str | bytes) -> Instance:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows: list[tuple[int, list[int]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        nums = []
        for col, f in enumerate(fields, start=1):
            try:
                nums.append(int(f))
            except ValueError:
                raise ParseError(f"expected integer, got {f!r}", lineno, col)
        rows.append((lineno, nums))
    if not rows:
        raise ParseError("missing header line", 1)
    header_line, header = rows[0]
    if len(header) != 3:
        raise ParseError("header must be 'n m k'", header_line)
    n, m, k = header
    if n < 0 or m < 0 or k < 0:
        raise ParseError("header values must be non-negative", header_line)
    body = rows[1:]
    if len(body) != m + k:
        raise ParseError(
            f"expected {m} edge lines and {k} pair lines, found {len(body)} records",
            body[-1][0] if body else header_line,
        )
    edges: list[tuple[int, int]] = []
    for lineno, nums in body[:m]:
        if len(nums) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        u, v = nums
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"bad edge ({u},{v})", lineno)
        edges.append((u, v))
    pairs: list[tuple[int, int]] = []
    for lineno, nums in body[m:]:
        if len(nums) != 2:
            raise ParseError("pair line must be 's t'", lineno)
        pairs.append((nums[0], nums[1]))
    inst = Instance.make(Graph(n, edges), pairs)
    validate_instance(inst)
    return inst


def serialize_instance(inst: Instance) -> str:
    lines = [f"{inst.g.n} {inst.g.m} {inst.k}"]
    lines.extend(f"{u} {v}" for u, v in inst.g.edges())
    lines.extend(f"{s} {t}" for s, t in inst.pairs)
    return "\n".join(lines) + "\n"


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def save_instance(inst: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_instance(inst))


def parse_solution(text: str) -> list[list[int]]:
    """Solution file: one path per line, vertices separated by spaces."""
    paths = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            paths.append([int(f) for f in line.split()])
        except ValueError:
            raise ParseError("path lines must contain integers", lineno)
    return paths


def serialize_solution(paths: list[list[int]]) -> str:
    return "\n".join(" ".join(str(v) for v in p) for p in paths) + "\n"


# -- generators --------------------------------------------------------------


def _interval_graph(n: int, rng: random.Random) -> Graph:
    spans = []
    for _ in range(n):
        a, b = rng.random(), rng.random()
        spans.append((min(a, b), max(a, b)))
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if spans[i][0] <= spans[j][1] and spans[j][0] <= spans[i][1]
    ]
    return Graph(n, edges)


def _permutation_graph(n: int, rng: random.Random) -> Graph:
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
    ]
    return Graph(n, edges)


def _cobipartite_graph(n: int, rng: random.Random) -> Graph:
    half = n // 2
    edges = [(i, j) for i in range(half) for j in range(i + 1, half)]
    edges += [(i, j) for i in range(half, n) for j in range(i + 1, n)]
    for i in range(half):
        for j in range(half, n):
            if rng.random() < 0.35:
                edges.append((i, j))
    return Graph(n, edges)


def _rejection_graph(n: int, rng: random.Random, p: float = 0.35) -> Graph:
    for _ in range(REJECTION_CAP):
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < p
        ]
        g = Graph(n, edges)
        if find_asteroidal_triple(g) is None:
            return g
    raise GenerationFailedError(
        f"no AT-free sample within {REJECTION_CAP} attempts (n={n}, p={p})"
    )


_MODELS: dict[str, Callable[[int, random.Random], Graph]] = {
    "interval": _interval_graph,
    "permutation": _permutation_graph,
    "cobipartite": _cobipartite_graph,
    "rejection": _rejection_graph,
}

GENERATOR_MODELS = tuple(sorted(_MODELS))


def gen_random(model: str, n: int, k: int, seed: int) -> Instance:
    """Seed-deterministic AT-free instance from the named family."""
    if model not in _MODELS:
        raise PreconditionViolatedError(f"unknown model {model!r}")
    if n < 2 * k:
        raise PreconditionViolatedError("need n >= 2k to sample pairs")
    rng = random.Random(seed)
    g = _MODELS[model](n, rng)
    all_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pairs = rng.sample(all_pairs, k) if k else []
    inst = Instance.make(g, pairs)
    validate_instance(inst)
    return inst
