import random
from itertools import combinations

import pytest

from atfp.atfree import (
    cycle_chord_property,
    dominates,
    dominating_path,
    find_asteroidal_triple,
    find_dominating_pair,
    is_asteroidal_triple,
    is_at_free,
    is_caterpillar,
    is_dominating_pair,
)
from atfp.errors import DisconnectedError, InternalInvariantError, NotACycleError, NotATreeError
from atfp.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    induced_subgraph,
    path_graph,
    spider_graph,
    star_graph,
)
from conftest import random_at_free_graph

# spider with three legs of length 2: center 0, tips 2, 4, 6
SPIDER = spider_graph(3, 2)


def test_is_asteroidal_triple_examples():
    assert is_asteroidal_triple(cycle_graph(6), 0, 2, 4)
    p4 = path_graph(4)
    for a, b, c in combinations(range(4), 3):
        assert not is_asteroidal_triple(p4, a, b, c)
    assert is_asteroidal_triple(SPIDER, 2, 4, 6)


def test_find_asteroidal_triple_examples():
    assert find_asteroidal_triple(cycle_graph(6)) == (0, 2, 4)
    assert find_asteroidal_triple(star_graph(3)) is None
    assert find_asteroidal_triple(SPIDER) == (2, 4, 6)


def test_find_matches_exhaustive_on_random_graphs():
    rng = random.Random(7)
    for _ in range(80):
        n = rng.randint(1, 10)
        edges = [
            (i, j) for i in range(n) for j in range(i + 1, n)
            if rng.random() < 0.4
        ]
        g = Graph(n, edges)
        found = find_asteroidal_triple(g)
        brute = [
            t for t in combinations(range(n), 3) if is_asteroidal_triple(g, *t)
        ]
        if brute:
            assert found == brute[0]
        else:
            assert found is None


def test_is_dominating_pair_examples():
    assert is_dominating_pair(path_graph(4), 0, 3)
    assert not is_dominating_pair(SPIDER, 2, 4)
    assert is_dominating_pair(cycle_graph(5), 0, 2)
    with pytest.raises(DisconnectedError):
        is_dominating_pair(Graph(3, [(0, 1)]), 0, 1)


def test_is_dominating_pair_matches_path_enumeration():
    # definition check on a small graph: every (x,y)-path dominates
    rng = random.Random(13)
    for _ in range(40):
        n = rng.randint(2, 7)
        g = random_at_free_graph(rng, n, p=0.5, cap=200)
        if g is None:
            continue

        def all_paths(s, t):
            out, stack = [], [[s]]
            while stack:
                p = stack.pop()
                if p[-1] == t:
                    out.append(p)
                    continue
                for w in g.adj_sorted(p[-1]):
                    if w not in p:
                        stack.append(p + [w])
            return out

        for x, y in combinations(range(n), 2):
            want = all(dominates(g, p) for p in all_paths(x, y))
            assert is_dominating_pair(g, x, y) == want


def test_find_dominating_pair_examples():
    # smallest lexicographic pair of P4 is (0,2): its unique path dominates
    assert find_dominating_pair(path_graph(4)) == (0, 2)
    assert find_dominating_pair(cycle_graph(5), restrict={1, 3}) == (1, 3)
    assert find_dominating_pair(SPIDER) is None


def test_every_connected_at_free_graph_has_a_dominating_pair():
    rng = random.Random(4242)
    found = 0
    while found < 200:
        n = rng.randint(4, 14)
        g = random_at_free_graph(rng, n, p=0.7)
        if g is None:
            continue
        found += 1
        assert find_dominating_pair(g) is not None


def test_dominating_path_examples():
    star = star_graph(3)
    assert dominating_path(star, 1, 2) == [1, 0, 2]
    assert dominating_path(Graph(2, [(0, 1)]), 0, 1) == [0, 1]
    path = dominating_path(path_graph(5), 0, 4, path_vertices={2})
    assert path == [0, 1, 2, 3, 4]
    with pytest.raises(InternalInvariantError):
        # (0,1) is not a dominating pair of P4: the direct edge misses 3
        dominating_path(path_graph(4), 0, 1)


def test_dominating_path_always_dominates():
    rng = random.Random(5)
    for _ in range(60):
        g = random_at_free_graph(rng, rng.randint(3, 10), p=0.6, cap=200)
        if g is None:
            continue
        pair = find_dominating_pair(g)
        assert pair is not None
        assert dominates(g, dominating_path(g, *pair))


def test_is_caterpillar_examples():
    assert is_caterpillar(star_graph(3))
    assert not is_caterpillar(SPIDER)
    assert is_caterpillar(path_graph(5))
    assert is_caterpillar(Graph(1))
    with pytest.raises(NotATreeError):
        is_caterpillar(cycle_graph(4))


def test_cycle_chord_property_examples():
    c5 = cycle_graph(5)
    assert cycle_chord_property(c5, [0, 1, 2, 3, 4])
    assert cycle_chord_property(cycle_graph(4), [0, 1, 2, 3])
    assert not cycle_chord_property(cycle_graph(6), [0, 1, 2, 3, 4, 5])
    with pytest.raises(NotACycleError):
        cycle_chord_property(c5, [0, 1, 3, 2, 4])
    with pytest.raises(NotACycleError):
        cycle_chord_property(c5, [0, 1])


def _all_cycles(g: Graph, max_len: int = 8, cap: int = 400) -> list[list[int]]:
    """Simple cycles as vertex orders, canonicalized by smallest start."""
    cycles = []
    for start in range(g.n):
        stack = [[start]]
        while stack and len(cycles) < cap:
            path = stack.pop()
            head = path[-1]
            for w in g.adj_sorted(head):
                if w == start and len(path) >= 3 and path[1] < path[-1]:
                    cycles.append(list(path))
                elif w > start and w not in path and len(path) < max_len:
                    stack.append(path + [w])
    return cycles


def test_short_chord_in_every_cycle_of_at_free_graphs():
    rng = random.Random(17)
    checked = 0
    for _ in range(40):
        g = random_at_free_graph(rng, rng.randint(4, 9), p=0.6, cap=200)
        if g is None:
            continue
        for cyc in _all_cycles(g):
            assert cycle_chord_property(g, cyc)
            checked += 1
    assert checked > 50


def test_induced_trees_in_at_free_graphs_are_caterpillars():
    rng = random.Random(23)
    checked = 0
    for _ in range(25):
        n = rng.randint(4, 11)
        g = random_at_free_graph(rng, n, p=0.55, connected=False, cap=200)
        if g is None:
            continue
        for size in range(2, n + 1):
            for vs in combinations(range(n), size):
                sub, _ = induced_subgraph(g, vs)
                if sub.m == sub.n - 1 and len_components(sub) == 1:
                    assert is_caterpillar(sub)
                    checked += 1
    assert checked > 100


def len_components(g: Graph) -> int:
    from atfp.graph import connected_components

    return len(connected_components(g))
