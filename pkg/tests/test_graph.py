import random

import pytest
from hypothesis import given, settings, strategies as st

from atfp.errors import OutOfRangeError
from atfp.graph import (
    Graph,
    GraphError,
    bfs_distances,
    bfs_shortest_path,
    complete_graph,
    connected_components,
    cycle_graph,
    induced_subgraph,
    is_induced_path,
    neighbors,
    path_graph,
)


def test_neighbors_examples():
    assert neighbors(path_graph(4), 1) == frozenset({0, 2})
    assert neighbors(Graph(1), 0) == frozenset()
    assert neighbors(cycle_graph(5), 0) == frozenset({1, 4})


def test_neighbors_out_of_range():
    with pytest.raises(OutOfRangeError):
        neighbors(path_graph(3), 5)


def test_graph_rejects_self_loops_and_bad_edges():
    with pytest.raises(GraphError):
        Graph(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 5)])


def test_is_induced_path_examples():
    assert is_induced_path(path_graph(4), [0, 1, 2, 3])
    assert not is_induced_path(cycle_graph(5), [0, 1, 2, 3, 4])
    assert not is_induced_path(complete_graph(3), [0, 1, 2])
    assert is_induced_path(path_graph(1), [0])
    assert not is_induced_path(path_graph(2), [])
    assert not is_induced_path(path_graph(4), [0, 1, 1, 2])


def test_connected_components_examples():
    assert connected_components(Graph(4, [(0, 1), (2, 3)])) == [[0, 1], [2, 3]]
    assert connected_components(cycle_graph(5)) == [[0, 1, 2, 3, 4]]
    assert connected_components(Graph(3)) == [[0], [1], [2]]


def test_induced_subgraph_examples():
    sub, ids = induced_subgraph(cycle_graph(5), {0, 1, 2})
    assert ids == [0, 1, 2]
    assert sub == path_graph(3)
    empty, ids2 = induced_subgraph(path_graph(3), set())
    assert empty.n == 0 and ids2 == []
    k2, ids3 = induced_subgraph(complete_graph(4), {1, 3})
    assert k2 == complete_graph(2) and ids3 == [1, 3]


def test_bfs_shortest_path_examples():
    assert bfs_shortest_path(path_graph(4), 0, 3) == [0, 1, 2, 3]
    # priority puts 3 ahead of 1 when leaving 0
    assert bfs_shortest_path(cycle_graph(4), 0, 2, priority={3}) == [0, 3, 2]
    assert bfs_shortest_path(Graph(2), 0, 1) is None
    assert bfs_shortest_path(path_graph(3), 1, 1) == [1]


# -- properties ----------------------------------------------------------------


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(min_value=0, max_value=max_n))
    possible = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(possible), unique=True) if possible
                 else st.just([]))
    return Graph(n, edges)


@given(graphs())
@settings(max_examples=100, deadline=None)
def test_induced_subgraph_identity(g):
    sub, ids = induced_subgraph(g, range(g.n))
    assert sub == g
    assert ids == list(range(g.n))


@given(graphs(), st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_induced_path_subsequences(g, rnd):
    # grow a random induced path, then check every contiguous window
    if g.n == 0:
        return
    start = rnd.randrange(g.n)
    path = [start]
    while True:
        options = [
            w for w in g.adj_sorted(path[-1])
            if w not in path and all(not g.has_edge(w, v) for v in path[:-1])
        ]
        if not options:
            break
        path.append(rnd.choice(options))
    assert is_induced_path(g, path)
    for i in range(len(path)):
        for j in range(i + 1, len(path) + 1):
            assert is_induced_path(g, path[i:j])


def test_bfs_matches_plain_distances_on_random_graphs():
    rng = random.Random(99)
    for _ in range(500):
        n = rng.randint(1, 20)
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.3
        ]
        g = Graph(n, edges)
        src, dst = rng.randrange(n), rng.randrange(n)
        prio = set(rng.sample(range(n), rng.randint(0, n // 2)))
        path = bfs_shortest_path(g, src, dst, priority=prio)
        dist = bfs_distances(g, src)
        if dst not in dist:
            assert path is None
        else:
            assert path is not None
            assert len(path) - 1 == dist[dst]
            assert path[0] == src and path[-1] == dst
            assert all(g.has_edge(a, b) for a, b in zip(path, path[1:]))
