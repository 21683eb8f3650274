import random

import pytest

from atfp.errors import SameComponentError
from atfp.graph import Graph, cycle_graph, path_graph
from atfp.preprocess import Instance
from atfp.structure import (
    PATH_VERTEX,
    TERMINAL,
    InterferenceGraph,
    build_H,
    build_interference_graph,
    compute_Wi,
    compute_Zi,
    decompose_step6,
    order_components,
    ordered_component_indices,
    pairs_interfere,
    step5,
)
from atfp.oracles import oracle_idp
from conftest import (
    caterpillar_tree_instance,
    chain3_detour_instance,
    chain3_instance,
    corpus_instance,
)


def test_build_H_on_c5_two_pairs():
    inst = Instance.make(cycle_graph(5), [(0, 2), (2, 4)])
    auxh = build_H(inst)
    assert auxh.h.n == 5                      # terminals 0,2,4 plus two connectors
    assert auxh.r == 1
    assert sorted(auxh.kind).count(PATH_VERTEX) == 2
    # H is a 5-cycle: every vertex has degree 2
    assert all(auxh.h.degree(v) == 2 for v in range(5))
    for pv, pair in auxh.pair_of.items():
        s, t = inst.pairs[pair]
        assert auxh.h.neighbors(pv) == {auxh.g_to_h[s], auxh.g_to_h[t]}


def test_build_H_on_caterpillar_tree():
    auxh = build_H(caterpillar_tree_instance())
    assert auxh.h.n == 6
    assert auxh.r == 2
    assert sorted(len(c.vertices) for c in auxh.components) == [3, 3]


def test_build_H_single_pair():
    auxh = build_H(Instance.make(path_graph(4), [(0, 3)]))
    assert auxh.h.n == 3 and auxh.r == 1
    assert auxh.kind.count(PATH_VERTEX) == 1


def test_step5_examples():
    assert step5(build_H(Instance.make(cycle_graph(5), [(0, 2), (2, 4)])))
    assert step5(build_H(Instance.make(path_graph(4), [])))
    # one vertex paired with six scattered partners: H grows a spider with
    # six legs of length two, which contains an asteroidal triple
    edges = []
    for j in range(6):
        edges += [(0, 13 + j), (13 + j, 1 + 2 * j)]
    g = Graph(19, edges)
    pairs = [(0, 1 + 2 * j) for j in range(6)]
    assert not step5(build_H(Instance.make(g, pairs)))


def test_pairs_interfere_examples():
    inst = caterpillar_tree_instance()
    auxh = build_H(inst)
    assert pairs_interfere(inst, auxh, 0, 1)
    assert pairs_interfere(inst, auxh, 1, 0)

    # no bridging edge: no interference
    g2 = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    inst2 = Instance.make(g2, [(0, 2), (3, 5)])
    assert not pairs_interfere(inst2, build_H(inst2), 0, 1)

    with pytest.raises(SameComponentError):
        inst3 = Instance.make(cycle_graph(5), [(0, 2), (2, 4)])
        pairs_interfere(inst3, build_H(inst3), 0, 1)


def test_interference_graph_examples():
    inst = Instance.make(cycle_graph(5), [(0, 2), (2, 4)])
    ig = build_interference_graph(inst, build_H(inst))
    assert ig.r == 1 and not ig.edges

    cat = caterpillar_tree_instance()
    ig2 = build_interference_graph(cat, build_H(cat))
    assert ig2.r == 2 and ig2.edges == frozenset({frozenset({0, 1})})

    chain = chain3_instance()
    ig3 = build_interference_graph(chain, build_H(chain))
    assert ig3.r == 3
    assert ig3.edges == frozenset({frozenset({0, 1}), frozenset({1, 2})})


def test_order_components():
    ig = InterferenceGraph(3, frozenset({frozenset({0, 1}), frozenset({1, 2})}))
    assert ordered_component_indices(ig) == [0, 1, 2]
    # path 3-1-2 renumbered from its smallest endpoint
    ig2 = InterferenceGraph(
        4, frozenset({frozenset({3, 1}), frozenset({1, 2})})
    )
    assert ordered_component_indices(ig2) == [0, 2, 1, 3]
    ig3 = InterferenceGraph(3, frozenset())
    assert ordered_component_indices(ig3) == [0, 1, 2]


def test_decompose_step6():
    inst = Instance.make(cycle_graph(5), [(0, 2), (2, 4)])
    subs = decompose_step6(inst, build_H(inst), build_interference_graph(inst, build_H(inst)))
    assert len(subs) == 1
    assert subs[0].instance.g == inst.g and subs[0].pair_map == (0, 1)

    cat = caterpillar_tree_instance()
    subs2 = decompose_step6(cat, build_H(cat), build_interference_graph(cat, build_H(cat)))
    assert len(subs2) == 1   # interference joins both components

    g3 = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    inst3 = Instance.make(g3, [(0, 2), (3, 5)])
    subs3 = decompose_step6(inst3, build_H(inst3), build_interference_graph(inst3, build_H(inst3)))
    assert len(subs3) == 2
    verdicts = [oracle_idp(s.instance.g, s.instance.pairs)[0] for s in subs3]
    assert all(verdicts)
    assert oracle_idp(g3, inst3.pairs)[0] == all(verdicts)


def test_compute_Wi_and_Zi_on_caterpillar_tree():
    inst = caterpillar_tree_instance()
    auxh = build_H(inst)
    ig = build_interference_graph(inst, auxh)
    ordered = order_components(ig, auxh)
    w1 = compute_Wi(inst, ordered, 1)
    assert w1 == {1}
    assert compute_Zi(inst, ordered, 1) == frozenset({0})


def test_compute_Wi_no_interference_is_empty():
    g = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    inst = Instance.make(g, [(0, 2), (3, 5)])
    auxh = build_H(inst)
    ig = build_interference_graph(inst, auxh)
    ordered = order_components(ig, auxh)
    assert compute_Wi(inst, ordered, 1) == set()
    assert compute_Zi(inst, ordered, 1) == frozenset()


def test_compute_Wi_both_sides_of_a_pair():
    # two cross edges: both neighbors of s_p and of t_p are conflict vertices
    # pair 0: 0-1-2 ; pair 1: 3-4-5 ; cross edges 1-4 and 2-side via 6
    g = Graph(8, [(0, 1), (1, 2), (2, 6), (6, 0), (3, 4), (4, 5),
                  (1, 4), (6, 4), (1, 3)])
    inst = Instance.make(g, [(0, 2), (3, 5)])
    auxh = build_H(inst)
    if auxh.r == 2:
        ig = build_interference_graph(inst, auxh)
        if ig.edges:
            ordered = order_components(ig, auxh)
            w1 = compute_Wi(inst, ordered, 1)
            left = next(c for c in ordered.components)
            assert w1 <= set(range(g.n))
            assert len(w1) >= 2


def test_interference_symmetry_on_corpus():
    checked = 0
    for trial in range(200):
        inst = corpus_instance(trial)
        from atfp.preprocess import preprocess, Verdict

        res = preprocess(inst)
        if res.verdict is Verdict.NO or res.instance.k < 2:
            continue
        auxh = build_H(res.instance)
        if not step5(auxh) or auxh.r < 2:
            continue
        for a in range(auxh.r):
            for b in range(a + 1, auxh.r):
                for p in auxh.components[a].pair_indices:
                    for q in auxh.components[b].pair_indices:
                        assert pairs_interfere(res.instance, auxh, p, q) == \
                            pairs_interfere(res.instance, auxh, q, p)
                        checked += 1
    # multi-component reduced instances are rare in the random corpus; the
    # chain fixtures carry the main burden
    inst = chain3_detour_instance()
    auxh = build_H(inst)
    assert pairs_interfere(inst, auxh, 0, 1) == pairs_interfere(inst, auxh, 1, 0)
    assert pairs_interfere(inst, auxh, 0, 2) == pairs_interfere(inst, auxh, 2, 0)
