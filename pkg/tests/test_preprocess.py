import random

import pytest

from atfp.errors import DegeneratePairError, DuplicatePairError, OutOfRangeError
from atfp.graph import Graph, complete_graph, cycle_graph, path_graph
from atfp.oracles import oracle_idp
from atfp.preprocess import (
    Instance,
    Verdict,
    build_Gi,
    preprocess,
    step1,
    step2,
    step3,
    step4,
    validate_instance,
)
from conftest import caterpillar_tree_no_bridge, corpus_instance


def test_validate_examples():
    validate_instance(Instance.make(path_graph(4), [(0, 3)]))
    with pytest.raises(DuplicatePairError):
        validate_instance(Instance.make(path_graph(4), [(0, 3), (3, 0)]))
    with pytest.raises(DegeneratePairError):
        validate_instance(Instance.make(path_graph(4), [(2, 2)]))
    with pytest.raises(OutOfRangeError):
        validate_instance(Instance.make(path_graph(4), [(0, 9)]))


def test_step1_removes_common_neighbors_of_adjacent_terminals():
    # triangle 0-1-2 plus pendant 3; terminals 0,1,3: vertex 2 goes
    g = Graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    out = step1(Instance.make(g, [(0, 3), (1, 3)]))
    assert out.g.n == 3  # vertex 2 dropped, ids compacted
    assert out.pairs == ((0, 2), (1, 2))


def test_step1_no_adjacent_terminals_is_identity():
    inst = Instance.make(path_graph(4), [(0, 3)])
    assert step1(inst) == inst


def test_step1_k4():
    out = step1(Instance.make(complete_graph(4), [(0, 1)]))
    assert out.g.n == 2 and out.pairs == ((0, 1),)


def test_step2_adjacent_only_partners():
    out, removed = step2(Instance.make(Graph(2, [(0, 1)]), [(0, 1)]))
    assert out.g.n == 0 and out.pairs == () and removed == [0]


def test_step2_identity_when_partner_far():
    inst = Instance.make(path_graph(4), [(0, 3)])
    out, removed = step2(inst)
    assert out == inst and removed == []


def test_step2_cascade_on_p3():
    out, removed = step2(Instance.make(path_graph(3), [(0, 1), (1, 2)]))
    assert out.g.n == 0 and sorted(removed) == [0, 1]
    # the original is a yes-instance resolved entirely by edges
    assert oracle_idp(path_graph(3), [(0, 1), (1, 2)])[0]


def test_step3_examples():
    out, removed = step3(Instance.make(cycle_graph(4), [(0, 1)]))
    assert out.pairs == () and removed == [0]
    inst = Instance.make(cycle_graph(4), [(0, 2)])
    assert step3(inst) == (inst, [])
    out2, removed2 = step3(
        Instance.make(cycle_graph(4), [(0, 2), (1, 2), (1, 3)])
    )
    assert out2.pairs == ((0, 2), (1, 3)) and removed2 == [1]


def test_build_Gi_examples():
    inst = Instance.make(path_graph(4), [(0, 3)])
    gi, ids = build_Gi(inst, 0)
    assert gi == inst.g and ids == [0, 1, 2, 3]

    cat = caterpillar_tree_no_bridge()
    g1, ids1 = build_Gi(
        Instance.make(
            Graph(6, list(cat.g.edges()) + [(1, 4)]), [(0, 2), (3, 5)]
        ),
        0,
    )
    assert ids1 == [0, 1, 2]
    g2, ids2 = build_Gi(
        Instance.make(
            Graph(6, list(cat.g.edges()) + [(1, 4)]), [(0, 2), (3, 5)]
        ),
        1,
    )
    assert ids2 == [3, 4, 5]


def test_step4_examples():
    assert step4(Instance.make(Graph(2, []), [(0, 1)])) is Verdict.NO
    assert step4(Instance.make(path_graph(4), [(0, 3)])) is Verdict.REDUCED
    g = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5), (1, 4)])
    assert step4(Instance.make(g, [(0, 2), (3, 5)])) is Verdict.REDUCED


def test_preprocess_examples():
    res = preprocess(Instance.make(path_graph(4), [(0, 3)]))
    assert res.verdict is Verdict.REDUCED
    assert res.instance.pairs == ((0, 3),)
    assert res.vertex_map == (0, 1, 2, 3)

    res2 = preprocess(Instance.make(cycle_graph(4), [(0, 1)]))
    assert res2.verdict is Verdict.REDUCED
    assert res2.instance.k == 0 and res2.removed_pairs == (0,)

    res3 = preprocess(Instance.make(Graph(2, []), [(0, 1)]))
    assert res3.verdict is Verdict.NO


def test_preprocess_conditions_hold_afterwards():
    rng = random.Random(31)
    for trial in range(150):
        inst = corpus_instance(trial)
        res = preprocess(inst)
        if res.verdict is Verdict.NO:
            continue
        red = res.instance
        for i, (s, t) in enumerate(red.pairs):
            assert not red.g.has_edge(s, t)          # endpoints non-adjacent
        assert step4(red) is Verdict.REDUCED         # endpoints joined in G_i


def _with_edge_paths(inst: Instance, res) -> bool:
    """Oracle answer of the reduced instance, with every dropped pair
    realizable by its edge; combined with reduction equivalence this must
    reproduce the original oracle verdict."""
    if res.verdict is Verdict.NO:
        return False
    ok, _ = oracle_idp(res.instance.g, res.instance.pairs)
    return ok


def test_preprocess_preserves_the_answer():
    agree = 0
    for trial in range(500):
        inst = corpus_instance(trial)
        res = preprocess(inst)
        want, _ = oracle_idp(inst.g, inst.pairs)
        got = _with_edge_paths(inst, res)
        assert got == want, f"trial {trial}"
        agree += 1
    assert agree == 500
