from __future__ import annotations

import pytest

from conftest import random_dag
from stacklayout.generators import (
    gen_monotone_odag,
    gen_outerpath,
    gen_single_source_odag,
    gen_transitive_odag,
    gen_twist_gadget,
    gen_up3tree,
    generate,
)
from stacklayout.graph import Dag, reverse
from stacklayout.recognition import (
    O1,
    O2,
    O3,
    RecognitionError,
    augment_outerplanar,
    classify,
    find_base,
    is_upward_planar_small,
    peel_3tree,
    peel_outerplanar,
    replay,
    replay_3tree,
    st_upward_check,
)

OUTERPLANAR_FAMILIES = ["transitive", "single-source", "monotone", "outerpath"]


def test_peel_single_edge():
    seq = peel_outerplanar(Dag(2, [(0, 1)]), (0, 1))
    assert seq.nodes == ()
    assert replay(seq) == Dag(2, [(0, 1)])


def test_peel_transitive_triangle(triangle):
    seq = peel_outerplanar(triangle, (0, 2))
    assert [op.kind for op in seq.nodes] == [O1]
    assert seq.nodes[0].apex == 1
    assert seq.format() == "O1 base=0,2 apex=1 parent=-1"


def test_peel_orients_base_from_graph(triangle):
    assert peel_outerplanar(triangle, (2, 0)).base == (0, 2)


@pytest.mark.parametrize("family", OUTERPLANAR_FAMILIES)
def test_peel_round_trip(family):
    for n in (3, 7, 40):
        for seed in range(10):
            g = generate(family, n, seed)
            seq = peel_outerplanar(g, g.edges[0])
            assert len(seq.nodes) == n - 2
            assert g.m == 2 * n - 3
            assert set(replay(seq).edges) == set(g.edges)


def test_peel_kind_patterns_match_edges():
    g = gen_outerpath(30, 4)
    edges = set(g.edges)
    for op in peel_outerplanar(g, g.edges[0]).nodes:
        s, t = op.base
        x = op.apex
        expected = {O1: {(s, x), (x, t)}, O2: {(s, x), (t, x)}, O3: {(x, s), (x, t)}}[op.kind]
        assert expected <= edges


def test_peel_rejects_non_maximal_and_missing_base():
    square = Dag(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    with pytest.raises(RecognitionError):
        peel_outerplanar(square, (0, 1))
    k4 = Dag(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    with pytest.raises(RecognitionError):
        peel_outerplanar(k4, (0, 1))
    with pytest.raises(RecognitionError):
        peel_outerplanar(gen_single_source_odag(6, 0), (4, 5))


def test_peel_rejects_inner_chord_as_base():
    # 0-1-2-3 fan from 0: chord (0, 2) lies in two triangles
    g = Dag(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    with pytest.raises(RecognitionError):
        peel_outerplanar(g, (0, 2))


def test_classify_triangle(triangle):
    tags = classify(triangle)
    for flag in ("maximal_outerplanar", "transitive_only", "single_source", "single_sink",
                 "monotone", "outerpath", "three_tree", "face_consistent_3tree"):
        assert getattr(tags, flag)


def test_classify_generator_agreement():
    for n in (4, 20, 200):
        for seed in range(25):
            assert classify(gen_transitive_odag(n, seed)).transitive_only
            tags = classify(gen_single_source_odag(n, seed))
            assert tags.single_source and find_base(gen_single_source_odag(n, seed), "single-source")
            assert classify(gen_monotone_odag(n, seed)).monotone
            assert classify(gen_outerpath(n, seed)).outerpath
            assert classify(gen_up3tree(n, seed)).face_consistent_3tree


def test_classify_flags_consistent():
    for family in OUTERPLANAR_FAMILIES:
        for seed in range(20):
            tags = classify(generate(family, 12, seed))
            if tags.transitive_only:
                assert tags.single_source and tags.single_sink


def test_classify_reverse_swaps_source_and_sink():
    for family in OUTERPLANAR_FAMILIES + ["up3tree"]:
        for seed in range(15):
            g = generate(family, 15, seed)
            a, b = classify(g), classify(reverse(g))
            assert a.single_source == b.single_sink
            assert a.single_sink == b.single_source
            assert a.monotone == b.monotone
            assert a.outerpath == b.outerpath
            assert a.three_tree == b.three_tree


def test_classify_non_member_flags_false():
    tags = classify(gen_twist_gadget(3))
    assert not tags.maximal_outerplanar and not tags.three_tree
    assert classify(Dag(2, [(0, 1), (1, 0)])).names() == []


def test_peel_3tree_triangle(triangle):
    dec = peel_3tree(triangle)
    assert dec.outer == (0, 1, 2)
    assert dec.insertions == ()
    assert dec.face_consistent


def test_peel_3tree_k4():
    s, m, t, x = 0, 1, 2, 3
    g = Dag(4, [(s, m), (m, t), (s, t), (s, x), (x, t), (x, m)])
    dec = peel_3tree(g)
    assert dec.outer == (s, m, t)
    assert len(dec.insertions) == 1
    ins = dec.insertions[0]
    assert ins.apex == x and ins.host == (s, m, t)
    assert dec.face_consistent


def test_peel_3tree_round_trip():
    for n in (4, 10, 60):
        for seed in range(10):
            g = gen_up3tree(n, seed)
            dec = peel_3tree(g)
            assert dec.face_consistent
            assert set(replay_3tree(dec).edges) == set(g.edges)


def test_peel_3tree_flags_inconsistent_insertion():
    # apex 3 is a sink of the triangle: edge (2, 3) breaks the pattern
    g = Dag(4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)])
    dec = peel_3tree(g, (0, 1, 2))
    assert not dec.face_consistent
    assert dec.first_inconsistent().apex == 3


def test_peel_3tree_rejects_other_graphs():
    with pytest.raises(RecognitionError):
        peel_3tree(gen_outerpath(8, 1))
    with pytest.raises(RecognitionError):
        peel_3tree(Dag(2, [(0, 1)]))


def test_st_upward_check_examples(triangle):
    assert st_upward_check(triangle)
    for k in (3, 4):
        assert not st_upward_check(gen_twist_gadget(k))
    with pytest.raises(RecognitionError):
        st_upward_check(Dag(3, [(0, 2), (1, 2)]))


def test_upward_test_agrees_with_st_check(rnd):
    checked = 0
    while checked < 60:
        g = random_dag(rnd, rnd.randint(3, 7), 0.55)
        if len(g.sources()) != 1 or len(g.sinks()) != 1:
            continue
        checked += 1
        assert is_upward_planar_small(g) == st_upward_check(g)


def test_upward_test_multi_source():
    # generated single-source graphs with several sinks are upward planar
    for seed in range(5):
        assert is_upward_planar_small(gen_single_source_odag(7, seed))
    with pytest.raises(RecognitionError):
        is_upward_planar_small(gen_single_source_odag(12, 0))


@pytest.mark.parametrize("cls, gen", [("single-source", gen_single_source_odag),
                                      ("outerpath", gen_outerpath)])
def test_augment_restores_class(cls, gen):
    done = 0
    for seed in range(30):
        g = gen(12, seed)
        seq = peel_outerplanar(g, find_base(g, cls))
        # the base of a non-root stellation is an inner chord
        chord = seq.nodes[1].base
        h = Dag(g.n, [e for e in g.edges if e != chord])
        try:
            out = augment_outerplanar(h, cls)
        except RecognitionError:
            continue
        done += 1
        assert set(h.edges) <= set(out.edges)
        assert out.m == 2 * out.n - 3
        assert find_base(out, cls) is not None
    assert done > 0


def test_augment_rejects_unsupported():
    with pytest.raises(RecognitionError):
        augment_outerplanar(gen_monotone_odag(6, 0), "monotone")
    path = Dag(3, [(0, 1), (1, 2)])
    with pytest.raises(RecognitionError):
        augment_outerplanar(path, "single-source")
