from __future__ import annotations

import pytest

from stacklayout.generators import (
    gen_monotone_odag,
    gen_outerpath,
    gen_single_source_odag,
    gen_transitive_odag,
    gen_up3tree,
)
from stacklayout.graph import (
    Dag,
    LinearOrder,
    is_linear_extension,
    max_twist,
    max_twist_bruteforce,
    max_twist_of_subset,
    reverse,
    validate_layout,
)
from stacklayout.layouts import (
    InvariantViolation,
    order_monotone,
    order_outerpath,
    order_single_source,
    order_up3tree,
    stacks_single_source,
)
from stacklayout.layouts import invariants as inv
from stacklayout.recognition import (
    RecognitionError,
    find_base,
    peel_3tree,
    peel_outerplanar,
)


def _seq(g: Dag, cls: str) -> ConstructionSequence:
    return peel_outerplanar(g, find_base(g, cls))


def _twist(g: Dag, annotated) -> int:
    order = annotated.linear_order
    assert is_linear_extension(g, order)
    return max_twist(g, order).k


# --------------------------------------------------------------------------
# single source


def test_single_source_single_edge():
    g = Dag(2, [(0, 1)])
    out = order_single_source(_seq(g, "single-source"))
    assert out.linear_order.vertices == (0, 1)
    assert out.bound == 3
    assert out.order.labels() == ("s", "H3", "t", "H4")


def test_single_source_transitive_triangle(triangle):
    out = order_single_source(_seq(triangle, "single-source"))
    assert out.linear_order.vertices == (0, 1, 2)
    assert _twist(triangle, out) == 1


def test_single_source_case_one_triangle():
    s, t, x = 0, 1, 2
    g = Dag(3, [(s, t), (s, x), (t, x)])
    out = order_single_source(peel_outerplanar(g, (s, t)))
    assert out.linear_order.vertices == (s, t, x)
    assert out.order.part("H4") == (x,)


def test_single_source_bound_and_frames():
    for n in (10, 60, 200):
        for seed in range(8):
            g = gen_single_source_odag(n, seed)
            out = order_single_source(_seq(g, "single-source"), check_frames=True)
            assert _twist(g, out) <= 3
            po = out.order
            labels = po.label_of()
            s = po.part("s")[0]
            pred = lambda e: (e[0] == s or labels[e[0]] == "H3") and labels[e[1]] == "H4"  # noqa: E731
            assert max_twist_of_subset(g, out.linear_order, pred).k <= 1


def test_single_source_rejects_other_kinds():
    with pytest.raises(RecognitionError):
        order_single_source(_seq(gen_monotone_odag(8, 2), "monotone"))
    g = Dag(3, [(0, 1), (2, 0), (2, 1)])  # O3 on base (0, 1)
    with pytest.raises(RecognitionError):
        order_single_source(peel_outerplanar(g, (0, 1)))


def test_single_source_rejects_base_away_from_source():
    g = gen_single_source_odag(10, 3)
    source = g.sources()[0]
    outer = [e for e in g.edges if source not in e]
    for e in outer:
        try:
            seq = peel_outerplanar(g, e)
        except RecognitionError:
            continue
        if seq.kinds() <= {"O1", "O2"}:
            with pytest.raises(RecognitionError):
                order_single_source(seq)


# --------------------------------------------------------------------------
# four stacks


def test_stacks_transitive_triangle(triangle):
    layout = stacks_single_source(peel_outerplanar(triangle, (0, 2)))
    assert validate_layout(triangle, layout) is None
    assert layout.page_of == {(0, 1): 0, (1, 2): 1, (0, 2): 1}


def test_stacks_case_one_triangle():
    s, t, x = 0, 1, 2
    g = Dag(3, [(s, t), (s, x), (t, x)])
    layout = stacks_single_source(peel_outerplanar(g, (s, t)))
    assert layout.page_of == {(s, x): 0, (t, x): 1, (s, t): 1}
    assert validate_layout(g, layout) is None


def test_stacks_valid_and_same_order():
    for n in (5, 40, 500):
        for seed in range(10):
            g = gen_single_source_odag(n, seed)
            seq = _seq(g, "single-source")
            layout = stacks_single_source(seq)
            assert layout.k == 4
            assert validate_layout(g, layout) is None
            assert layout.order == order_single_source(seq).linear_order


def test_stacks_transitive_graph_one_order_twist_one():
    g = gen_transitive_odag(50, 1)
    out = order_single_source(_seq(g, "transitive"))
    assert _twist(g, out) == 1


# --------------------------------------------------------------------------
# monotone


def test_monotone_single_edge():
    g = Dag(2, [(0, 1)])
    assert order_monotone(_seq(g, "monotone")).linear_order.vertices == (0, 1)


def test_monotone_o2_path_small():
    # base (0, 1); apex 2 on (0, 1), apex 3 on (0, 2), apex 4 on (0, 3), all sink apexes
    g = Dag(5, [(0, 1), (0, 2), (1, 2), (0, 3), (2, 3), (0, 4), (3, 4)])
    out = order_monotone(peel_outerplanar(g, (0, 1)), check_frames=True)
    assert max_twist_bruteforce(g, out.linear_order).k <= 2


def test_monotone_bound_and_frames():
    for n in (10, 60, 200):
        for seed in range(8):
            g = gen_monotone_odag(n, seed)
            out = order_monotone(_seq(g, "monotone"), check_frames=n <= 60)
            assert _twist(g, out) <= 4
            parts = [(lab, out.order.part(lab)) for lab in out.order.labels()]
            for res in inv.evaluate(g.edges, parts, inv.MONOTONE):
                assert res.ok, res


def test_monotone_reversal_symmetry():
    for seed in range(10):
        g = gen_monotone_odag(40, seed)
        rg = reverse(g)
        out = order_monotone(_seq(rg, "monotone"))
        back = out.linear_order.reversed()
        assert is_linear_extension(g, back)
        assert max_twist(g, back).k <= 4


def test_monotone_rejects_transitive_step(triangle):
    with pytest.raises(RecognitionError):
        order_monotone(peel_outerplanar(triangle, (0, 2)))


# --------------------------------------------------------------------------
# outerpath


def test_outerpath_single_edge():
    g = Dag(2, [(0, 1)])
    assert order_outerpath(_seq(g, "outerpath")).linear_order.vertices == (0, 1)


def test_outerpath_two_steps_small():
    # apex 2 with (0, 2), (1, 2) on base (0, 1); then apex 3 on (1, 2) with (1, 3), (2, 3)
    g = Dag(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    out = order_outerpath(peel_outerplanar(g, (0, 1)), check_frames=True)
    assert max_twist_bruteforce(g, out.linear_order).k <= 2


def test_outerpath_bound_and_frames():
    for n in (10, 60, 200):
        for seed in range(8):
            g = gen_outerpath(n, seed)
            out = order_outerpath(_seq(g, "outerpath"), check_frames=True)
            assert _twist(g, out) <= 4


def test_outerpath_rejects_branching_tree():
    g = gen_single_source_odag(30, 0)
    seq = _seq(g, "single-source")
    assert not seq.is_path()
    with pytest.raises(RecognitionError):
        order_outerpath(seq)


# --------------------------------------------------------------------------
# 3-trees


def test_up3tree_triangle(triangle):
    out = order_up3tree(peel_3tree(triangle))
    assert out.linear_order.vertices == (0, 1, 2)
    assert out.order.labels() == ("s", "H1", "m", "H2", "t")
    assert _twist(triangle, out) == 1


def test_up3tree_k4():
    s, m, t, x = 0, 1, 2, 3
    g = Dag(4, [(s, m), (m, t), (s, t), (s, x), (x, t), (x, m)])
    out = order_up3tree(peel_3tree(g), check_frames=True)
    assert out.linear_order.vertices == (s, x, m, t)
    assert max_twist_bruteforce(g, out.linear_order).k <= 2


def test_up3tree_k4_reversed_case():
    s, m, t, x = 0, 1, 2, 3
    g = Dag(4, [(s, m), (m, t), (s, t), (s, x), (x, t), (m, x)])
    out = order_up3tree(peel_3tree(g), check_frames=True)
    assert out.linear_order.vertices == (s, m, x, t)


def test_up3tree_bound_and_outer_invariant():
    for n in (10, 60, 300):
        for seed in range(6):
            g = gen_up3tree(n, seed)
            out = order_up3tree(peel_3tree(g), check_frames=n <= 60)
            assert _twist(g, out) <= 5
            parts = [(lab, out.order.part(lab)) for lab in out.order.labels()]
            assert all(r.ok for r in inv.evaluate(g.edges, parts, inv.UP3TREE))


def test_up3tree_rejects_inconsistent():
    g = Dag(4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)])
    with pytest.raises(RecognitionError):
        order_up3tree(peel_3tree(g, (0, 1, 2)))


# --------------------------------------------------------------------------
# invariant machinery


def test_evaluate_reports_values():
    edges = [(0, 2), (1, 3)]
    parts = [("H1", [0]), ("s", [1]), ("H2", []), ("H3", []), ("t", [2]), ("H4", [3])]
    res = {r.name: r for r in inv.evaluate(edges, parts, inv.MONOTONE)}
    assert res["I.2"].value == 2 and not res["I.2"].ok
    assert res["I.1"].value == 0 and res["I.1"].ok
    with pytest.raises(InvariantViolation):
        inv.assert_invariants(edges, parts, inv.MONOTONE)


def test_one_side_empty():
    parts = [("H1", []), ("s", [0]), ("H2", [1]), ("H3", [2]), ("t", [3]), ("H4", [])]
    res = {r.name: r for r in inv.evaluate([], parts, inv.OUTERPATH)}
    assert not res["I.0"].ok


def test_frame_checks_run_at_every_frame(monkeypatch, triangle):
    # a bound no nonempty frame meets must trip the check in the first frame
    monkeypatch.setattr(inv, "SINGLE_SOURCE", (inv.Tw("tight", 0, inv.ALL),))
    seq = peel_outerplanar(triangle, (0, 2))
    with pytest.raises(InvariantViolation, match="apex 1"):
        order_single_source(seq, check_frames=True)
    order_single_source(seq)  # unchecked mode ignores the table


def test_orders_are_deterministic():
    g = gen_outerpath(80, 9)
    a = order_outerpath(_seq(g, "outerpath")).order
    b = order_outerpath(_seq(g, "outerpath")).order
    assert a == b and a.format() == b.format()
    h = gen_up3tree(80, 9)
    assert order_up3tree(peel_3tree(h)).order == order_up3tree(peel_3tree(h)).order


def test_linear_order_type():
    out = order_single_source(_seq(gen_single_source_odag(12, 0), "single-source"))
    assert isinstance(out.linear_order, LinearOrder)
