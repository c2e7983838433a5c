"""Recursive vertex orders for maximal outerplanar DAG subclasses.

Every subtree of the stellation tree (a "frame") is laid out as six
consecutive parts ``[H1, s, H2, H3, t, H4]`` where ``(s, t)`` is the
frame's base edge. Parents are assembled from their children's parts, so
the tree is processed bottom-up with an explicit loop. Mirror-image cases
are reduced to the handled ones by reversing all edges, combining, and
reversing the resulting parts.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from ..graph import Dag, Edge, LinearOrder, PartitionedOrder, StackLayout, _max_twist_edges
from ..recognition import O1, O2, O3, ConstructionSequence, RecognitionError, replay
from . import invariants as inv
from ._seq import EMPTY, Seq, cat, leaf, rev

LABELS = ("H1", "s", "H2", "H3", "t", "H4")


@dataclass(frozen=True)
class Parts:
    h1: Seq
    s: Seq
    h2: Seq
    h3: Seq
    t: Seq
    h4: Seq

    def seqs(self) -> tuple[Seq, ...]:
        return (self.h1, self.s, self.h2, self.h3, self.t, self.h4)

    def reversed(self) -> Parts:
        return Parts(rev(self.h4), self.t, rev(self.h3), rev(self.h2), self.s, rev(self.h1))


def bare_edge(e: Edge) -> Parts:
    return Parts(EMPTY, leaf(e[0]), EMPTY, EMPTY, leaf(e[1]), EMPTY)


@dataclass(frozen=True)
class AnnotatedOrder:
    order: PartitionedOrder
    cls: str
    bound: int

    @property
    def linear_order(self) -> LinearOrder:
        return self.order.order


def to_partitioned(p: Parts, labels: tuple[str, ...] = LABELS) -> PartitionedOrder:
    vertices: list[int] = []
    ranges = []
    for lab, seq in zip(LABELS, p.seqs()):
        start = len(vertices)
        vertices.extend(seq.flatten())
        if lab in labels:
            ranges.append((lab, start, len(vertices)))
    return PartitionedOrder(LinearOrder(vertices), tuple(ranges))


# --------------------------------------------------------------------------
# combine rules; ``g`` hangs off the new edge at the base source side, ``r``
# off the other one


def _single_source_o2(s: int, t: int, x: int, g: Parts, r: Parts) -> Parts:
    # g on (s, x) = [s, G3, x, G4]; r on (t, x) = [t, R3, x, R4]
    return Parts(EMPTY, leaf(s), EMPTY, EMPTY, leaf(t), cat(r.h3, g.h3, leaf(x), g.h4, r.h4))


def _single_source_o1(s: int, t: int, x: int, g: Parts, r: Parts) -> Parts:
    # g on (s, x) = [s, G3, x, G4]; r on (x, t) = [x, R3, t, R4]
    return Parts(EMPTY, leaf(s), EMPTY, cat(g.h3, leaf(x), g.h4, r.h3), leaf(t), r.h4)


def _monotone_o2(s: int, t: int, x: int, g: Parts, r: Parts) -> Parts:
    # [G1, s, G2, R1, t, R2, G3, R3, x, R4, G4]
    return Parts(g.h1, leaf(s), g.h2, r.h1, leaf(t), cat(r.h2, g.h3, r.h3, leaf(x), r.h4, g.h4))


def _is_trivial(p: Parts) -> bool:
    return sum(q.size for q in p.seqs()) == 2


def _outerpath_o2(s: int, t: int, x: int, g: Parts, r: Parts) -> Parts:
    if _is_trivial(r):
        # [G1, s, G2, t, G3, x, G4]
        return Parts(g.h1, leaf(s), g.h2, EMPTY, leaf(t), cat(g.h3, leaf(x), g.h4))
    # [s, R1, t, R2, R3, x, R4]
    return Parts(EMPTY, leaf(s), EMPTY, r.h1, leaf(t), cat(r.h2, r.h3, leaf(x), r.h4))


def _outerpath_o1(s: int, t: int, x: int, g: Parts, r: Parts) -> Parts:
    # r trivial: [G1, s, G2, G3, x, G4, t]
    return Parts(g.h1, leaf(s), cat(g.h2, g.h3, leaf(x), g.h4), EMPTY, leaf(t), EMPTY)


def _combine_single_source(op, g: Parts, r: Parts) -> Parts:
    s, t = op.base
    if op.kind == O2:
        return _single_source_o2(s, t, op.apex, g, r)
    if op.kind == O1:
        return _single_source_o1(s, t, op.apex, g, r)
    raise RecognitionError(f"single-source order cannot handle {op.kind} at apex {op.apex}")


def _combine_monotone(op, g: Parts, r: Parts) -> Parts:
    s, t = op.base
    if op.kind == O2:
        return _monotone_o2(s, t, op.apex, g, r)
    if op.kind == O3:
        # reversed: base (t, s), apex a sink; (t, x) comes from r, (s, x) from g
        return _monotone_o2(t, s, op.apex, r.reversed(), g.reversed()).reversed()
    raise RecognitionError(f"monotone order cannot handle {op.kind} at apex {op.apex}")


def _combine_outerpath(op, g: Parts, r: Parts) -> Parts:
    s, t = op.base
    x = op.apex
    if op.kind == O2:
        return _outerpath_o2(s, t, x, g, r)
    if op.kind == O1:
        if _is_trivial(r):
            return _outerpath_o1(s, t, x, g, r)
        return _outerpath_o1(t, s, x, r.reversed(), g.reversed()).reversed()
    return _outerpath_o2(t, s, x, r.reversed(), g.reversed()).reversed()


# --------------------------------------------------------------------------
# driver


class _FrameChecker:
    def __init__(self, g: Dag, invariants, extra: Callable | None = None) -> None:
        self.edges = g.edges
        self.invariants = invariants
        self.extra = extra

    def __call__(self, p: Parts, where: str) -> None:
        parts = [(lab, seq.flatten()) for lab, seq in zip(LABELS, p.seqs())]
        verts = {v for _, vs in parts for v in vs}
        edges = [e for e in self.edges if e[0] in verts and e[1] in verts]
        inv.assert_invariants(edges, parts, self.invariants, where)
        if self.extra is not None:
            self.extra(edges, dict(parts), where)


def _run(seq: ConstructionSequence, combine, checker: _FrameChecker | None) -> Parts:
    results: list[Parts | None] = [None] * len(seq.nodes)
    for i in range(len(seq.nodes) - 1, -1, -1):
        op = seq.nodes[i]
        e0, e1 = op.new_edges()
        kids = []
        for slot, e in zip(op.children, (e0, e1)):
            if slot is None:
                kids.append(bare_edge(e))
            else:
                kids.append(results[slot])
                results[slot] = None
        results[i] = combine(op, kids[0], kids[1])
        if checker is not None:
            checker(results[i], f" in frame of apex {op.apex}")
    if not seq.nodes:
        return bare_edge(seq.base)
    return results[0]


def _finish(seq: ConstructionSequence, p: Parts, cls: str, bound: int, labels=LABELS) -> AnnotatedOrder:
    out = to_partitioned(p, labels)
    if len(out.order) != seq.n:
        raise RecognitionError("construction sequence does not cover every vertex")
    return AnnotatedOrder(out, cls, bound)


def _check_kinds(seq: ConstructionSequence, allowed: set[str], cls: str) -> None:
    bad = seq.kinds() - allowed
    if bad:
        raise RecognitionError(f"{cls} order: construction uses {', '.join(sorted(bad))}")


def _single_source_observation(edges, parts, where) -> None:
    s = parts["s"][0]
    h4 = set(parts["H4"])
    if parts["H3"] and any(u == s and v in h4 for u, v in edges):
        raise inv.InvariantViolation(f"both E(s -> H4) and H3 are nonempty{where}")


def order_single_source(seq: ConstructionSequence, check_frames: bool = False) -> AnnotatedOrder:
    """Order of twist at most 3 for a single-source maximal outerplanar DAG."""
    _check_kinds(seq, {O1, O2}, "single-source")
    g = replay(seq)
    if g.sources() != [seq.base[0]]:
        raise RecognitionError("base edge does not start at the unique source")
    checker = (
        _FrameChecker(g, inv.SINGLE_SOURCE, _single_source_observation) if check_frames else None
    )
    p = _run(seq, _combine_single_source, checker)
    return _finish(seq, p, "single-source", 3, ("s", "H3", "t", "H4"))


def order_monotone(seq: ConstructionSequence, check_frames: bool = False) -> AnnotatedOrder:
    """Order of twist at most 4 for a monotone maximal outerplanar DAG."""
    _check_kinds(seq, {O2, O3}, "monotone")
    checker = _FrameChecker(replay(seq), inv.MONOTONE) if check_frames else None
    return _finish(seq, _run(seq, _combine_monotone, checker), "monotone", 4)


def order_outerpath(seq: ConstructionSequence, check_frames: bool = False) -> AnnotatedOrder:
    """Order of twist at most 4 for a maximal outerpath DAG."""
    if not seq.is_path():
        raise RecognitionError("outerpath order: stellation tree is not a path")
    checker = _FrameChecker(replay(seq), inv.OUTERPATH) if check_frames else None
    return _finish(seq, _run(seq, _combine_outerpath, checker), "outerpath", 4)


# --------------------------------------------------------------------------
# four stacks for single-source graphs

# Pages are assigned per frame in frame-local roles 0..3 and renamed on the
# way up. Roles: 0 holds s -> H3/H4, 1 holds H3 -> t and t -> H4 (and the
# frame's base edge), 2 holds H3 -> H4.
_IDENT = (0, 1, 2, 3)
_CASE1_R = (1, 3, 2, 0)  # child roles -> parent roles for the (t, x) child
_CASE2_R = (3, 1, 2, 0)  # same for the (x, t) child
_SWAP = (0, 1, 3, 2)


def _compose(outer: tuple[int, ...], inner: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(outer[i] for i in inner)


def stacks_single_source(seq: ConstructionSequence) -> StackLayout:
    """Four-stack layout of a single-source maximal outerplanar DAG.

    The order is the one produced by :func:`order_single_source`.
    """
    order = order_single_source(seq).linear_order
    nodes = seq.nodes
    # a frame whose H3 is empty: leaves and O2 frames
    h3_empty = [op.kind == O2 for op in nodes]
    kid_perm: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for op in nodes:
        if op.kind == O2:
            kid_perm.append((_IDENT, _CASE1_R))
            continue
        r = op.children[1]
        swap = r is None or h3_empty[r]
        if swap:
            # x -> R4 edges are the frame's H3 -> H4 edges; they sit in role 3
            kid_perm.append((_compose(_SWAP, _IDENT), _compose(_SWAP, _CASE2_R)))
        else:
            kid_perm.append((_IDENT, _CASE2_R))

    page_of: dict[Edge, int] = {seq.base: 1}
    to_root: list[tuple[int, ...]] = [_IDENT] * len(nodes)
    for i, op in enumerate(nodes):
        here = to_root[i]
        e0, e1 = op.new_edges()
        page_of[e0] = here[0]
        page_of[e1] = here[1]
        for slot, perm in zip(op.children, kid_perm[i]):
            if slot is not None:
                to_root[slot] = _compose(here, perm)
    return StackLayout(order, page_of, 4)
