"""Recursive vertex order of twist at most 5 for face-consistent DAG 3-trees.

Each triangle ``(s, m, t)`` (source, middle, sink) with everything nested
inside it is laid out as ``[s, H1, m, H2, t]``. The apex ``x`` of a
triangle splits it into the triangles ``{s, x, t}``, ``{s, x, m}`` and
``{x, m, t}``; the case ``(m, x)`` is reduced to ``(x, m)`` by reversing
all edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..graph import Edge, LinearOrder, PartitionedOrder
from ..recognition import Insertion, RecognitionError, ThreeTreeDecomposition, replay_3tree
from . import invariants as inv
from ._seq import EMPTY, Seq, cat, leaf, rev
from .outerplanar import AnnotatedOrder

LABELS = ("s", "H1", "m", "H2", "t")


@dataclass(frozen=True)
class TriParts:
    s: Seq
    h1: Seq
    m: Seq
    h2: Seq
    t: Seq

    def seqs(self) -> tuple[Seq, ...]:
        return (self.s, self.h1, self.m, self.h2, self.t)

    def reversed(self) -> TriParts:
        return TriParts(self.t, rev(self.h2), self.m, rev(self.h1), self.s)


def bare_triangle(s: int, m: int, t: int) -> TriParts:
    return TriParts(leaf(s), EMPTY, leaf(m), EMPTY, leaf(t))


def _combine(s: int, m: int, x: int, r: TriParts, g: TriParts, b: TriParts) -> TriParts:
    # r on (s, x, t), g on (s, x, m), b on (x, m, t):
    # [s, R1, G1, x, G2, R2, B1, m, B2, t]
    return TriParts(leaf(s), cat(r.h1, g.h1, leaf(x), g.h2, r.h2, b.h1), leaf(m), b.h2, r.t)


def _sub_triangles(ins: Insertion) -> tuple[tuple[int, int, int], ...]:
    """Oriented child triangles ``r, g, b`` in the frame's own (possibly reversed) roles."""
    s, m, t = ins.host
    x = ins.apex
    if ins.edges[1] == (x, m):
        return (s, x, t), (s, x, m), (x, m, t)
    return (s, x, t), (s, m, x), (m, x, t)


def order_up3tree(dec: ThreeTreeDecomposition, check_frames: bool = False) -> AnnotatedOrder:
    """Order of twist at most 5 for a face-consistent DAG 3-tree."""
    bad = dec.first_inconsistent()
    if bad is not None:
        raise RecognitionError(
            f"apex {bad.apex} in face {bad.host} breaks the source/sink pattern"
        )
    edges_all: list[Edge] = list(replay_3tree(dec).edges) if check_frames else []
    results: dict[frozenset[int], TriParts] = {}

    def take(tri: tuple[int, int, int]) -> TriParts:
        return results.pop(frozenset(tri), None) or bare_triangle(*tri)

    for ins in reversed(dec.insertions):
        s, m, t = ins.host
        x = ins.apex
        tr, tg, tb = _sub_triangles(ins)
        if ins.edges[1] == (x, m):
            res = _combine(s, m, x, take(tr), take(tg), take(tb))
        else:
            # reversed roles: s' = t, t' = s; r' = {t, x, s}, g' = {t, x, m}, b' = {x, m, s}
            r2 = take(tr).reversed()
            g2 = take(tb).reversed()
            b2 = take(tg).reversed()
            res = _combine(t, m, x, r2, g2, b2).reversed()
        results[frozenset(ins.host)] = res
        if check_frames:
            _check_frame(edges_all, res, x)
    root = take(dec.outer)
    vertices: list[int] = []
    ranges = []
    for lab, seq in zip(LABELS, root.seqs()):
        start = len(vertices)
        vertices.extend(seq.flatten())
        ranges.append((lab, start, len(vertices)))
    if len(vertices) != dec.n:
        raise RecognitionError("decomposition does not cover every vertex")
    return AnnotatedOrder(PartitionedOrder(LinearOrder(vertices), tuple(ranges)), "up3tree", 5)


def _check_frame(edges: list[Edge], res: TriParts, apex: int) -> None:
    parts = [(lab, seq.flatten()) for lab, seq in zip(LABELS, res.seqs())]
    verts = {v for _, vs in parts for v in vs}
    inner = [e for e in edges if e[0] in verts and e[1] in verts]
    inv.assert_invariants(inner, parts, inv.UP3TREE, f" in frame of apex {apex}")
