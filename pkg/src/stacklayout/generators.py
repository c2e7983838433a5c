"""Seeded generators for the graph families and the twist gadget.

All randomness comes from :class:`~stacklayout.rng.SplitMix64`, and vertex
ids are handed out sequentially, so a ``(family, n, seed)`` triple always
yields the same graph.
"""

from __future__ import annotations

from .graph import Dag, Edge, GraphError
from .recognition import O1, O2, O3
from .rng import SplitMix64

FAMILIES = ("transitive", "single-source", "monotone", "outerpath", "up3tree", "twist-gadget")

_KINDS = {
    "transitive": (O1,),
    "single-source": (O1, O2),
    "monotone": (O2, O3),
    "outerpath": (O1, O2, O3),
}


def _stellated_edges(kind: str, s: int, t: int, x: int) -> tuple[Edge, Edge]:
    if kind == O1:
        return (s, x), (x, t)
    if kind == O2:
        return (s, x), (t, x)
    return (x, s), (x, t)


def _grow_outerplanar(n: int, seed: int, kinds: tuple[str, ...], path: bool) -> Dag:
    if n < 2:
        raise GraphError("an outerplanar DAG needs at least 2 vertices")
    rng = SplitMix64(seed)
    edges: list[Edge] = [(0, 1)]
    open_edges: list[Edge] = [(0, 1)]  # outer edges not yet stellated
    for x in range(2, n):
        i = rng.below(len(open_edges))
        s, t = open_edges[i]
        open_edges[i] = open_edges[-1]
        open_edges.pop()
        new = _stellated_edges(rng.choice(kinds), s, t, x)
        edges.extend(new)
        if path:
            open_edges = [new[rng.below(2)]]
        else:
            open_edges.extend(new)
    return Dag(n, edges)


def gen_transitive_odag(n: int, seed: int) -> Dag:
    return _grow_outerplanar(n, seed, _KINDS["transitive"], path=False)


def gen_single_source_odag(n: int, seed: int) -> Dag:
    return _grow_outerplanar(n, seed, _KINDS["single-source"], path=False)


def gen_monotone_odag(n: int, seed: int) -> Dag:
    return _grow_outerplanar(n, seed, _KINDS["monotone"], path=False)


def gen_outerpath(n: int, seed: int) -> Dag:
    """Maximal outerplanar DAG whose stellations continue from one new edge each time."""
    return _grow_outerplanar(n, seed, _KINDS["outerpath"], path=True)


def gen_up3tree(n: int, seed: int) -> Dag:
    """Face-consistent DAG 3-tree grown from the triangle 0 -> 1 -> 2, 0 -> 2."""
    if n < 3:
        raise GraphError("a 3-tree needs at least 3 vertices")
    rng = SplitMix64(seed)
    edges: list[Edge] = [(0, 1), (1, 2), (0, 2)]
    faces: list[tuple[int, int, int]] = [(0, 1, 2)]  # (local source, middle, local sink)
    for x in range(3, n):
        i = rng.below(len(faces))
        a, b, c = faces[i]
        faces[i] = faces[-1]
        faces.pop()
        edges.extend([(a, x), (x, c)])
        if rng.coin():
            edges.append((x, b))
            faces.extend([(a, x, b), (x, b, c), (a, x, c)])
        else:
            edges.append((b, x))
            faces.extend([(a, b, x), (b, x, c), (a, x, c)])
    return Dag(n, edges)


def gen_twist_gadget(k: int) -> Dag:
    """Paths u_0..u_{k-1} and v_0..v_{k-1}, bridge u_{k-1} -> v_0, matching u_i -> v_i.

    The order is forced and the matching is a k-twist. Vertex ``u_i`` is
    ``i`` and ``v_i`` is ``k + i``.
    """
    if k < 1:
        raise GraphError("gadget size must be positive")
    edges: list[Edge] = []
    edges.extend((i, i + 1) for i in range(k - 1))
    edges.extend((k + i, k + i + 1) for i in range(k - 1))
    if k > 1:
        edges.append((k - 1, k))
    edges.extend((i, k + i) for i in range(k))
    return Dag(2 * k, edges)


def generate(family: str, n: int, seed: int = 0) -> Dag:
    if family == "transitive":
        return gen_transitive_odag(n, seed)
    if family == "single-source":
        return gen_single_source_odag(n, seed)
    if family == "monotone":
        return gen_monotone_odag(n, seed)
    if family == "outerpath":
        return gen_outerpath(n, seed)
    if family == "up3tree":
        return gen_up3tree(n, seed)
    if family == "twist-gadget":
        return gen_twist_gadget(n)
    raise GraphError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
