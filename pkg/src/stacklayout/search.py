"""Small-graph enumeration and lower-bound witness search.

Candidates are acyclic orientations of maximal outerplanar (or planar
3-tree) topologies. Directed isomorphs are skipped, cheap class filters run
first, then the solver checks the stack number, then the expensive class
filters.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from pathlib import Path

import networkx as nx

from .generators import generate
from .graph import Dag, Edge, find_cycle
from .io import write_graph
from .recognition import (
    RecognitionError,
    classify,
    is_upward_planar_small,
    peel_3tree,
    st_upward_check,
)
from .rng import SplitMix64
from .sat.exact import certify_at_least

SEARCH_CLASSES = ("ss-sink-upward-odag", "upward-odag", "face-consistent-3tree")
EXHAUSTIVE_MAX_N = 7


# --------------------------------------------------------------------------
# undirected topologies


def _polygon_triangulations(n: int) -> list[frozenset[Edge]]:
    """Chord sets of all triangulations of the polygon 0..n-1."""
    memo: dict[tuple[int, int], list[frozenset[Edge]]] = {}

    def tri(i: int, j: int) -> list[frozenset[Edge]]:
        if j - i < 2:
            return [frozenset()]
        if (i, j) in memo:
            return memo[(i, j)]
        out = []
        for k in range(i + 1, j):
            extra = set()
            if k - i > 1:
                extra.add((i, k))
            if j - k > 1:
                extra.add((k, j))
            for left in tri(i, k):
                for right in tri(k, j):
                    out.append(frozenset(extra) | left | right)
        memo[(i, j)] = out
        return out

    return tri(0, n - 1)


def _dedupe_undirected(graphs: list[list[Edge]], n: int) -> list[list[Edge]]:
    buckets: dict[tuple, list[nx.Graph]] = {}
    out = []
    for edges in graphs:
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(edges)
        key = tuple(sorted(d for _, d in h.degree()))
        seen = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(h, other) for other in seen):
            continue
        seen.append(h)
        out.append(edges)
    return out


def outerplanar_topologies(n: int) -> list[list[Edge]]:
    """Maximal outerplanar graphs on ``n`` vertices, one per isomorphism class."""
    if n < 2:
        return []
    if n == 2:
        return [[(0, 1)]]
    boundary = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    graphs = [sorted(boundary + sorted(ch)) for ch in _polygon_triangulations(n)]
    return _dedupe_undirected(graphs, n)


def three_tree_topologies(n: int) -> list[list[Edge]]:
    """Planar 3-trees on ``n`` vertices, one per isomorphism class."""
    if n < 3:
        return []
    level: list[tuple[list[Edge], list[tuple[int, int, int]]]] = [
        ([(0, 1), (0, 2), (1, 2)], [(0, 1, 2), (0, 1, 2)])
    ]  # the triangle bounds two faces
    for x in range(3, n):
        grown = []
        for edges, faces in level:
            for i, (a, b, c) in enumerate(faces):
                rest = faces[:i] + faces[i + 1:]
                grown.append(
                    (sorted(edges + [(a, x), (b, x), (c, x)]),
                     rest + [(a, b, x), (b, c, x), (a, c, x)])
                )
        keep = _dedupe_undirected([e for e, _ in grown], x + 1)
        kept = {tuple(e) for e in keep}
        level, seen = [], set()
        for e, f in grown:
            if tuple(e) in kept and tuple(e) not in seen:
                seen.add(tuple(e))
                level.append((e, f))
    return [e for e, _ in level]


# --------------------------------------------------------------------------
# orientations


def _orient(edges: list[Edge], mask: int) -> list[Edge]:
    return [(v, u) if mask >> i & 1 else (u, v) for i, (u, v) in enumerate(edges)]


def acyclic_orientations(n: int, edges: list[Edge]) -> Iterator[Dag]:
    """All acyclic orientations, by increasing flip bitmask."""
    for mask in range(1 << len(edges)):
        g = Dag(n, _orient(edges, mask))
        if find_cycle(g) is None:
            yield g


def sample_acyclic_orientations(n: int, edges: list[Edge], count: int, seed: int) -> list[Dag]:
    """Up to ``count`` distinct acyclic orientations.

    Each one orients every edge along a seeded random vertex permutation;
    every acyclic orientation arises this way. When there are at most
    ``count`` orientations in total, all of them are returned.
    """
    if len(edges) <= 16:
        every = list(acyclic_orientations(n, edges))
        if len(every) <= count:
            return every
    rng = SplitMix64(seed)
    seen: set[tuple[Edge, ...]] = set()
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        perm = list(range(n))
        rng.shuffle(perm)
        rank = {v: i for i, v in enumerate(perm)}
        oriented = tuple((u, v) if rank[u] < rank[v] else (v, u) for u, v in edges)
        if oriented not in seen:
            seen.add(oriented)
            out.append(Dag(n, oriented))
    return out


class DirectedDeduper:
    """Skips DAGs isomorphic to one already seen (exact, bucketed by degrees)."""

    def __init__(self) -> None:
        self.buckets: dict[tuple, list[nx.DiGraph]] = {}

    def is_new(self, g: Dag) -> bool:
        h = nx.DiGraph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        key = tuple(sorted(zip(g.in_degrees(), g.out_degrees())))
        seen = self.buckets.setdefault(key, [])
        if any(nx.is_isomorphic(h, other) for other in seen):
            return False
        seen.append(h)
        return True


# --------------------------------------------------------------------------
# witness search


@dataclass(frozen=True)
class _ClassFilter:
    topologies: Callable[[int], list[list[Edge]]]
    cheap: Callable[[Dag], bool]
    expensive: Callable[[Dag], bool]
    min_n: int


def _one_source_one_sink(g: Dag) -> bool:
    return len(g.sources()) == 1 and len(g.sinks()) == 1


def _face_consistent(g: Dag) -> bool:
    try:
        return peel_3tree(g).face_consistent
    except RecognitionError:
        return False


_FILTERS = {
    "ss-sink-upward-odag": _ClassFilter(
        outerplanar_topologies, _one_source_one_sink, st_upward_check, 2
    ),
    "upward-odag": _ClassFilter(
        outerplanar_topologies, lambda g: True, is_upward_planar_small, 2
    ),
    "face-consistent-3tree": _ClassFilter(
        three_tree_topologies, _one_source_one_sink, _face_consistent, 3
    ),
}


def in_search_class(g: Dag, cls: str) -> bool:
    """Full membership test for a search class (used to re-verify witnesses)."""
    flt = _FILTERS[cls]
    if cls == "face-consistent-3tree":
        return flt.cheap(g) and flt.expensive(g)
    return classify(g).maximal_outerplanar and flt.cheap(g) and flt.expensive(g)


@dataclass(frozen=True)
class SearchResult:
    witness: Dag | None
    candidates: int  # graphs handed to the solver
    exhausted_budget: bool


def search_witness(
    cls: str,
    n_max: int,
    target_k: int,
    budget: int | None = None,
    seed: int = 0,
    samples: int = 200,
) -> SearchResult:
    """First graph of class ``cls`` with at most ``n_max`` vertices whose
    stack number is at least ``target_k``.

    Orientations are enumerated exhaustively up to
    :data:`EXHAUSTIVE_MAX_N` vertices and sampled (``samples`` per topology)
    above. ``budget`` caps the number of candidates handed to the solver; an
    exhausted budget is not a proof that no witness exists.
    """
    if cls not in _FILTERS:
        raise ValueError(f"unknown search class {cls!r}; choose from {', '.join(SEARCH_CLASSES)}")
    flt = _FILTERS[cls]
    candidates = 0
    for n in range(flt.min_n, n_max + 1):
        dedupe = DirectedDeduper()
        for ti, edges in enumerate(flt.topologies(n)):
            if n <= EXHAUSTIVE_MAX_N:
                pool: Iterator[Dag] | list[Dag] = acyclic_orientations(n, edges)
            else:
                pool = sample_acyclic_orientations(n, edges, samples, seed * 1_000_003 + ti)
            for g in pool:
                if not flt.cheap(g) or not dedupe.is_new(g):
                    continue
                if budget is not None and candidates >= budget:
                    return SearchResult(None, candidates, True)
                candidates += 1
                if target_k > 1 and not certify_at_least(g, target_k)[0]:
                    continue
                if flt.expensive(g):
                    return SearchResult(g, candidates, False)
    return SearchResult(None, candidates, False)


# --------------------------------------------------------------------------
# corpora


def corpus_path(root: str | Path, family: str, n: int, seed: int) -> Path:
    return Path(root) / family / f"n{n}_s{seed}.dag"


def write_corpus(
    root: str | Path, families: list[str], sizes: list[int], seeds: list[int]
) -> list[Path]:
    """Write ``<family>/n<k>_s<seed>.dag`` files; the gadget ignores the seed."""
    paths = []
    for family in families:
        for n in sizes:
            for seed in ([0] if family == "twist-gadget" else seeds):
                path = corpus_path(root, family, n, seed)
                path.parent.mkdir(parents=True, exist_ok=True)
                write_graph(generate(family, n, seed), path)
                paths.append(path)
    return paths

