"""Decomposition and class recognition for outerplanar DAGs and DAG 3-trees."""

from __future__ import annotations

import heapq
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import networkx as nx

from .graph import Dag, Edge, GraphError, validate_dag

O1, O2, O3 = "O1", "O2", "O3"

#: stellation kinds allowed when building each outerplanar subclass
CLASS_KINDS = {
    "transitive": frozenset({O1}),
    "single-source": frozenset({O1, O2}),
    "single-sink": frozenset({O1, O3}),
    "monotone": frozenset({O2, O3}),
    "outerpath": frozenset({O1, O2, O3}),
}


class RecognitionError(GraphError):
    """The graph is not in the class the operation needs."""


@dataclass(frozen=True)
class StellationOp:
    kind: str
    base: Edge
    apex: int
    parent: int
    # node indices hanging off the new edges {base[0], apex} and {apex, base[1]}
    children: tuple[int | None, int | None] = (None, None)

    def new_edges(self) -> tuple[Edge, Edge]:
        s, t = self.base
        x = self.apex
        if self.kind == O1:
            return (s, x), (x, t)
        if self.kind == O2:
            return (s, x), (t, x)
        return (x, s), (x, t)


@dataclass(frozen=True)
class ConstructionSequence:
    """Stellation tree of a maximal outerplanar DAG rooted at its base edge.

    ``nodes[0]`` (if any) stellates the base edge; nodes are stored in a
    valid construction order, parents before children.
    """

    n: int
    base: Edge
    nodes: tuple[StellationOp, ...]

    @property
    def root(self) -> int | None:
        return 0 if self.nodes else None

    def kinds(self) -> set[str]:
        return {op.kind for op in self.nodes}

    def is_path(self) -> bool:
        return all(sum(c is not None for c in op.children) <= 1 for op in self.nodes)

    def format(self) -> str:
        return "\n".join(
            f"{op.kind} base={op.base[0]},{op.base[1]} apex={op.apex} parent={op.parent}"
            for op in self.nodes
        )


def _kind(edges: set[Edge], s: int, t: int, x: int) -> str:
    if (s, x) in edges and (x, t) in edges:
        return O1
    if (s, x) in edges and (t, x) in edges:
        return O2
    if (x, s) in edges and (x, t) in edges:
        return O3
    raise RecognitionError(f"stellation of ({s}, {t}) by {x} creates a cycle")


def _orient(edges: set[Edge], a: int, b: int) -> Edge:
    return (a, b) if (a, b) in edges else (b, a)


def _peel_ears(g: Dag, keep: Iterable[int]) -> list[tuple[int, int, int]]:
    """Remove degree-2 vertices (lowest id first) until only ``keep`` is left.

    Returns removals ``(x, a, b)`` where ``a, b`` are the neighbours of ``x``.
    """
    adj = g.undirected_adjacency()
    keep = set(keep)
    alive = g.n
    heap = [v for v in range(g.n) if len(adj[v]) == 2 and v not in keep]
    heapq.heapify(heap)
    removed = [False] * g.n
    out = []
    while heap:
        x = heapq.heappop(heap)
        if removed[x] or len(adj[x]) != 2:
            continue
        a, b = sorted(adj[x])
        if b not in adj[a]:
            raise RecognitionError(f"degree-2 vertex {x} has non-adjacent neighbours {a}, {b}")
        removed[x] = True
        alive -= 1
        out.append((x, a, b))
        for y in (a, b):
            adj[y].discard(x)
            if len(adj[y]) == 2 and y not in keep:
                heapq.heappush(heap, y)
        adj[x].clear()
    if alive != len(keep):
        raise RecognitionError("no removable degree-2 vertex left; not maximal outerplanar")
    return out


def peel_outerplanar(g: Dag, base: Edge) -> ConstructionSequence:
    """Reverse-construct a maximal outerplanar DAG down to ``base``."""
    edges = set(g.edges)
    u, v = base
    if (u, v) not in edges:
        if (v, u) in edges:
            u, v = v, u
        else:
            raise RecognitionError(f"base {base} is not an edge")
    if g.n < 2 or g.m != 2 * g.n - 3:
        raise RecognitionError(f"{g.n} vertices need {2 * g.n - 3} edges, got {g.m}")
    removals = _peel_ears(g, (u, v))

    owner: dict[frozenset[int], tuple[int, int]] = {frozenset((u, v)): (-1, -1)}
    stellated: set[frozenset[int]] = set()
    nodes: list[dict] = []
    for x, a, b in reversed(removals):
        key = frozenset((a, b))
        if key in stellated:
            raise RecognitionError(f"edge {{{a}, {b}}} would be stellated twice")
        stellated.add(key)
        s, t = _orient(edges, a, b)
        parent, slot = owner[key]
        idx = len(nodes)
        nodes.append(
            {"kind": _kind(edges, s, t, x), "base": (s, t), "apex": x, "parent": parent,
             "children": [None, None]}
        )
        if parent >= 0:
            nodes[parent]["children"][slot] = idx
        owner[frozenset((s, x))] = (idx, 0)
        owner[frozenset((x, t))] = (idx, 1)
    return ConstructionSequence(
        g.n,
        (u, v),
        tuple(
            StellationOp(d["kind"], d["base"], d["apex"], d["parent"], tuple(d["children"]))
            for d in nodes
        ),
    )


def replay(seq: ConstructionSequence) -> Dag:
    edges = [seq.base]
    present = {frozenset(seq.base)}
    stellated: set[frozenset[int]] = set()
    for op in seq.nodes:
        key = frozenset(op.base)
        if key not in present or key in stellated:
            raise RecognitionError(f"cannot stellate {op.base}")
        stellated.add(key)
        for e in op.new_edges():
            present.add(frozenset(e))
            edges.append(e)
    return Dag(seq.n, edges)


# --------------------------------------------------------------------------
# class tags


@dataclass(frozen=True)
class ClassTags:
    maximal_outerplanar: bool = False
    transitive_only: bool = False
    single_source: bool = False
    single_sink: bool = False
    monotone: bool = False
    outerpath: bool = False
    three_tree: bool = False
    face_consistent_3tree: bool = False
    # a qualifying base edge (outerplanar classes) or outer triangle (up3tree)
    bases: dict = field(default_factory=dict, compare=False)

    def names(self) -> list[str]:
        return [
            name
            for name in (
                "maximal_outerplanar", "transitive_only", "single_source", "single_sink",
                "monotone", "outerpath", "three_tree", "face_consistent_3tree",
            )
            if getattr(self, name)
        ]


class _Triangulation:
    """Triangles of a maximal outerplanar graph, for rooting at any outer edge."""

    def __init__(self, g: Dag, removals: list[tuple[int, int, int]], last: Edge) -> None:
        self.edges = set(g.edges)
        self.tris: list[tuple[int, int, int]] = [(a, b, x) for x, a, b in removals]
        self.by_edge: dict[frozenset[int], list[int]] = {}
        for i, tri in enumerate(self.tris):
            for p, q in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
                self.by_edge.setdefault(frozenset((p, q)), []).append(i)
        self.last = last

    def outer_edges(self, order: Sequence[Edge]) -> list[Edge]:
        return [e for e in order if len(self.by_edge.get(frozenset(e), ())) == 1]

    def fits(self, base: Edge, allowed: frozenset[str], path_only: bool) -> bool:
        key = frozenset(base)
        stack = [(self.by_edge[key][0], base)]
        while stack:
            ti, (a, b) = stack.pop()
            tri = self.tris[ti]
            x = next(v for v in tri if v != a and v != b)
            s, t = _orient(self.edges, a, b)
            if _kind(self.edges, s, t, x) not in allowed:
                return False
            kids = 0
            for e in ((a, x), (x, b)):
                other = [j for j in self.by_edge[frozenset(e)] if j != ti]
                if other:
                    kids += 1
                    stack.append((other[0], e))
            if path_only and kids > 1:
                return False
        return True


def _outerplanar_triangulation(g: Dag) -> _Triangulation | None:
    if g.n < 3 or g.m != 2 * g.n - 3 or not g.edges:
        return None
    u, v = g.edges[0]
    try:
        removals = _peel_ears(g, (u, v))
    except RecognitionError:
        return None
    tri = _Triangulation(g, removals, (u, v))
    # every edge lies in one or two triangles in a maximal outerplanar graph
    if any(len(ts) > 2 for ts in tri.by_edge.values()):
        return None
    if len(tri.by_edge) != g.m:
        return None
    return tri


def find_base(g: Dag, cls: str) -> Edge | None:
    """First edge (in edge-list order) from which ``g`` is built with ``cls``'s operations."""
    allowed = CLASS_KINDS[cls]
    if g.n == 2 and g.m == 1:
        return g.edges[0]
    tri = _outerplanar_triangulation(g)
    if tri is None:
        return None
    for e in tri.outer_edges(g.edges):
        if tri.fits(e, allowed, cls == "outerpath"):
            return e
    return None


def classify(g: Dag) -> ClassTags:
    if validate_dag(g) is not None:
        return ClassTags()
    flags: dict[str, bool] = {}
    bases: dict[str, object] = {}
    flags["single_source"] = len(g.sources()) == 1
    flags["single_sink"] = len(g.sinks()) == 1
    maximal = (g.n == 2 and g.m == 1) or _outerplanar_triangulation(g) is not None
    flags["maximal_outerplanar"] = maximal
    if maximal:
        for flag, cls in (
            ("transitive_only", "transitive"),
            ("monotone", "monotone"),
            ("outerpath", "outerpath"),
            ("_ss", "single-source"),
            ("_st", "single-sink"),
        ):
            b = find_base(g, cls)
            flags[flag] = b is not None
            if b is not None:
                bases[cls] = b
    try:
        dec = peel_3tree(g)
        flags["three_tree"] = True
        flags["face_consistent_3tree"] = dec.face_consistent
        if dec.face_consistent:
            bases["up3tree"] = dec.outer
    except RecognitionError:
        pass
    flags.pop("_ss", None)
    flags.pop("_st", None)
    return ClassTags(**flags, bases=bases)


# --------------------------------------------------------------------------
# 3-trees


def orient_triangle(edges: set[Edge], a: int, b: int, c: int) -> tuple[int, int, int]:
    """Return ``(source, middle, sink)`` of an acyclically oriented triangle."""
    tri = (a, b, c)
    outdeg = {v: sum((v, w) in edges for w in tri if w != v) for v in tri}
    ranked = sorted(tri, key=lambda v: -outdeg[v])
    if [outdeg[v] for v in ranked] != [2, 1, 0]:
        raise RecognitionError(f"triangle {tri} is not acyclically oriented")
    return ranked[0], ranked[1], ranked[2]


@dataclass(frozen=True)
class Insertion:
    apex: int
    host: tuple[int, int, int]  # (local source, middle, local sink)
    edges: tuple[Edge, Edge, Edge]  # apex edges to source, middle, sink

    def face_consistent(self) -> bool:
        a, _, c = self.host
        return self.edges[0] == (a, self.apex) and self.edges[2] == (self.apex, c)


@dataclass(frozen=True)
class ThreeTreeDecomposition:
    n: int
    outer: tuple[int, int, int]  # (s, m, t)
    insertions: tuple[Insertion, ...]

    @property
    def face_consistent(self) -> bool:
        return all(ins.face_consistent() for ins in self.insertions)

    def first_inconsistent(self) -> Insertion | None:
        return next((ins for ins in self.insertions if not ins.face_consistent()), None)


def _simplicial_peel(g: Dag, keep: set[int]) -> tuple[list[tuple[int, tuple[int, int, int]]], list[int]]:
    """Remove simplicial degree-3 vertices, lowest id first, sparing ``keep``.

    Returns the removals and the surviving vertices.
    """
    adj = g.undirected_adjacency()
    heap = [v for v in range(g.n) if len(adj[v]) == 3 and v not in keep]
    heapq.heapify(heap)
    removed = [False] * g.n
    alive = g.n
    removals = []
    while heap and alive > 3:
        x = heapq.heappop(heap)
        if removed[x] or len(adj[x]) != 3:
            continue
        a, b, c = sorted(adj[x])
        if b not in adj[a] or c not in adj[a] or c not in adj[b]:
            continue  # may become simplicial later
        removed[x] = True
        alive -= 1
        removals.append((x, (a, b, c)))
        for y in (a, b, c):
            adj[y].discard(x)
            if len(adj[y]) == 3 and y not in keep:
                heapq.heappush(heap, y)
        adj[x].clear()
    return removals, [v for v in range(g.n) if not removed[v]]


def _peel_3tree_from(g: Dag, outer: tuple[int, int, int]) -> ThreeTreeDecomposition:
    removals, alive = _simplicial_peel(g, set(outer))
    if sorted(alive) != sorted(outer):
        raise RecognitionError("no simplicial degree-3 vertex left; not a planar 3-tree")
    edges = set(g.edges)
    a, b, c = outer
    if not all(frozenset(p) in {frozenset(e) for e in edges} for p in ((a, b), (b, c), (a, c))):
        raise RecognitionError(f"{outer} is not a triangle")
    root = orient_triangle(edges, a, b, c)
    faces = {frozenset(outer)}
    insertions = []
    for x, tri in reversed(removals):
        key = frozenset(tri)
        if key not in faces:
            raise RecognitionError(f"vertex {x} is inserted into a non-face {tri}; not planar")
        faces.remove(key)
        p, q, r = tri
        faces.update((frozenset((p, q, x)), frozenset((q, r, x)), frozenset((p, r, x))))
        src, mid, snk = orient_triangle(edges, *tri)
        insertions.append(
            Insertion(x, (src, mid, snk),
                      (_orient(edges, src, x), _orient(edges, mid, x), _orient(edges, snk, x)))
        )
    return ThreeTreeDecomposition(g.n, root, tuple(insertions))


def peel_3tree(g: Dag, outer: Sequence[int] | None = None) -> ThreeTreeDecomposition:
    """Decompose a DAG whose underlying graph is a planar 3-tree.

    Simplicial degree-3 vertices are removed lowest id first while the outer
    triangle is kept. Without an explicit ``outer``, triangles through the
    edge joining the unique source and sink are tried first (the only
    possible outer faces of a face-consistent graph), then the triangle left
    by unrestricted peeling.
    """
    bad = validate_dag(g)
    if bad is not None:
        raise RecognitionError(str(bad))
    if g.n < 3 or g.m != 3 * g.n - 6:
        raise RecognitionError(f"a planar 3-tree on {g.n} vertices has {3 * g.n - 6} edges")
    if outer is not None:
        return _peel_3tree_from(g, tuple(outer))
    edges = set(g.edges)
    srcs, snks = g.sources(), g.sinks()
    fallback: ThreeTreeDecomposition | None = None
    if len(srcs) == 1 and len(snks) == 1 and (srcs[0], snks[0]) in edges:
        s, t = srcs[0], snks[0]
        adj = g.undirected_adjacency()
        for m in sorted(adj[s] & adj[t]):
            try:
                dec = _peel_3tree_from(g, (s, m, t))
            except RecognitionError:
                continue
            if dec.face_consistent:
                return dec
            fallback = fallback or dec
    if fallback is not None:
        return fallback
    _, alive = _simplicial_peel(g, set())
    if len(alive) != 3:
        raise RecognitionError("no simplicial degree-3 vertex left; not a planar 3-tree")
    return _peel_3tree_from(g, tuple(alive))


def replay_3tree(dec: ThreeTreeDecomposition) -> Dag:
    s, m, t = dec.outer
    edges = [(s, m), (m, t), (s, t)]
    for ins in dec.insertions:
        edges.extend(ins.edges)
    return Dag(dec.n, edges)


# --------------------------------------------------------------------------
# upward planarity (restricted)


def _undirected_planar(n: int, edges: Iterable[Edge]) -> bool:
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from(edges)
    planar, _ = nx.check_planarity(h)
    return planar


def st_upward_check(g: Dag) -> bool:
    """Upward planarity of a single-source single-sink DAG: ``g + (s, t)`` planar."""
    srcs, snks = g.sources(), g.sinks()
    if len(srcs) != 1 or len(snks) != 1:
        raise RecognitionError(
            f"st-check needs one source and one sink, got {len(srcs)} and {len(snks)}"
        )
    return _undirected_planar(g.n, list(g.edges) + [(srcs[0], snks[0])])


def is_upward_planar_small(g: Dag, max_n: int = 9) -> bool:
    """Exact upward planarity test by exhaustive st-augmentation.

    A DAG is upward planar iff it is a spanning subgraph of a planar
    st-digraph. Sources other than the chosen ``s`` get an incoming edge and
    sinks other than ``t`` an outgoing one, pruning whenever the graph plus
    ``(s, t)`` stops being planar. Exponential; for witness search only.
    """
    if g.n > max_n:
        raise RecognitionError(f"exhaustive upward test limited to {max_n} vertices")
    if validate_dag(g) is not None:
        return False
    if g.n <= 1:
        return True
    srcs, snks = g.sources(), g.sinks()
    for s in srcs:
        for t in snks:
            if s == t:
                continue
            if _augment(g.n, set(g.edges), s, t, set()):
                return True
    return False


def _reachable(succ: dict[int, set[int]], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in succ.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _augment(n: int, edges: set[Edge], s: int, t: int, visited: set[frozenset[Edge]]) -> bool:
    key = frozenset(edges)
    if key in visited:
        return False
    visited.add(key)
    und = set(edges) | {(s, t)}
    if not _undirected_planar(n, und):
        return False
    indeg = [0] * n
    outdeg = [0] * n
    succ: dict[int, set[int]] = {}
    for u, v in edges:
        outdeg[u] += 1
        indeg[v] += 1
        succ.setdefault(u, set()).add(v)
    adjacent = {frozenset(e) for e in edges}
    bad_src = [v for v in range(n) if indeg[v] == 0 and v != s]
    if bad_src:
        v = bad_src[0]
        below = _reachable(succ, v)
        for u in range(n):
            if u in below or u == t or frozenset((u, v)) in adjacent:
                continue
            if _augment(n, edges | {(u, v)}, s, t, visited):
                return True
        return False
    bad_snk = [v for v in range(n) if outdeg[v] == 0 and v != t]
    if bad_snk:
        v = bad_snk[0]
        for w in range(n):
            if w == s or w == v or frozenset((v, w)) in adjacent:
                continue
            if v in _reachable(succ, w):
                continue
            if _augment(n, edges | {(v, w)}, s, t, visited):
                return True
        return False
    return True


# --------------------------------------------------------------------------
# augmentation to maximal outerplanar


def augment_outerplanar(g: Dag, cls: str) -> Dag:
    """Fan-triangulate the inner faces of a biconnected outerplanar DAG.

    Each inner face must have a unique local source, from which edges to all
    non-adjacent face vertices are added. Supported for ``single-source`` and
    ``outerpath`` targets; the result is re-checked against the class.
    """
    if cls not in ("single-source", "outerpath"):
        raise RecognitionError(f"augmentation is not supported for class {cls}")
    if validate_dag(g) is not None:
        raise RecognitionError("input is not a simple DAG")
    if g.n < 3:
        return g
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    if not nx.is_biconnected(h):
        raise RecognitionError("augmentation needs a biconnected outerplanar graph")
    apex = g.n
    h.add_edges_from((apex, v) for v in range(g.n))
    planar, emb = nx.check_planarity(h)
    if not planar:
        raise RecognitionError("graph is not outerplanar")
    edges = set(g.edges)
    added: list[Edge] = []
    seen_half: set[tuple[int, int]] = set()
    for u, v in emb.edges():
        if (u, v) in seen_half:
            continue
        face = emb.traverse_face(u, v, mark_half_edges=seen_half)
        if apex in face or len(face) <= 3:
            continue
        k = len(face)
        local_src = [
            face[i] for i in range(k)
            if (face[i], face[i - 1]) in edges and (face[i], face[(i + 1) % k]) in edges
        ]
        if len(local_src) != 1:
            raise RecognitionError(
                f"face {face} has {len(local_src)} local sources; fan rule does not apply"
            )
        w = local_src[0]
        i = face.index(w)
        for j in range(2, k - 1):
            added.append((w, face[(i + j) % k]))
    out = Dag(g.n, list(g.edges) + added)
    if find_base(out, cls) is None:
        raise RecognitionError(f"fan triangulation leaves class {cls}")
    return out
