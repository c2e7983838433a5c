"""Core data model: DAGs, vertex orders, crossings, twists and stack layouts.

Vertices are dense integers ``0..n-1``. All containers are immutable so the
functions here are safe to call from several threads at once.
"""

from __future__ import annotations

from bisect import bisect_left
from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs, orders or layouts."""


@dataclass(frozen=True)
class Violation:
    """Why a graph or layout failed validation."""

    kind: str
    message: str
    witness: tuple = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class Dag:
    n: int
    edges: tuple[Edge, ...]

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()) -> None:
        es = tuple((int(u), int(v)) for u, v in edges)
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        for u, v in es:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", es)

    @property
    def m(self) -> int:
        return len(self.edges)

    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            out[u].append(v)
        return out

    def predecessors(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            inc[v].append(u)
        return inc

    def in_degrees(self) -> list[int]:
        deg = [0] * self.n
        for _, v in self.edges:
            deg[v] += 1
        return deg

    def out_degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, _ in self.edges:
            deg[u] += 1
        return deg

    def sources(self) -> list[int]:
        return [v for v, d in enumerate(self.in_degrees()) if d == 0]

    def sinks(self) -> list[int]:
        return [v for v, d in enumerate(self.out_degrees()) if d == 0]

    def undirected_adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)


@dataclass(frozen=True)
class LinearOrder:
    """A total order of the vertices; ``position[v]`` is the rank of ``v``."""

    vertices: tuple[int, ...]
    position: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, vertices: Iterable[int]) -> None:
        vs = tuple(int(v) for v in vertices)
        pos = [-1] * len(vs)
        for i, v in enumerate(vs):
            if not 0 <= v < len(vs) or pos[v] != -1:
                raise GraphError(f"not a permutation of 0..{len(vs) - 1}: {vs}")
            pos[v] = i
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "position", tuple(pos))

    @classmethod
    def from_positions(cls, position: Sequence[int]) -> LinearOrder:
        vs = [0] * len(position)
        for v, p in enumerate(position):
            vs[p] = v
        return cls(vs)

    def __len__(self) -> int:
        return len(self.vertices)

    def reversed(self) -> LinearOrder:
        return LinearOrder(self.vertices[::-1])


SINGLETON_LABELS = frozenset({"s", "t", "m"})


@dataclass(frozen=True)
class PartitionedOrder:
    """A linear order cut into labelled contiguous parts.

    ``parts`` holds ``(label, start, end)`` half-open position ranges, in
    order, covering every position exactly once. Empty parts are kept as
    zero-length ranges.
    """

    order: LinearOrder
    parts: tuple[tuple[str, int, int], ...]

    def __post_init__(self) -> None:
        pos = 0
        for label, start, end in self.parts:
            if start != pos or end < start:
                raise GraphError(f"part {label} is not contiguous at {start}")
            if label in SINGLETON_LABELS and end - start != 1:
                raise GraphError(f"singleton part {label} has length {end - start}")
            pos = end
        if pos != len(self.order):
            raise GraphError("parts do not cover the order")

    def part(self, label: str) -> tuple[int, ...]:
        for lab, start, end in self.parts:
            if lab == label:
                return self.order.vertices[start:end]
        raise KeyError(label)

    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _, _ in self.parts)

    def label_of(self) -> list[str]:
        """Label for every vertex, indexed by vertex id."""
        out = [""] * len(self.order)
        for lab, start, end in self.parts:
            for v in self.order.vertices[start:end]:
                out[v] = lab
        return out

    def format(self) -> str:
        chunks = []
        for lab, start, end in self.parts:
            chunks.append(f"{lab}={start}" if lab in SINGLETON_LABELS else f"{lab}={start}..{end}")
        return "parts: " + " ".join(chunks)


@dataclass(frozen=True)
class StackLayout:
    order: LinearOrder
    page_of: Mapping[Edge, int]
    k: int

    def pages(self) -> list[list[Edge]]:
        out: list[list[Edge]] = [[] for _ in range(self.k)]
        for e, p in self.page_of.items():
            out[p].append(e)
        return out

    def used_pages(self) -> int:
        return len(set(self.page_of.values()))


@dataclass(frozen=True)
class TwistCertificate:
    edges: tuple[Edge, ...]

    @property
    def k(self) -> int:
        return len(self.edges)


# --------------------------------------------------------------------------
# validation


def find_cycle(g: Dag) -> list[int] | None:
    """Return the vertices of some directed cycle, or None if acyclic."""
    succ = g.successors()
    color = [0] * g.n  # 0 new, 1 on stack, 2 done
    parent = [-1] * g.n
    for root in range(g.n):
        if color[root]:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        color[root] = 1
        while stack:
            v, i = stack[-1]
            if i < len(succ[v]):
                stack[-1] = (v, i + 1)
                w = succ[v][i]
                if color[w] == 0:
                    color[w] = 1
                    parent[w] = v
                    stack.append((w, 0))
                elif color[w] == 1:
                    cycle = [v]
                    while cycle[-1] != w:
                        cycle.append(parent[cycle[-1]])
                    return cycle[::-1]
            else:
                color[v] = 2
                stack.pop()
    return None


def validate_dag(g: Dag) -> Violation | None:
    """None when ``g`` is simple and acyclic, otherwise the first problem found."""
    seen: dict[frozenset[int], Edge] = {}
    for u, v in g.edges:
        if u == v:
            return Violation("self-loop", f"self-loop at {u}", (u, v))
        key = frozenset((u, v))
        if key in seen:
            if seen[key] == (v, u):
                return Violation("cycle", f"cycle {v} -> {u}", (v, u))
            return Violation("duplicate", f"duplicate edge ({u}, {v})", (u, v))
        seen[key] = (u, v)
    cycle = find_cycle(g)
    if cycle is not None:
        return Violation("cycle", "cycle " + " -> ".join(map(str, cycle)), tuple(cycle))
    return None


def require_dag(g: Dag) -> None:
    bad = validate_dag(g)
    if bad is not None:
        raise GraphError(str(bad))


def topological_order(g: Dag) -> LinearOrder:
    """Kahn's algorithm, always taking the smallest available vertex."""
    import heapq

    indeg = g.in_degrees()
    succ = g.successors()
    heap = [v for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        v = heapq.heappop(heap)
        out.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(out) != g.n:
        raise GraphError("graph has a cycle")
    return LinearOrder(out)


def linear_extensions(g: Dag) -> Iterator[LinearOrder]:
    """Yield every linear extension, in lexicographic order of vertex lists."""
    indeg = g.in_degrees()
    succ = g.successors()
    prefix: list[int] = []
    used = [False] * g.n

    def rec() -> Iterator[LinearOrder]:
        if len(prefix) == g.n:
            yield LinearOrder(prefix)
            return
        for v in range(g.n):
            if not used[v] and indeg[v] == 0:
                used[v] = True
                prefix.append(v)
                for w in succ[v]:
                    indeg[w] -= 1
                yield from rec()
                for w in succ[v]:
                    indeg[w] += 1
                prefix.pop()
                used[v] = False

    yield from rec()


def count_linear_extensions(g: Dag, limit: int | None = None) -> int:
    count = 0
    for _ in linear_extensions(g):
        count += 1
        if limit is not None and count >= limit:
            break
    return count


def has_unique_linear_extension(g: Dag) -> bool:
    """True iff Kahn's algorithm never has a choice."""
    indeg = g.in_degrees()
    succ = g.successors()
    ready = [v for v in range(g.n) if indeg[v] == 0]
    seen = 0
    while ready:
        if len(ready) > 1:
            return False
        v = ready.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == g.n


def is_linear_extension(g: Dag, order: LinearOrder) -> bool:
    if len(order) != g.n:
        raise GraphError(f"order has {len(order)} vertices, graph has {g.n}")
    pos = order.position
    return all(pos[u] < pos[v] for u, v in g.edges)


def _require_extension(g: Dag, order: LinearOrder) -> None:
    if not is_linear_extension(g, order):
        raise GraphError("order is not a linear extension of the graph")


# --------------------------------------------------------------------------
# crossings and twists


def edges_cross(order: LinearOrder, e: Edge, f: Edge) -> bool:
    """Whether two directed edges interleave under ``order``.

    Both edges point forward in a linear extension, so only the patterns
    ``se < sf < te < tf`` and ``sf < se < tf < te`` are possible.
    """
    if e[0] in f or e[1] in f:
        return False
    pos = order.position
    a, b = pos[e[0]], pos[e[1]]
    c, d = pos[f[0]], pos[f[1]]
    if a > b:
        a, b = b, a
    if c > d:
        c, d = d, c
    return a < c < b < d or c < a < d < b


def _max_twist_edges(edges: Sequence[Edge], pos: Sequence[int]) -> tuple[Edge, ...]:
    # A twist spans the gap right after its last source, so it suffices to
    # look at gaps following a position that starts some edge.
    if not edges:
        return ()
    n = len(pos)
    starts: list[list[tuple[int, int, Edge]]] = [[] for _ in range(n)]
    for e in edges:
        a, b = pos[e[0]], pos[e[1]]
        starts[a].append((a, b, e))
    best: tuple[Edge, ...] = (edges[0],)
    active: list[tuple[int, int, Edge]] = []
    for p in range(n):
        if not starts[p]:
            continue
        active = [x for x in active if x[1] > p]
        active.extend(starts[p])
        if len(active) <= len(best):
            continue
        spanning = sorted(active, key=lambda x: (x[0], -x[1]))
        # strict LIS on target position
        tails: list[int] = []
        tail_idx: list[int] = []
        prev = [-1] * len(spanning)
        for i, (_, b, _) in enumerate(spanning):
            j = bisect_left(tails, b)
            if j == len(tails):
                tails.append(b)
                tail_idx.append(i)
            else:
                tails[j] = b
                tail_idx[j] = i
            prev[i] = tail_idx[j - 1] if j > 0 else -1
        if len(tails) > len(best):
            chain = []
            i = tail_idx[-1]
            while i != -1:
                chain.append(spanning[i][2])
                i = prev[i]
            best = tuple(chain[::-1])
    return best


def max_twist(g: Dag, order: LinearOrder) -> TwistCertificate:
    """A maximum twist of ``g`` under ``order``, via per-gap longest increasing runs."""
    _require_extension(g, order)
    return TwistCertificate(_max_twist_edges(g.edges, order.position))


def max_twist_of_subset(
    g: Dag, order: LinearOrder, pred: Callable[[Edge], bool]
) -> TwistCertificate:
    _require_extension(g, order)
    return TwistCertificate(_max_twist_edges([e for e in g.edges if pred(e)], order.position))


def is_twist(edges: Sequence[Edge], order: LinearOrder) -> bool:
    """Check the twist definition literally (independent edges, all sources
    before all targets, both sequences in the same order)."""
    if not edges:
        return True
    ends = [v for e in edges for v in e]
    if len(set(ends)) != len(ends):
        return False
    pos = order.position
    spans = sorted((pos[u], pos[v]) for u, v in edges)
    if any(a >= b for a, b in spans):
        return False
    targets = [b for _, b in spans]
    if any(targets[i] >= targets[i + 1] for i in range(len(targets) - 1)):
        return False
    return spans[-1][0] < spans[0][1]


def max_twist_bruteforce(g: Dag, order: LinearOrder) -> TwistCertificate:
    """Exhaustive search over edge subsets; an oracle for ``max_twist``.

    Twists are closed under taking subsets, so a depth-first extension that
    only keeps twists still visits every twist.
    """
    _require_extension(g, order)
    edges = list(g.edges)
    best: list[Edge] = []
    current: list[Edge] = []

    def extend(start: int) -> None:
        nonlocal best
        if len(current) > len(best):
            best = list(current)
        for i in range(start, len(edges)):
            current.append(edges[i])
            if is_twist(current, order):
                extend(i + 1)
            current.pop()

    extend(0)
    return TwistCertificate(tuple(best))


# --------------------------------------------------------------------------
# layouts


def validate_layout(g: Dag, layout: StackLayout) -> Violation | None:
    """None if the layout is a valid stack layout of ``g``.

    Raises GraphError when an edge of ``g`` has no page.
    """
    order = layout.order
    if len(order) != g.n:
        return Violation("size", f"order has {len(order)} vertices, graph has {g.n}")
    pos = order.position
    for u, v in g.edges:
        if pos[u] >= pos[v]:
            return Violation("extension", f"edge ({u}, {v}) points backwards", (u, v))
    by_page: list[list[Edge]] = [[] for _ in range(max(layout.k, 0))]
    for e in g.edges:
        if e not in layout.page_of:
            raise GraphError(f"edge {e} has no page")
        p = layout.page_of[e]
        if not 0 <= p < layout.k:
            return Violation("page", f"edge {e} on page {p} outside 0..{layout.k - 1}", (e,))
        by_page[p].append(e)
    for p, es in enumerate(by_page):
        spans = [(pos[u], pos[v], (u, v)) for u, v in es]
        for i in range(len(spans)):
            a, b, e = spans[i]
            for j in range(i + 1, len(spans)):
                c, d, f = spans[j]
                if a < c < b < d or c < a < d < b:
                    return Violation("crossing", f"edges {e} and {f} cross on page {p}", (e, f, p))
    return None


def reverse(g: Dag) -> Dag:
    return Dag(g.n, ((v, u) for u, v in g.edges))


def reverse_layout(layout: StackLayout) -> StackLayout:
    """The mirrored layout, valid for the reversed graph."""
    return StackLayout(
        layout.order.reversed(),
        {(v, u): p for (u, v), p in layout.page_of.items()},
        layout.k,
    )


def relabel(g: Dag, perm: Sequence[int]) -> Dag:
    """Rename vertex ``v`` to ``perm[v]``."""
    return Dag(g.n, ((perm[u], perm[v]) for u, v in g.edges))
