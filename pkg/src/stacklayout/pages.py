"""Page assignment for a fixed vertex order."""

from __future__ import annotations

from .graph import Dag, Edge, LinearOrder, StackLayout, _max_twist_edges, _require_extension


def greedy_first_fit(g: Dag, order: LinearOrder) -> StackLayout:
    """Edges by (source position, target position descending), each on the
    lowest page where it crosses nothing placed so far."""
    _require_extension(g, order)
    pos = order.position
    todo = sorted(g.edges, key=lambda e: (pos[e[0]], -pos[e[1]]))
    pages: list[list[tuple[int, int]]] = []
    page_of: dict[Edge, int] = {}
    for e in todo:
        a, b = pos[e[0]], pos[e[1]]
        for i, spans in enumerate(pages):
            if not any(c < a < d < b or a < c < b < d for c, d in spans):
                spans.append((a, b))
                page_of[e] = i
                break
        else:
            pages.append([(a, b)])
            page_of[e] = len(pages) - 1
    return StackLayout(order, page_of, len(pages))


def crossing_graph(g: Dag, order: LinearOrder) -> list[set[int]]:
    """Adjacency over edge indices: two edges are adjacent iff they cross."""
    pos = order.position
    spans = [(pos[u], pos[v]) for u, v in g.edges]
    adj: list[set[int]] = [set() for _ in spans]
    for i, (a, b) in enumerate(spans):
        for j in range(i + 1, len(spans)):
            c, d = spans[j]
            if a < c < b < d or c < a < d < b:
                adj[i].add(j)
                adj[j].add(i)
    return adj


def color_exact(adj: list[set[int]], k_max: int, lower: int = 1) -> list[int] | None:
    """Minimum proper colouring with at most ``k_max`` colours, or None.

    Branch and bound over vertices sorted by decreasing degree (ties by
    index). New colours are opened only one at a time, which removes
    colour-permutation symmetry.
    """
    n = len(adj)
    if n == 0:
        return []
    order = sorted(range(n), key=lambda v: (-len(adj[v]), v))
    best: list[int] | None = None
    best_k = k_max + 1
    color = [-1] * n

    def rec(i: int, used: int) -> bool:
        nonlocal best, best_k
        if used >= best_k:
            return False
        if i == n:
            best = list(color)
            best_k = used
            return best_k <= lower
        v = order[i]
        taken = {color[w] for w in adj[v]}
        for c in range(used):
            if c not in taken:
                color[v] = c
                if rec(i + 1, used):
                    return True
        if used + 1 < best_k:
            color[v] = used
            if rec(i + 1, used + 1):
                return True
        color[v] = -1
        return False

    rec(0, 0)
    return best


def min_pages_for_order(g: Dag, order: LinearOrder, k_max: int) -> StackLayout | None:
    """Fewest pages for ``order``, or None if more than ``k_max`` are needed."""
    _require_extension(g, order)
    if g.m == 0:
        return StackLayout(order, {}, 0)
    lower = len(_max_twist_edges(g.edges, order.position))
    if lower > k_max:
        return None
    greedy = greedy_first_fit(g, order)
    if greedy.k == lower:
        return greedy if greedy.k <= k_max else None
    colors = color_exact(crossing_graph(g, order), min(k_max, greedy.k), lower)
    if colors is None:
        return None
    page_of = {e: c for e, c in zip(g.edges, colors)}
    return StackLayout(order, page_of, max(colors) + 1)
