"""CNF encoding of "the DAG has a k-page stack layout"."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..graph import Dag, Edge, GraphError, LinearOrder, StackLayout


@dataclass
class CnfFormula:
    """Clauses over variables ``1..num_vars``.

    ``var_map`` keys are ``("order", u, v)`` for ``u < v`` (true: ``u`` is
    placed before ``v``) and ``("page", j, i)`` (edge ``j`` is on page ``i``).
    """

    num_vars: int = 0
    clauses: list[list[int]] = field(default_factory=list)
    var_map: dict[tuple, int] = field(default_factory=dict)
    n: int = 0
    edges: tuple[Edge, ...] = ()
    k: int = 0

    def new_var(self, key: tuple) -> int:
        self.num_vars += 1
        self.var_map[key] = self.num_vars
        return self.num_vars

    def add(self, clause: list[int]) -> None:
        if not clause:
            raise ValueError("empty clause")
        self.clauses.append(clause)

    def before(self, u: int, v: int) -> int:
        """Literal meaning ``u`` precedes ``v``."""
        if u < v:
            return self.var_map[("order", u, v)]
        return -self.var_map[("order", v, u)]

    def page(self, j: int, i: int) -> int:
        return self.var_map[("page", j, i)]

    def decode(self, model: set[int] | list[int]) -> StackLayout:
        """Layout from a satisfying assignment given as its true literals."""
        true = set(model)
        rank = [0] * self.n
        for u, v in combinations(range(self.n), 2):
            if self.before(u, v) in true:
                rank[v] += 1
            else:
                rank[u] += 1
        order = LinearOrder.from_positions(rank)
        page_of = {}
        for j, e in enumerate(self.edges):
            page_of[e] = next(i for i in range(self.k) if self.page(j, i) in true)
        return StackLayout(order, page_of, self.k)


def encode(
    g: Dag,
    k: int,
    symmetry_breaking: bool = True,
    fixed_order: LinearOrder | None = None,
) -> CnfFormula:
    """Encode "``g`` has a ``k``-page layout whose order is a linear extension".

    With ``fixed_order`` every order variable is pinned by a unit clause.
    """
    if k < 1:
        raise GraphError("page count must be at least 1")
    f = CnfFormula(n=g.n, edges=tuple(g.edges), k=k)
    for u, v in combinations(range(g.n), 2):
        f.new_var(("order", u, v))
    for j in range(g.m):
        for i in range(k):
            f.new_var(("page", j, i))

    # transitivity: no triple is ordered cyclically (either direction)
    for a, b, c in combinations(range(g.n), 3):
        f.add([-f.before(a, b), -f.before(b, c), -f.before(c, a)])
        f.add([-f.before(b, a), -f.before(c, b), -f.before(a, c)])
    for u, v in g.edges:
        f.add([f.before(u, v)])
    if fixed_order is not None:
        pos = fixed_order.position
        for u, v in combinations(range(g.n), 2):
            f.add([f.before(u, v) if pos[u] < pos[v] else -f.before(u, v)])

    for j in range(g.m):
        f.add([f.page(j, i) for i in range(k)])
        if symmetry_breaking:
            for i in range(j + 1, k):
                f.add([-f.page(j, i)])

    for j1, j2 in combinations(range(g.m), 2):
        a, b = g.edges[j1]
        c, d = g.edges[j2]
        if len({a, b, c, d}) < 4:
            continue
        for i in range(k):
            pe, pf = -f.page(j1, i), -f.page(j2, i)
            # a < c < b < d
            f.add([-f.before(a, c), -f.before(c, b), -f.before(b, d), pe, pf])
            # c < a < d < b
            f.add([-f.before(c, a), -f.before(a, d), -f.before(d, b), pe, pf])
    return f
