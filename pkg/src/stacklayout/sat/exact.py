"""Exact stack numbers: SAT-based search plus a brute-force oracle."""

from __future__ import annotations

import os
from dataclasses import dataclass

from ..graph import (
    Dag,
    LinearOrder,
    StackLayout,
    _max_twist_edges,
    _require_extension,
    has_unique_linear_extension,
    linear_extensions,
    topological_order,
    validate_layout,
)
from ..pages import color_exact, crossing_graph, greedy_first_fit
from .dimacs import SolverError, run_external
from .encoding import CnfFormula, encode
from .solver import SAT, UNKNOWN, UNSAT, CdclSolver

SOLVER_ENV = "STACKLAYOUT_SOLVER"


@dataclass(frozen=True)
class SolveResult:
    status: str
    model: tuple[int, ...] | None = None
    decoded: StackLayout | None = None


@dataclass(frozen=True)
class StackNumber:
    """``k`` is None when the stack number exceeds ``k_max``."""

    k: int | None
    layout: StackLayout | None
    k_max: int

    @property
    def exceeded(self) -> bool:
        return self.k is None


def default_solver() -> str:
    return os.environ.get(SOLVER_ENV, "builtin")


def solve(f: CnfFormula, budget: int | None = None, solver: str | None = None) -> SolveResult:
    """Solve ``f``; ``solver`` is ``builtin`` or ``external:<command>``.

    ``budget`` caps the built-in solver's conflicts; when hit the status is
    ``unknown``.
    """
    solver = solver or default_solver()
    if solver == "builtin":
        out = CdclSolver(f.num_vars, f.clauses).solve(budget)
    elif solver.startswith("external:"):
        out = run_external(f, solver[len("external:"):])
    else:
        raise SolverError(f"unknown solver {solver!r}")
    if out.status != SAT:
        return SolveResult(out.status)
    layout = f.decode(out.model)
    bad = validate_layout(Dag(f.n, f.edges), layout)
    if bad is not None:
        raise SolverError(f"solver model decodes to an invalid layout: {bad}")
    return SolveResult(SAT, out.model, layout)


def _lower_bound(g: Dag) -> int:
    if has_unique_linear_extension(g):
        return max(1, len(_max_twist_edges(g.edges, topological_order(g).position)))
    return 1


def _search(g: Dag, k_max: int, start: int, make, budget, solver) -> StackNumber:
    if g.m == 0:
        order = make(None)
        return StackNumber(0, StackLayout(order, {}, 0), k_max)
    for k in range(start, k_max + 1):
        res = solve(make(k), budget, solver)
        if res.status == SAT:
            return StackNumber(k, res.decoded, k_max)
        if res.status == UNKNOWN:
            raise SolverError(f"solver budget exhausted at k={k}")
    return StackNumber(None, None, k_max)


def stack_number(
    g: Dag,
    k_max: int,
    budget: int | None = None,
    solver: str | None = None,
    symmetry_breaking: bool = True,
) -> StackNumber:
    """Least ``k <= k_max`` with a ``k``-stack layout, trying ``k`` upwards."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")

    def make(k):
        if k is None:
            return topological_order(g)
        return encode(g, k, symmetry_breaking)

    return _search(g, k_max, _lower_bound(g), make, budget, solver)


def stack_number_fixed_order(
    g: Dag,
    order: LinearOrder,
    k_max: int,
    budget: int | None = None,
    solver: str | None = None,
) -> StackNumber:
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    _require_extension(g, order)

    def make(k):
        if k is None:
            return order
        return encode(g, k, fixed_order=order)

    start = max(1, len(_max_twist_edges(g.edges, order.position)))
    return _search(g, k_max, start, make, budget, solver)


def certify_at_least(
    g: Dag, k: int, budget: int | None = None, solver: str | None = None
) -> tuple[bool, StackLayout | None]:
    """Is the stack number at least ``k``? Decided by unsatisfiability at ``k - 1``.

    Also returns a ``k``-page layout when one exists (None otherwise).
    """
    if k <= 0:
        verdict = True
    elif k == 1:
        verdict = g.m > 0
    else:
        res = solve(encode(g, k - 1), budget, solver)
        if res.status == UNKNOWN:
            raise SolverError(f"solver budget exhausted at k={k - 1}")
        verdict = res.status == UNSAT
    witness = None
    if k >= 1:
        res = solve(encode(g, k), budget, solver)
        if res.status == SAT:
            witness = res.decoded
    return verdict, witness


def brute_force_stack_number(g: Dag) -> int:
    """Minimum over all linear extensions of the exact page count. Small graphs only."""
    if g.m == 0:
        return 0
    best = None
    for order in linear_extensions(g):
        lower = len(_max_twist_edges(g.edges, order.position))
        if best is not None and lower >= best:
            continue
        cap = greedy_first_fit(g, order).k if best is None else best - 1
        colors = color_exact(crossing_graph(g, order), cap, lower)
        if colors is not None:
            best = max(colors) + 1
            if best == 1:
                break
    return best
