"""Run the built-in solver on a DIMACS file, printing competition-style output.

Usage: ``python -m stacklayout.sat.solver_cli problem.cnf``. Exit status is
10 for satisfiable and 20 for unsatisfiable.
"""

from __future__ import annotations

import sys
from pathlib import Path

from .dimacs import SolverError, parse_dimacs
from .solver import SAT, UNSAT, solve_cnf


def main(argv: list[str] | None = None) -> int:
    args = sys.argv[1:] if argv is None else argv
    if len(args) != 1:
        print("usage: solver_cli <file.cnf>", file=sys.stderr)
        return 1
    try:
        num_vars, clauses = parse_dimacs(Path(args[0]).read_text())
    except (OSError, ValueError, SolverError) as exc:
        print(f"c error: {exc}", file=sys.stderr)
        return 1
    out = solve_cnf(num_vars, clauses)
    if out.status == SAT:
        print("s SATISFIABLE")
        print("v " + " ".join(map(str, out.model)) + " 0")
        return 10
    if out.status == UNSAT:
        print("s UNSATISFIABLE")
        return 20
    print("s UNKNOWN")
    return 0


if __name__ == "__main__":
    sys.exit(main())
