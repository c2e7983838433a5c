"""SAT encoding and exact stack numbers."""

from .dimacs import SolverError, export_dimacs, import_model, parse_dimacs, run_external
from .encoding import CnfFormula, encode
from .exact import (
    SolveResult,
    StackNumber,
    brute_force_stack_number,
    certify_at_least,
    solve,
    stack_number,
    stack_number_fixed_order,
)

__all__ = [
    "CnfFormula",
    "SolveResult",
    "SolverError",
    "StackNumber",
    "brute_force_stack_number",
    "certify_at_least",
    "encode",
    "export_dimacs",
    "import_model",
    "parse_dimacs",
    "run_external",
    "solve",
    "stack_number",
    "stack_number_fixed_order",
]
