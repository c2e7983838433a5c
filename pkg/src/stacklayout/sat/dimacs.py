"""DIMACS CNF export, model import, and the external-solver round trip."""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
from pathlib import Path
from typing import TextIO

from .encoding import CnfFormula
from .solver import SAT, UNKNOWN, UNSAT, Outcome


class SolverError(RuntimeError):
    pass


def format_dimacs(f: CnfFormula) -> str:
    rows = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    rows.extend(" ".join(map(str, c)) + " 0" for c in f.clauses)
    return "\n".join(rows) + "\n"


def export_dimacs(f: CnfFormula, sink: str | Path | TextIO) -> None:
    text = format_dimacs(f)
    if isinstance(sink, (str, Path)):
        Path(sink).write_text(text)
    else:
        sink.write(text)


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    num_vars = num_clauses = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            toks = line.split()
            if len(toks) != 4 or toks[1] != "cnf":
                raise SolverError(f"bad DIMACS header: {line!r}")
            num_vars, num_clauses = int(toks[2]), int(toks[3])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if num_vars is None:
        raise SolverError("DIMACS file has no 'p cnf' header")
    if current:
        clauses.append(current)
    if len(clauses) != num_clauses:
        raise SolverError(f"header announces {num_clauses} clauses, found {len(clauses)}")
    return num_vars, clauses


def import_model(source: str | Path | TextIO, num_vars: int) -> Outcome:
    """Read solver output: an ``s`` status line and ``v`` assignment lines.

    Variables missing from the ``v`` lines default to false.
    """
    if isinstance(source, Path):
        text = source.read_text()
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
    status = None
    lits: dict[int, int] = {}
    for raw in text.splitlines():
        toks = raw.split()
        if not toks or toks[0] == "c":
            continue
        if toks[0] == "s":
            word = " ".join(toks[1:])
            if word == "SATISFIABLE":
                status = SAT
            elif word == "UNSATISFIABLE":
                status = UNSAT
            elif word == "UNKNOWN":
                status = UNKNOWN
            else:
                raise SolverError(f"unknown status line {raw!r}")
        elif toks[0] == "v":
            for tok in toks[1:]:
                try:
                    lit = int(tok)
                except ValueError as exc:
                    raise SolverError(f"bad literal {tok!r} in model") from exc
                if lit == 0:
                    continue
                if abs(lit) > num_vars:
                    raise SolverError(f"model mentions undeclared variable {abs(lit)}")
                lits[abs(lit)] = lit
        else:
            raise SolverError(f"unexpected solver output line {raw!r}")
    if status is None:
        raise SolverError("solver output has no status line")
    if status != SAT:
        return Outcome(status)
    model = tuple(lits.get(v, -v) for v in range(1, num_vars + 1))
    return Outcome(SAT, model)


def run_external(f: CnfFormula, command: str, timeout: float | None = None) -> Outcome:
    """Solve ``f`` with ``command <file.cnf>``, which must print s/v lines."""
    argv = shlex.split(command)
    if not argv:
        raise SolverError("empty external solver command")
    fd, name = tempfile.mkstemp(suffix=".cnf")
    try:
        with os.fdopen(fd, "w") as fh:
            export_dimacs(f, fh)
        try:
            proc = subprocess.run(
                argv + [name], capture_output=True, text=True, timeout=timeout, check=False
            )
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise SolverError(f"external solver failed: {exc}") from exc
        if proc.returncode not in (0, 10, 20):
            raise SolverError(
                f"external solver exited with {proc.returncode}: {proc.stderr.strip()[:200]}"
            )
        return import_model(proc.stdout, f.num_vars)
    finally:
        os.unlink(name)
