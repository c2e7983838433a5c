"""A small CDCL SAT solver: watched literals, first-UIP learning,
non-chronological backjumping, activity-based branching, phase saving and
Luby restarts."""

from __future__ import annotations

import heapq
from collections.abc import Iterable
from dataclasses import dataclass

SAT, UNSAT, UNKNOWN = "sat", "unsat", "unknown"


@dataclass(frozen=True)
class Outcome:
    status: str
    model: tuple[int, ...] | None = None  # true literals for variables 1..n
    conflicts: int = 0


def _luby(i: int) -> int:
    k = 1
    while (1 << k) - 1 < i + 1:
        k += 1
    while (1 << k) - 1 != i + 1:
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i + 1:
            k += 1
    return 1 << (k - 1)


class CdclSolver:
    def __init__(self, num_vars: int, clauses: Iterable[Iterable[int]] = ()) -> None:
        self.n = num_vars
        self.value = [0] * (num_vars + 1)
        self.level = [0] * (num_vars + 1)
        self.reason: list[int] = [-1] * (num_vars + 1)
        self.phase = [False] * (num_vars + 1)
        self.activity = [0.0] * (num_vars + 1)
        self.var_inc = 1.0
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.clauses: list[list[int]] = []
        self.watches: list[list[int]] = [[] for _ in range(2 * num_vars + 2)]
        self.heap = [(0.0, v) for v in range(1, num_vars + 1)]
        self.ok = True
        for c in clauses:
            self.add_clause(c)

    # literal helpers -------------------------------------------------------
    @staticmethod
    def _w(lit: int) -> int:
        return 2 * lit if lit > 0 else -2 * lit + 1

    def _lval(self, lit: int) -> int:
        v = self.value[abs(lit)]
        return v if lit > 0 else -v

    def _assign(self, lit: int, reason: int) -> None:
        v = abs(lit)
        self.value[v] = 1 if lit > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    # clause database ----------------------------------------------------------
    def add_clause(self, clause: Iterable[int]) -> None:
        if not self.ok:
            return
        lits = set()
        for lit in clause:
            if lit == 0 or abs(lit) > self.n:
                raise ValueError(f"literal {lit} outside 1..{self.n}")
            if -lit in lits:
                return
            lits.add(lit)
        if any(self._lval(x) == 1 for x in lits):
            return
        c = sorted((x for x in lits if self._lval(x) != -1), key=abs)
        if not c:
            self.ok = False
        elif len(c) == 1:
            self._assign(c[0], -1)
            if self._propagate() != -1:
                self.ok = False
        else:
            self._attach(c)

    def _attach(self, c: list[int]) -> int:
        idx = len(self.clauses)
        self.clauses.append(c)
        self.watches[self._w(c[0])].append(idx)
        self.watches[self._w(c[1])].append(idx)
        return idx

    # propagation ------------------------------------------------------------
    def _propagate(self) -> int:
        """Unit propagation; returns a conflicting clause index or -1."""
        value = self.value
        clauses = self.clauses
        watches = self.watches
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            false_lit = -p
            ws = watches[self._w(false_lit)]
            keep: list[int] = []
            conflict = -1
            i = 0
            while i < len(ws):
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                fv = value[abs(first)]
                if (fv if first > 0 else -fv) == 1:
                    keep.append(ci)
                    continue
                for k in range(2, len(c)):
                    lit = c[k]
                    lv = value[abs(lit)]
                    if (lv if lit > 0 else -lv) != -1:
                        c[1], c[k] = lit, c[1]
                        watches[self._w(lit)].append(ci)
                        break
                else:
                    keep.append(ci)
                    if (fv if first > 0 else -fv) == -1:
                        conflict = ci
                        keep.extend(ws[i:])
                        break
                    self._assign(first, ci)
            watches[self._w(false_lit)] = keep
            if conflict != -1:
                return conflict
        return -1

    # conflict analysis --------------------------------------------------------
    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.n + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.n + 1) if self.value[u] == 0]
            heapq.heapify(self.heap)
        elif self.value[v] == 0:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, confl: int) -> tuple[list[int], int]:
        seen = [False] * (self.n + 1)
        learnt = [0]
        counter = 0
        p = 0
        idx = len(self.trail) - 1
        cur = len(self.trail_lim)
        clause = self.clauses[confl]
        while True:
            for q in clause if p == 0 else clause[1:]:
                v = abs(q)
                if not seen[v] and self.level[v] > 0:
                    seen[v] = True
                    self._bump(v)
                    if self.level[v] == cur:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[abs(self.trail[idx])]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            seen[abs(p)] = False
            counter -= 1
            if counter == 0:
                break
            clause = self.clauses[self.reason[abs(p)]]
        learnt[0] = -p
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda i: self.level[abs(learnt[i])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def _cancel_until(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        start = self.trail_lim[lvl]
        for lit in self.trail[start:]:
            v = abs(lit)
            self.phase[v] = lit > 0
            self.value[v] = 0
            self.reason[v] = -1
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = len(self.trail)

    def _decide(self) -> int:
        while self.heap:
            _, v = heapq.heappop(self.heap)
            if self.value[v] == 0:
                return v if self.phase[v] else -v
        return 0

    # main loop --------------------------------------------------------------
    def solve(self, max_conflicts: int | None = None) -> Outcome:
        if not self.ok:
            return Outcome(UNSAT)
        if self._propagate() != -1:
            self.ok = False
            return Outcome(UNSAT)
        conflicts = 0
        restart = 0
        until_restart = 100 * _luby(restart)
        while True:
            confl = self._propagate()
            if confl != -1:
                conflicts += 1
                if not self.trail_lim:
                    self.ok = False
                    return Outcome(UNSAT, conflicts=conflicts)
                learnt, back = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self._assign(learnt[0], -1)
                else:
                    self._assign(learnt[0], self._attach(learnt))
                self.var_inc /= 0.95
                if max_conflicts is not None and conflicts >= max_conflicts:
                    self._cancel_until(0)
                    return Outcome(UNKNOWN, conflicts=conflicts)
                until_restart -= 1
                if until_restart <= 0:
                    restart += 1
                    until_restart = 100 * _luby(restart)
                    self._cancel_until(0)
                continue
            lit = self._decide()
            if lit == 0:
                model = tuple(v if self.value[v] > 0 else -v for v in range(1, self.n + 1))
                self._cancel_until(0)
                return Outcome(SAT, model, conflicts)
            self.trail_lim.append(len(self.trail))
            self._assign(lit, -1)


def solve_cnf(num_vars: int, clauses: Iterable[Iterable[int]], max_conflicts: int | None = None) -> Outcome:
    return CdclSolver(num_vars, clauses).solve(max_conflicts)
