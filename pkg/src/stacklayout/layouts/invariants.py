"""Twist invariants maintained by the recursive layout constructions.

An invariant bounds the maximum twist of the edges running between groups
of parts, e.g. ``("H1 s", "t H4")`` selects edges from ``H1 ∪ {s}`` to
``{t} ∪ H4``. A bound of 0 asserts that the selected edge set is empty.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from ..graph import Edge, _max_twist_edges

ALL = "*"


class InvariantViolation(AssertionError):
    pass


@dataclass(frozen=True)
class Tw:
    name: str
    bound: int
    groups: tuple[tuple[str, str], ...] | str

    def selects(self, a: str, b: str) -> bool:
        if self.groups == ALL:
            return True
        return any(a in src.split() and b in dst.split() for src, dst in self.groups)


@dataclass(frozen=True)
class OneSideEmpty:
    """At least one of two parts is empty."""

    name: str
    first: str
    second: str


SINGLE_SOURCE = (
    Tw("I.1", 1, (("s H3", "H4"),)),
    Tw("I.2", 3, ALL),
)

MONOTONE = (
    Tw("I.1", 0, (("H1", "H3"), ("H2", "H3"), ("H2", "H4"))),
    Tw("I.2", 1, (("H1 s", "t H4"),)),
    Tw("I.3", 2, (("H1", "H2 t H4"),)),
    Tw("I.4", 2, (("H1 s H3", "H4"),)),
    Tw("I.5", 4, ALL),
)

OUTERPATH = (
    OneSideEmpty("I.0", "H2", "H3"),
    Tw("I.2a", 1, (("H2", "t H4"),)),
    Tw("I.2b", 1, (("H1 s", "H3"),)),
    Tw("I.3", 2, (("H1 s H2", "H3 t H4"),)),
    Tw("I.4a", 3, (("H1", "H2"), ("H2", "t H4"))),
    Tw("I.4b", 3, (("H1 s", "H3"), ("H3", "H4"))),
    Tw("I.5", 3, (("H1 s H2 H3", "H4"),)),
    Tw("I.6", 3, (("H1", "H2 H3 t H4"),)),
    Tw("I.7", 4, ALL),
)

UP3TREE = (
    Tw("I.1", 2, (("s H1", "H2 t"),)),
    Tw("I.2", 5, ALL),
)

BY_CLASS = {
    "single-source": SINGLE_SOURCE,
    "monotone": MONOTONE,
    "outerpath": OUTERPATH,
    "up3tree": UP3TREE,
}


@dataclass(frozen=True)
class InvariantResult:
    name: str
    value: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.value <= self.bound


def evaluate(
    edges: Sequence[Edge],
    parts: Sequence[tuple[str, Sequence[int]]],
    invariants: Sequence[Tw | OneSideEmpty],
) -> list[InvariantResult]:
    """Evaluate invariants on a labelled order of (a subgraph's) vertices.

    ``edges`` may mention vertices outside ``parts``; those edges are ignored.
    """
    label: dict[int, str] = {}
    local: dict[int, int] = {}
    sizes: dict[str, int] = {}
    for lab, vs in parts:
        sizes[lab] = len(vs)
        for v in vs:
            label[v] = lab
            local[v] = len(local)
    inner = [(local[u], local[v]) for u, v in edges if u in local and v in local]
    ident = list(range(len(local)))
    inv_label = {local[v]: lab for v, lab in label.items()}
    out = []
    for inv in invariants:
        if isinstance(inv, OneSideEmpty):
            both = sizes.get(inv.first, 0) > 0 and sizes.get(inv.second, 0) > 0
            out.append(InvariantResult(inv.name, int(both), 0))
            continue
        chosen = [e for e in inner if inv.selects(inv_label[e[0]], inv_label[e[1]])]
        tw = len(_max_twist_edges(chosen, ident)) if chosen else 0
        out.append(InvariantResult(inv.name, tw, inv.bound))
    return out


def assert_invariants(
    edges: Sequence[Edge],
    parts: Sequence[tuple[str, Sequence[int]]],
    invariants: Sequence[Tw | OneSideEmpty],
    where: str = "",
) -> None:
    for res in evaluate(edges, parts, invariants):
        if not res.ok:
            raise InvariantViolation(
                f"invariant {res.name} violated{where}: value {res.value} > bound {res.bound}"
            )
