"""Lazy vertex sequences: O(1) concatenation and reversal, flattened once."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Seq:
    node: object
    size: int

    def __bool__(self) -> bool:
        return self.size > 0

    def flatten(self) -> list[int]:
        out: list[int] = []
        stack: list[tuple[object, bool]] = [(self.node, False)]
        while stack:
            node, rev = stack.pop()
            if isinstance(node, int):
                out.append(node)
            elif node[0] == "cat":
                kids = node[1]
                if rev:
                    stack.extend((k, True) for k in kids)
                else:
                    stack.extend((k, False) for k in reversed(kids))
            else:  # "rev"
                stack.append((node[1], not rev))
        return out


EMPTY = Seq(("cat", ()), 0)


def leaf(v: int) -> Seq:
    return Seq(v, 1)


def cat(*parts: Seq) -> Seq:
    parts = tuple(p for p in parts if p.size)
    if not parts:
        return EMPTY
    if len(parts) == 1:
        return parts[0]
    return Seq(("cat", tuple(p.node for p in parts)), sum(p.size for p in parts))


def rev(s: Seq) -> Seq:
    if s.size <= 1:
        return s
    return Seq(("rev", s.node), s.size)
