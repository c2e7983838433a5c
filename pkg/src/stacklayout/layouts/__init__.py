"""Constructive vertex orders (and four stacks for single-source graphs)."""

from .invariants import InvariantViolation
from .outerplanar import (
    AnnotatedOrder,
    order_monotone,
    order_outerpath,
    order_single_source,
    stacks_single_source,
)
from .up3tree import order_up3tree

__all__ = [
    "AnnotatedOrder",
    "InvariantViolation",
    "order_monotone",
    "order_outerpath",
    "order_single_source",
    "order_up3tree",
    "stacks_single_source",
]
