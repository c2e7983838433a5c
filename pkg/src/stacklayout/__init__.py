"""Stack layouts of DAGs: constructive orders with bounded twist, page
assignment, and exact stack numbers via SAT."""

from .graph import (
    Dag,
    GraphError,
    LinearOrder,
    PartitionedOrder,
    StackLayout,
    TwistCertificate,
    Violation,
    edges_cross,
    is_linear_extension,
    linear_extensions,
    max_twist,
    max_twist_bruteforce,
    max_twist_of_subset,
    reverse,
    topological_order,
    validate_dag,
    validate_layout,
)

__all__ = [
    "Dag",
    "GraphError",
    "LinearOrder",
    "PartitionedOrder",
    "StackLayout",
    "TwistCertificate",
    "Violation",
    "edges_cross",
    "is_linear_extension",
    "linear_extensions",
    "max_twist",
    "max_twist_bruteforce",
    "max_twist_of_subset",
    "reverse",
    "topological_order",
    "validate_dag",
    "validate_layout",
]
