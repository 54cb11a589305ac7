"""Basic reproduction numbers of structured population models by Chebyshev collocation."""

from ._r0colloc import (
    NumericalError,
    assemble,
    barycentric_interpolate,
    chebyshev_nodes,
    clenshaw_curtis_weights,
    compute,
    converge,
    differentiation_matrix,
    eigenfunction,
    estimate_order,
    exact_r0,
    ngo_apply,
    reference,
    sweep,
    upper_bound,
)

__all__ = [
    "NumericalError",
    "assemble",
    "barycentric_interpolate",
    "chebyshev_nodes",
    "clenshaw_curtis_weights",
    "compute",
    "converge",
    "differentiation_matrix",
    "eigenfunction",
    "estimate_order",
    "exact_r0",
    "ngo_apply",
    "reference",
    "sweep",
    "upper_bound",
]
