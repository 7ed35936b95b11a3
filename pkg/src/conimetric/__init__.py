"""Generalized hyperbolic metrics with conical singularities and cusps on the
twice-punctured plane: evaluation, sharp lower bounds, Landau and Schottky
bounds, and numerical verification."""

from .bounds import (
    INFINITY,
    TriangleSignature,
    landau_bound,
    lower_bound,
    lower_bound_constants,
    pole_free_radius,
    schottky_bound,
    schottky_Lk,
    schottky_zero_free_bound,
)
from .errors import ConimetricError, DomainError, NumericalFault
from .metric import (
    SingularOrders,
    compute_constants,
    density,
    density_at_minus_one,
    density_disk_formula,
    derive_params,
    schwarzian_exact,
    symmetric_closed_form,
)
from .specialfn import gamma_real, hyp2f1

__version__ = "0.1.0"
