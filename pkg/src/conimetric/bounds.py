"""Sharp lower bounds for the density and the Landau / Schottky bounds they imply.

A function class M_{j,k,l} (zeros of order >= j, one-points of order >= k,
poles of order >= l) corresponds to the orders (1 - 1/j, 1 - 1/k, 1 - 1/l),
with j, k or l equal to INFINITY giving order 1 (a cusp).

Every constant of the form asinh(s x) / s or sinh(s x) / s is evaluated with
the s -> 0 limit substituted analytically, so cusps (s = 1 - alpha = 0) take
the same code path without any division by a small number.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError, ParamError
from .metric import SingularOrders, as_orders, density_at_minus_one, _check_point
from .specialfn import gamma_real


class Infinity(enum.Enum):
    """The order infinity of a signature, and the value of a void Schottky bound."""

    INFINITY = "inf"

    def __str__(self):
        return "inf"


INFINITY = Infinity.INFINITY

Order = Union[int, Infinity]


def _check_order(n, name: str) -> Order:
    if n is INFINITY:
        return n
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParamError(f"{name} must be an integer >= 2 or INFINITY, got {n!r}")
    if n < 2:
        raise ParamError(f"{name} must be >= 2, got {n}")
    return n


def _reciprocal(n: Order) -> Fraction:
    return Fraction(0) if n is INFINITY else Fraction(1, n)


def order_to_alpha(n: Order) -> float:
    """1 - 1/n, with 1/INFINITY = 0."""
    return 1.0 - float(_reciprocal(n))


@dataclass(frozen=True)
class TriangleSignature:
    j: Order
    k: Order
    l: Order

    def __post_init__(self):
        for name in ("j", "k", "l"):
            _check_order(getattr(self, name), name)
        total = _reciprocal(self.j) + _reciprocal(self.k) + _reciprocal(self.l)
        if total >= 1:
            raise ParamError(f"signature ({self}) needs 1/j + 1/k + 1/l < 1, got {total}")

    def orders(self) -> SingularOrders:
        return SingularOrders(order_to_alpha(self.j), order_to_alpha(self.k), order_to_alpha(self.l))

    def __str__(self):
        return f"{self.j}, {self.k}, {self.l}"


def as_signature(sig) -> TriangleSignature:
    if isinstance(sig, TriangleSignature):
        return sig
    return TriangleSignature(*sig)


@dataclass(frozen=True)
class LowerBoundConstants:
    c1: float
    c3: float
    lambda_minus_one: float


@dataclass(frozen=True)
class ModelDensityParams:
    alpha: float
    R: float

    def __post_init__(self):
        if not self.alpha <= 1.0:
            raise ParamError(f"model density needs alpha <= 1, got {self.alpha!r}")
        if not self.R > 0.0:
            raise ParamError(f"model density needs R > 0, got {self.R!r}")


def _asinh_over(s: float, x: float) -> float:
    """asinh(s x) / s, equal to x at s = 0."""
    return x if s == 0.0 else math.asinh(s * x) / s


def _sinh_over(s: float, x: float) -> float:
    """sinh(s x) / s, equal to x at s = 0."""
    return x if s == 0.0 else math.sinh(s * x) / s


def _log_plus(x: float) -> float:
    if x < 0 or math.isnan(x):
        raise DomainError(f"|f(0)| must be >= 0, got {x!r}")
    return math.log(x) if x > 1.0 else 0.0


def lower_bound_constants(orders) -> LowerBoundConstants:
    o = as_orders(orders)
    lam = density_at_minus_one(o)
    return LowerBoundConstants(
        c1=_asinh_over(1.0 - o.alpha1, 1.0 / lam),
        c3=_asinh_over(1.0 - o.alpha3, 1.0 / lam),
        lambda_minus_one=lam,
    )


def model_density(params: ModelDensityParams, z: complex) -> float:
    """(1 - alpha) / (|z| sinh((1 - alpha) log(R/|z|))) on 0 < |z| < R."""
    r = abs(complex(z))
    if not 0.0 < r < params.R:
        raise DomainError(f"model density needs 0 < |z| < R={params.R!r}, got |z|={r!r}")
    return 1.0 / (r * _sinh_over(1.0 - params.alpha, math.log(params.R / r)))


def lower_bound(orders, z: complex) -> float:
    """Sharp lower bound for the density; equality only at z = -1."""
    o = as_orders(orders)
    z = _check_point(z)
    c = lower_bound_constants(o)
    r = abs(z)
    if r <= 1.0:
        return 1.0 / (r * _sinh_over(1.0 - o.alpha1, c.c1 - math.log(r)))
    return 1.0 / (r * _sinh_over(1.0 - o.alpha3, c.c3 + math.log(r)))


def _landau_constant(n: Order, lam: float) -> float:
    # n asinh(1 / (n lam)); 1/lam for n = INFINITY
    return _asinh_over(float(_reciprocal(n)), 1.0 / lam)


def landau_bound(sig, a0: complex) -> float:
    """Sharp bound on |f'(0)| for f in M_{j,k,l} with f(0) = a0."""
    s = as_signature(sig)
    a0 = complex(a0)
    if a0 == 0 or a0 == 1:
        raise DomainError(f"a0={a0} must avoid 0 and 1")
    lam = density_at_minus_one(s.orders())
    m = abs(a0)
    n = s.j if m <= 1.0 else s.l
    c = _landau_constant(n, lam)
    return 2.0 * m * _sinh_over(float(_reciprocal(n)), c + abs(math.log(m)))


def _schottky_constant(s: TriangleSignature) -> float:
    if s.l is INFINITY:
        raise DomainError("schottky_bound needs finite l; use schottky_zero_free_bound")
    return s.l * math.asinh(1.0 / (s.l * density_at_minus_one(s.orders())))


def pole_free_radius(sig, f0_abs: float) -> float:
    """Radius of the disk on which f in M_{j,k,l} cannot have a pole."""
    s = as_signature(sig)
    return math.exp(-(_schottky_constant(s) + _log_plus(f0_abs)) / s.l)


def schottky_bound(sig, f0_abs: float, r: float) -> Union[float, Infinity]:
    """Upper bound on log|f(z)| for |z| = r, or INFINITY beyond the pole-free radius."""
    s = as_signature(sig)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    lp = _log_plus(f0_abs)
    c = _schottky_constant(s)
    if r == 0.0:
        # (1+r)/(1-r) = 1 and the expression collapses to log+ |f(0)|
        return lp
    if r >= math.exp(-(c + lp) / s.l):
        return INFINITY
    arg = math.tanh((c + lp) / (2 * s.l)) * (1.0 + r) / (1.0 - r)
    if arg >= 1.0:
        return INFINITY
    return 2 * s.l * math.atanh(arg) - c


def schottky_zero_free_bound(j: Order, k: Order, f0_abs: float, r: float) -> float:
    """Bound on log|f(z)|, |z| = r, for f with no poles on the whole unit disk."""
    _check_order(j, "j")
    _check_order(k, "k")
    if _reciprocal(j) + _reciprocal(k) >= 1:
        raise DomainError(f"need 1/j + 1/k < 1, got j={j}, k={k}")
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    c = 1.0 / density_at_minus_one((order_to_alpha(j), order_to_alpha(k), 1.0))
    return (c + _log_plus(f0_abs)) * (1.0 + r) / (1.0 - r) - c


def schottky_Lk(k: Order) -> float:
    """L_k = Gamma((1+1/k)/4)^2 Gamma((1-1/k)/4)^2 cos(pi/(2k)) / (4 pi^2)."""
    _check_order(k, "k")
    x = float(_reciprocal(k))
    g = gamma_real((1.0 + x) / 4.0) * gamma_real((1.0 - x) / 4.0)
    return g * g * math.cos(0.5 * math.pi * x) / (4.0 * math.pi ** 2)


__all__ = [
    "INFINITY", "Infinity", "TriangleSignature", "LowerBoundConstants", "ModelDensityParams",
    "as_signature", "order_to_alpha", "lower_bound_constants", "model_density", "lower_bound",
    "landau_bound", "schottky_bound", "pole_free_radius", "schottky_zero_free_bound", "schottky_Lk",
]
