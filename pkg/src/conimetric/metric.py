"""Generalized hyperbolic density of order (alpha1, alpha2, alpha3) on C minus {0, 1}.

The punctures 0, 1 and infinity carry singularities of order alpha1, alpha2
and alpha3.  The density is

    lambda(z) = 2 K3 / (|z|^a1 |1-z|^a2 (K1 |phi1|^2 + K2 |phi2|^2 + 2 Re(phi1 conj(phi2))))

with phi1(z) = F(alpha, beta, gamma; z) and
phi2(z) = F(alpha, beta, alpha + beta - gamma + 1; 1 - z).  Cusps (an order
equal to 1) make K1 or K2 vanish and the same expression stays valid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DomainError, InadmissibleOrdersError, NonPositiveDensityError, ParamError, PunctureError
from .specialfn import gamma_real, hyp2f1, rgamma

PUNCTURE_RADIUS = 1e-12
DENOMINATOR_FLOOR = 1e-300
# alpha + beta - gamma = alpha2 - 1 is formed from three rounded values; a
# cusp (alpha2 = 1) can leave a residue of a few ulps that must read as zero
CUSP_SNAP = 1e-15


@dataclass(frozen=True)
class SingularOrders:
    """Orders at 0, 1 and infinity; each in (0, 1] with sum > 2."""

    alpha1: float
    alpha2: float
    alpha3: float

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "alpha3"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not (0.0 < v <= 1.0) or math.isnan(v):
                raise InadmissibleOrdersError(f"{name}={v!r} must lie in (0, 1]")
        total = self.alpha1 + self.alpha2 + self.alpha3
        if not total > 2.0:
            raise InadmissibleOrdersError(
                f"Gauss–Bonnet violated: alpha1+alpha2+alpha3 = {total!r} must exceed 2")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha1, self.alpha2, self.alpha3)

    def permuted(self, i: int, j: int, k: int) -> "SingularOrders":
        """Orders re-indexed by 1-based positions, e.g. permuted(1, 3, 2)."""
        t = self.as_tuple()
        return SingularOrders(t[i - 1], t[j - 1], t[k - 1])

    def __str__(self):
        return "({:g}, {:g}, {:g})".format(*self.as_tuple())


def as_orders(orders) -> SingularOrders:
    if isinstance(orders, SingularOrders):
        return orders
    return SingularOrders(*orders)


@dataclass(frozen=True)
class HypergeometricParams:
    alpha: float
    beta: float
    gamma: float


@dataclass(frozen=True)
class ExplicitConstants:
    k1: float
    k2: float
    k3: float
    c0: float


def derive_params(orders) -> HypergeometricParams:
    o = as_orders(orders)
    a1, a2, a3 = o.as_tuple()
    return HypergeometricParams(
        alpha=(a1 + a2 - a3) / 2.0,
        beta=(a1 + a2 + a3 - 2.0) / 2.0,
        gamma=a1,
    )


def compute_constants(params: HypergeometricParams) -> ExplicitConstants:
    """K1, K2, K3 of the density formula and the disk-map constant c0.

    Reciprocal Gamma factors make the cusp limits exact: K2 = 0 when
    gamma = 1 and K1 = 0 when gamma - alpha - beta = 0.
    """
    a, b, g = params.alpha, params.beta, params.gamma
    gab = g - a - b
    if abs(gab) <= CUSP_SNAP:
        gab = 0.0
    if not (0.0 < b <= a + CUSP_SNAP and gab >= 0.0 and 0.0 < g <= 1.0):
        raise ParamError(f"hypergeometric parameters out of range: {params}")
    k1 = -gamma_real(g - a) * gamma_real(g - b) * rgamma(g) * rgamma(gab)
    k2 = -gamma_real(a + 1 - g) * gamma_real(b + 1 - g) * rgamma(1 - g) * rgamma(a + b + 1 - g)
    sines = (math.sin(math.pi * a) * math.sin(math.pi * b)
             / (math.sin(math.pi * (g - a)) * math.sin(math.pi * (g - b))))
    k3 = math.sqrt(sines) * gamma_real(a + b + 1 - g) * gamma_real(g) * rgamma(a) * rgamma(b)
    c0_sq = (gamma_real(1 - a) * gamma_real(1 - b) * gamma_real(a + 1 - g) * gamma_real(b + 1 - g)
             * rgamma(a) * rgamma(b) * rgamma(g - a) * rgamma(g - b))
    c0 = math.sqrt(c0_sq) * gamma_real(g) * rgamma(2 - g)
    # exact zeros from rgamma can come out as -0.0
    return ExplicitConstants(k1=k1 + 0.0, k2=k2 + 0.0, k3=k3, c0=c0)


def _check_point(z: complex, radius: float = PUNCTURE_RADIUS) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"z={z} is not a finite point")
    if abs(z) <= radius or abs(1.0 - z) <= radius:
        raise PunctureError(f"z={z} is at a puncture")
    return z


@dataclass(frozen=True)
class HyperbolicDensity:
    """Evaluation context: orders plus their cached constants."""

    orders: SingularOrders
    params: HypergeometricParams = field(init=False)
    constants: ExplicitConstants = field(init=False)

    def __post_init__(self):
        params = derive_params(self.orders)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "constants", compute_constants(params))
        object.__setattr__(self, "_log_2k3", math.log(2.0 * self.constants.k3))

    def __call__(self, z: complex, exclusion_radius: float = PUNCTURE_RADIUS) -> float:
        return math.exp(self.log_density(z, exclusion_radius))

    def log_density(self, z: complex, exclusion_radius: float = PUNCTURE_RADIUS) -> float:
        """log of the density; smoother than log(density(z)) for finite differences."""
        z = _check_point(z, exclusion_radius)
        if z.imag == 0.0:
            x = z.real
            if x < 0.0:
                # T(z) = z/(z-1) maps (-inf, 0) onto (0, 1) and swaps 1 and infinity
                other = context(self.orders.permuted(1, 3, 2))
                return other._log_formula(complex(x / (x - 1.0))) - 2.0 * math.log1p(-x)
            if x > 1.0:
                return context(self.orders.permuted(2, 1, 3)).log_density(complex(1.0 - x))
        return self._log_formula(z)

    def _log_formula(self, z: complex) -> float:
        p, k = self.params, self.constants
        a1, a2, _ = self.orders.as_tuple()
        phi1 = hyp2f1(p.alpha, p.beta, p.gamma, z)
        phi2 = hyp2f1(p.alpha, p.beta, p.alpha + p.beta - p.gamma + 1.0, 1.0 - z)
        # phi2(conj z) = conj(phi2(z)) for real parameters
        x1, y1, x2, y2 = phi1.real, phi1.imag, phi2.real, phi2.imag
        denom = math.fsum((k.k1 * x1 * x1, k.k1 * y1 * y1, k.k2 * x2 * x2, k.k2 * y2 * y2,
                           2.0 * x1 * x2, 2.0 * y1 * y2))
        if not denom > DENOMINATOR_FLOOR:
            raise NonPositiveDensityError(
                f"density denominator {denom!r} at z={z} for orders {self.orders}")
        return math.fsum((self._log_2k3, -a1 * math.log(abs(z)),
                          -a2 * math.log(abs(1.0 - z)), -math.log(denom)))


@lru_cache(maxsize=256)
def _context(orders: SingularOrders) -> HyperbolicDensity:
    return HyperbolicDensity(orders)


def context(orders) -> HyperbolicDensity:
    return _context(as_orders(orders))


def density(orders, z: complex, exclusion_radius: float = PUNCTURE_RADIUS) -> float:
    """Generalized hyperbolic density at z in C minus {0, 1}."""
    return context(orders)(z, exclusion_radius)


def density_disk_formula(orders, z: complex) -> float:
    """The same density from the disk representation (needs alpha1, alpha2 < 1, |z| < 1).

    lambda = 2 c0 (1 - a1) / (|z|^a1 |1-z|^a2 (|F(a,b,g;z)|^2
             - c0^2 |z|^(2-2 a1) |F(a-g+1, b-g+1, 2-g; z)|^2))

    The two denominator terms cancel as alpha1 -> 1 (relative error grows
    like eps / (1 - alpha1)), so this is a cross-check, not the main route.
    """
    ctx = context(orders)
    a1, a2, _ = ctx.orders.as_tuple()
    if a1 >= 1.0 or a2 >= 1.0:
        raise ParamError("disk formula needs alpha1 < 1 and alpha2 < 1")
    z = _check_point(z)
    if abs(z) >= 1.0:
        raise DomainError(f"disk formula needs |z| < 1, got |z|={abs(z)!r}")
    p = ctx.params
    c0 = ctx.constants.c0
    f1 = hyp2f1(p.alpha, p.beta, p.gamma, z)
    f3 = hyp2f1(p.alpha - p.gamma + 1.0, p.beta - p.gamma + 1.0, 2.0 - p.gamma, z)
    denom = abs(f1) ** 2 - c0 * c0 * abs(z) ** (2.0 - 2.0 * a1) * abs(f3) ** 2
    if not denom > DENOMINATOR_FLOOR:
        raise NonPositiveDensityError(f"disk-formula denominator {denom!r} at z={z}")
    return 2.0 * c0 * (1.0 - a1) / (abs(z) ** a1 * abs(1.0 - z) ** a2 * denom)


def density_at_minus_one(orders) -> float:
    """lambda(-1), computed as lambda_{a1,a3,a2}(1/2) / 4."""
    o = as_orders(orders)
    return math.exp(context(o.permuted(1, 3, 2))._log_formula(0.5 + 0j)) / 4.0


def symmetric_closed_form(alpha1: float, alpha2: float) -> float:
    """lambda_{a1,a2,a1}(-1) in closed form (tangents and Gamma values only)."""
    a1, a2 = float(alpha1), float(alpha2)
    if not (0.0 < a1 <= 1.0 and 0.0 < a2 <= 1.0 and 2.0 * a1 + a2 > 2.0):
        raise ParamError(f"need a1, a2 in (0, 1] and 2 a1 + a2 > 2, got ({a1}, {a2})")
    # both tangents are negative on the admissible region
    ratio = math.tan(0.5 * math.pi * (0.5 * a2 + a1)) / math.tan(0.5 * math.pi * (0.5 * a2 - a1))
    u = 0.5 * a1 - 0.25 * a2
    v = 0.5 * a1 + 0.25 * a2
    return (2.0 * math.sqrt(ratio) * gamma_real(u + 0.5) * gamma_real(v)
            * rgamma(u) * rgamma(v - 0.5))


def schwarzian_exact(orders, z: complex) -> complex:
    o = as_orders(orders)
    z = _check_point(z)
    t1, t2, t3 = (1.0 - a for a in o.as_tuple())
    return 0.5 * ((1 - t1 * t1) / z ** 2 + (1 - t2 * t2) / (1 - z) ** 2
                  + (1 - t1 * t1 - t2 * t2 + t3 * t3) / (z * (1 - z)))


def disk_density(z: complex) -> float:
    """Hyperbolic density 2 / (1 - |z|^2) of the unit disk."""
    r2 = abs(complex(z)) ** 2
    if r2 >= 1.0:
        raise DomainError("disk density needs |z| < 1")
    return 2.0 / (1.0 - r2)


def mobius_T(z: complex) -> complex:
    """T(z) = z/(z-1): fixes 0, swaps 1 and infinity."""
    z = complex(z)
    return z / (z - 1.0)


def mobius_T_derivative_abs(z: complex) -> float:
    return 1.0 / abs(complex(z) - 1.0) ** 2


__all__ = [
    "SingularOrders", "HypergeometricParams", "ExplicitConstants", "HyperbolicDensity",
    "as_orders", "context", "derive_params", "compute_constants", "density",
    "density_disk_formula", "density_at_minus_one", "symmetric_closed_form",
    "schwarzian_exact", "disk_density", "mobius_T", "mobius_T_derivative_abs",
]
