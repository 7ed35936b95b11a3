"""Numerical certification of the density: curvature, Schwarzian, symmetries,
angular monotonicity and the sharp lower bound.

Finite-difference steps are relative: the absolute step at z is
``h * min(|z|, |1 - z|)``.  The density is singular at 0 and 1 and grows
like |z| near infinity, so this is the length scale on which log(density)
varies.  A fixed absolute step cannot serve a grid that reaches 0.07 from a
cusp and also 2.8 from the origin.  Near the puncture the truncation error of
h = 1e-4 is already about 1e-4.  Far out the curvature divides by
density**2 ~ 4e-3, which multiplies double rounding in log(density) past
1e-5.  With relative steps both errors stay below 1e-5 for h in roughly
[1e-4, 4e-4].  Truncation dominates above that range and rounding below it.

Reports never raise on a failed check; only evaluation faults propagate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .bounds import lower_bound
from .errors import DomainError
from .metric import PUNCTURE_RADIUS, as_orders, context, mobius_T, mobius_T_derivative_abs, schwarzian_exact

DEFAULT_STEP = 2.5e-4
DECAY_STEPS = (1e-3, 5e-4, 2.5e-4)
STEP_RANGE = (1e-5, 1e-3)
CURVATURE_TOL = 1e-5
SCHWARZIAN_TOL = 1e-4
SYMMETRY_TOL = 1e-8
EQUALITY_TOL = 1e-8
ORDER_TOL = 0.5
STRICT_DROP = 1e-12
STANDOFF = 0.05


@dataclass(frozen=True)
class GridSpec:
    """Rectangle [x0, x1] x [y0, y1] (nx by ny) or annulus r0 <= |z| <= r1 (nr by nt).

    Points within ``exclusion`` of 0 or 1 are skipped; ``points`` lists the
    rest in row-major order (rows of constant y, or of constant radius).
    """

    kind: str
    bounds: tuple[float, float, float, float]
    shape: tuple[int, int]
    exclusion: float = STANDOFF

    def __post_init__(self):
        if self.kind not in ("rect", "annulus"):
            raise DomainError(f"grid kind must be 'rect' or 'annulus', got {self.kind!r}")
        if min(self.shape) < 1:
            raise DomainError(f"grid shape must be positive, got {self.shape}")
        if self.exclusion < PUNCTURE_RADIUS:
            raise DomainError(f"exclusion radius must be >= {PUNCTURE_RADIUS}")

    @classmethod
    def rect(cls, x0, x1, y0, y1, nx, ny, exclusion=STANDOFF):
        return cls("rect", (x0, x1, y0, y1), (nx, ny), exclusion)

    @classmethod
    def annulus(cls, r0, r1, nr, nt, exclusion=STANDOFF):
        """Radii r0..r1 and nt angles in (-pi, pi).

        Angles sit a quarter cell off the lattice, so neither 0 nor pi is
        hit for any nt and the real axis (with both punctures) is skipped.
        """
        return cls("annulus", (r0, r1, -math.pi, math.pi), (nr, nt), exclusion)

    def all_points(self) -> Iterator[Optional[complex]]:
        """Every grid node in row-major order, None for excluded ones."""
        a, b, c, d = self.bounds
        n1, n2 = self.shape
        for i in range(n2 if self.kind == "rect" else n1):
            for j in range(n1 if self.kind == "rect" else n2):
                if self.kind == "rect":
                    z = complex(_lin(a, b, n1, j), _lin(c, d, n2, i))
                else:
                    t = -math.pi + 2.0 * math.pi * (j + 0.25) / n2
                    z = cmath.rect(_lin(a, b, n1, i), t)
                yield None if self.excluded(z) else z

    def excluded(self, z: complex) -> bool:
        return abs(z) < self.exclusion or abs(1.0 - z) < self.exclusion

    def points(self) -> list[complex]:
        return [z for z in self.all_points() if z is not None]


def _lin(a: float, b: float, n: int, i: int) -> float:
    return a if n == 1 else a + (b - a) * i / (n - 1)


def acceptance_grid() -> GridSpec:
    """The 20 x 20 grid over [-2, 2] x [0.05, 2] with a 0.05 standoff."""
    return GridSpec.rect(-2.0, 2.0, 0.05, 2.0, 20, 20, STANDOFF)


def symmetry_grid() -> GridSpec:
    """200 points over [-2.5, 2.5] x [-2.2, 2.3], none on the real axis."""
    return GridSpec.rect(-2.5, 2.5, -2.2, 2.3, 20, 10)


def bound_grid() -> GridSpec:
    """500 points on 20 circles 0.2 <= |z| <= 5."""
    return GridSpec.annulus(0.2, 5.0, 20, 25)


@dataclass
class VerificationReport:
    name: str
    orders: tuple
    points: int = 0
    max_abs: float = 0.0
    max_rel: float = 0.0
    tolerance: float = 0.0
    worst: Optional[complex] = None
    failures: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_rel <= self.tolerance and not math.isnan(self.max_rel)

    def record(self, z, abs_res: float, rel_res: float, what: str = "") -> None:
        self.points += 1
        if math.isnan(rel_res) or rel_res > self.max_rel:
            self.worst = z
        self.max_abs = max(self.max_abs, abs_res)
        self.max_rel = max(self.max_rel, rel_res) if not math.isnan(rel_res) else math.nan
        if rel_res > self.tolerance or math.isnan(rel_res):
            self.failures.append(f"{what or 'z'}={z}: residual {rel_res:.3e}")

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        out = VerificationReport(self.name, self.orders, tolerance=self.tolerance)
        out.points = self.points + other.points
        out.max_abs = max(self.max_abs, other.max_abs)
        out.max_rel = max(self.max_rel, other.max_rel)
        out.worst = self.worst if self.max_rel >= other.max_rel else other.worst
        out.failures = self.failures + other.failures
        return out

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"{verdict} {self.name} orders={self.orders} points={self.points} "
                f"max_abs={self.max_abs:.3e} max_rel={self.max_rel:.3e} tol={self.tolerance:.1e}")

    def records(self) -> dict:
        """Stable key/value view for machine-readable output."""
        out = {
            "check": self.name,
            "orders": ",".join(f"{a:g}" for a in self.orders),
            "points": self.points,
            "max_abs": f"{self.max_abs:.6e}",
            "max_rel": f"{self.max_rel:.6e}",
            "tolerance": f"{self.tolerance:.6e}",
            "passed": "true" if self.passed else "false",
        }
        if self.worst is not None:
            out["worst"] = f"{self.worst.real:.12g}{self.worst.imag:+.12g}j"
        for k, v in self.extra.items():
            out[k] = v if isinstance(v, str) else f"{v:.6e}"
        return out


def _step(z: complex, h: float, relative: bool) -> float:
    if not STEP_RANGE[0] <= h <= STEP_RANGE[1]:
        raise DomainError(f"step h={h!r} outside {STEP_RANGE}")
    scale = min(abs(z), abs(1.0 - z))
    if relative:
        return h * scale
    if scale <= 10.0 * h:
        raise DomainError(f"z={z} is within 10h of a puncture")
    return h


def curvature_fd(orders, z: complex, h: float = DEFAULT_STEP, relative: bool = True) -> float:
    """-Laplacian(log density) / density**2 with the 5-point stencil."""
    f = context(orders)
    z = complex(z)
    s = _step(z, h, relative)
    c = f.log_density(z)
    nb = math.fsum((f.log_density(z + s), f.log_density(z - s),
                    f.log_density(z + 1j * s), f.log_density(z - 1j * s)))
    lap = (nb - 4.0 * c) / (s * s)
    return -lap * math.exp(-2.0 * c)


def schwarzian_fd(orders, z: complex, h: float = DEFAULT_STEP, relative: bool = True) -> complex:
    """2 (L_zz - L_z**2) for L = log density, from central differences in x and y."""
    f = context(orders)
    z = complex(z)
    s = _step(z, h, relative)
    L = f.log_density
    c = L(z)
    e, w, n, so = L(z + s), L(z - s), L(z + 1j * s), L(z - 1j * s)
    ne, nw = L(z + s + 1j * s), L(z - s + 1j * s)
    se, sw = L(z + s - 1j * s), L(z - s - 1j * s)
    lx = (e - w) / (2 * s)
    ly = (n - so) / (2 * s)
    lxx = (e - 2 * c + w) / (s * s)
    lyy = (n - 2 * c + so) / (s * s)
    lxy = (ne - nw - se + sw) / (4 * s * s)
    lz = 0.5 * complex(lx, -ly)
    lzz = 0.25 * complex(lxx - lyy, -2.0 * lxy)
    return 2.0 * (lzz - lz * lz)


def scan_curvature(orders, grid: GridSpec, h: float = DEFAULT_STEP,
                   tol: float = CURVATURE_TOL) -> VerificationReport:
    o = as_orders(orders)
    rep = VerificationReport("curvature", o.as_tuple(), tolerance=tol)
    rep.extra["step"] = h
    for z in grid.points():
        res = abs(curvature_fd(o, z, h) + 1.0)
        rep.record(z, res, res)
    return rep


def scan_schwarzian(orders, grid: GridSpec, h: float = DEFAULT_STEP,
                    tol: float = SCHWARZIAN_TOL) -> VerificationReport:
    """Absolute residuals (the report's relative field uses normalization 1)."""
    o = as_orders(orders)
    rep = VerificationReport("schwarzian", o.as_tuple(), tolerance=tol)
    rep.extra["step"] = h
    for z in grid.points():
        res = abs(schwarzian_fd(o, z, h) - schwarzian_exact(o, z))
        rep.record(z, res, res)
    return rep


def observed_order(steps, residuals) -> float:
    """Least-squares slope of log(residual) against log(step)."""
    xs = [math.log(h) for h in steps]
    ys = [math.log(max(r, 1e-300)) for r in residuals]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def scan_convergence(orders, grid: GridSpec, which: str = "curvature", steps=DECAY_STEPS,
                     tol: float = ORDER_TOL) -> tuple[VerificationReport, list[VerificationReport]]:
    """Grid-max residual at each step and its observed order; residual is |order - 2|."""
    scan = scan_curvature if which == "curvature" else scan_schwarzian
    reports = [scan(orders, grid, h) for h in steps]
    p = observed_order(steps, [r.max_abs for r in reports])
    rep = VerificationReport(f"{which}-order", as_orders(orders).as_tuple(), tolerance=tol)
    rep.points = reports[0].points
    rep.max_abs = rep.max_rel = abs(p - 2.0)
    rep.extra["observed_order"] = p
    for h, r in zip(steps, reports):
        rep.extra[f"max_residual_h{h:g}"] = r.max_abs
    if rep.max_rel > tol:
        rep.failures.append(f"observed order {p:.3f} is not 2")
    return rep, reports


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def scan_symmetries(orders, grid: GridSpec, tol: float = SYMMETRY_TOL) -> VerificationReport:
    """Reflection, the 0 <-> 1 swap and the 1 <-> infinity relation through T(z) = z/(z-1)."""
    o = as_orders(orders)
    f = context(o)
    swap = context(o.permuted(2, 1, 3))
    tmap = context(o.permuted(1, 3, 2))
    rep = VerificationReport("symmetry", o.as_tuple(), tolerance=tol)
    worst = {"reflection": 0.0, "swap": 0.0, "mobius": 0.0}
    for z in grid.points():
        v = f(z)
        for name, other in (("reflection", f(z.conjugate())),
                            ("swap", swap(1.0 - z)),
                            ("mobius", tmap(mobius_T(z)) * mobius_T_derivative_abs(z))):
            res = _rel(other, v)
            worst[name] = max(worst[name], res)
            rep.record(z, abs(other - v), res, name)
    rep.extra.update({f"max_{k}": v for k, v in worst.items()})
    return rep


def half_circle_angles(n: int) -> list[float]:
    """n angles in (0, pi), midpoints of equal cells so that 0 and pi are avoided."""
    return [math.pi * (i + 0.5) / n for i in range(n)]


def scan_monotonicity(orders, r: float, n: int = 64) -> VerificationReport:
    """Density on |z| = r must fall strictly in t on (0, pi) and rise on (-pi, 0).

    A step counts as strict when the relative change exceeds ``STRICT_DROP``;
    the residual of a pair is how far it falls short of that.
    """
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r!r}")
    if n < 8:
        raise DomainError(f"need at least 8 samples, got {n}")
    o = as_orders(orders)
    f = context(o)
    rep = VerificationReport("monotone", o.as_tuple(), tolerance=0.0)
    rep.extra["radius"] = r
    ts = half_circle_angles(n)
    upper = [f(cmath.rect(r, t)) for t in ts]
    # lower half ordered by increasing t in (-pi, 0)
    lower_ts = [-t for t in reversed(ts)]
    lower = [f(cmath.rect(r, t)) for t in lower_ts]
    for i in range(n - 1):
        drop = (upper[i] - upper[i + 1]) / upper[i]
        short = max(0.0, STRICT_DROP - drop)
        rep.record(cmath.rect(r, ts[i + 1]), short * upper[i], short, "upper t")
        rise = (lower[i + 1] - lower[i]) / lower[i]
        short = max(0.0, STRICT_DROP - rise)
        rep.record(cmath.rect(r, lower_ts[i + 1]), short * lower[i], short, "lower t")
    rep.extra["min_value"] = min(upper + lower)
    rep.extra["max_mirror_mismatch"] = max(_rel(a, b) for a, b in zip(upper, reversed(lower)))
    return rep


def audit_lower_bound(orders, grid: GridSpec, tol: float = EQUALITY_TOL) -> VerificationReport:
    """lower_bound <= density everywhere, equality (to ``tol``) at -1 only.

    z = -1 is always added to the sample.  At -1 the residual is the relative
    gap; elsewhere a gap <= 0 (bound not strictly below) counts as infinite.
    """
    o = as_orders(orders)
    f = context(o)
    rep = VerificationReport("lower-bound", o.as_tuple(), tolerance=tol)
    pts = [complex(-1.0)] + [z for z in grid.points() if z != -1]
    min_gap = math.inf
    min_at = None
    for z in pts:
        lam = f(z)
        gap = (lam - lower_bound(o, z)) / lam
        if z == -1:
            rep.record(z, abs(gap) * lam, abs(gap), "equality")
            rep.extra["gap_at_minus_one"] = gap
            continue
        if gap < min_gap:
            min_gap, min_at = gap, z
        if gap > 0:
            rep.record(z, 0.0, 0.0)
        else:
            rep.record(z, -gap * lam, math.inf, "strict")
    rep.extra["min_gap_elsewhere"] = min_gap
    if min_at is not None:
        rep.extra["min_gap_at"] = f"{min_at.real:.12g}{min_at.imag:+.12g}j"
    return rep


__all__ = [
    "GridSpec", "VerificationReport", "acceptance_grid", "symmetry_grid", "bound_grid", "curvature_fd", "schwarzian_fd",
    "scan_curvature", "scan_schwarzian", "scan_convergence", "observed_order",
    "scan_symmetries", "scan_monotonicity", "half_circle_angles", "audit_lower_bound",
]
