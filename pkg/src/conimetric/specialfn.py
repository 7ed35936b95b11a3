"""Real Gamma function and the Gauss hypergeometric function 2F1.

Parameters are real, the argument of 2F1 is complex.  All functions are pure.

Gamma uses a Lanczos approximation (g = 7, nine terms) on x >= 0.5 and the
reflection formula below that.  2F1 dispatches on the location of z:

* ``|z| <= 0.75``: power series
* ``|1 - z| <= 0.75``: the z -> 1 - z connection formula
* ``|z / (z - 1)| <= 0.75``: Pfaff transformation
* ``|z| >= 4/3``: the z -> 1/z connection formula
* anything else: Taylor continuation of the hypergeometric ODE

A connection formula whose Gamma prefactors are near a pole (c - a - b or
a - b within ``DEGENERACY_GAP`` of an integer) is skipped in favour of the
ODE continuation, which has no such cancellation.  Far from the origin with
large parameters the continuation loses digits instead, so there a
degenerate a - b is handled by perturbing b by +-d and +-2d around its value
and Richardson-extrapolating the symmetric averages (error O(d**4)).
"""

from __future__ import annotations

import cmath
import math

from .errors import BranchCutError, ConvergenceError, DomainError, ParamError, PoleError

POLE_TOL = 1e-9
SERIES_RADIUS = 0.75
MAX_TERMS = 10_000
SERIES_TOL = 1e-14
# internal evaluations run at rounding level; see hyp2f1
_EVAL_TOL = 2.0**-56
DEGENERACY_GAP = 0.05
# below this parameter size the ODE continuation is the most accurate route
CONTINUATION_PARAM_LIMIT = 1.5
PERTURB_STEP = 3e-4

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def _sinpi(x: float) -> float:
    """sin(pi x), exactly zero at the integers."""
    n = round(x)
    r = x - n
    s = math.sin(math.pi * r)
    return -s if n % 2 else s


def _is_pole(x: float, tol: float = POLE_TOL) -> bool:
    n = round(x)
    return n <= 0 and abs(x - n) < tol


def _lanczos_sum(x: float) -> float:
    # x is the shifted argument (Gamma(x + 1))
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    return acc


def _gamma_pos(x: float) -> float:
    if x == int(x) and x <= 171:
        return float(math.factorial(int(x) - 1))
    xm = x - 1.0
    t = xm + _LANCZOS_G + 0.5
    # split the power so that it does not overflow before exp(-t) kicks in
    half = pow(t, 0.5 * (xm + 0.5))
    return _SQRT_2PI * half * math.exp(-t) * half * _lanczos_sum(xm)


def gamma_real(x: float) -> float:
    """Gamma(x) for real x that is not a non-positive integer.

    Raises PoleError within ``POLE_TOL`` of 0, -1, -2, ...
    """
    x = float(x)
    if _is_pole(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    if x >= 0.5:
        return _gamma_pos(x)
    return math.pi / (_sinpi(x) * _gamma_pos(1.0 - x))


def rgamma(x: float) -> float:
    """1/Gamma(x), entire; exactly 0 at the non-positive integers."""
    x = float(x)
    if x >= 0.5:
        return 1.0 / _gamma_pos(x)
    return _sinpi(x) * _gamma_pos(1.0 - x) / math.pi


def log_gamma_real(x: float) -> float:
    """log Gamma(x) for x > 0."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"log_gamma_real needs x > 0, got {x!r}")
    if x < 8.0:
        return math.log(gamma_real(x))
    xm = x - 1.0
    t = xm + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (xm + 0.5) * math.log(t) - t + math.log(_lanczos_sum(xm))


# --------------------------------------------------------------------------
# hypergeometric function


def _check_c(c: float) -> None:
    if _is_pole(c):
        raise ParamError(f"2F1 lower parameter c={c!r} is a non-positive integer")


def _nonpositive_int(x: float) -> bool:
    return x <= 0 and x == int(x)


def hyp2f1_series(a: float, b: float, c: float, z: complex, tol: float = SERIES_TOL,
                  max_terms: int = MAX_TERMS) -> complex:
    """Partial sum of the Gauss series, |z| < 1.

    Summation stops once the remainder estimate drops below ``tol`` times
    the largest partial-sum magnitude seen.
    """
    return _series(a, b, c, z, tol, max_terms)[0]


def _fsum(re: list[float], im: list[float]) -> complex:
    # correctly rounded sums keep the result smooth in z, which finite
    # differences of the density rely on
    return complex(math.fsum(re), math.fsum(im))


def _series(a, b, c, z, tol=_EVAL_TOL, max_terms=MAX_TERMS):
    """Gauss series; returns (sum, largest |term|) so callers can judge cancellation."""
    _check_c(c)
    z = complex(z)
    az = abs(z)
    if az >= 1.0:
        raise DomainError(f"series needs |z| < 1, got |z|={az!r}")
    term = 1.0 + 0.0j
    re = [1.0]
    im = [0.0]
    total = term
    scale = 1.0
    biggest = 1.0
    for n in range(max_terms):
        ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0))
        term = term * (ratio * z)
        re.append(term.real)
        im.append(term.imag)
        total += term
        if term == 0:
            return _fsum(re, im), biggest
        aterm = abs(term)
        biggest = max(biggest, aterm)
        scale = max(scale, abs(total))
        q = abs(ratio) * az
        q_tail = max(q, az)
        if q < 1.0 and aterm * q_tail / (1.0 - q_tail) <= tol * scale:
            return _fsum(re, im), biggest
    raise ConvergenceError(
        f"2F1 series for (a,b,c)=({a},{b},{c}) at z={z} did not converge in {max_terms} terms")


def _series_and_derivative(a, b, c, z):
    f = hyp2f1_series(a, b, c, z, _EVAL_TOL)
    df = a * b / c * hyp2f1_series(a + 1, b + 1, c + 1, z, _EVAL_TOL)
    return f, df


def _taylor_step(a, b, c, z0, u, du, t, tol=_EVAL_TOL, max_terms=MAX_TERMS):
    """Advance the ODE solution (u, u') from z0 to z0 + t.

    Uses the Taylor expansion of z(1-z)u'' + [c-(a+b+1)z]u' - ab u = 0 about
    z0, with coefficients scaled by powers of t.
    """
    p0 = z0 * (1.0 - z0)
    p1 = 1.0 - 2.0 * z0
    q0 = c - (a + b + 1.0) * z0
    q1 = -(a + b + 1.0)
    ab = a * b
    v0 = u
    v1 = du * t
    vals = [v0, v1]
    ders = [v1]
    val = v0 + v1
    der = v1
    t2 = t * t
    scale = max(abs(val), abs(v0))
    dscale = abs(der)
    small = 0
    for n in range(max_terms):
        v2 = -((p1 * n * (n + 1) + q0 * (n + 1)) * v1 * t
               + (-n * (n - 1) + q1 * n - ab) * v0 * t2) / (p0 * (n + 1) * (n + 2))
        dv = (n + 2) * v2
        vals.append(v2)
        ders.append(dv)
        val += v2
        der += dv
        scale = max(scale, abs(val))
        dscale = max(dscale, abs(der))
        if abs(v2) <= tol * scale and abs(dv) <= tol * dscale:
            small += 1
            if small >= 2:
                value = _fsum([v.real for v in vals], [v.imag for v in vals])
                deriv = _fsum([v.real for v in ders], [v.imag for v in ders])
                return value, deriv / t
        else:
            small = 0
        v0, v1 = v1, v2
    raise ConvergenceError(f"ODE Taylor step from {z0} by {t} did not converge")


def _continuation_path(z: complex) -> list[complex]:
    """Waypoints from the series disk to z that keep clear of 1 and of [1, inf)."""
    sigma = -1.0 if z.imag < 0 else 1.0
    start = 0.5 * z / abs(z)
    # distance from 1 to the segment [start, z]
    d = z - start
    s = ((1.0 - start) * d.conjugate()).real / abs(d) ** 2 if d != 0 else 0.0
    s = min(1.0, max(0.0, s))
    dist = abs(start + s * d - 1.0)
    if dist >= min(0.3, 0.5 * abs(1.0 - z)):
        return [start, z]
    return [0.5j * sigma, complex(1.0, 0.75 * sigma), z]


def _hyp2f1_continue(a, b, c, z):
    path = _continuation_path(z)
    zc = path[0]
    u, du = _series_and_derivative(a, b, c, zc)
    for target in path[1:]:
        while zc != target:
            radius = min(abs(zc), abs(1.0 - zc))
            gap = target - zc
            dist = abs(gap)
            last = dist <= 0.5 * radius
            step = gap if last else gap * (0.5 * radius / dist)
            u, du = _taylor_step(a, b, c, zc, u, du, step)
            zc = target if last else zc + step
    return u


# cancellation (largest contribution / |result|) tolerated before trying
# equivalent forms of the same function
_CANCEL_LIMIT = 1e3
_SMOOTH_LIMIT = 2.0


def _near_integer(x: float, gap: float = DEGENERACY_GAP) -> bool:
    return abs(x - round(x)) < gap


def _combine(parts):
    """Sum of (prefactor, (series value, largest term)) pairs -> (value, cancellation)."""
    value = 0j
    size = 0.0
    for pref, (v, big) in parts:
        value += pref * v
        size += abs(pref) * max(big, abs(v))
    cond = size / abs(value) if value != 0 else math.inf
    return value, cond


def _route_series(a, b, c, z):
    return _combine([(1.0, _series(a, b, c, z))])


def _route_euler(a, b, c, z):
    pref = cmath.exp((c - a - b) * cmath.log(1.0 - z))
    return _combine([(pref, _series(c - a, c - b, c, z))])


def _route_pfaff(a, b, c, z):
    w = z / (z - 1.0)
    return _combine([(cmath.exp(-a * cmath.log(1.0 - z)), _series(a, c - b, c, w))])


def _route_pfaff_b(a, b, c, z):
    w = z / (z - 1.0)
    return _combine([(cmath.exp(-b * cmath.log(1.0 - z)), _series(c - a, b, c, w))])


def _route_one_minus_z(a, b, c, z):
    w = 1.0 - z
    s = c - a - b
    gc = gamma_real(c)
    parts = []
    coef1 = gc * gamma_real(s) * rgamma(c - a) * rgamma(c - b)
    if coef1 != 0.0:
        parts.append((coef1, _series(a, b, 1.0 - s, w)))
    coef2 = gc * gamma_real(-s) * rgamma(a) * rgamma(b)
    if coef2 != 0.0:
        parts.append((coef2 * cmath.exp(s * cmath.log(w)), _series(c - a, c - b, 1.0 + s, w)))
    return _combine(parts)


def _route_one_over_z(a, b, c, z):
    w = 1.0 / z
    lmz = cmath.log(-z)
    gc = gamma_real(c)
    parts = []
    coef1 = gc * gamma_real(b - a) * rgamma(b) * rgamma(c - a)
    if coef1 != 0.0:
        parts.append((coef1 * cmath.exp(-a * lmz), _series(a, a - c + 1.0, a - b + 1.0, w)))
    coef2 = gc * gamma_real(a - b) * rgamma(a) * rgamma(c - b)
    if coef2 != 0.0:
        parts.append((coef2 * cmath.exp(-b * lmz), _series(b, b - c + 1.0, b - a + 1.0, w)))
    return _combine(parts)


def _route_one_over_one_minus_z(a, b, c, z):
    w = 1.0 / (1.0 - z)
    l1z = cmath.log(1.0 - z)
    gc = gamma_real(c)
    parts = []
    coef1 = gc * gamma_real(b - a) * rgamma(b) * rgamma(c - a)
    if coef1 != 0.0:
        parts.append((coef1 * cmath.exp(-a * l1z), _series(a, c - b, a - b + 1.0, w)))
    coef2 = gc * gamma_real(a - b) * rgamma(a) * rgamma(c - b)
    if coef2 != 0.0:
        parts.append((coef2 * cmath.exp(-b * l1z), _series(b, c - a, b - a + 1.0, w)))
    return _combine(parts)


def _one_over_z_perturbed(a, b, c, z, step=PERTURB_STEP):
    def sym(d):
        return 0.5 * (_route_one_over_z(a, b + d, c, z)[0] + _route_one_over_z(a, b - d, c, z)[0])
    return (4.0 * sym(step) - sym(2.0 * step)) / 3.0


def _routes(a, b, c, z):
    """Applicable closed-form routes, most preferred first."""
    r = SERIES_RADIUS
    w = abs(z / (z - 1.0))
    out = []
    if abs(z) <= r:
        out += [_route_series, _route_euler]
    if abs(1.0 - z) <= r and not _near_integer(c - a - b):
        out.append(_route_one_minus_z)
    if w <= r:
        out += [_route_pfaff, _route_pfaff_b]
    if not _near_integer(a - b):
        if abs(z) >= 1.0 / r:
            out.append(_route_one_over_z)
        if abs(1.0 - z) >= 1.0 / r:
            out.append(_route_one_over_one_minus_z)
    # mildly degenerate connection formulas: a few digits lost, still usable
    if abs(1.0 - z) <= r and _near_integer(c - a - b) and not _near_integer(c - a - b, 1e-3):
        out.append(_route_one_minus_z)
    if abs(z) >= 1.0 / r and _near_integer(a - b) and not _near_integer(a - b, 1e-3):
        out.append(_route_one_over_z)
    return out


def _polynomial(a, b, c, z):
    n_max = int(-min(x for x in (a, b) if _nonpositive_int(x)))
    term = 1.0 + 0.0j
    total = term
    for n in range(n_max):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        total += term
    return total


def hyp2f1(a: float, b: float, c: float, z: complex) -> complex:
    """Principal branch of F(a, b; c; z), cut along [1, +inf).

    Points with a nonzero imaginary part are always accepted, however close
    to the cut; only the real ray z >= 1 itself is rejected.  The one
    exception is z = 1 with c - a - b > 0, where the Gauss sum is returned.
    """
    a, b, c = float(a), float(b), float(c)
    z = complex(z)
    _check_c(c)
    if z == 0:
        return 1.0 + 0.0j
    if _nonpositive_int(a) or _nonpositive_int(b):
        return _polynomial(a, b, c, z)
    if z.imag == 0.0 and z.real >= 1.0:
        if z.real == 1.0 and c - a - b > 0:
            return complex(gamma_real(c) * gamma_real(c - a - b) * rgamma(c - a) * rgamma(c - b))
        raise BranchCutError(f"z={z} lies on the branch cut [1, +inf)")

    small_params = max(abs(a), abs(b), abs(c)) <= CONTINUATION_PARAM_LIMIT
    # with small parameters the continuation is cheap and accurate, so only
    # near-cancellation-free closed forms are taken
    limit = _SMOOTH_LIMIT if small_params else _CANCEL_LIMIT
    best = None
    for route in _routes(a, b, c, z):
        value, cond = route(a, b, c, z)
        if cond <= limit:
            return value
        if best is None or cond < best[1]:
            best = (value, cond)

    if abs(z) >= 1.0 / SERIES_RADIUS and not small_params and _near_integer(a - b, 1e-3):
        return _one_over_z_perturbed(a, b, c, z)
    if best is not None and not small_params:
        return best[0]
    return _hyp2f1_continue(a, b, c, z)
