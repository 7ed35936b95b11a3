import cmath
import math

import pytest

from conimetric import verify
from conimetric.errors import DomainError
from conimetric.metric import density, schwarzian_exact
from conimetric.verify import (
    GridSpec, VerificationReport, audit_lower_bound, curvature_fd, half_circle_angles,
    observed_order, scan_convergence, scan_curvature, scan_monotonicity, scan_schwarzian,
    scan_symmetries, schwarzian_fd,
)

SMALL = GridSpec.rect(-1.5, 1.5, 0.3, 1.5, 4, 3)


def test_grid_layout():
    g = GridSpec.rect(0, 1, 0, 1, 3, 2)
    pts = list(g.all_points())
    assert len(pts) == 6
    # (0, 0) and (1, 0) are punctures
    assert pts[0] is None and pts[2] is None
    assert pts[1] == 0.5 and pts[3] == 1j
    assert g.points() == [0.5, 1j, 0.5 + 1j, 1 + 1j]


def test_annulus_avoids_real_axis():
    g = GridSpec.annulus(0.5, 2, 3, 8)
    pts = g.points()
    assert len(pts) == 24
    assert all(abs(z.imag) > 0.09 for z in pts)
    # odd angle counts must not land on the real axis either
    assert all(abs(z.imag) > 1e-2 for z in GridSpec.annulus(0.5, 2, 3, 25).points())
    assert {round(abs(z), 12) for z in pts} == {0.5, 1.25, 2.0}


def test_standard_grids():
    assert len(verify.acceptance_grid().points()) <= 400
    assert min(min(abs(z), abs(1 - z)) for z in verify.acceptance_grid().points()) >= 0.05
    assert len(verify.symmetry_grid().points()) == 200
    assert len(verify.bound_grid().points()) == 500


@pytest.mark.parametrize("kind, shape, excl", [("disk", (2, 2), 0.05), ("rect", (0, 2), 0.05), ("rect", (2, 2), 0.0)])
def test_grid_validation(kind, shape, excl):
    with pytest.raises(DomainError):
        GridSpec(kind, (0, 1, 0, 1), shape, excl)


@pytest.mark.parametrize("orders, z", [((0.9, 0.9, 0.9), 0.3 + 0.4j), ((1, 1, 1), -1)])
@pytest.mark.parametrize("relative", [True, False])
def test_curvature_examples(orders, z, relative):
    assert curvature_fd(orders, z, 1e-4, relative=relative) == pytest.approx(-1.0, abs=1e-5)


def test_curvature_default_step():
    assert curvature_fd((0.8, 0.7, 0.9), 2.5 - 1j) == pytest.approx(-1.0, abs=1e-5)


def test_step_validation():
    with pytest.raises(DomainError):
        curvature_fd((1, 1, 1), 0.5j, h=1e-2)
    with pytest.raises(DomainError):
        curvature_fd((1, 1, 1), 1e-4 + 1e-4j, h=1e-4, relative=False)


@pytest.mark.parametrize("orders, z", [((1, 1, 1), 2j), ((0.8, 0.7, 0.9), 0.5 + 0.5j)])
def test_schwarzian_examples(orders, z):
    assert abs(schwarzian_fd(orders, z) - schwarzian_exact(orders, z)) < 1e-4
    assert abs(schwarzian_fd(orders, z, 1e-4, relative=False) - schwarzian_exact(orders, z)) < 1e-4


def test_schwarzian_conjugate_symmetry():
    z = 0.5 + 0.5j
    s = schwarzian_fd((0.8, 0.7, 0.9), z)
    t = schwarzian_fd((0.8, 0.7, 0.9), z.conjugate())
    assert abs(t - s.conjugate()) < 1e-9


def test_observed_order():
    steps = (1e-3, 5e-4, 2.5e-4)
    assert observed_order(steps, [3 * h ** 2 for h in steps]) == pytest.approx(2.0)
    assert observed_order(steps, [h for h in steps]) == pytest.approx(1.0)


def test_scans_on_small_grid():
    o = (0.8, 0.7, 0.9)
    c = scan_curvature(o, SMALL)
    assert c.passed and c.points == 12 and c.max_rel < 1e-5
    s = scan_schwarzian(o, SMALL)
    assert s.passed and s.max_abs < 1e-4
    order, reps = scan_convergence(o, SMALL)
    assert len(reps) == 3 and order.passed
    assert abs(order.extra["observed_order"] - 2) < 0.5


def test_failed_scan_is_reported_not_raised():
    rep = scan_curvature((0.8, 0.7, 0.9), SMALL, h=1e-3, tol=1e-12)
    assert not rep.passed
    assert rep.failures and rep.worst is not None
    assert rep.summary().startswith("FAIL curvature")


def test_symmetries():
    rep = scan_symmetries((0.9, 0.8, 0.85), SMALL)
    assert rep.passed and rep.max_rel < 1e-8
    assert set(rep.extra) == {"max_reflection", "max_swap", "max_mobius"}


def test_symmetry_special_cases():
    # alpha1 = alpha2: lambda(x) = lambda(1 - x) on (0, 1)
    for x in (0.1, 0.3, 0.45):
        assert density((0.9, 0.9, 0.8), x) == pytest.approx(density((0.9, 0.9, 0.8), 1 - x), rel=1e-13)
    # 2 is a fixed point of T with |T'(2)| = 1
    o = (0.9, 0.8, 0.85)
    assert density(o, 2) == pytest.approx(density((0.9, 0.85, 0.8), 2), rel=1e-12)


def test_half_circle_angles():
    ts = half_circle_angles(8)
    assert len(ts) == 8 and 0 < ts[0] and ts[-1] < math.pi
    assert ts == sorted(ts)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_monotone(r):
    rep = scan_monotonicity((1, 1, 1), r, 64)
    assert rep.passed and rep.points == 126
    assert rep.extra["max_mirror_mismatch"] < 1e-12
    # minimum sits next to t = +-pi
    assert rep.extra["min_value"] == pytest.approx(density((1, 1, 1), cmath.rect(r, half_circle_angles(64)[-1])))


def test_monotone_detects_violation(monkeypatch):
    class Flat:
        def __call__(self, z):
            return 1.0
    monkeypatch.setattr(verify, "context", lambda o: Flat())
    rep = scan_monotonicity((1, 1, 1), 1.0, 16)
    assert not rep.passed and len(rep.failures) == 30


def test_monotone_validation():
    with pytest.raises(DomainError):
        scan_monotonicity((1, 1, 1), 0.0)
    with pytest.raises(DomainError):
        scan_monotonicity((1, 1, 1), 1.0, 4)


def test_audit_lower_bound():
    rep = audit_lower_bound((1, 1, 1), GridSpec.annulus(0.5, 2, 4, 10))
    assert rep.passed and rep.points == 41
    assert abs(rep.extra["gap_at_minus_one"]) < 1e-8
    assert rep.extra["min_gap_elsewhere"] > 0


def test_audit_reports_a_broken_bound(monkeypatch):
    monkeypatch.setattr(verify, "lower_bound", lambda o, z: 2 * density(o, z))
    rep = audit_lower_bound((1, 1, 1), GridSpec.annulus(0.5, 2, 2, 4))
    assert not rep.passed
    assert any("strict" in f for f in rep.failures)


def test_report_merge_and_records():
    a = VerificationReport("x", (1.0, 1.0, 1.0), tolerance=1.0)
    a.record(0.5j, 0.1, 0.1)
    b = VerificationReport("x", (1.0, 1.0, 1.0), tolerance=1.0)
    b.record(2j, 3.0, 3.0)
    m = a.merge(b)
    assert m.points == 2 and m.max_rel == 3.0 and m.worst == 2j and not m.passed
    rec = m.records()
    assert rec["passed"] == "false" and rec["orders"] == "1,1,1" and rec["worst"] == "0+2j"


def test_nan_residual_fails():
    r = VerificationReport("x", (1.0, 1.0, 1.0), tolerance=1.0)
    r.record(1j, math.nan, math.nan)
    assert not r.passed
