"""Scans, derivative identities, extremum reports, and least-squares fits."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xxzent import analysis, ed
from xxzent.analysis import (
    ConcurrenceCurve,
    ScanSample,
    delta_grid,
    extremum_and_derivative,
    polynomial_inverse_l_fit,
    quadratic_fit_near_iso,
    scan,
    scan_ed,
    scan_spinwave,
    second_differences,
    slope_identity_residuals,
)
from xxzent.lattice import LatticeSpec
from xxzent.spinwave import SpinWaveModel


# ------------------------------------------------------------------ grids


def test_delta_grid_hits_endpoints_and_one():
    g = delta_grid(0.0, 2.0, 0.05)
    assert len(g) == 41
    assert g[0] == 0.0 and g[-1] == 2.0
    assert 1.0 in g.tolist()  # exact after rounding, not just close


def test_delta_grid_validation():
    with pytest.raises(ValueError):
        delta_grid(0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        delta_grid(1.0, 0.0, 0.1)


def test_second_differences_quadratic_exact():
    x = np.linspace(0, 1, 11)
    vals = 3.0 - 2.0 * x + 5.0 * x**2
    d2 = second_differences(vals, float(x[1] - x[0]))
    np.testing.assert_allclose(d2, 10.0, atol=1e-9)


# ------------------------------------------------------------------ curves


def _toy_curve(deltas, concs, engine="ed"):
    samples = tuple(
        ScanSample(float(d), float(c), -0.3, -0.1, -1.0) for d, c in zip(deltas, concs)
    )
    return ConcurrenceCurve(engine, "toy", samples)


def test_curve_requires_increasing_deltas():
    with pytest.raises(ValueError):
        _toy_curve([0.0, 0.5, 0.5], [0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        ConcurrenceCurve("magic", "toy", ())


def test_curve_restrict_window():
    c = _toy_curve([0.0, 0.5, 1.0, 1.5, 2.0], [0.1, 0.2, 0.3, 0.2, 0.1])
    sub = c.restrict(0.5, 1.5)
    assert sub.deltas().tolist() == [0.5, 1.0, 1.5]


def test_scan_ed_four_ring():
    curve = scan_ed(LatticeSpec(1, 4), delta_grid(0.0, 2.0, 0.5))
    assert curve.engine == "ed"
    assert curve.all_ok()
    assert len(curve.samples) == 5
    # energies match direct solves, peak sits at the isotropic point
    energies = curve.energies_total()
    assert energies[2] == pytest.approx(-2.0, abs=1e-11)
    assert int(np.argmax(curve.concurrences())) == 2
    assert curve.samples[2].concurrence == pytest.approx(0.5, abs=1e-11)


def test_scan_dispatch_on_model_type():
    ed_curve = scan(LatticeSpec(1, 4), [0.5, 1.0])
    sw_curve = scan(SpinWaveModel(2, 1.0, k_points=64), [0.5, 1.0])
    assert ed_curve.engine == "ed"
    assert sw_curve.engine == "spinwave"
    assert math.isnan(sw_curve.samples[0].energy_total)
    with pytest.raises(TypeError):
        scan("a string", [1.0])


def test_scan_spinwave_matches_direct_evaluation():
    from xxzent import spinwave as sw

    curve = scan_spinwave(2, [0.8, 1.0, 1.3], k_points=64)
    for sample in curve.samples:
        assert sample.concurrence == pytest.approx(
            sw.concurrence(sample.delta, 2, 64), abs=1e-12
        )


def test_scan_keeps_failed_samples_as_gaps(monkeypatch):
    calls = {"n": 0}
    original = ed.lanczos_ground

    def flaky(h, **kwargs):
        calls["n"] += 1
        if calls["n"] == 2:
            raise ed.LanczosError("injected failure", best=None)
        return original(h, **kwargs)

    monkeypatch.setattr(ed, "lanczos_ground", flaky)
    curve = scan_ed(LatticeSpec(1, 4), [0.5, 1.0, 1.5])
    assert not curve.all_ok()
    bad = curve.samples[1]
    assert not bad.ok
    assert math.isnan(bad.concurrence) and math.isnan(bad.energy_total)
    assert "injected failure" in bad.error
    assert curve.samples[0].ok and curve.samples[2].ok


# ------------------------------------------------------------- identities


def test_hellmann_feynman_residual_small():
    r = analysis.hellmann_feynman_residual(LatticeSpec(1, 4), 1.0, h=1e-4)
    assert r < 1e-9


def test_slope_identity_on_ed_window():
    curve = scan_ed(LatticeSpec(1, 8), delta_grid(0.9, 1.1, 0.01))
    resid = slope_identity_residuals(curve)
    assert resid.max() < 1e-4
    assert len(resid) == len(curve.samples) - 2


def test_concavity_of_ed_energy():
    curve = scan_ed(LatticeSpec(1, 8), delta_grid(0.0, 2.0, 0.1))
    d2 = analysis.concavity_check(curve)
    assert np.all(d2 <= 1e-10)
    assert d2.min() < -1e-5  # strictly concave somewhere, not just flat


def test_concavity_rejects_nonuniform_grid():
    c = _toy_curve([0.0, 0.1, 0.3], [0.1, 0.2, 0.1])
    with pytest.raises(ValueError):
        analysis.concavity_check(c)


# ---------------------------------------------------------------- extremum


def test_extremum_report_four_ring():
    curve = scan_ed(LatticeSpec(1, 4), delta_grid(0.0, 2.0, 0.25))
    report = extremum_and_derivative(curve)
    assert report.delta_star == 1.0
    assert report.left_slope > 0 > report.right_slope
    assert report.cusp == pytest.approx(report.left_slope - report.right_slope, abs=1e-15)


def test_extremum_needs_one_in_grid():
    curve = scan_ed(LatticeSpec(1, 4), [0.5, 0.75, 1.25])
    with pytest.raises(ValueError, match="delta = 1"):
        extremum_and_derivative(curve)


def test_extremum_needs_interior_one():
    curve = scan_ed(LatticeSpec(1, 4), [0.5, 1.0])
    with pytest.raises(ValueError):
        extremum_and_derivative(curve)


def test_extremum_rejects_failed_samples():
    samples = (
        ScanSample(0.5, 0.3, -0.3, -0.1, -1.0),
        ScanSample(1.0, math.nan, math.nan, math.nan, math.nan, ok=False, error="x"),
        ScanSample(1.5, 0.3, -0.3, -0.1, -1.0),
    )
    with pytest.raises(ValueError, match="failed"):
        extremum_and_derivative(ConcurrenceCurve("ed", "toy", samples))


# -------------------------------------------------------------------- fits


def test_quadratic_fit_recovers_synthetic_coefficients():
    deltas = delta_grid(0.9, 1.1, 0.02)
    c = 0.4 - 0.05 * (deltas - 1.0) ** 2
    curve = _toy_curve(deltas, c)
    fit = quadratic_fit_near_iso(curve)
    assert fit.coefficients[0] == pytest.approx(0.4, abs=1e-12)
    assert fit.coefficients[1] == pytest.approx(0.05, abs=1e-12)
    assert fit.relative_residual < 1e-12
    assert not fit.low_confidence


def test_quadratic_fit_needs_enough_points():
    curve = _toy_curve([0.95, 1.0, 1.05], [0.39, 0.4, 0.39])
    with pytest.raises(ValueError, match=">= 5 points"):
        quadratic_fit_near_iso(curve)


@settings(max_examples=40, deadline=None)
@given(
    a0=st.floats(-1.0, 1.0),
    a1=st.floats(-2.0, 2.0),
    a2=st.floats(-3.0, 3.0),
)
def test_inverse_l_fit_exact_recovery(a0, a1, a2):
    sizes = [6, 8, 10, 12, 14]
    pairs = [(L, a0 + a1 / L + a2 / L**2) for L in sizes]
    fit = polynomial_inverse_l_fit(pairs, degree=2)
    assert fit.coefficients[0] == pytest.approx(a0, abs=1e-9)
    assert fit.coefficients[1] == pytest.approx(a1, abs=1e-7)
    assert fit.dof == 2


def test_inverse_l_fit_needs_distinct_sizes():
    with pytest.raises(ValueError, match="distinct sizes"):
        polynomial_inverse_l_fit([(8, -0.4), (8, -0.41)], degree=2)
