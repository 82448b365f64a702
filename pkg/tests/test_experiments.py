"""Tests for the scaling experiments and the exponent fitter."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glancelab import experiments as ex
from glancelab import specfun
from glancelab.weights import BandSpec


# ----------------------------------------------------------------------
# fit_exponent
# ----------------------------------------------------------------------

def test_fit_recovers_exact_power_law():
    x = np.geomspace(10.0, 1e4, 20)
    y = 3.0 * x ** 1.7
    f = ex.fit_exponent(x, y)
    assert abs(f.slope - 1.7) < 1e-12
    assert abs(f.intercept - math.log(3.0)) < 1e-12
    assert f.r_squared > 1.0 - 1e-12
    assert f.stderr < 1e-12
    assert f.n_points == 15  # 25% of 20 dropped


@given(slope=st.floats(-2.0, 2.0), scale=st.floats(0.1, 10.0))
@settings(max_examples=30, deadline=None)
def test_fit_exact_any_exponent(slope, scale):
    x = np.geomspace(1.0, 100.0, 12)
    f = ex.fit_exponent(x, scale * x ** slope)
    assert abs(f.slope - slope) < 1e-9


def test_fit_drop_low_discards_leading_rows():
    x = np.geomspace(1.0, 1e3, 16)
    y = x ** 0.5
    y[:4] *= 100.0  # corrupt the pre-asymptotic end
    f = ex.fit_exponent(x, y, drop_low=0.25)
    assert abs(f.slope - 0.5) < 1e-12


def test_fit_refuses_strong_trend_with_bad_r2():
    rng = np.random.default_rng(3)
    x = np.geomspace(1.0, 1e3, 24)
    y = x ** 1.0 * np.exp(rng.normal(0.0, 3.0, size=x.size))
    with pytest.raises(ex.FitError, match="unreliable"):
        ex.fit_exponent(x, y, drop_low=0.0)


def test_fit_reports_flat_data_despite_scatter():
    # bounded quantity with scatter: low r^2 but slope ~ 0 is a valid answer
    rng = np.random.default_rng(11)
    x = np.geomspace(1.0, 1e3, 40)
    y = np.exp(rng.normal(0.0, 0.05, size=x.size))
    f = ex.fit_exponent(x, y, drop_low=0.0)
    assert abs(f.slope) < 0.05


def test_fit_validation_errors():
    with pytest.raises(ex.FitError):
        ex.fit_exponent([1.0, 2.0], [1.0, 2.0])          # too few
    with pytest.raises(ex.FitError):
        ex.fit_exponent([1, 2, 3, 4], [1, -1, 1, 1], drop_low=0.0)
    with pytest.raises(ex.FitError):
        ex.fit_exponent([2, 2, 2, 2], [1, 1, 1, 1], drop_low=0.0)
    with pytest.raises(ex.FitError):
        ex.fit_exponent(np.ones((2, 2)), np.ones((2, 2)))


# ----------------------------------------------------------------------
# sweep configuration
# ----------------------------------------------------------------------

def test_orders_geometric_unique_sorted():
    cfg = ex.SweepConfig(kind="disk", alpha=0.5, n_lo=100, n_hi=10000,
                         points=12)
    orders = cfg.orders()
    assert orders[0] == 100 and orders[-1] == 10000
    assert orders == sorted(set(orders))
    assert len(orders) == 12


def test_orders_collapse_duplicates():
    cfg = ex.SweepConfig(kind="disk", alpha=0.5, n_lo=10, n_hi=12, points=9)
    orders = cfg.orders()
    assert orders == [10, 11, 12]


# ----------------------------------------------------------------------
# amplitude sweeps
# ----------------------------------------------------------------------

def test_disk_amplitude_sweep_scaling():
    cfg = ex.SweepConfig(kind="disk", alpha=0.5, n_lo=100, n_hi=2000,
                         points=8)
    res = ex.amplitude_sweep(cfg)
    assert len(res.rows) == 8 and not res.skipped
    for row in res.rows:
        assert row.lam > 2 * row.n           # above the glancing frequency
        assert 0.0 < row.sigma < 0.5          # near-glancing window
        assert row.weighted_norm == pytest.approx(
            row.amplitude * math.sqrt(2.0 * math.pi * cfg.radius))
    f = res.fit(x="lam")
    assert 0.05 < f.slope < 0.20              # alpha/4 = 0.125


def test_disk_rows_ascend_in_order():
    cfg = ex.SweepConfig(kind="disk", alpha=0.3, n_lo=50, n_hi=500, points=5)
    res = ex.amplitude_sweep(cfg)
    ns = [row.n for row in res.rows]
    assert ns == sorted(ns)


def test_sphere_amplitude_sweep_scaling():
    cfg = ex.SweepConfig(kind="sphere", alpha=0.5, n_lo=200, n_hi=5000,
                         points=8)
    res = ex.amplitude_sweep(cfg)
    f = res.fit(x="lam")
    assert abs(f.slope - 0.125) < 0.03
    assert f.r_squared > 0.99


def test_sweep_row_matches_direct_selection():
    from glancelab import modes
    cfg = ex.SweepConfig(kind="disk", alpha=0.5, n_lo=300, n_hi=300, points=1)
    res = ex.amplitude_sweep(cfg)
    row = res.rows[0]
    mode = modes.select_disk_mode_at_scale(300, cfg.target(),
                                           optimize="restriction")
    assert row.lam == mode.lam
    assert row.h == pytest.approx(1.0 / mode.lam)
    assert row.sigma == pytest.approx(mode.sigma(0.5))


def test_unknown_kind_rejected():
    cfg = ex.SweepConfig(kind="torus", alpha=0.5, n_lo=10, n_hi=20, points=2)
    with pytest.raises(ValueError, match="kind"):
        ex.amplitude_sweep(cfg)


# ----------------------------------------------------------------------
# band sweep
# ----------------------------------------------------------------------

def test_sharpness_sweep_rows_inside_band():
    cfg = ex.SweepConfig(kind="disk", alpha=0.5, n_lo=4000, n_hi=30000,
                         points=6)
    band = BandSpec(0.3, 0.6)
    res = ex.sharpness_sweep(cfg, s=0.1, band=band)
    assert res.rows
    for row in res.rows:
        assert row.h ** band.rho2 <= row.sigma <= row.h ** band.rho1
        assert row.rho1 == 0.3 and row.rho2 == 0.6 and row.s == 0.1
        expect = row.sigma ** 0.1 * row.amplitude * math.sqrt(math.pi)
        assert row.weighted_norm == pytest.approx(expect, rel=1e-12)


def test_sharpness_sweep_infeasible_orders_skipped():
    # at small order the window sits entirely above the band ceiling h^rho1
    cfg = ex.SweepConfig(kind="disk", alpha=0.5, n_lo=200, n_hi=800, points=4)
    with pytest.raises(ex.FitError, match="no usable rows"):
        ex.sharpness_sweep(cfg, s=0.0, band=BandSpec(0.3, 0.6))


def test_sharpness_sweep_mixed_grid_logs_skips():
    cfg = ex.SweepConfig(kind="disk", alpha=0.5, n_lo=1000, n_hi=20000,
                         points=6)
    res = ex.sharpness_sweep(cfg, s=0.0, band=BandSpec(0.3, 0.6))
    assert res.rows and res.skipped
    skipped_orders = [n for n, _ in res.skipped]
    assert min(skipped_orders) < min(row.n for row in res.rows)


# ----------------------------------------------------------------------
# conormal-weighted and derivative sweeps
# ----------------------------------------------------------------------

def test_normal_band_flat():
    cfg = ex.SweepConfig(kind="disk", alpha=0.3, n_lo=500, n_hi=20000,
                         points=8)
    res = ex.normal_band_check(cfg)
    for row in res.rows:
        expect = math.sqrt(row.xi_d) * row.amplitude * math.sqrt(math.pi)
        assert row.weighted_norm == pytest.approx(expect, rel=1e-12)
    assert abs(res.fit(x="lam").slope) < 0.05


def test_normal_derivative_flat_at_quarter():
    cfg = ex.SweepConfig(kind="disk", alpha=0.5, n_lo=500, n_hi=20000,
                         points=8)
    res = ex.normal_derivative_sweep(cfg, s=0.25)
    assert abs(res.fit(x="h").slope) < 0.05
    for row in res.rows:
        # far branch of the weight: pure power sigma^{-s}
        assert row.sigma > 2.0 * row.h ** (2.0 / 3.0)
        expect = row.sigma ** -0.25 * row.amplitude * math.sqrt(math.pi)
        assert row.weighted_norm == pytest.approx(expect, rel=1e-9)


def test_normal_derivative_needs_far_branch():
    cfg = ex.SweepConfig(kind="disk", alpha=0.5, n_lo=100, n_hi=200, points=2)
    with pytest.raises(ValueError, match="rho > alpha"):
        ex.normal_derivative_sweep(cfg, s=0.25, rho=0.4)


def test_normal_derivative_uses_derivative_trace():
    from glancelab import modes
    cfg = ex.SweepConfig(kind="disk", alpha=0.5, n_lo=400, n_hi=400, points=1)
    res = ex.normal_derivative_sweep(cfg, s=0.25)
    row = res.rows[0]
    mode = modes.select_disk_mode_at_scale(400, cfg.target(),
                                           optimize="normal_derivative")
    amp = mode.normalization * specfun.bessel_j_prime(mode.n, mode.lam * 0.5)
    assert row.amplitude == pytest.approx(abs(amp))


# ----------------------------------------------------------------------
# quasimodes
# ----------------------------------------------------------------------

def test_quasimode_windows_bounded_and_weyl_consistent():
    res = ex.quasimode_boundedness(lam_lo=60.0, lam_hi=160.0, windows=3,
                                   trials=5, seed=7)
    assert len(res.rows) == 3
    for row in res.rows:
        assert abs(row.dim - row.weyl_estimate) <= 0.2 * row.weyl_estimate
        assert 0.0 < row.mean_norm <= row.max_norm
    assert res.spread < 3.0


def test_quasimode_deterministic():
    kw = dict(lam_lo=60.0, lam_hi=90.0, windows=2, trials=4, seed=123)
    a = ex.quasimode_boundedness(**kw)
    b = ex.quasimode_boundedness(**kw)
    assert [r.max_norm for r in a.rows] == [r.max_norm for r in b.rows]
    assert [r.mean_norm for r in a.rows] == [r.mean_norm for r in b.rows]


def test_quasimode_seed_changes_draws():
    a = ex.quasimode_boundedness(lam_lo=60.0, lam_hi=90.0, windows=2,
                                 trials=4, seed=1)
    b = ex.quasimode_boundedness(lam_lo=60.0, lam_hi=90.0, windows=2,
                                 trials=4, seed=2)
    assert [r.max_norm for r in a.rows] != [r.max_norm for r in b.rows]
    # the mode content (dimension) is seed-independent
    assert [r.dim for r in a.rows] == [r.dim for r in b.rows]


# ----------------------------------------------------------------------
# threading
# ----------------------------------------------------------------------

def test_thread_count_env(monkeypatch):
    monkeypatch.delenv("GLANCELAB_THREADS", raising=False)
    assert ex._thread_count() == 1
    monkeypatch.setenv("GLANCELAB_THREADS", "3")
    assert ex._thread_count() == 3
    monkeypatch.setenv("GLANCELAB_THREADS", "0")
    assert ex._thread_count() >= 1
    monkeypatch.setenv("GLANCELAB_THREADS", "soup")
    with pytest.raises(ValueError):
        ex._thread_count()


def test_threaded_sweep_identical_to_serial(monkeypatch):
    cfg = ex.SweepConfig(kind="disk", alpha=0.5, n_lo=100, n_hi=1500,
                         points=6)
    monkeypatch.setenv("GLANCELAB_THREADS", "1")
    serial = ex.amplitude_sweep(cfg)
    monkeypatch.setenv("GLANCELAB_THREADS", "4")
    threaded = ex.amplitude_sweep(cfg)
    assert serial.rows == threaded.rows


def test_threaded_quasimode_identical_to_serial(monkeypatch):
    kw = dict(lam_lo=50.0, lam_hi=80.0, windows=2, trials=3, seed=5)
    monkeypatch.setenv("GLANCELAB_THREADS", "1")
    serial = ex.quasimode_boundedness(**kw)
    monkeypatch.setenv("GLANCELAB_THREADS", "0")
    threaded = ex.quasimode_boundedness(**kw)
    assert serial.rows == threaded.rows
