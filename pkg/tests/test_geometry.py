"""Torus configuration, deformation families, metric, and curvature."""

import math

import numpy as np
import pytest

from torus_hall import (
    CurvatureMode,
    Deformation,
    HamiltonianKind,
    NonPeriodicHamiltonian,
    PastCriticalDeformation,
    TorusConfig,
    TorusPoint,
    critical_s,
    flat_frame,
    gauss_bonnet_total,
    gauss_curvature,
    hamiltonian_values,
    hermitian_metric_h,
    periodic_sine,
)
from torus_hall.numerics import second_derivative


def test_torus_config_validation():
    with pytest.raises(ValueError):
        TorusConfig(1.0 - 0.5j, 2)
    with pytest.raises(ValueError):
        TorusConfig(1j, 0)


def test_torus_point_reduction():
    p = TorusPoint(1.25, -0.5)
    assert p.x == pytest.approx(0.25)
    assert p.y == pytest.approx(0.5)
    assert p.z(1j) == pytest.approx(0.25 + 0.5j)


def test_flat_frame_identity_at_zero():
    cfg = TorusConfig(0.3 + 1.2j, 3)
    fr = flat_frame(cfg, 0.0, cfg.n_phi)
    assert fr.tau_s == cfg.tau
    assert fr.z(0.4, 0.7) == 0.4 + cfg.tau * 0.7


def test_flat_frame_direct_substitution():
    # tau = i, N = 2, s = 4 pi: tau_s = i (1 + 1) = 2i
    fr = flat_frame(TorusConfig(1j, 2), 4 * np.pi, 2)
    assert fr.tau_s == pytest.approx(2j)


def test_flat_frame_monotone_in_s():
    cfg = TorusConfig(1j, 2)
    ims = [flat_frame(cfg, s, 2).tau_s.imag for s in (0.0, 0.5, 1.0, 5.0)]
    assert all(b > a for a, b in zip(ims, ims[1:]))


def test_flat_frame_additivity():
    cfg = TorusConfig(0.2 + 0.9j, 3)
    s1, s2 = 0.7, 1.9
    once = flat_frame(cfg, s1 + s2, 3).tau_s
    rebased = flat_frame(TorusConfig(flat_frame(cfg, s1, 3).tau_s, 3), s2, 3).tau_s
    assert once == pytest.approx(rebased, abs=1e-15)


@pytest.mark.parametrize("y,expected", [
    (0.0, (0.0, 0.0, 8 * np.pi**2)),
    (0.25, (1.0, 0.0, -8 * np.pi**2)),  # sin^2(pi/2) = 1 by direct evaluation
    (0.125, (0.5, 2 * np.pi, 0.0)),
])
def test_sine_hamiltonian_values(y, expected):
    h, h1, h2 = hamiltonian_values(periodic_sine(), y)
    assert h == pytest.approx(expected[0], abs=1e-12)
    assert h1 == pytest.approx(expected[1], abs=1e-12)
    assert h2 == pytest.approx(expected[2], abs=1e-9)


def test_custom_hamiltonian_fd_fallback_matches_sine():
    d = Deformation(HamiltonianKind.CUSTOM_PERIODIC, 0.0,
                    h_fun=lambda y: np.sin(2 * np.pi * y) ** 2)
    y = np.linspace(0.0, 1.0, 17)
    h, h1, h2 = hamiltonian_values(d, y)
    hs, h1s, h2s = hamiltonian_values(periodic_sine(), y)
    assert np.max(np.abs(h - hs)) < 1e-14
    assert np.max(np.abs(h1 - h1s)) < 1e-8
    assert np.max(np.abs(h2 - h2s)) < 1e-5


def test_custom_hamiltonian_period_check():
    with pytest.raises(NonPeriodicHamiltonian):
        Deformation(HamiltonianKind.CUSTOM_PERIODIC, 0.0, h_fun=lambda y: y**2)


def test_metric_flat_at_zero_deformation():
    cfg = TorusConfig(0.1 + 2j, 3)
    y = np.linspace(0, 1, 9)
    h = hermitian_metric_h(cfg, periodic_sine(0.0), y)
    assert np.max(np.abs(h - 2 * np.pi * 3 / 2.0)) < 1e-12


def test_metric_value_at_quarter_point():
    cfg = TorusConfig(1j, 2)
    got = hermitian_metric_h(cfg, periodic_sine(0.1), 0.25)
    want = 4 * np.pi / (1 - 0.2 * np.pi)
    assert got == pytest.approx(want, rel=1e-13)


def test_metric_periodic_in_y():
    cfg = TorusConfig(1j, 2)
    y = np.linspace(0, 1, 32, endpoint=False)
    h1 = hermitian_metric_h(cfg, periodic_sine(0.1), y)
    h2 = hermitian_metric_h(cfg, periodic_sine(0.1), y + 1.0)
    assert np.max(np.abs(h1 - h2) / h1) < 1e-12


def test_metric_positive_below_critical_and_raises_beyond():
    cfg = TorusConfig(1j, 2)
    sc = critical_s(cfg, periodic_sine())
    y = np.linspace(0, 1, 257)
    h = hermitian_metric_h(cfg, periodic_sine(sc * (1 - 1e-6)), y)
    assert np.all(h > 0) and np.all(np.isfinite(h))
    with pytest.raises(PastCriticalDeformation):
        hermitian_metric_h(cfg, periodic_sine(sc), 0.25)
    with pytest.raises(PastCriticalDeformation):
        hermitian_metric_h(cfg, periodic_sine(sc * 1.2), np.linspace(0, 1, 64))


def test_curvature_zero_at_s_zero():
    cfg = TorusConfig(1j, 2)
    y = np.linspace(0, 1, 33)
    for mode in CurvatureMode:
        assert np.max(np.abs(gauss_curvature(cfg, periodic_sine(0.0), y, mode))) < 1e-12


@pytest.mark.parametrize("s", [0.0, 0.05, 0.1, 0.15])
def test_gauss_bonnet_vanishes(s):
    cfg = TorusConfig(1j, 2)
    assert abs(gauss_bonnet_total(cfg, periodic_sine(s))) < 1e-10


def test_curvature_extrema_at_quarter_points():
    cfg = TorusConfig(1j, 2)
    n = 400
    y = np.linspace(0, 1, n, endpoint=False)
    k = gauss_curvature(cfg, periodic_sine(0.1), y)
    # every quarter point is a local extremum of K ...
    extrema = {y[i] for i in range(n)
               if (k[i] - k[i - 1]) * (k[(i + 1) % n] - k[i]) < 0}
    for c in (0.0, 0.25, 0.5, 0.75):
        assert min(abs(e - c) for e in extrema) < 2.5e-3
    # ... and the deep curvature wells sit where the metric blows up, y = 1/4, 3/4
    order = np.argsort(k)
    wells = sorted(y[order[:2]])
    assert wells[0] == pytest.approx(0.25, abs=2.5e-3)
    assert wells[1] == pytest.approx(0.75, abs=2.5e-3)


def test_log_mode_is_negative_of_hessian_mode():
    cfg = TorusConfig(1j, 2)
    y = np.linspace(0, 1, 65)
    k1 = gauss_curvature(cfg, periodic_sine(0.12), y, CurvatureMode.HESSIAN_H)
    k2 = gauss_curvature(cfg, periodic_sine(0.12), y, CurvatureMode.LOG_H)
    assert np.max(np.abs(k1 + k2)) < 1e-10 * np.max(np.abs(k1))


def test_analytic_hpp_matches_finite_differences():
    cfg = TorusConfig(1j, 2)
    d = periodic_sine(0.1)
    y = np.linspace(0.0, 1.0, 64, endpoint=False)
    analytic = gauss_curvature(cfg, d, y)
    fd = 2.0 / (4 * np.pi * cfg.n_phi) ** 2 * second_derivative(
        lambda yy: hermitian_metric_h(cfg, d, yy), y)
    assert np.max(np.abs(fd - analytic) / np.max(np.abs(analytic))) < 1e-6


def test_critical_s_values():
    assert critical_s(TorusConfig(1j, 2), periodic_sine()) == pytest.approx(1 / (2 * np.pi), abs=1e-12)
    assert critical_s(TorusConfig(1j, 4), periodic_sine()) == pytest.approx(1 / np.pi, abs=1e-12)
    assert critical_s(TorusConfig(2j, 2), periodic_sine()) == pytest.approx(1 / np.pi, abs=1e-12)


def test_critical_s_custom_matches_analytic():
    d = Deformation(HamiltonianKind.CUSTOM_PERIODIC, 0.0,
                    h_fun=lambda y: np.sin(2 * np.pi * y) ** 2,
                    h2_fun=lambda y: 8 * np.pi**2 * np.cos(4 * np.pi * y))
    got = critical_s(TorusConfig(1j, 2), d)
    assert got == pytest.approx(1 / (2 * np.pi), abs=1e-8)


def test_critical_s_infinite_for_convex_hamiltonian():
    d = Deformation(HamiltonianKind.CUSTOM_PERIODIC, 0.0,
                    h_fun=lambda y: np.full_like(np.asarray(y, dtype=float), 0.3))
    assert critical_s(TorusConfig(1j, 2), d) == math.inf


def test_deformation_validation():
    with pytest.raises(ValueError):
        periodic_sine(-0.1)
    with pytest.raises(ValueError):
        hamiltonian_values(Deformation(HamiltonianKind.FLAT_QUADRATIC, 0.0), 0.2)
