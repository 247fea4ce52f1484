"""Tests for the relativistic kernel: wavenumber, coefficients, mass
modes, the spectral function, and the dual evaluation paths."""

import numpy as np
import pytest

from ring_spectra import bc
from ring_spectra.dirac import (
    DiracPoint,
    MassModeError,
    PhysicalConfig,
    Regime,
    boundary_matrix_arrays,
    build_Apm,
    coefficient_arrays,
    kernel_at,
    mass_mode_Apm,
    mass_mode_B,
    mass_mode_membership,
    spectral_value,
    spectral_values,
    wavenumber,
)
from ring_spectra.matalg import I2, SX, det2, det2x2_difference


def test_wavenumber_pythagorean():
    assert wavenumber(DiracPoint.classify(5.0, 3.0)) == pytest.approx(4.0)


def test_wavenumber_inside_gap():
    assert wavenumber(DiracPoint.classify(0.0, 1.0)) == pytest.approx(1j)


def test_wavenumber_below_gap_is_positive_real():
    assert wavenumber(DiracPoint.classify(-5.0, 3.0)) == pytest.approx(4.0)


def test_wavenumber_rejects_mass_modes():
    with pytest.raises(MassModeError):
        wavenumber(DiracPoint.classify(1.0, 1.0))


def test_classification_and_snapping():
    assert DiracPoint.classify(5.0, 3.0).regime is Regime.ABOVE_GAP
    assert DiracPoint.classify(-5.0, 3.0).regime is Regime.BELOW_GAP
    assert DiracPoint.classify(0.5, 3.0).regime is Regime.INSIDE_GAP
    p = DiracPoint.classify(3.0 + 1e-13, 3.0)
    assert p.regime is Regime.MASS_MODE_PLUS and p.mu == 3.0
    p = DiracPoint.classify(-3.0 - 1e-13, 3.0)
    assert p.regime is Regime.MASS_MODE_MINUS and p.mu == -3.0
    assert DiracPoint.classify(0.0, 0.0).regime is Regime.MASS_MODE_PLUS


def test_massless_coefficients():
    # a vanishes identically and |c| = 1 with c = (sin + i cos)/(sin - i cos) at K = |mu|
    mu = np.array([0.7, 2.0, -3.3, 11.0])
    a, b, c = coefficient_arrays(mu, 0.0)
    assert np.max(np.abs(a)) == 0.0
    k = np.abs(mu)
    expect = (mu * np.sin(k) + 1j * k * np.cos(k)) / (mu * np.sin(k) - 1j * k * np.cos(k))
    assert np.allclose(c, expect, atol=1e-14)
    assert np.max(np.abs(np.abs(c) - 1.0)) < 1e-14


def test_kernel_against_matrix_path_345():
    p = DiracPoint.classify(5.0, 3.0)
    a_plus, a_minus = build_Apm(p)
    b_mat = a_minus @ np.linalg.inv(a_plus)
    kv = kernel_at(p)
    assert np.max(np.abs(b_mat - kv.B)) < 1e-12
    assert np.max(np.abs(kv.B - (kv.a * I2 + kv.b * SX))) == 0.0
    assert kv.f is None


def test_kernel_at_carries_spectral_value_for_bc():
    u = bc.named_family("qp", 0.9)
    p = DiracPoint.classify(4.0, 1.0)
    kv = kernel_at(p, u)
    assert kv.f == pytest.approx(spectral_value(p, u), abs=1e-14)


def test_hyperbolic_form_equals_complex_wavenumber_form():
    # in-gap production path vs the plane-wave formulas evaluated at K = i kappa
    mu0 = 1.0
    for mu in np.linspace(-0.95, 0.95, 39):
        kap = np.sqrt(mu0**2 - mu**2)
        k = 1j * kap
        d = mu * np.sin(k) - 1j * k * np.cos(k)
        expect = (mu0 * np.sin(k) / d, -1j * k / d)
        a, b, c = (v[0] for v in coefficient_arrays(np.array([mu]), mu0))
        assert abs(a - expect[0]) < 1e-12
        assert abs(b - expect[1]) < 1e-12
        assert abs(c - (a * a - b * b)) < 1e-13


def test_build_Apm_det_example():
    # mu=5, mu0=3: amplitude ratio 1/2 and the closed-form determinant
    p = DiracPoint.classify(5.0, 3.0)
    a_plus, a_minus = build_Apm(p)
    ratio = wavenumber(p) / (5.0 + 3.0)
    assert ratio == pytest.approx(0.5)
    for mat, sgn in ((a_plus, +1), (a_minus, -1)):
        closed = (-4j / 8.0) * (5.0 * np.sin(4.0) - sgn * 1j * 4.0 * np.cos(4.0))
        assert det2(mat) == pytest.approx(closed, abs=1e-12)


def test_build_Apm_massless_dual_path():
    p = DiracPoint.classify(2 * np.pi, 0.0)
    a_plus, a_minus = build_Apm(p)
    kv = kernel_at(p)
    assert np.max(np.abs(a_minus @ np.linalg.inv(a_plus) - kv.B)) < 1e-12


def test_build_Apm_rejects_mass_modes():
    with pytest.raises(MassModeError):
        build_Apm(DiracPoint.classify(3.0, 3.0))


def test_mass_mode_B_plus_example():
    expect = (1.0 / (1.0 - 1j)) * np.array([[1.0, -1j], [-1j, 1.0]])
    assert np.max(np.abs(mass_mode_B(+1, 1.0) - expect)) < 1e-15


def test_mass_mode_B_minus_unimodular():
    b = mass_mode_B(-1, 1.0)
    assert abs(abs(det2(b)) - 1.0) < 1e-12
    assert np.linalg.norm(b.conj().T @ b - I2) < 1e-12


def test_mass_mode_B_matches_polynomial_matrix_path():
    for sign in (+1, -1):
        for mu0 in (0.5, 1.0, 4.0):
            a_plus, a_minus = mass_mode_Apm(sign, mu0)
            assert np.max(np.abs(a_minus @ np.linalg.inv(a_plus) - mass_mode_B(sign, mu0))) < 1e-12


def test_mass_mode_B_continuity():
    b0 = mass_mode_B(+1, 1.0)
    gaps = [
        np.linalg.norm(boundary_matrix_arrays(np.array([1.0 + d]), 1.0)[0] - b0)
        for d in (1e-3, 1e-5)
    ]
    assert gaps[1] < gaps[0] < 2e-3
    # approach from inside the gap converges as well
    inner = [
        np.linalg.norm(boundary_matrix_arrays(np.array([1.0 - d]), 1.0)[0] - b0)
        for d in (1e-3, 1e-5)
    ]
    assert inner[1] < inner[0] < 2e-3


def test_mass_mode_B_rejects_massless():
    with pytest.raises(MassModeError):
        mass_mode_B(+1, 0.0)


def test_spectral_value_identity_bc_at_mass_modes():
    u = bc.from_matrix(I2)
    for mu0 in (0.5, 1.0, 5.0):
        assert abs(spectral_value(DiracPoint.classify(mu0, mu0), u)) < 1e-14
    assert abs(spectral_value(DiracPoint.classify(-1.0, 1.0), u)) > 0.1


def test_spectral_value_assembly_paths_agree():
    rng = np.random.default_rng(21)
    mu0 = 1.3
    for _ in range(50):
        u = bc.random_unitary_bc(rng)
        mu = rng.uniform(-8.0, 8.0)
        p = DiracPoint.classify(mu, mu0)
        if p.is_mass_mode:
            continue
        via_triple = spectral_value(p, u)
        via_det = det2x2_difference(kernel_at(p).B, u.matrix)
        assert abs(via_triple - via_det) < 1e-11


def test_spectral_value_orbit_invariance_pointwise():
    rng = np.random.default_rng(22)
    mu = np.linspace(-6.0, 6.0, 500)
    for _ in range(10):
        u = bc.random_unitary_bc(rng)
        v = bc.conjugate_orbit(u, rng.uniform(0, np.pi))
        gap = np.abs(spectral_values(mu, 1.0, u) - spectral_values(mu, 1.0, v))
        assert gap.max() < 1e-12


def test_membership_examples():
    u_id = bc.from_matrix(I2)
    assert mass_mode_membership(u_id, +1, 0.7)
    assert mass_mode_membership(u_id, +1, 5.0)
    assert not mass_mode_membership(u_id, -1, 1.0)
    u_pp = bc.named_family("pp", 0.0)  # eta=pi/2, m0=0, m1=1
    assert not mass_mode_membership(u_pp, +1, 0.5)
    assert not mass_mode_membership(u_pp, +1, 2.0)


def test_unimodular_c_on_three_gap_widths():
    mu0 = 1.0
    mu = np.linspace(-3.0, 3.0, 10_000)
    _, _, c = coefficient_arrays(mu, mu0)
    assert np.max(np.abs(np.abs(c) - 1.0)) < 1e-12


def test_c_equals_a2_minus_b2_everywhere():
    mu0 = 2.0
    mu = np.linspace(-9.0, 9.0, 5000)
    a, b, c = coefficient_arrays(mu, mu0)
    assert np.max(np.abs(c - (a * a - b * b))) < 1e-12


def test_B_unitary_including_mass_modes():
    mu0 = 1.0
    mu = np.concatenate([np.linspace(-3.0, 3.0, 3001), [-1.0, 1.0]])
    mats = boundary_matrix_arrays(mu, mu0)
    gram = np.einsum("nki,nkj->nij", mats.conj(), mats)
    assert np.max(np.linalg.norm(gram - I2, axis=(1, 2))) < 1e-10


def test_physical_config():
    cfg = PhysicalConfig(L=2.0, mass=3.0, hbar=0.5, c=4.0)
    assert cfg.mu0 == pytest.approx(3.0 * 4.0 * 2.0 / 0.5)
    assert cfg.dirac_mu(cfg.dirac_energy(1.7)) == pytest.approx(1.7)
    assert cfg.schrod_e(cfg.schrod_energy(42.0)) == pytest.approx(42.0)
    with pytest.raises(ValueError):
        PhysicalConfig(L=0.0, mass=1.0, hbar=1.0, c=1.0)
    with pytest.raises(ValueError):
        PhysicalConfig(L=1.0, mass=-1.0, hbar=1.0, c=1.0)
