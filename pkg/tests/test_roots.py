"""Tests for eigenphase profiles and spectrum extraction."""

import numpy as np
import pytest

from ring_spectra import bc
from ring_spectra.dirac import DiracKernel, boundary_matrix_arrays
from ring_spectra.roots import SpectrumSlice, eigenphase_profile, find_spectrum
from ring_spectra.schrod import SchrodKernel


def test_profile_identity_at_matching_point():
    # U = B(mu*) makes W(mu*) = I: both phases vanish at that node
    mu0 = 1.0
    mu_star = 2.5
    u = bc.from_matrix(boundary_matrix_arrays(np.array([mu_star]), mu0)[0])
    grid = np.linspace(2.0, 3.0, 101)  # includes 2.5
    prof = eigenphase_profile(u, grid, DiracKernel(mu0))
    i = np.argmin(np.abs(grid - mu_star))
    assert np.max(np.abs(prof.phases[i])) < 1e-10
    # unwrapped tracks reassemble from wrapped phases and wrap counts
    assert np.allclose(prof.phases + 2 * np.pi * prof.wraps, prof.tracks)


def test_profile_crossings_dirac_periodic():
    # tracks cross zero at +-sqrt((2 pi n)^2 + 1), n = 0, 1, 2
    kernel = DiracKernel(1.0)
    u = bc.named_family("dpp", 0.0)
    grid = np.linspace(-14.0, 14.0, 4001)
    prof = eigenphase_profile(u, grid, kernel)
    expected = sorted(
        {s * np.sqrt((2 * np.pi * n) ** 2 + 1.0) for n in range(3) for s in (+1, -1)}
    )
    for mu_star in expected:
        i = np.argmin(np.abs(grid - mu_star))
        window = prof.phases[max(0, i - 2) : i + 3]  # wrapped: crossing means ~0
        assert np.min(np.abs(window)) < 0.1


def test_profile_crossings_schrod_quasi_periodic():
    u = bc.named_family("qp", 0.0)
    grid = np.linspace(0.0, 140.0, 4001)
    prof = eigenphase_profile(u, grid, SchrodKernel())
    for n in range(3):
        e_star = np.pi**2 * (n + 0.5) ** 2
        i = np.argmin(np.abs(grid - e_star))
        assert np.min(np.abs(prof.phases[max(0, i - 2) : i + 3])) < 0.1


def test_profile_rejects_bad_grid():
    u = bc.named_family("qp", 0.0)
    with pytest.raises(ValueError):
        eigenphase_profile(u, np.array([1.0, 1.0, 2.0]), SchrodKernel())


def test_find_spectrum_quasi_periodic_window():
    s = find_spectrum(bc.named_family("qp", 0.0), (0.0, 500.0), SchrodKernel())
    expect = np.pi**2 * (np.arange(7) + 0.5) ** 2
    assert len(s.roots) == 7
    assert all(r.multiplicity == 1 for r in s.roots)
    assert np.max(np.abs(s.expanded() - expect) / expect) < 1e-10


def test_find_spectrum_mass_mode_in_window():
    # identity condition admits mu = +mu0; window (0.5, 1.5] catches exactly
    # it, localized up to the mass-mode snap width (1e-12)
    s = find_spectrum(bc.from_matrix(np.eye(2)), (0.5, 1.5), DiracKernel(1.0))
    assert len(s.roots) == 1
    assert s.roots[0].x == pytest.approx(1.0, abs=3e-12)
    assert s.roots[0].multiplicity == 1


def test_find_spectrum_dirac_pseudo_periodic_alpha():
    kernel = DiracKernel(1.0)
    for alpha in (0.0, 1.0):
        expect = []
        for n in range(-4, 5):
            val = np.sqrt((2 * np.pi * n + alpha) ** 2 + 1.0)
            if val <= 15.0:
                expect.extend([val, -val])
        expect = np.sort(expect)
        got = find_spectrum(bc.named_family("dpp", alpha), (-15.0, 15.0), kernel).expanded()
        assert len(got) == len(expect)
        assert np.max(np.abs(got - expect)) < 1e-9


def test_find_spectrum_schrod_periodic_multiplicities():
    # periodic conditions: e = 0 simple (constant), e = (2 pi n)^2 doubly degenerate
    s = find_spectrum(bc.named_family("pp", 0.0), (-10.0, 200.0), SchrodKernel())
    got = [(r.x, r.multiplicity) for r in s.roots]
    assert len(got) == 3
    assert got[0][0] == pytest.approx(0.0, abs=1e-10) and got[0][1] == 1
    assert got[1][0] == pytest.approx(4 * np.pi**2, abs=1e-9) and got[1][1] == 2
    assert got[2][0] == pytest.approx(16 * np.pi**2, abs=1e-9) and got[2][1] == 2


def test_find_spectrum_massless_dirac():
    # massless periodic spinor conditions: mu = 2 pi n, the zero mode doubly so
    s = find_spectrum(bc.named_family("dpp", 0.0), (-7.0, 7.0), DiracKernel(0.0))
    got = [(round(r.x, 9), r.multiplicity) for r in s.roots]
    two_pi = round(2 * np.pi, 9)
    assert got == [(-two_pi, 2), (0.0, 2), (two_pi, 2)]


def test_find_spectrum_massless_chiral_is_asymmetric():
    # massless chiral conditions: F = e^{2i a} - e^{-2i mu}, so the
    # spectrum is the shifted ladder mu = pi n - a, not symmetric in mu
    alpha = 0.8
    s = find_spectrum(bc.named_family("chiral", alpha), (-10.0, 10.0), DiracKernel(0.0))
    expect = np.sort(
        [np.pi * n - alpha for n in range(-3, 4) if abs(np.pi * n - alpha) <= 10]
    )
    assert len(s.expanded()) == len(expect)
    assert np.max(np.abs(s.expanded() - expect)) < 1e-10
    assert all(r.multiplicity == 1 for r in s.roots)


def test_window_is_half_open():
    # boundary roots are resolved up to fp fuzz at the tol_root scale
    kernel = SchrodKernel()
    u = bc.named_family("qp", 0.0)
    e0 = np.pi**2 * 0.25
    s = find_spectrum(u, (e0, 100.0), kernel)  # root exactly at lo excluded
    assert all(r.x > e0 for r in s.roots)
    assert len(s.roots) == 2  # n = 1, 2; the n = 0 root sits at lo
    s = find_spectrum(u, (0.0, e0), kernel)  # root exactly at hi included
    assert len(s.roots) == 1
    assert s.roots[0].x == pytest.approx(e0, abs=1e-10)


def test_residual_contract():
    rng = np.random.default_rng(51)
    kernel = DiracKernel(1.0)
    for _ in range(20):
        s = find_spectrum(bc.random_unitary_bc(rng), (-8.0, 8.0), kernel)
        assert all(r.residual < 1e-9 for r in s.roots)


def test_grid_refinement_does_not_move_roots():
    rng = np.random.default_rng(52)
    kernel = SchrodKernel()
    for _ in range(10):
        u = bc.random_unitary_bc(rng)
        a = find_spectrum(u, (-20.0, 80.0), kernel, density=1024).expanded()
        b = find_spectrum(u, (-20.0, 80.0), kernel, density=2048).expanded()
        assert len(a) == len(b)
        if len(a):
            assert np.max(np.abs(a - b)) < 1e-10


def test_root_set_equal_on_conjugation_orbit():
    rng = np.random.default_rng(53)
    kernel = DiracKernel(1.0)
    for _ in range(10):
        u = bc.random_unitary_bc(rng)
        lam = rng.uniform(0, np.pi)
        a = find_spectrum(u, (-8.0, 8.0), kernel).expanded()
        b = find_spectrum(bc.conjugate_orbit(u, lam), (-8.0, 8.0), kernel).expanded()
        assert len(a) == len(b)
        if len(a):
            assert np.max(np.abs(a - b)) < 1e-10


def test_find_spectrum_validation():
    u = bc.named_family("qp", 0.0)
    kernel = SchrodKernel()
    with pytest.raises(ValueError):
        find_spectrum(u, (2.0, 1.0), kernel)
    with pytest.raises(ValueError):
        find_spectrum(u, (0.0, 1.0), kernel, density=32)
    with pytest.raises(ValueError):
        find_spectrum(u, (0.0, np.inf), kernel)


def test_spectrum_slice_expansion():
    s = SpectrumSlice(
        window=(0.0, 1.0),
        roots=(),
        grid_points=100,
        theory="schrod",
    )
    assert s.expanded().size == 0
