import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate, special

from qmkit.analytic import box_state
from qmkit.errors import ResolutionError
from qmkit.fourier import (
    box_momentum_rep, completeness_residual, delta_approximant, dirichlet_kernel, fourier_series,
    fourier_transform, gaussian_packet, inverse_fourier_transform, momentum_grid, parseval_norms,
    period_samples,
)
from qmkit.grid import Grid1D, WaveFunction, inner_product, normalize, position, uncertainty

from packets import PACKET_GRID, random_packet, uncertainty_product


# --- series -------------------------------------------------------------------------

def test_square_wave_series():
    _, f = period_samples(np.sign, 8192)
    fs = fourier_series(f, 9)
    k = np.arange(1, 10)
    oracle = 2 / (math.pi * k) * (1 - np.cos(k * math.pi))
    assert fs.b[0] == pytest.approx(4 / math.pi, abs=1e-3)
    assert np.allclose(fs.b, oracle, atol=1e-3)
    assert np.allclose(fs.a, 0.0, atol=1e-3)
    assert np.allclose(fs.b[1::2], 0.0, atol=1e-3)


def test_pure_harmonics():
    _, f = period_samples(lambda x: np.sin(3 * x), 64)
    fs = fourier_series(f, 5)
    expected = np.zeros(5)
    expected[2] = 1.0
    assert np.allclose(fs.b, expected, atol=1e-13)
    assert np.allclose(fs.a, 0.0, atol=1e-13)
    _, one = period_samples(lambda x: np.ones_like(x), 64)
    assert fourier_series(one, 4).a0 / 2 == pytest.approx(1.0)


def test_series_resolution_error():
    with pytest.raises(ResolutionError):
        fourier_series(np.zeros(30), 4)


def test_series_reconstruction_improves():
    tri = lambda x: np.abs(x)
    x, f = period_samples(tri, 4096)
    errs = [np.max(np.abs(fourier_series(f, K)(x) - f)) for K in (2, 8, 32, 128)]
    assert all(a > b for a, b in zip(errs, errs[1:]))


# --- transform ---------------------------------------------------------------------

@pytest.mark.parametrize("sigma", [0.5, 1.0, 2.0])
def test_gaussian_pair(sigma):
    g = Grid1D(-40.0, 40.0, 2048)
    psi = gaussian_packet(g, sigma)
    phi = fourier_transform(psi)
    assert phi.uncertainty() == pytest.approx(1 / (2 * sigma), rel=1e-2)
    assert uncertainty(position(g), psi) * phi.uncertainty() == pytest.approx(0.5, rel=1e-2)
    # the transform is itself a Gaussian of width hbar/2sigma
    s2 = 1 / (2 * sigma)
    shape = (2 * math.pi * s2**2) ** -0.25 * np.exp(-phi.p**2 / (4 * s2**2))
    assert np.allclose(np.abs(phi.values), shape, atol=1e-10)


def test_rectangle_transforms_to_sinc():
    n = 4
    chi = delta_approximant(n, Grid1D(-20.0, 20.0, 8001))
    rect = WaveFunction(chi.grid, chi.values / math.sqrt(n))  # height sqrt(n)
    phi = fourier_transform(rect, method="fft")
    p = phi.p
    with np.errstate(invalid="ignore", divide="ignore"):
        oracle = np.where(p == 0, 1 / math.sqrt(n), 2 * np.sin(p / (2 * n)) / p * math.sqrt(n)) / math.sqrt(2 * math.pi)
    window = np.abs(p) < 60
    assert np.max(np.abs(phi.values[window] - oracle[window])) < 1e-3


def test_round_trip(rng):
    psi = random_packet(rng)
    back = inverse_fourier_transform(fourier_transform(psi))
    assert np.max(np.abs(back.values - psi.values)) < 1e-6
    back2 = inverse_fourier_transform(fourier_transform(psi, method="fft"), method="fft")
    assert np.max(np.abs(back2.values - psi.values)) < 1e-12


@pytest.mark.parametrize("n_points", [256, 257, 1000])
def test_fft_path_matches_quadrature(rng, n_points):
    g = Grid1D(-30.0, 25.0, n_points)
    psi = random_packet(rng, g)
    slow = fourier_transform(psi, hbar=0.7)
    fast = fourier_transform(psi, hbar=0.7, method="fft")
    assert np.max(np.abs(slow.values - fast.values)) < 1e-10
    assert np.max(np.abs(inverse_fourier_transform(slow).values
                         - inverse_fourier_transform(slow, method="fft").values)) < 1e-10


def test_momentum_grid_layout():
    g = Grid1D(-1.0, 1.0, 8)
    p = momentum_grid(g, hbar=2.0)
    assert p[4] == 0.0
    assert np.allclose(np.diff(p), 2 * math.pi * 2.0 / (8 * g.dx))
    assert p[0] == pytest.approx(-math.pi * 2.0 / g.dx)


def test_leakage_warning():
    g = Grid1D(-1.0, 1.0, 64)
    with pytest.warns(UserWarning, match="leak"):
        fourier_transform(WaveFunction(g, np.ones(64)))


# --- box state in momentum space ----------------------------------------------------

def test_box_momentum_value_at_zero():
    oracle, _ = integrate.quad(lambda x: math.sqrt(2) * math.sin(math.pi * x), 0, 1)
    oracle /= math.sqrt(2 * math.pi)
    assert box_momentum_rep(1, 1.0, 0.0) == pytest.approx(oracle, rel=1e-12)
    assert abs(box_momentum_rep(1, 1.0, 0.0)) == pytest.approx(0.3592, abs=1e-4)


@pytest.mark.parametrize("n,L,p,hbar", [(1, 1.0, 2.5, 1.0), (2, 2.0, -1.3, 1.0), (3, 0.5, 40.0, 0.8),
                                        (2, 1.0, 2 * math.pi, 1.0)])
def test_box_momentum_against_quadrature(n, L, p, hbar):
    f = lambda x, part: part(math.sqrt(2 / L) * math.sin(n * math.pi * x / L) * np.exp(-1j * p * x / hbar))
    re, _ = integrate.quad(f, 0, L, args=(np.real,), limit=200)
    im, _ = integrate.quad(f, 0, L, args=(np.imag,), limit=200)
    oracle = (re + 1j * im) / math.sqrt(2 * math.pi * hbar)
    assert box_momentum_rep(n, L, p, hbar) == pytest.approx(oracle, rel=1e-9, abs=1e-12)


def test_box_momentum_normalized():
    p = np.linspace(-3000, 3000, 600001)
    dens = np.abs(box_momentum_rep(2, 1.0, p)) ** 2
    assert np.trapezoid(dens, p) == pytest.approx(1.0, abs=1e-4)


def test_box_momentum_matches_numeric_transform():
    g = Grid1D(-10.0, 11.0, 21001)
    psi = box_state(1, 1.0).sample(g)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        phi = fourier_transform(psi, method="fft")
    window = np.abs(phi.p) < 50
    assert np.max(np.abs(phi.values[window] - box_momentum_rep(1, 1.0, phi.p[window]))) < 1e-4


# --- delta approximants ---------------------------------------------------------------

def test_dirichlet_kernel():
    assert dirichlet_kernel(3, 0.0) == 6.0
    assert abs(dirichlet_kernel(1, math.pi)) < 1e-15
    assert dirichlet_kernel(2.5, 0.3) == pytest.approx(2 * math.sin(0.75) / 0.3)
    y = np.linspace(-math.pi, math.pi, 200001)
    prev = None
    for K in (1, 4, 16, 64):
        val = np.trapezoid(dirichlet_kernel(K, y), y) / (2 * math.pi)
        assert val == pytest.approx(2 / math.pi * special.sici(K * math.pi)[0], abs=1e-7)
        if prev is not None:
            assert abs(val - 1) < abs(prev - 1) * 1.5
        prev = val
    assert abs(prev - 1) < 1e-2


@pytest.mark.parametrize("n", [1, 4, 16])
def test_delta_unit_area(n):
    chi = delta_approximant(n)
    assert np.trapezoid(chi.values.real, chi.x) == pytest.approx(1.0, abs=1e-14)
    g = Grid1D(-3.0, 3.0, 6001)
    chi2 = delta_approximant(n, g)
    assert np.trapezoid(chi2.values.real, chi2.x) == pytest.approx(1.0, abs=1e-12)


def test_delta_sifting():
    moments = []
    for n in (1, 4, 16, 64):
        chi = delta_approximant(n)
        moments.append(np.trapezoid(chi.x**2 * chi.values.real, chi.x))
    assert all(a > b for a, b in zip(moments, moments[1:]))
    assert moments[-1] < 1e-4
    chi = delta_approximant(16)
    assert np.trapezoid(np.cos(chi.x) * chi.values.real, chi.x) == pytest.approx(1.0, abs=1e-3)


def test_delta_resolution_error():
    with pytest.raises(ResolutionError):
        delta_approximant(16, Grid1D(-1.0, 1.0, 21))


# --- completeness -----------------------------------------------------------------

def test_box_basis_completeness():
    g = Grid1D(0.0, 1.0, 2001)
    basis = [box_state(n, 1.0).sample(g) for n in range(1, 51)]
    test = normalize(g.sample(lambda x: np.exp(-((x - 0.5) / 0.08) ** 2)))
    assert completeness_residual(basis, test) < 1e-3
    assert completeness_residual(basis, basis[7]) < 1e-10
    odd_only = [b for i, b in enumerate(basis) if i % 2 == 1]
    # a mid-box symmetric Gaussian has no overlap with the antisymmetric states
    assert completeness_residual(odd_only, test) == pytest.approx(test.norm(), rel=1e-9)


# --- invariants --------------------------------------------------------------------

@given(st.integers(0, 2**31))
def test_parseval(seed):
    psi = random_packet(np.random.default_rng(seed))
    nx = psi.norm2()
    np_ = fourier_transform(psi, method="fft").norm2()
    assert np_ == pytest.approx(nx, abs=1e-6)


@given(st.integers(0, 2**31), st.integers(-40, 40))
def test_phase_shift_theorem(seed, steps):
    psi = random_packet(np.random.default_rng(seed))
    p = momentum_grid(psi.grid)
    p0 = steps * (p[1] - p[0])
    shifted = WaveFunction(psi.grid, psi.values * np.exp(1j * p0 * psi.x))
    a = fourier_transform(psi, method="fft")
    b = fourier_transform(shifted, method="fft")
    assert b.mean() - a.mean() == pytest.approx(p0, abs=1e-6)
    # on grid-aligned shifts the whole distribution moves by whole bins
    if steps > 0:
        assert np.allclose(b.density()[steps:], a.density()[:-steps], atol=1e-10)


def test_parseval_norms_quadrature(rng):
    nx, np_ = parseval_norms(random_packet(rng))
    assert np_ == pytest.approx(nx, abs=1e-6)


def test_uncertainty_floor_random_packets(rng):
    for _ in range(100):
        assert uncertainty_product(random_packet(rng)) >= 0.5 * (1 - 1e-6)
