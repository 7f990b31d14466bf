"""
Fourier series, the hbar-scaled Fourier transform, and delta-function approximants.

The momentum transform is evaluated as a direct quadrature sum

    psi(p_j) = dx / sqrt(2 pi hbar) * sum_n psi(x_n) exp(-i p_j x_n / hbar)

on the momentum grid p_j = (j - N//2) dp with dp = 2 pi hbar / (N dx).  With
that pairing the sum is a unitary DFT, so the inverse reconstructs the
samples to rounding error and Parseval holds exactly for the rectangle rule.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResolutionError, ShapeError
from .grid import Grid1D, WaveFunction, inner_product

_BLOCK = 256


@dataclass(frozen=True)
class FourierSeries:
    a0: float
    a: np.ndarray
    b: np.ndarray

    @property
    def K(self):
        return len(self.a)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        k = np.arange(1, self.K + 1)
        kx = np.multiply.outer(x, k)
        return self.a0 / 2.0 + np.cos(kx) @ self.a + np.sin(kx) @ self.b


def period_samples(func, n):
    """Sample ``func`` at n points x_j = -pi + 2 pi j / n (endpoint excluded)."""
    x = -math.pi + 2.0 * math.pi * np.arange(n) / n
    return x, np.asarray(func(x), dtype=float)


def fourier_series(samples, K):
    """Coefficients a_k, b_k of samples taken by :func:`period_samples`.

    On a periodic grid the trapezoid rule reduces to a plain sum.
    """
    f = np.asarray(samples, dtype=float)
    n = len(f)
    if n < 8 * K:
        raise ResolutionError(f"{n} samples cannot resolve {K} harmonics (need >= {8 * K})")
    x = -math.pi + 2.0 * math.pi * np.arange(n) / n
    w = 2.0 / n  # (1/pi) * (2 pi / n)
    k = np.arange(1, K + 1)
    kx = np.multiply.outer(k, x)
    a = w * (np.cos(kx) @ f)
    b = w * (np.sin(kx) @ f)
    return FourierSeries(a0=w * f.sum(), a=a, b=b)


@dataclass(frozen=True, eq=False)
class MomentumWaveFunction:
    """Momentum-space samples plus the position grid they were computed from."""

    p: np.ndarray
    values: np.ndarray
    grid: Grid1D
    hbar: float = 1.0

    @property
    def dp(self):
        return self.p[1] - self.p[0]

    def density(self):
        return np.abs(self.values) ** 2

    def norm2(self):
        return float(np.sum(self.density()) * self.dp)

    def mean(self):
        rho = self.density()
        return float(np.sum(self.p * rho) / np.sum(rho))

    def variance(self):
        rho = self.density()
        total = np.sum(rho)
        mean = np.sum(self.p * rho) / total
        return float(np.sum((self.p - mean) ** 2 * rho) / total)

    def uncertainty(self):
        return math.sqrt(self.variance())


def momentum_grid(grid, hbar=1.0):
    n = grid.n_points
    dp = 2.0 * math.pi * hbar / (n * grid.dx)
    return (np.arange(n) - n // 2) * dp


def _check_leakage(values):
    peak = np.max(np.abs(values))
    if peak > 0 and max(abs(values[0]), abs(values[-1])) > 1e-3 * peak:
        warnings.warn("wavefunction has not decayed at the grid boundary; transform will leak", stacklevel=3)


def fourier_transform(psi, hbar=1.0, method="quadrature"):
    """Momentum representation of ``psi``.

    ``method="quadrature"`` evaluates the sum directly (O(N^2), blocked to bound
    memory); ``method="fft"`` gives the same numbers through numpy's FFT.
    """
    grid = psi.grid
    _check_leakage(psi.values)
    p = momentum_grid(grid, hbar)
    x = grid.x
    pref = grid.dx / math.sqrt(2.0 * math.pi * hbar)
    if method == "quadrature":
        out = np.empty(len(p), dtype=complex)
        for start in range(0, len(p), _BLOCK):
            pb = p[start:start + _BLOCK]
            out[start:start + _BLOCK] = np.exp(-1j * np.multiply.outer(pb, x) / hbar) @ psi.values
        out *= pref
    elif method == "fft":
        n = grid.n_points
        idx = np.arange(n)
        h = n // 2
        shifted = psi.values * np.exp(2j * math.pi * h * idx / n)
        out = pref * np.exp(-1j * p * x[0] / hbar) * np.fft.fft(shifted)
    else:
        raise DomainError(f"unknown transform method {method!r}")
    return MomentumWaveFunction(p=p, values=out, grid=grid, hbar=hbar)


def inverse_fourier_transform(phi, method="quadrature"):
    grid, hbar, p = phi.grid, phi.hbar, phi.p
    x = grid.x
    pref = phi.dp / math.sqrt(2.0 * math.pi * hbar)
    if method == "quadrature":
        out = np.empty(len(x), dtype=complex)
        for start in range(0, len(x), _BLOCK):
            xb = x[start:start + _BLOCK]
            out[start:start + _BLOCK] = np.exp(1j * np.multiply.outer(xb, p) / hbar) @ phi.values
        out *= pref
    elif method == "fft":
        n = grid.n_points
        idx = np.arange(n)
        h = n // 2
        w = phi.values * np.exp(1j * p * x[0] / hbar)
        out = pref * n * np.fft.ifft(w) * np.exp(-2j * math.pi * h * idx / n)
    else:
        raise DomainError(f"unknown transform method {method!r}")
    return WaveFunction(grid, out)


def parseval_norms(psi, hbar=1.0):
    """(position norm^2, momentum norm^2) of ``psi``."""
    return psi.norm2(), fourier_transform(psi, hbar).norm2()


def gaussian_packet(grid, sigma, x0=0.0, p0=0.0, hbar=1.0):
    """(2 pi sigma^2)^(-1/4) exp(-(x-x0)^2 / 4 sigma^2) exp(i p0 x / hbar): |psi|^2 has variance sigma^2."""
    x = grid.x
    env = (2.0 * math.pi * sigma**2) ** -0.25 * np.exp(-((x - x0) ** 2) / (4.0 * sigma**2))
    return WaveFunction(grid, env * np.exp(1j * p0 * x / hbar))


def box_momentum_rep(n, L, p, hbar=1.0):
    """Momentum wavefunction of the n-th box state on [0, L]."""
    if n < 1:
        raise DomainError("box quantum number must be >= 1")
    p = np.asarray(p, dtype=float)
    c1 = -p / hbar + n * math.pi / L
    c2 = -p / hbar - n * math.pi / L

    def bracket(c):
        # (e^{iLc} - 1) / (ic), with its series where c L is tiny
        z = c * L
        small = np.abs(z) < 1e-6
        safe = np.where(small, 1.0, c)
        exact = (np.exp(1j * L * safe) - 1.0) / (1j * safe)
        series = L * (1.0 + 0.5j * z - z**2 / 6.0)
        return np.where(small, series, exact)

    out = (bracket(c1) - bracket(c2)) / (2j) * math.sqrt(1.0 / (math.pi * hbar * L))
    return out[()] if out.ndim == 0 else out


def dirichlet_kernel(K, y):
    """2 sin(K y) / y, equal to 2K at y = 0."""
    y = np.asarray(y, dtype=float)
    out = 2.0 * K * np.sinc(K * y / math.pi)
    return out[()] if out.ndim == 0 else out


def delta_approximant(n, grid=None, points_per_width=16):
    """Rectangle of unit area and width 1/n centred on 0.

    The edges sit on grid nodes and carry half the height, which makes the
    trapezoid integral exactly one.  If ``grid`` is given its nodes nearest to
    +-1/(2n) are used and the height is adjusted to the snapped width.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    half = 0.5 / n
    if grid is None:
        dx = (2.0 * half) / points_per_width
        m = int(round(2.0 / dx))
        grid = Grid1D(-m * dx, m * dx, 2 * m + 1)
    x = grid.x
    if 2.0 * half / grid.dx < 8:
        raise ResolutionError(f"width 1/{n} covered by fewer than 8 grid spacings")
    lo = int(np.argmin(np.abs(x + half)))
    hi = int(np.argmin(np.abs(x - half)))
    width = x[hi] - x[lo]
    values = np.zeros(grid.n_points)
    values[lo:hi + 1] = 1.0 / width
    values[lo] *= 0.5
    values[hi] *= 0.5
    return WaveFunction(grid, values)


def completeness_residual(basis, test):
    """|| test - sum_i <b_i|test> b_i || for an orthonormal ``basis``."""
    if not basis:
        return test.norm()
    grid = test.grid
    if any(b.grid != grid for b in basis):
        raise ShapeError("basis functions and test function live on different grids")
    projection = np.zeros(grid.n_points, dtype=complex)
    for b in basis:
        projection += inner_product(b, test) * b.values
    return WaveFunction(grid, test.values - projection).norm()
