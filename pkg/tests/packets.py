"""Random smooth wave packets: sums of a few modulated Gaussians."""

import numpy as np

from qmkit.grid import Grid1D, WaveFunction, normalize

PACKET_GRID = Grid1D(-40.0, 40.0, 2048)


def random_packet(rng, grid=PACKET_GRID, max_terms=3):
    x = grid.x
    values = np.zeros(grid.n_points, dtype=complex)
    for _ in range(rng.integers(1, max_terms + 1)):
        width = rng.uniform(0.5, 3.0)
        center = rng.uniform(-8.0, 8.0)
        kick = rng.uniform(-5.0, 5.0)
        amp = rng.normal() + 1j * rng.normal()
        values += amp * np.exp(-((x - center) ** 2) / (4 * width**2) + 1j * kick * x)
    return normalize(WaveFunction(grid, values))


def uncertainty_product(psi, hbar=1.0, method="fft"):
    """Delta X from the position grid times Delta P from the momentum samples."""
    from qmkit.fourier import fourier_transform
    from qmkit.grid import position, uncertainty

    return uncertainty(position(psi.grid), psi) * fourier_transform(psi, hbar, method=method).uncertainty()
