"""A Gaussian packet in position and momentum space, and the uncertainty floor."""

import numpy as np

from qmkit.fourier import fourier_transform, gaussian_packet, parseval_norms
from qmkit.grid import Grid1D, position, uncertainty

g = Grid1D(-40.0, 40.0, 2048)
for sigma in (0.5, 1.0, 2.0):
    psi = gaussian_packet(g, sigma, p0=1.5)
    phi = fourier_transform(psi)
    dx, dp = uncertainty(position(g), psi), phi.uncertainty()
    print(f"sigma = {sigma}: dX = {dx:.6f}, dP = {dp:.6f}, dX dP = {dx * dp:.10f}, <p> = {phi.mean():.6f}")

# Sum of two packets: the product rises above the floor.
psi = gaussian_packet(g, 1.0, x0=-4.0) + gaussian_packet(g, 1.0, x0=4.0)
phi = fourier_transform(psi)
print(f"\ntwo separated packets: dX dP = {uncertainty(position(g), psi) * phi.uncertainty():.4f}")
nx, np_ = parseval_norms(psi)
print(f"Parseval: position norm {nx:.12f}, momentum norm {np_:.12f}")
