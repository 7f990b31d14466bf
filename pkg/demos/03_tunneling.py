"""Tunneling through a rectangular barrier, from electrons to tea cups."""

import math

import numpy as np

from qmkit.constants import SI
from qmkit.scattering import (
    PiecewisePotential, barrier_transmission, barrier_transmission_wide, transfer_matrix_scatter,
)

eV = SI.eV

# A 6 eV electron meets an 8 eV barrier one angstrom wide.
r = barrier_transmission(6 * eV, 8 * eV, 0.5e-10, SI.m_e, SI.hbar)
print(f"electron: T = {r.T:.4f}, R = {r.R:.4f}")

# Stretch the wall to 1 cm and T only survives in log space.  The worked
# exercise keeps the electron mass; a real 0.1 kg cup is far worse still.
wall = barrier_transmission(6 * eV, 8 * eV, 0.005, SI.m_e, SI.hbar)
cup = barrier_transmission(6 * eV, 8 * eV, 0.005, 0.1, SI.hbar)
print(f"1 cm wall, electron mass: log10 T = {wall.log10T:.4e}")
print(f"1 cm wall, 0.1 kg:        log10 T = {cup.log10T:.4e}")

# Transmission against energy for a natural-unit barrier, with the
# general transfer-matrix solver alongside the closed form.
print("\n   E      T(closed)      T(transfer)")
for E in np.linspace(0.25, 4.0, 8):
    a = barrier_transmission(E, 2.0, 1.0).T
    b = transfer_matrix_scatter(PiecewisePotential.barrier(2.0, 1.0), E).T
    print(f"{E:5.2f}  {a:.12f}  {b:.12f}")

# Deep in the tunneling regime the simple exponential estimate takes over.
for a_half in (1.0, 2.0, 4.0, 8.0):
    exact = barrier_transmission(0.5, 1.0, a_half).T
    wide = barrier_transmission_wide(0.5, 1.0, a_half).T
    print(f"half width {a_half}: exact/wide = {exact / wide:.6f}")

# A double barrier is perfectly transparent at its resonances.
double = PiecewisePotential([-1.5, -0.5, 0.5, 1.5], [0.0, 5.0, 0.0, 5.0, 0.0])
Es = np.linspace(0.05, 4.0, 4000)
Ts = np.array([transfer_matrix_scatter(double, E).T for E in Es])
print(f"\ndouble barrier: max T on the scan = {Ts.max():.6f} at E = {Es[np.argmax(Ts)]:.4f}")
