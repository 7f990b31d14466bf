"""Spin-1/2: measurement along an arbitrary axis and Larmor precession."""

import math

import numpy as np

from qmkit.constants import GAMMA_E, SI
from qmkit.spin import Direction, UP, larmor_quantum, measure_spin, zeeman_splitting

# Spin up along z, measured along an axis tilted by 60 degrees.
m = measure_spin(UP, Direction(math.pi / 3, 0.0))
print(f"P(+) = {m.p_plus:.4f}, P(-) = {m.p_minus:.4f}")

# An electron prepared along x precesses about a field along z.
B = 1e-3
period = 2 * math.pi / (GAMMA_E * B)
t = np.linspace(0.0, period, 5)
S = larmor_quantum(Direction.axis("x"), -GAMMA_E, B, t, hbar=SI.hbar).expectations / (0.5 * SI.hbar)
for ti, s in zip(t, S):
    print(f"t = {ti:.3e} s: <S>/(hbar/2) = ({s[0]:+.3f}, {s[1]:+.3f}, {s[2]:+.3f})")

z = zeeman_splitting(0.15)
print(f"\nZeeman splitting at 0.15 T: {z.delta_E:.3e} J, photon frequency {z.frequency / 1e9:.3f} GHz")
