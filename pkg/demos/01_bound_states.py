"""Bound states on a grid: particle in a box, then the harmonic oscillator.

Run with ``python3 demos/01_bound_states.py``.
"""

import numpy as np

from qmkit.analytic import box_state, sho_wavefunction
from qmkit.grid import Grid1D, assemble_hamiltonian, inner_product, solve_eigen

# A box of unit length in units where hbar = m = 1.  The finite-difference
# spectrum converges to n^2 pi^2 / 2 at second order in the spacing.
for points in (101, 401, 1601):
    g = Grid1D(0.0, 1.0, points)
    E1 = solve_eigen(assemble_hamiltonian(g, np.zeros(points)), 1).energies[0]
    exact = box_state(1, 1.0).energy
    print(f"box, {points:5d} points: E1 = {E1:.8f}  (exact {exact:.8f}, rel err {abs(E1 - exact) / exact:.1e})")

# The oscillator on a wide enough window.  The analytic states are built
# by repeated raising from the ground state; compare them with the grid.
g = Grid1D(-12.0, 12.0, 4001)
sp = solve_eigen(assemble_hamiltonian(g, 0.5 * g.x**2), 6)
print()
for n, E in enumerate(sp.energies):
    overlap = abs(inner_product(sp.states[n], sho_wavefunction(n).sample(g)))
    print(f"oscillator n={n}: E = {E:.6f}  (exact {n + 0.5})  |<grid|ladder>| = {overlap:.8f}")
