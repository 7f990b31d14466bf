"""
Catalogue of worked exercises, each paired with an independent oracle.

Every entry has a ``compute`` function that goes through the library and an
``oracle`` function that gets the same number another way: plain arithmetic
with rounded textbook constants, quadrature, a brute-force linear solve or
an enumeration.  The oracle outputs are frozen in ``exercise_oracles.json``;
the harness checks that the oracles still reproduce their frozen values and
that the library agrees with them within each entry's tolerance.

Regenerate the frozen file with ``python -m qmkit.exercises --freeze``.
"""

import argparse
import json
import math
import time
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path

import numpy as np
from scipy import integrate, optimize

from . import analytic, bands, fourier, grid, manybody, quanta, scattering, spin
from .constants import SI

ORACLE_FILE = Path(__file__).with_name("exercise_oracles.json")

# rounded constants as quoted in textbooks; the oracles use these on purpose
H_TXT = 6.626e-34
HBAR_TXT = 1.0546e-34
C_TXT = 3e8
ME_TXT = 9.109e-31
MP_TXT = 1.67e-27
MN_TXT = 1.675e-27
EV_TXT = 1.602e-19
KB_EV_TXT = 8.62e-5

eV = SI.eV


@dataclass(frozen=True)
class Exercise:
    id: str
    chapter: int
    title: str
    compute: object
    oracle: object
    rtol: float = 0.0
    atol: float = 0.0


@dataclass(frozen=True)
class ExerciseResult:
    id: str
    chapter: int
    title: str
    computed: float
    oracle: float
    frozen: float | None
    deviation: float
    passed: bool
    seconds: float


# --- helpers used by oracles --------------------------------------------------

def _barrier_4x4(E, V, a, m, hbar):
    """Match psi and psi' at x = -a and x = a by a dense linear solve.

    Unknowns (B1, C, D, A3) with psi = e^{ikx} + B1 e^{-ikx} on the left,
    C e^{mu x} + D e^{-mu x} inside, A3 e^{ikx} on the right.
    """
    k = math.sqrt(2 * m * E) / hbar
    mu = math.sqrt(2 * m * (V - E)) / hbar
    e = lambda z: complex(np.exp(z))
    M = np.array([
        [-e(1j * k * a), e(-mu * a), e(mu * a), 0],
        [1j * k * e(1j * k * a), mu * e(-mu * a), -mu * e(mu * a), 0],
        [0, e(mu * a), e(-mu * a), -e(1j * k * a)],
        [0, mu * e(mu * a), -mu * e(-mu * a), -1j * k * e(1j * k * a)],
    ], dtype=complex)
    rhs = np.array([e(-1j * k * a), 1j * k * e(-1j * k * a), 0, 0], dtype=complex)
    sol = np.linalg.solve(M, rhs)
    return abs(sol[3]) ** 2


def _step_2x2(E, V, m=1.0, hbar=1.0):
    k1 = math.sqrt(2 * m * E) / hbar
    k2 = math.sqrt(2 * m * (E - V)) / hbar
    # 1 + B = A and i k1 (1 - B) = i k2 A
    sol = np.linalg.solve(np.array([[-1, 1], [k1, k2]], dtype=float), np.array([1, k1], dtype=float))
    return k2 / k1 * sol[1] ** 2


def _inversion_parity(seq):
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def _rng(seed=20240611):
    return np.random.default_rng(seed)


# --- library-side computations ------------------------------------------------

def _box_fd_E1():
    g = grid.Grid1D(0.0, 1.0, 2001)
    H = grid.assemble_hamiltonian(g, np.zeros(g.n_points))
    return grid.solve_eigen(H, 1).energies[0]


def _box_mean_x():
    g = grid.Grid1D(0.0, 1.0, 2001)
    return grid.expectation(grid.position(g), analytic.box_state(1, 1.0).sample(g))


def _uniform_x2():
    g = grid.Grid1D(-0.5, 0.5, 2001)
    psi = grid.WaveFunction(g, np.ones(g.n_points))
    X = grid.position(g)
    return grid.expectation(X @ X, psi).real


def _box_quarter():
    g = grid.Grid1D(0.0, 1.0, 2001)
    return grid.position_probability(analytic.box_state(1, 1.0).sample(g), 0.0, 0.25)


def _ehrenfest_rhs():
    g = grid.Grid1D(-12.0, 12.0, 4001)
    spec = grid.solve_eigen(grid.assemble_hamiltonian(g, 0.5 * g.x**2), 2)
    target = (analytic.sho_wavefunction(0).sample(g) + analytic.sho_wavefunction(1).sample(g)) / math.sqrt(2.0)
    coeffs = [grid.inner_product(s, target) for s in spec.states]
    pair = grid.ehrenfest_check(spec, coeffs, grid.position(g), 0.7, 1e-4)
    return pair.rhs.real


def _square_wave_b1():
    x, f = fourier.period_samples(np.sign, 4096)
    return fourier.fourier_series(f, 5).b[0]


def _gaussian_sigma_p():
    g = grid.Grid1D(-40.0, 40.0, 2048)
    phi = fourier.fourier_transform(fourier.gaussian_packet(g, 1.0))
    return phi.uncertainty()


def _delta_sifting():
    chi = fourier.delta_approximant(16)
    return float(np.sum(chi.grid.weights * np.cos(chi.grid.x) * chi.values.real))


def _finite_well_ground():
    states = scattering.finite_well_bound_states(2e4, 1.0)
    return states[0].energy + 2e4


def _direction_eigs():
    rng = _rng()
    worst = 0.0
    for _ in range(20):
        d = spin.Direction(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        ev = spin.hermitian_eigvals(spin.spin_direction_operator(d))
        worst = max(worst, abs(ev[0] + 0.5), abs(ev[1] - 0.5))
    return worst


def _pauli_random():
    rng = _rng()
    worst = 0.0
    for _ in range(20):
        lhs, rhs = spin.pauli_product_check(rng.normal(size=3), rng.normal(size=3))
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def _jplus_half():
    s = spin.angular_momentum_matrices(0.5)
    out = spin.ladder_operators(s["J_x"], s["J_y"], s["J_z"])
    return float(np.abs(out["J_plus"] - np.array([[0, 1], [0, 0]])).max())


def _larmor_quarter():
    return float(spin.larmor_classical([1.0, 0.0, 0.0], 1.0, 1.0, math.pi / 2)[1])


def _larmor_quarter_ode():
    # dS/dt = gamma S x B with B = z-hat, integrated numerically
    f = lambda t, S: np.cross(S, [0.0, 0.0, 1.0])
    sol = integrate.solve_ivp(f, (0, math.pi / 2), [1.0, 0.0, 0.0], rtol=1e-12, atol=1e-12)
    return float(sol.y[1, -1])


def _antisym_sign_error():
    st = manybody.antisymmetrize("abc")
    w = 1 / math.sqrt(6)
    return max(abs(amp - _inversion_parity(k) * w) for k, amp in st.terms.items())


def _sphere_inversion():
    R = 215.0
    N = manybody.lattice_state_count(R)
    # the lattice energy of the last filled state is proportional to R^2;
    # the continuum formula predicts it from N
    R_formula = (3.0 * N / math.pi) ** (1.0 / 3.0)
    return (R / R_formula) ** 2


def _first_gap_growth():
    widths = []
    for b in (0.1, 0.2, 0.3, 0.4, 0.5):
        g = bands.kp_bands(bands.KPParams(1.0, b, 10.0), 10.0).band_gaps
        widths.append(g[0][1] - g[0][0])
    return sum(1 for w0, w1 in zip(widths, widths[1:]) if w1 > w0)


def _kp_free_limit():
    p = bands.KPParams(1.0, 0.3, 0.0)
    E = np.linspace(0.01, 60, 5000)
    return float(np.abs(bands.kp_dispersion(E, p) - np.cos(np.sqrt(2 * E) * p.c)).max())


def _chem_midpoint():
    return manybody.solve_chemical_potential([(0.0, 1), (1.0, 1)], 1, 0.5, "fd", k_B=1.0)


def _double_barrier_resonance():
    """Peak transmission of a symmetric double barrier; a resonance reaches T = 1."""
    pot = scattering.PiecewisePotential((0.0, 0.5, 2.5, 3.0), (0.0, 5.0, 0.0, 5.0, 0.0))
    T = lambda e: scattering.transfer_matrix_scatter(pot, e).T
    E = np.linspace(0.2, 4.8, 2000)
    i = int(np.argmax([T(e) for e in E]))
    res = optimize.minimize_scalar(lambda e: -T(e), bounds=(E[max(i - 1, 0)], E[min(i + 1, len(E) - 1)]),
                                   method="bounded", options={"xatol": 1e-12})
    return -res.fun


# --- the catalogue ------------------------------------------------------------

CATALOGUE = [
    # chapter 1: photons and matter waves
    Exercise("1.photon-energy", 1, "photon energy at 450 THz (J)",
             lambda: quanta.photon_props(450e12).energy, lambda: H_TXT * 450e12, rtol=1e-3),
    Exercise("1.photon-wavelength", 1, "photon wavelength at 450 THz (m)",
             lambda: quanta.photon_props(450e12).wavelength, lambda: C_TXT / 450e12, rtol=1e-2),
    Exercise("1.2", 1, "red photons carrying 1 kg m/s",
             lambda: 1.0 / quanta.photon_props(450e12).momentum, lambda: 1.0 / (H_TXT * 450e12 / C_TXT), rtol=1e-2),
    Exercise("1.4", 1, "electron wavelength at 0.727 m/s (m)",
             lambda: quanta.matter_wave(SI.m_e, 0.727).wavelength, lambda: 0.1 * 0.01 / 1.0, rtol=1e-2),
    Exercise("1.proton-wavelength", 1, "proton wavelength at 1000 m/s (m)",
             lambda: quanta.matter_wave(SI.m_p, 1000.0).wavelength, lambda: H_TXT / (MP_TXT * 1000.0), rtol=1e-2),
    Exercise("1.5", 1, "silver photo-electron energy at 2e15 Hz (eV)",
             lambda: quanta.photoelectric_kinetic(2e15, 4.6), lambda: 4.136e-15 * 2e15 - 4.6, rtol=1e-2),
    Exercise("1.5-threshold", 1, "silver threshold frequency (Hz)",
             lambda: quanta.threshold_frequency(4.6), lambda: 4.6 / 4.136e-15, rtol=1e-2),
    Exercise("1.fringes", 1, "double-slit fringe spacing (m)",
             lambda: quanta.fringe_spacing(500e-9, 2.0, 1e-4), lambda: 500e-9 * 2.0 / 1e-4, rtol=1e-12),
    Exercise("1.light-speed", 1, "1/sqrt(mu0 eps0) (m/s)",
             lambda: quanta.light_speed_check(), lambda: 2.99792458e8, rtol=1e-3),
    # chapter 2: particle in a box
    Exercise("2.4", 2, "electron in 10 nm box, E_2 (eV)",
             lambda: analytic.box_state(2, 1e-8, SI.m_e, SI.hbar).energy / eV,
             lambda: 4 * HBAR_TXT**2 * math.pi**2 / (2 * ME_TXT * 1e-16) / EV_TXT, rtol=1e-2),
    Exercise("2.5", 2, "neutron in 1 fm box, E_3 - E_1 (eV)",
             lambda: (analytic.box_state(3, 1e-15, SI.m_n, SI.hbar).energy
                      - analytic.box_state(1, 1e-15, SI.m_n, SI.hbar).energy) / eV,
             lambda: 8 * HBAR_TXT**2 * math.pi**2 / (2 * MN_TXT * 1e-30) / EV_TXT, rtol=1e-2),
    Exercise("2.box-fd", 2, "finite-difference box ground energy, hbar = m = L = 1",
             _box_fd_E1, lambda: math.pi**2 / 2, rtol=1e-3),
    Exercise("2.box3d", 2, "electron in 1 nm cube, (1,1,1) level (eV)",
             lambda: analytic.box3d_energy(1, 1, 1, 1e-9, SI.m_e, SI.hbar) / eV,
             lambda: 3 * HBAR_TXT**2 * math.pi**2 / (2 * ME_TXT * 1e-18) / EV_TXT, rtol=1e-2),
    # chapter 5: oscillator
    Exercise("5.uncertainty-n1", 5, "oscillator level 1, dX dP / hbar",
             lambda: analytic.sho_uncertainties(1)["product"],
             lambda: math.sqrt(
                 integrate.quad(lambda x: x**2 * (math.sqrt(2) * x * math.pi**-0.25 * math.exp(-x * x / 2)) ** 2, -np.inf, np.inf)[0]
                 * integrate.quad(lambda x: (math.sqrt(2) * math.pi**-0.25 * (1 - x * x) * math.exp(-x * x / 2)) ** 2, -np.inf, np.inf)[0]),
             rtol=1e-9),
    # chapter 6: hydrogen
    Exercise("6.E0", 6, "hydrogen binding energy (eV)",
             lambda: SI.rydberg_energy / eV, lambda: 13.6, rtol=2e-3),
    Exercise("6.bohr-radius", 6, "Bohr radius (m)",
             lambda: SI.bohr_radius, lambda: 0.529e-10, rtol=2e-3),
    Exercise("6.1", 6, "hydrogen 4 -> 3 wavelength (m)",
             lambda: quanta.rydberg_wavelength(3, 4),
             lambda: H_TXT * C_TXT / (13.6 * (1 / 9 - 1 / 16) * EV_TXT), rtol=1e-2),
    Exercise("6.6", 6, "He+ ground energy (eV)",
             lambda: analytic.hydrogen_state(1, 0, 0, Z=2).energy / eV, lambda: -13.6 * 4, rtol=1e-2),
    Exercise("6.degeneracy", 6, "hydrogen n = 3 degeneracy",
             lambda: analytic.hydrogen_degeneracy(3),
             lambda: sum(1 for l in range(3) for m in range(-l, l + 1)), rtol=0.0),
    Exercise("6.muon-energy", 6, "muonic atom binding energy (eV)",
             lambda: analytic.mass_scaled_atom(200)["E0"] / eV, lambda: 13.6 * 200, rtol=1e-2),
    Exercise("6.muon-radius", 6, "muonic atom radius (m)",
             lambda: analytic.mass_scaled_atom(200)["a"], lambda: 0.529e-10 / 200, rtol=1e-2),
    # chapter 7: Fourier
    Exercise("7.4", 7, "square wave, first sine coefficient",
             _square_wave_b1, lambda: 4 / math.pi, rtol=1e-3),
    Exercise("7.box-momentum", 7, "box ground state at p = 0",
             lambda: float(abs(fourier.box_momentum_rep(1, 1.0, 0.0))),
             lambda: integrate.quad(lambda x: math.sqrt(2) * math.sin(math.pi * x), 0, 1)[0] / math.sqrt(2 * math.pi),
             rtol=1e-10),
    Exercise("7.gaussian", 7, "Gaussian sigma = 1, momentum spread",
             _gaussian_sigma_p, lambda: 0.5, rtol=1e-2),
    Exercise("7.delta", 7, "sifting cos(x) with the n = 16 rectangle",
             _delta_sifting, lambda: 32 * math.sin(1 / 32), rtol=1e-5),
    # chapter 8: expectation values
    Exercise("8.box-mean", 8, "box ground state <X>, L = 1",
             _box_mean_x, lambda: integrate.quad(lambda x: 2 * x * math.sin(math.pi * x) ** 2, 0, 1)[0], rtol=1e-6),
    Exercise("8.2", 8, "uniform state on [-1/2, 1/2], <X^2>",
             _uniform_x2, lambda: integrate.quad(lambda x: x * x, -0.5, 0.5)[0], rtol=1e-4),
    Exercise("8.box-quarter", 8, "box ground state, P(0 < x < L/4)",
             _box_quarter, lambda: integrate.quad(lambda x: 2 * math.sin(math.pi * x) ** 2, 0, 0.25)[0], rtol=1e-4),
    Exercise("8.ehrenfest", 8, "oscillator (|0>+|1>)/sqrt2, d<X>/dt at t = 0.7",
             _ehrenfest_rhs, lambda: -math.sin(0.7) / math.sqrt(2), rtol=1e-4),
    # chapter 9: scattering
    Exercise("9.mu", 9, "decay constant, E = 6 eV under V = 8 eV (1/m)",
             lambda: scattering.wavenumbers(6 * eV, 8 * eV, SI.m_e, SI.hbar).value,
             lambda: math.sqrt(2 * ME_TXT * 2 * EV_TXT) / HBAR_TXT, rtol=1e-3),
    Exercise("9.1", 9, "electron through 1 angstrom barrier, T",
             lambda: scattering.barrier_transmission(6 * eV, 8 * eV, 0.5e-10, SI.m_e, SI.hbar).T,
             lambda: _barrier_4x4(6 * EV_TXT, 8 * EV_TXT, 0.5e-10, ME_TXT, HBAR_TXT), rtol=5e-3),
    Exercise("9.2", 9, "tea cup through 1 cm wall, log10 T",
             lambda: scattering.barrier_transmission(6 * eV, 8 * eV, 0.005, SI.m_e, SI.hbar).log10T,
             lambda: (math.log(16 * 0.75 * 0.25) - 4 * math.sqrt(2 * ME_TXT * 2 * EV_TXT) / HBAR_TXT * 0.005) / math.log(10),
             rtol=1e-3),
    Exercise("9.3", 9, "2 keV proton on a 10 V step, R",
             lambda: scattering.step_scatter(2000 * eV, 10 * eV, SI.m_p, SI.hbar).R,
             lambda: ((1 - math.sqrt(0.995)) / (1 + math.sqrt(0.995))) ** 2, rtol=1e-2),
    Exercise("9.step", 9, "step E = 2, V = 1, T",
             lambda: scattering.step_scatter(2.0, 1.0).T, lambda: _step_2x2(2.0, 1.0), rtol=1e-10),
    Exercise("9.wide", 9, "wide-barrier formula at mu a = 3, E/V = 1/2",
             lambda: scattering.barrier_transmission_wide(1.0, 2.0, 3 / math.sqrt(2)).T,
             lambda: 16 * 0.25 * math.exp(-12), rtol=1e-12),
    Exercise("9.wide-ratio", 9, "exact over wide-barrier T at mu a = 3",
             lambda: scattering.barrier_transmission(1.0, 2.0, 3 / math.sqrt(2)).T
             / scattering.barrier_transmission_wide(1.0, 2.0, 3 / math.sqrt(2)).T,
             lambda: _barrier_4x4(1.0, 2.0, 3 / math.sqrt(2), 1.0, 1.0) / (16 * 0.25 * math.exp(-12)), rtol=1e-6),
    Exercise("9.double-barrier", 9, "double barrier reaches a transmission resonance",
             _double_barrier_resonance, lambda: 1.0, rtol=1e-2),
    Exercise("9.6", 9, "deep finite well ground level above the bottom, V = 2e4",
             _finite_well_ground, lambda: math.pi**2 / 8, rtol=2e-2),
    # chapter 10: spin
    Exercise("10.5", 10, "spin along 20 random axes, eigenvalue error",
             _direction_eigs, lambda: 0.0, atol=1e-12),
    Exercise("10.larmor", 10, "quarter Larmor turn from x, S_y",
             _larmor_quarter, _larmor_quarter_ode, rtol=1e-8),
    Exercise("10.6-energy", 10, "Zeeman splitting at 0.15 T (J)",
             lambda: spin.zeeman_splitting(0.15).delta_E, lambda: 1.76e11 * 0.15 * HBAR_TXT, rtol=1e-2),
    Exercise("10.6", 10, "Zeeman photon frequency at 0.15 T (Hz)",
             lambda: spin.zeeman_splitting(0.15).frequency, lambda: 1.76e11 * 0.15 * HBAR_TXT / H_TXT, rtol=1e-2),
    Exercise("10.7", 10, "Pauli product identity, 20 random vector pairs",
             _pauli_random, lambda: 0.0, atol=1e-12),
    Exercise("10.9", 10, "spin-1/2 raising operator", _jplus_half, lambda: 0.0, atol=1e-15),
    # chapter 11: identical particles
    Exercise("11.lithium", 11, "three-fermion antisymmetrization sign pattern",
             _antisym_sign_error, lambda: 0.0, atol=1e-15),
    Exercise("11.5", 11, "four bosons, symmetrized weight",
             lambda: abs(next(iter(manybody.symmetrize("abcd").terms.values()))),
             lambda: 1 / math.sqrt(len(set(permutations("abcd")))), rtol=1e-14),
    Exercise("11.5-repeat", 11, "bosons a, a, b, symmetrized weight",
             lambda: abs(next(iter(manybody.symmetrize("aab").terms.values()))),
             lambda: 1 / math.sqrt(len(set(permutations("aab")))), rtol=1e-14),
    Exercise("11.6", 11, "two fermions in levels 0 and 1, energy / hbar omega",
             lambda: manybody.two_oscillator_eigen(0, 1).energy, lambda: 0.5 + 1.5, rtol=1e-15),
    Exercise("11.8", 11, "Fermi energy at 1e27 electrons per m^3 (eV)",
             lambda: manybody.fermi_energy(1e27, 1.0) / eV,
             lambda: HBAR_TXT**2 / (2 * ME_TXT) * (3 * math.pi**2 * 1e27) ** (2 / 3) / EV_TXT, rtol=1e-2),
    Exercise("11.8-count", 11, "lattice count vs continuum Fermi energy, about 1e7 states",
             _sphere_inversion, lambda: 1.0, rtol=1e-2),
    # chapter 12: statistics and bands
    Exercise("12.3", 12, "sun surface, hydrogen 2s/1s population ratio",
             lambda: manybody.boltzmann_ratio(SI.rydberg_energy / eV * 0.75, 0.0, 5800.0),
             lambda: math.exp(-13.6 * 0.75 / (5800 * KB_EV_TXT)), rtol=2e-2),
    Exercise("12.fd-mb", 12, "relative FD vs MB gap at (E - mu)/kT = 5",
             lambda: abs(manybody.occupation(5.0, manybody.OccupationModel("fd", 1.0, 0.0, 1.0))
                         - manybody.occupation(5.0, manybody.OccupationModel("mb", 1.0, 0.0, 1.0))) / math.exp(-5),
             lambda: abs(1 / (math.exp(5) + 1) - math.exp(-5)) / math.exp(-5), rtol=1e-10),
    Exercise("12.mu-midpoint", 12, "two levels, one fermion, kT = 1/2: mu",
             _chem_midpoint, lambda: 0.5, rtol=1e-9),
    Exercise("12.4", 12, "Kronig-Penney with V = 0 equals cos(kc)", _kp_free_limit, lambda: 0.0, atol=1e-12),
    Exercise("12.gap-growth", 12, "first gap widens with barrier width (rising steps of 4)",
             _first_gap_growth, lambda: 4, rtol=0.0),
]


def load_frozen():
    if not ORACLE_FILE.exists():
        return {}
    return json.loads(ORACLE_FILE.read_text())


def freeze_oracles(path=ORACLE_FILE):
    values = {ex.id: float(ex.oracle()) for ex in CATALOGUE}
    Path(path).write_text(json.dumps(values, indent=1, sort_keys=True) + "\n")
    return values


def _within(value, target, rtol, atol):
    return abs(value - target) <= max(atol, rtol * abs(target))


def run_exercises(chapter=None):
    frozen = load_frozen()
    results = []
    for ex in CATALOGUE:
        if chapter is not None and ex.chapter != chapter:
            continue
        t0 = time.perf_counter()
        value = float(ex.compute())
        target = float(ex.oracle())
        elapsed = time.perf_counter() - t0
        stored = frozen.get(ex.id)
        dev = abs(value - target) / abs(target) if target != 0 else abs(value)
        ok = _within(value, target, ex.rtol, ex.atol)
        # the oracle itself must still reproduce its stored output
        if stored is None or not _within(target, stored, 1e-9, 1e-300):
            ok = False
        results.append(ExerciseResult(ex.id, ex.chapter, ex.title, value, target, stored, dev, ok, elapsed))
    return results


def main(argv=None):
    parser = argparse.ArgumentParser(description="exercise oracle maintenance")
    parser.add_argument("--freeze", action="store_true", help="rewrite the frozen oracle file")
    args = parser.parse_args(argv)
    if args.freeze:
        for k, v in sorted(freeze_oracles().items()):
            print(f"{k} = {v!r}")
    else:
        for r in run_exercises():
            print(f"{r.id:20s} {'ok ' if r.passed else 'BAD'} {r.computed:.6e} {r.oracle:.6e}")


if __name__ == "__main__":
    main()
