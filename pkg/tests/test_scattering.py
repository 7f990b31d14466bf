import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from qmkit.constants import SI
from qmkit.errors import DomainError, NoChannelError
from qmkit.grid import Grid1D, assemble_hamiltonian, solve_eigen
from qmkit.scattering import (
    PiecewisePotential, barrier_transmission, barrier_transmission_wide, finite_well_bound_states,
    plane_wave_current, step_scatter, transfer_matrix_scatter, wavenumbers,
)

from oracles import barrier_matching_solve, step_matching_solve

EV, ME, HB = SI.eV, SI.m_e, SI.hbar


def electron_barrier(E_ev, V_ev, a):
    return barrier_transmission(E_ev * EV, V_ev * EV, a, ME, HB)


# --- wavenumbers and currents -------------------------------------------------------

def test_wavenumbers():
    w = wavenumbers(2.0, 1.0)
    assert w.value == pytest.approx(math.sqrt(2)) and w.regime == "propagating"
    mu = wavenumbers(6 * EV, 8 * EV, ME, HB)
    assert mu.regime == "evanescent"
    assert mu.value == pytest.approx(math.sqrt(2 * 9.109e-31 * 2 * 1.602e-19) / 1.0546e-34, rel=1e-3)
    assert mu.value == pytest.approx(7.25e9, rel=2e-3)
    assert wavenumbers(1.0, 1.0).regime == "flat"


def test_plane_wave_current():
    assert plane_wave_current(1.0, 1.0) == 1.0
    assert plane_wave_current(2.0, 0.7, 1.3) == pytest.approx(4 * plane_wave_current(1.0, 0.7, 1.3))


# --- step ------------------------------------------------------------------------------

def test_step_without_step():
    r = step_scatter(3.0, 0.0)
    assert r.R == 0.0 and r.T == 1.0


def test_proton_step():
    r = step_scatter(2000 * EV, 10 * EV, SI.m_p, HB)
    s = math.sqrt(0.995)
    assert r.R == pytest.approx(((1 - s) / (1 + s)) ** 2, rel=1e-9)
    assert r.R == pytest.approx(1.57e-6, rel=1e-2)


def test_step_natural_units():
    r = step_scatter(2.0, 1.0)
    T, R, B, A = step_matching_solve(2.0, 1.0)
    assert r.k_right / r.k_left == pytest.approx(1 / math.sqrt(2))
    assert r.T == pytest.approx(T, rel=1e-12) and r.R == pytest.approx(R, rel=1e-12)
    assert r.T == pytest.approx(0.9706, abs=1e-4)
    assert r.R == pytest.approx(0.0294, abs=1e-4)
    assert r.reflected == pytest.approx(B) and r.transmitted == pytest.approx(A)


def test_step_currents_balance():
    r = step_scatter(2.0, 1.0)
    c = r.currents
    assert c["incoming"] == pytest.approx(c["reflected"] + c["transmitted"], rel=1e-14)


def test_step_total_reflection():
    r = step_scatter(0.5, 1.0)
    assert r.T == 0.0 and r.R == pytest.approx(1.0, abs=1e-15)
    _, R, B, A = step_matching_solve(0.5, 1.0)
    assert r.reflected == pytest.approx(B) and r.transmitted == pytest.approx(A)


# --- barrier ---------------------------------------------------------------------------

def test_electron_barrier_exercise():
    a = 0.5e-10
    r = electron_barrier(6, 8, a)
    T_oracle, R_oracle, _, _ = barrier_matching_solve(6 * EV, 8 * EV, a, ME, HB)
    assert r.T == pytest.approx(T_oracle, rel=5e-3)
    assert r.T == pytest.approx(0.546, abs=2e-3)
    assert r.R + r.T == pytest.approx(1.0, abs=1e-10)


def test_tea_cup_barrier_log_space():
    # asymptotic T ~ 16 (E/V)(1-E/V) exp(-4 mu a) as the oracle
    mu = wavenumbers(6 * EV, 8 * EV, ME, HB).value
    for a in (0.005, 0.01):
        r = electron_barrier(6, 8, a)
        assert r.T == 0.0
        oracle = (math.log(16 * 0.75 * 0.25) - 4 * mu * a) / math.log(10)
        assert r.log10T == pytest.approx(oracle, rel=1e-12)
        assert barrier_transmission_wide(6 * EV, 8 * EV, a, ME, HB).log10T == pytest.approx(oracle, rel=1e-12)
    # half-width 0.01 m reproduces the often quoted order of magnitude
    assert electron_barrier(6, 8, 0.01).log10T == pytest.approx(-1.26e8, rel=1e-2)
    assert electron_barrier(6, 8, 0.005).log10T == pytest.approx(-6.29e7, rel=1e-2)


def test_vanishing_barrier():
    for V in (1e-3, 1e-6, 1e-9):
        assert barrier_transmission(1.0, V, 1.0).T == pytest.approx(1.0, abs=10 * V)
    assert barrier_transmission(1.0, 0.0, 1.0).T == 1.0


def test_barrier_errors():
    with pytest.raises(DomainError):
        barrier_transmission(1.0, 2.0, 0.0)
    with pytest.raises(DomainError):
        barrier_transmission(0.0, 2.0, 1.0)


@pytest.mark.parametrize("E,V,a", [(0.3, 1.0, 0.7), (2.0, 1.0, 1.1), (1.0, 1.0, 0.4), (5.0, -2.0, 0.9),
                                   (0.01, 50.0, 0.3)])
def test_barrier_against_matching_solve(E, V, a):
    r = barrier_transmission(E, V, a)
    T, R, B1, A3 = barrier_matching_solve(E, V, a + 0.0, 1.0, 1.0) if E != V else barrier_matching_solve(E, V * (1 + 1e-12), a)
    assert r.T == pytest.approx(T, rel=1e-9)
    assert r.R == pytest.approx(R, rel=1e-8, abs=1e-15)
    assert r.transmitted == pytest.approx(A3, rel=1e-8)


def test_wide_barrier_formula():
    mu, r = 3.0, 0.5
    V = 1.0
    E = r * V
    m = mu**2 / (2 * (V - E))  # makes sqrt(2m(V-E)) = mu with hbar = 1
    w = barrier_transmission_wide(E, V, 1.0, mass=m)
    assert w.T == pytest.approx(16 * 0.25 * math.exp(-12), rel=1e-12)
    # the frequently quoted prefactor of 4 gives 6.14e-6, a quarter of the true limit
    assert w.T / 4 == pytest.approx(6.14e-6, rel=1e-3)
    exact, _, _, _ = barrier_matching_solve(E, V, 1.0, m, 1.0)
    assert exact / w.T == pytest.approx(1.0, abs=0.05)
    assert barrier_transmission(E, V, 1.0, mass=m).T == pytest.approx(exact, rel=1e-9)
    ratios = []
    for a in (0.5, 1.0, 2.0, 3.0):
        ratios.append(abs(barrier_transmission(E, V, a, mass=m).T / barrier_transmission_wide(E, V, a, mass=m).T - 1))
    assert all(x > y for x, y in zip(ratios, ratios[1:]))


def test_wide_barrier_prefactor_peak_and_errors():
    Es = np.linspace(0.05, 0.95, 19)
    vals = [barrier_transmission_wide(E, 1.0, 100.0, mass=1.0 / (2 * (1 - E)) * 0.0 + 1.0).log10T
            + 4 * math.sqrt(2 * (1 - E)) * 100.0 / math.log(10) for E in Es]
    assert Es[int(np.argmax(vals))] == pytest.approx(0.5)
    with pytest.raises(DomainError):
        barrier_transmission_wide(2.0, 1.0, 1.0)
    with pytest.warns(UserWarning):
        barrier_transmission_wide(0.5, 1.0, 0.1)


# --- transfer matrix -----------------------------------------------------------------------

def sweep_points(n=100):
    rng = np.random.default_rng(7)
    E = rng.uniform(0.05, 6.0, n)
    V = rng.uniform(-3.0, 6.0, n)
    return list(zip(E, V))


def test_transfer_matrix_matches_step():
    worst = 0.0
    for E, V in sweep_points():
        if E <= V:
            continue
        a = step_scatter(E, V)
        b = transfer_matrix_scatter(PiecewisePotential.step(V), E)
        for x, y in ((a.T, b.T), (a.R, b.R), (a.reflected, b.reflected), (a.transmitted, b.transmitted)):
            worst = max(worst, abs(x - y) / max(abs(x), 1e-300))
    assert worst < 1e-10


def test_transfer_matrix_matches_barrier():
    worst = 0.0
    for E, V in sweep_points():
        a_half = 0.3 + 0.2 * abs(V)
        a = barrier_transmission(E, V, a_half)
        b = transfer_matrix_scatter(PiecewisePotential.barrier(V, a_half), E)
        for x, y in ((a.T, b.T), (a.reflected, b.reflected), (a.transmitted, b.transmitted)):
            worst = max(worst, abs(x - y) / max(abs(x), 1e-300))
    assert worst < 1e-10


def test_transfer_matrix_no_channel():
    with pytest.raises(NoChannelError):
        transfer_matrix_scatter(PiecewisePotential.step(2.0), 1.0)


def test_double_barrier_resonance():
    a, V, gap = 0.5, 5.0, 2.0
    double = PiecewisePotential((-gap - a, -gap + a, gap - a, gap + a), (0.0, V, 0.0, V, 0.0))
    Es = np.linspace(0.05, 4.9, 2000)
    Td = np.array([transfer_matrix_scatter(double, E).T for E in Es])
    Ts = np.array([barrier_transmission(E, V, a).T for E in Es])
    i = int(np.argmax(Td))
    assert Td[i] > 0.5
    assert Td[i] > 10 * Ts[i]


def test_piecewise_potential_validation():
    with pytest.raises(DomainError):
        PiecewisePotential((1.0, 0.0), (0, 1, 0))
    with pytest.raises(DomainError):
        PiecewisePotential((0.0,), (0.0,))
    p = PiecewisePotential.barrier(2.0, 1.0)
    assert list(p(np.array([-2.0, 0.0, 2.0]))) == [0.0, 2.0, 0.0]


# --- finite well ----------------------------------------------------------------------------

def test_deep_well_approaches_box():
    errs = []
    for V in (50.0, 200.0, 800.0):
        E0 = finite_well_bound_states(V, 1.0)[0].energy + V
        errs.append(abs(E0 / (math.pi**2 / 8) - 1))
    assert errs[0] > errs[1] > errs[2]
    deep = finite_well_bound_states(2e4, 1.0)[0].energy + 2e4
    assert deep == pytest.approx(math.pi**2 / 8, rel=2e-2)


def test_shallow_well_single_state():
    for V in (1e-2, 1e-4, 1e-6):
        states = finite_well_bound_states(V, 1.0)
        assert len(states) == 1
        assert states[0].parity == "even"
        assert -V < states[0].energy < 0


def test_well_parity_alternates():
    states = finite_well_bound_states(50.0, 1.0)
    assert len(states) == math.ceil(math.sqrt(2 * 50.0) / (math.pi / 2))
    for i, s in enumerate(states):
        assert s.parity == ("even" if i % 2 == 0 else "odd")
    assert all(x.energy < y.energy for x, y in zip(states, states[1:]))


def test_finite_well_against_grid_solver():
    V, L = 10.0, 1.0
    g = Grid1D(-8.0, 8.0, 8001)
    pot = np.where(np.abs(g.x) < L, -V, 0.0)
    pot[np.isclose(np.abs(g.x), L)] = -V / 2  # jump on a node: use the mean
    sp = solve_eigen(assemble_hamiltonian(g, pot), 3)
    for s, E in zip(finite_well_bound_states(V, L), sp.energies):
        assert s.energy == pytest.approx(E, rel=1e-3)


# --- invariants -------------------------------------------------------------------------------

@given(st.floats(0.01, 20.0), st.floats(-10.0, 20.0), st.floats(0.01, 5.0))
def test_flux_conservation(E, V, a):
    r = barrier_transmission(E, V, a)
    assert 0.0 <= r.T <= 1.0 and 0.0 <= r.R <= 1.0
    assert r.R + r.T == pytest.approx(1.0, abs=1e-10)
    if E > V:
        s = step_scatter(E, V)
        assert s.R + s.T == pytest.approx(1.0, abs=1e-12)


@given(st.floats(0.05, 5.0), st.floats(0.01, 3.0))
def test_transmission_decreases_with_width(E, excess):
    V = E + excess
    widths = np.linspace(0.05, 3.0, 12)
    T = [barrier_transmission(E, V, a).T for a in widths]
    assert all(x > y for x, y in zip(T, T[1:]))


@given(st.floats(0.1, 10.0), st.floats(0.1, 1.0))
def test_continuity_at_barrier_top(V, a):
    lo = barrier_transmission(V * (1 - 1e-6), V, a).T
    hi = barrier_transmission(V * (1 + 1e-6), V, a).T
    at = barrier_transmission(V, V, a).T
    assert lo == pytest.approx(hi, rel=1e-3)
    assert at == pytest.approx(lo, rel=1e-3)


@given(st.floats(0.1, 100.0), st.floats(0.1, 5.0))
def test_no_jump_at_barrier_top(V, a):
    # for large V a^2 the slope alone exceeds 1e-3 over +-1e-6 V; the two sides
    # must still meet, so the value at the top sits on the chord up to curvature
    eps = 1e-6 * V
    lo = barrier_transmission(V - eps, V, a).T
    hi = barrier_transmission(V + eps, V, a).T
    at = barrier_transmission(V, V, a).T
    assert abs(at - 0.5 * (lo + hi)) < 1e-2 * abs(hi - lo) + 1e-15
