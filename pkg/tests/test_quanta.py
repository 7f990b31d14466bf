import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qmkit.constants import SI, NATURAL, unit_system
from qmkit.errors import BelowThreshold, DomainError
from qmkit.quanta import (
    bohr_orbit, fringe_positions, fringe_spacing, light_speed_check, matter_wave,
    momentum_from_wavelength, photoelectric_kinetic, photon_props, rydberg_wavelength,
    threshold_frequency, transition_energy,
)

# rounded values used for hand arithmetic
H, C, ME, MP = 6.626e-34, 3e8, 9.109e-31, 1.67e-27


def test_red_photon():
    p = photon_props(450e12)
    assert p.energy == pytest.approx(H * 450e12, rel=1e-3)
    assert p.energy == pytest.approx(2.98e-19, rel=2e-3)
    assert p.energy / SI.eV == pytest.approx(1.86, rel=3e-3)
    assert p.wavelength == pytest.approx(C / 450e12, rel=2e-3)
    assert p.momentum == pytest.approx(9.94e-28, rel=2e-3)
    assert 1.0 / p.momentum == pytest.approx(1.0e27, rel=1e-2)


def test_unit_wavelength():
    p = photon_props(SI.c)
    assert p.wavelength == pytest.approx(1.0)
    assert p.k == pytest.approx(2 * math.pi)
    assert p.energy == pytest.approx(SI.h * SI.c)


def test_photon_rejects_nonpositive():
    with pytest.raises(DomainError):
        photon_props(0.0)


def test_matter_waves():
    assert matter_wave(ME, 0.727).wavelength == pytest.approx(1.0e-3, rel=1e-3)
    u = SI.replace(h=1.0)
    assert matter_wave(1.0, 1.0, units=u).wavelength == pytest.approx(1.0)
    assert matter_wave(SI.m_p, 1000).wavelength == pytest.approx(H / (MP * 1000), rel=2e-3)
    with pytest.raises(DomainError):
        matter_wave(-1.0, 1.0)


def test_photoelectric_silver():
    assert photoelectric_kinetic(2e15, 4.6) == pytest.approx(4.136e-15 * 2e15 - 4.6, rel=1e-3)
    f0 = threshold_frequency(4.6)
    assert f0 == pytest.approx(1.11e15, rel=3e-3)
    assert photoelectric_kinetic(f0, 4.6) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(BelowThreshold) as info:
        photoelectric_kinetic(f0 * (1 - 1e-6), 4.6)
    assert info.value.threshold_frequency == pytest.approx(f0)


def test_fringes():
    x = fringe_positions(1e-3, 1.0, 0.01, 2)
    assert x[2] == 0.0
    assert np.allclose(np.diff(x), 0.1)
    assert np.allclose(x, -x[::-1])
    assert fringe_spacing(500e-9, 2.0, 1e-4) == pytest.approx(0.01)
    with pytest.raises(DomainError):
        fringe_positions(1e-3, 1.0, 0.0, 1)
    with pytest.warns(UserWarning):
        fringe_positions(1e-2, 1.0, 0.01, 30)


def test_bohr_values():
    b1, b2 = bohr_orbit(1), bohr_orbit(2)
    assert b1.radius == pytest.approx(0.529e-10, rel=2e-3)
    assert -b1.energy / SI.eV == pytest.approx(13.6, rel=2e-3)
    assert b2.radius == pytest.approx(4 * b1.radius)
    assert b2.energy / SI.eV == pytest.approx(-3.4, rel=2e-3)
    # E = -m v^2 / 2
    assert b1.energy == pytest.approx(-0.5 * SI.m_e * b1.speed**2, rel=1e-12)
    with pytest.raises(DomainError):
        bohr_orbit(0)


def test_rydberg():
    dE = 13.6 * (1 / 9 - 1 / 16)
    assert rydberg_wavelength(3, 4) == pytest.approx(4.136e-15 * 3e8 / dE, rel=5e-3)
    assert rydberg_wavelength(3, 4) == pytest.approx(1.88e-6, rel=3e-3)
    assert transition_energy(1, math.inf) / SI.eV == pytest.approx(13.6, rel=2e-3)
    # neighbouring high levels: 1/lambda -> 0
    assert rydberg_wavelength(1000, 1001) > 1e3 * rydberg_wavelength(1, 2)
    with pytest.raises(DomainError):
        rydberg_wavelength(4, 4)


def test_light_speed():
    assert light_speed_check() == pytest.approx(2.998e8, rel=1e-4)
    assert light_speed_check(SI.replace(eps0=4 * SI.eps0)) == pytest.approx(light_speed_check() / 2)
    assert abs(light_speed_check() - SI.c) / SI.c < 1e-3


def test_natural_units_table():
    assert NATURAL.hbar == pytest.approx(1.0)
    assert NATURAL.bohr_radius == pytest.approx(1.0)
    assert NATURAL.rydberg_energy == pytest.approx(0.5)
    assert unit_system("natural") is NATURAL


@given(st.floats(1e6, 1e22))
def test_photon_energy_over_momentum_is_c(f):
    p = photon_props(f)
    assert p.energy / p.momentum == pytest.approx(SI.c, rel=1e-12)


@given(st.floats(1e-31, 1e-20), st.floats(1e-3, 1e7))
def test_de_broglie_round_trip(m, v):
    w = matter_wave(m, v)
    assert momentum_from_wavelength(w.wavelength) == pytest.approx(m * v, rel=1e-12)


@pytest.mark.parametrize("n", range(1, 51))
def test_bohr_quantization(n):
    b = bohr_orbit(n)
    assert b.radius * SI.m_e * b.speed == pytest.approx(n * SI.hbar, rel=1e-10)


@given(st.integers(1, 30), st.integers(1, 30))
def test_rydberg_matches_bohr(n1, dn):
    n2 = n1 + dn
    lhs = SI.h * SI.c / rydberg_wavelength(n1, n2)
    rhs = abs(bohr_orbit(n2).energy - bohr_orbit(n1).energy)
    assert lhs == pytest.approx(rhs, rel=1e-10)
