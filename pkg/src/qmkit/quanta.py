"""Closed-form relations of early quantum theory: photons, matter waves, Bohr atom."""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import SI
from .errors import BelowThreshold, DomainError


@dataclass(frozen=True)
class PhotonProps:
    frequency: float
    energy: float
    momentum: float
    wavelength: float
    omega: float
    k: float


@dataclass(frozen=True)
class MatterWave:
    momentum: float
    wavelength: float
    k: float


@dataclass(frozen=True)
class BohrOrbit:
    n: int
    radius: float
    speed: float
    energy: float


def photon_props(frequency, units=SI):
    """Energy, momentum, wavelength, angular frequency and wavenumber of a photon."""
    if not frequency > 0:
        raise DomainError(f"frequency must be positive, got {frequency}")
    energy = units.h * frequency
    wavelength = units.c / frequency
    return PhotonProps(
        frequency=frequency,
        energy=energy,
        momentum=energy / units.c,
        wavelength=wavelength,
        omega=2.0 * math.pi * frequency,
        k=2.0 * math.pi / wavelength,
    )


def matter_wave(mass, speed, units=SI):
    """de Broglie wavelength of a massive particle."""
    if not (mass > 0 and speed > 0):
        raise DomainError("mass and speed must be positive")
    p = mass * speed
    lam = units.h / p
    return MatterWave(momentum=p, wavelength=lam, k=2.0 * math.pi / lam)


def momentum_from_wavelength(wavelength, units=SI):
    if not wavelength > 0:
        raise DomainError("wavelength must be positive")
    return units.h / wavelength


def photoelectric_kinetic(frequency, work_function, units=SI):
    """Kinetic energy (eV) of photo-electrons for light of ``frequency`` Hz.

    Raises BelowThreshold when the photon cannot free an electron; the
    exception carries the threshold frequency.
    """
    if not (frequency > 0 and work_function > 0):
        raise DomainError("frequency and work function must be positive")
    h_ev = units.h_ev
    kinetic = h_ev * frequency - work_function
    if kinetic < -1e-12 * work_function:
        raise BelowThreshold(work_function / h_ev)
    return max(kinetic, 0.0)


def threshold_frequency(work_function, units=SI):
    return work_function / units.h_ev


def fringe_positions(wavelength, screen_distance, slit_separation, n_max):
    """Bright-fringe positions x_n = n lambda L / d for n = -n_max..n_max.

    Small-angle formula; warns when the outermost fringe leaves that regime.
    """
    if slit_separation <= 0 or screen_distance <= 0:
        raise DomainError("slit separation and screen distance must be positive")
    if wavelength <= 0 or n_max < 0:
        raise DomainError("wavelength must be positive and n_max non-negative")
    n = np.arange(-n_max, n_max + 1)
    x = n * wavelength * screen_distance / slit_separation
    if n_max > 0 and abs(x[-1]) / screen_distance > 0.2:
        warnings.warn("outer fringes violate the small-angle approximation (x/L > 0.2)", stacklevel=2)
    return x


def fringe_spacing(wavelength, screen_distance, slit_separation):
    return fringe_positions(wavelength, screen_distance, slit_separation, 1)[-1]


def bohr_orbit(n, units=SI):
    if n < 1 or int(n) != n:
        raise DomainError(f"principal quantum number must be a positive integer, got {n}")
    n = int(n)
    ke2 = units.k_coulomb * units.q_e**2
    return BohrOrbit(
        n=n,
        radius=n**2 * units.bohr_radius,
        speed=ke2 / (n * units.hbar),
        energy=-units.rydberg_energy / n**2,
    )


def rydberg_constant(units=SI):
    """R_H = E0 / (h c), in 1/m for SI."""
    return units.rydberg_energy / (units.h * units.c)


def rydberg_wavelength(n1, n2, units=SI):
    """Wavelength of the n2 -> n1 transition; ``n2=math.inf`` means ionisation."""
    if n1 < 1 or (not math.isinf(n2) and n2 < 1):
        raise DomainError("quantum numbers must be >= 1")
    if n1 >= n2:
        raise DomainError(f"need n1 < n2, got n1={n1}, n2={n2}")
    inverse = rydberg_constant(units) * (1.0 / n1**2 - (0.0 if math.isinf(n2) else 1.0 / n2**2))
    return 1.0 / inverse


def transition_energy(n1, n2, units=SI):
    """|E(n2) - E(n1)|, with ``n2=math.inf`` allowed."""
    return units.h * units.c / rydberg_wavelength(n1, n2, units)


def light_speed_check(units=SI):
    return 1.0 / math.sqrt(units.mu0 * units.eps0)
