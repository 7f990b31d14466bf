"""
Physical constants and unit systems.

All SI values are CODATA 2018.  ``NATURAL`` sets hbar = m_e = e = k = 1
(atomic-style units, so the Bohr radius is 1 and the hydrogen binding
energy is 1/2); every formula in the package works unchanged with either
table.
"""

import dataclasses
import enum
import math
from dataclasses import dataclass


class UnitMode(enum.Enum):
    SI = "si"
    NATURAL = "natural"


@dataclass(frozen=True)
class PhysicalConstants:
    """Immutable constant table.

    ``hbar``, ``k_coulomb`` and ``k_boltzmann_ev`` are derived from the
    stored fields so they can never drift out of sync.
    """

    h: float  # J s
    m_e: float  # kg
    m_p: float
    m_n: float
    q_e: float  # C
    c: float  # m/s
    mu0: float  # H/m
    eps0: float  # F/m
    k_boltzmann: float  # J/K
    eV: float  # J per eV
    mode: UnitMode = UnitMode.SI

    @property
    def hbar(self):
        return self.h / (2.0 * math.pi)

    @property
    def k_coulomb(self):
        return 1.0 / (4.0 * math.pi * self.eps0)

    @property
    def k_boltzmann_ev(self):
        return self.k_boltzmann / self.eV

    @property
    def h_ev(self):
        """Planck's constant in eV s."""
        return self.h / self.eV

    @property
    def bohr_radius(self):
        return self.hbar**2 / (self.m_e * self.k_coulomb * self.q_e**2)

    @property
    def rydberg_energy(self):
        """Hydrogen binding energy E0 = m k^2 e^4 / (2 hbar^2)."""
        return self.m_e * self.k_coulomb**2 * self.q_e**4 / (2.0 * self.hbar**2)

    def replace(self, **changes):
        """Copy with some fields changed; ``hbar=`` is accepted and mapped onto ``h``."""
        if "hbar" in changes:
            changes["h"] = 2.0 * math.pi * changes.pop("hbar")
        if "k_coulomb" in changes:
            changes["eps0"] = 1.0 / (4.0 * math.pi * changes.pop("k_coulomb"))
        return dataclasses.replace(self, **changes)

    def as_dict(self):
        out = {f.name: getattr(self, f.name) for f in dataclasses.fields(self)}
        out["mode"] = self.mode.value
        for name in ("hbar", "k_coulomb", "k_boltzmann_ev", "h_ev", "bohr_radius", "rydberg_energy"):
            out[name] = getattr(self, name)
        return out


SI = PhysicalConstants(
    h=6.62607015e-34,
    m_e=9.1093837015e-31,
    m_p=1.67262192369e-27,
    m_n=1.67492749804e-27,
    q_e=1.602176634e-19,
    c=2.99792458e8,
    mu0=1.25663706212e-6,
    eps0=8.8541878128e-12,
    k_boltzmann=1.380649e-23,
    eV=1.602176634e-19,
)

NATURAL = PhysicalConstants(
    h=2.0 * math.pi,
    m_e=1.0,
    m_p=SI.m_p / SI.m_e,
    m_n=SI.m_n / SI.m_e,
    q_e=1.0,
    c=1.0,
    mu0=4.0 * math.pi,
    eps0=1.0 / (4.0 * math.pi),
    k_boltzmann=1.0,
    eV=1.0,
    mode=UnitMode.NATURAL,
)

# magnitude of the electron spin gyromagnetic ratio, s^-1 T^-1
GAMMA_E = 1.76e11


def unit_system(mode="si", **overrides):
    """Return the constant table for ``mode`` with optional per-constant overrides."""
    base = {UnitMode.SI: SI, UnitMode.NATURAL: NATURAL}[UnitMode(mode)]
    return base.replace(**overrides) if overrides else base
