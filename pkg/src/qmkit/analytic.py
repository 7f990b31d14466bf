"""
Closed-form bound states: box, harmonic oscillator, hydrogen-like atoms.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial import Polynomial
from scipy import integrate

from .constants import SI
from .errors import DomainError, QuantumNumberError
from .grid import WaveFunction


# --- particle in a box -------------------------------------------------------

@dataclass(frozen=True)
class BoxState:
    """psi_n(x) = sqrt(2/L) sin(n pi x / L) on [0, L], zero outside."""

    n: int
    L: float
    mass: float = 1.0
    hbar: float = 1.0

    @property
    def energy(self):
        return (self.n * math.pi * self.hbar / self.L) ** 2 / (2.0 * self.mass)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= 0) & (x <= self.L)
        return np.where(inside, math.sqrt(2.0 / self.L) * np.sin(self.n * math.pi * x / self.L), 0.0)

    def sample(self, grid, offset=0.0):
        return WaveFunction(grid, self(grid.x - offset))


def box_state(n, L, mass=1.0, hbar=1.0):
    if n < 1:
        raise DomainError(f"box quantum number must be >= 1, got {n}")
    if L <= 0:
        raise DomainError("box length must be positive")
    return BoxState(int(n), float(L), mass, hbar)


def box3d_energy(n1, n2, n3, L, mass=1.0, hbar=1.0):
    if min(n1, n2, n3) < 1:
        raise DomainError("all three box quantum numbers must be >= 1")
    return (hbar * math.pi / L) ** 2 / (2.0 * mass) * (n1**2 + n2**2 + n3**2)


# --- harmonic oscillator -----------------------------------------------------

class SHOWavefunction:
    """psi_n(x) = P_n(x) psi_0(x), with P_n generated by the raising operator.

    Applying a^dagger = sqrt(m w / 2 hbar) (x - (hbar / m w) d/dx) to
    P(x) psi_0(x) gives (2x P - (hbar / m w) P') psi_0 up to that prefactor,
    so only the polynomial has to be carried along.
    """

    def __init__(self, n, mass=1.0, omega=1.0, hbar=1.0):
        if n < 0:
            raise DomainError(f"oscillator level must be >= 0, got {n}")
        self.n = n
        self.mass, self.omega, self.hbar = mass, omega, hbar
        alpha = mass * omega / hbar
        x = Polynomial([0.0, 1.0])
        poly = Polynomial([1.0])
        for k in range(n):
            poly = math.sqrt(alpha / 2.0) / math.sqrt(k + 1) * (2.0 * x * poly - poly.deriv() / alpha)
        self.polynomial = poly
        self._alpha = alpha

    @property
    def energy(self):
        return self.hbar * self.omega * (self.n + 0.5)

    def ground(self, x):
        a = self._alpha
        return (a / math.pi) ** 0.25 * np.exp(-0.5 * a * np.asarray(x, dtype=float) ** 2)

    def __call__(self, x):
        return self.polynomial(np.asarray(x, dtype=float)) * self.ground(x)

    def sample(self, grid):
        return WaveFunction(grid, self(grid.x))


def sho_wavefunction(n, mass=1.0, omega=1.0, hbar=1.0):
    return SHOWavefunction(n, mass, omega, hbar)


@dataclass(frozen=True, eq=False)
class OscillatorBasis:
    """Number-basis matrices truncated to ``dim`` levels."""

    dim: int
    mass: float
    omega: float
    hbar: float

    @cached_property
    def a(self):
        return np.diag(np.sqrt(np.arange(1, self.dim, dtype=float)), k=1)

    @cached_property
    def adag(self):
        return self.a.T.copy()

    @cached_property
    def N(self):
        return self.adag @ self.a

    @cached_property
    def H(self):
        return self.hbar * self.omega * (self.N + 0.5 * np.eye(self.dim))

    @cached_property
    def X(self):
        return math.sqrt(self.hbar / (2.0 * self.mass * self.omega)) * (self.a + self.adag)

    @cached_property
    def P(self):
        return 1j * math.sqrt(self.mass * self.hbar * self.omega / 2.0) * (self.adag - self.a)

    def ket(self, n):
        v = np.zeros(self.dim, dtype=complex)
        v[n] = 1.0
        return v

    def as_dict(self):
        out = {}
        for name in ("a", "adag", "N", "H", "X", "P"):
            m = getattr(self, name)
            out[name] = {"re": np.real(m).tolist(), "im": np.imag(m).tolist()}
        return out


def oscillator_basis(dim, mass=1.0, omega=1.0, hbar=1.0):
    if dim < 2:
        raise DomainError("oscillator basis needs at least 2 levels")
    return OscillatorBasis(int(dim), mass, omega, hbar)


def sho_uncertainties(n, mass=1.0, omega=1.0, hbar=1.0):
    """Delta X, Delta P and their product for level ``n`` from matrix sandwiches."""
    if n < 0:
        raise DomainError("oscillator level must be >= 0")
    # X^2 couples n to n +- 2, so two spare levels keep <n|X^2|n> exact
    basis = oscillator_basis(n + 3, mass, omega, hbar)
    ket = basis.ket(n)

    def spread(op):
        mean = np.vdot(ket, op @ ket).real
        second = np.vdot(ket, op @ op @ ket).real
        return math.sqrt(max(second - mean**2, 0.0))

    dx, dp = spread(basis.X), spread(basis.P)
    return {"dX": dx, "dP": dp, "product": dx * dp}


# --- hydrogen ----------------------------------------------------------------

_YLM = {
    (0, 0): lambda t, p: np.full(np.broadcast(t, p).shape, math.sqrt(1.0 / (4 * math.pi)), dtype=complex),
    (1, 0): lambda t, p: math.sqrt(3.0 / (4 * math.pi)) * np.cos(t) + 0j,
    (1, 1): lambda t, p: -math.sqrt(3.0 / (8 * math.pi)) * np.sin(t) * np.exp(1j * p),
    (1, -1): lambda t, p: math.sqrt(3.0 / (8 * math.pi)) * np.sin(t) * np.exp(-1j * p),
    (2, 0): lambda t, p: math.sqrt(5.0 / (16 * math.pi)) * (3 * np.cos(t) ** 2 - 1) + 0j,
    (2, 1): lambda t, p: math.sqrt(15.0 / (8 * math.pi)) * np.cos(t) * np.sin(t) * np.exp(1j * p),
    (2, -1): lambda t, p: math.sqrt(15.0 / (8 * math.pi)) * np.cos(t) * np.sin(t) * np.exp(-1j * p),
    (2, 2): lambda t, p: math.sqrt(15.0 / (32 * math.pi)) * np.sin(t) ** 2 * np.exp(2j * p),
    (2, -2): lambda t, p: math.sqrt(15.0 / (32 * math.pi)) * np.sin(t) ** 2 * np.exp(-2j * p),
}


def spherical_harmonic(l, m, theta, phi):
    """Tabulated Y_l^m for l <= 2 (sign convention: Y_1^{+-1} = -+ sqrt(3/8pi) sin e^{+-i phi})."""
    if (l, m) not in _YLM:
        raise DomainError(f"spherical harmonic (l={l}, m={m}) not tabulated; need l <= 2 and |m| <= l")
    out = _YLM[(l, m)](np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))
    return out[()] if out.ndim == 0 else out


def laguerre(alpha, beta, x):
    """Generalised Laguerre polynomial L_beta^alpha(x) by three-term recurrence."""
    if alpha < 0 or beta < 0 or int(alpha) != alpha or int(beta) != beta:
        raise DomainError("Laguerre orders must be non-negative integers")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if beta == 0:
        return prev[()] if prev.ndim == 0 else prev
    cur = 1.0 + alpha - x
    for k in range(1, int(beta)):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur[()] if np.ndim(cur) == 0 else cur


# after f the sequence runs alphabetically, skipping j and the letters already used
_LETTERS = "spdfghiklmnoqrtuvwxyz"


def orbital_label(n, l):
    if not (n >= 1 and 0 <= l <= n - 1):
        raise QuantumNumberError(f"invalid orbital (n={n}, l={l})")
    if l >= len(_LETTERS):
        raise DomainError(f"no spectroscopic letter for l={l}")
    return f"{n}{_LETTERS[l]}"


def hydrogen_degeneracy(n):
    if n < 1:
        raise QuantumNumberError("n must be >= 1")
    return sum(2 * l + 1 for l in range(n))


def _check_quantum_numbers(n, l, m):
    if n < 1 or not 0 <= l <= n - 1 or abs(m) > l:
        raise QuantumNumberError(f"invalid quantum numbers (n={n}, l={l}, m={m})")


class HydrogenState:
    """psi_nlm = N r^l L^{2l+1}_{n-l-1}(2br) e^{-br} Y_l^m with b = 1/(n a).

    ``a`` is the Bohr radius rescaled by nuclear charge and particle mass.
    The radial normalisation N is found by quadrature at construction.
    """

    def __init__(self, n, l, m, Z=1, mass=None, units=SI):
        _check_quantum_numbers(n, l, m)
        self.n, self.l, self.m, self.Z = n, l, m, Z
        self.units = units
        self.mass = units.m_e if mass is None else mass
        ratio = self.mass / units.m_e
        self.a = units.bohr_radius / (Z * ratio)
        self.b = 1.0 / (n * self.a)
        self.energy = -units.rydberg_energy * Z**2 * ratio / n**2
        # quadrature in units of a keeps the integrand O(1)
        integrand = lambda s: (self._shape(s * self.a) ** 2) * s**2
        norm2, _ = integrate.quad(integrand, 0.0, np.inf, limit=200)
        self.norm = 1.0 / math.sqrt(norm2 * self.a**3)

    def _shape(self, r):
        br = self.b * np.asarray(r, dtype=float)
        return np.asarray(r, dtype=float) ** self.l * laguerre(2 * self.l + 1, self.n - self.l - 1, 2 * br) * np.exp(-br)

    def radial(self, r):
        return self.norm * self._shape(r)

    def angular(self, theta, phi):
        return spherical_harmonic(self.l, self.m, theta, phi)

    def __call__(self, r, theta, phi):
        return self.radial(r) * self.angular(theta, phi)

    @property
    def label(self):
        return orbital_label(self.n, self.l)

    def __repr__(self):
        return f"HydrogenState(n={self.n}, l={self.l}, m={self.m}, Z={self.Z}, E={self.energy:.6g})"


def hydrogen_state(n, l, m, Z=1, mass=None, units=SI):
    return HydrogenState(n, l, m, Z=Z, mass=mass, units=units)


def leading_term_peak(n, a):
    """Maximum of r^(n-1) exp(-r/(n a)): r = n^2 a - n a."""
    return n**2 * a - n * a


def orbital_size(n, units=SI):
    return n**2 * units.bohr_radius


def mass_scaled_atom(mass_ratio, units=SI):
    """Binding energy and Bohr radius when the orbiting particle is ``mass_ratio`` times heavier."""
    if mass_ratio <= 0:
        raise DomainError("mass ratio must be positive")
    return {"E0": units.rydberg_energy * mass_ratio, "a": units.bohr_radius / mass_ratio}
