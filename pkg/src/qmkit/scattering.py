"""
Stationary scattering on piecewise-constant potentials.

Conventions: the incident wave has unit amplitude and comes from the left;
the single barrier occupies (-a, a), so its width is 2a.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NoChannelError


@dataclass(frozen=True)
class PiecewisePotential:
    """``values[i]`` holds between ``breakpoints[i-1]`` and ``breakpoints[i]``; the outer segments are semi-infinite."""

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        vals = tuple(float(v) for v in self.values)
        if len(vals) != len(bp) + 1:
            raise DomainError("need exactly one more potential value than breakpoints")
        if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
            raise DomainError("breakpoints must be strictly ascending")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)

    @classmethod
    def step(cls, V_right, at=0.0):
        return cls((at,), (0.0, V_right))

    @classmethod
    def barrier(cls, V, a):
        return cls((-a, a), (0.0, V, 0.0))

    def __call__(self, x):
        idx = np.searchsorted(self.breakpoints, np.asarray(x, dtype=float), side="right")
        return np.asarray(self.values)[idx]


@dataclass(frozen=True)
class Wavenumber:
    value: float
    regime: str  # "propagating", "evanescent" or "flat"


@dataclass(frozen=True)
class ScatterResult:
    E: float
    k_left: complex
    k_right: complex
    reflected: complex  # B1
    transmitted: complex  # A_trans
    R: float
    T: float
    currents: dict = field(default_factory=dict)
    log10T: float | None = None


def wavenumbers(E, V, mass=1.0, hbar=1.0):
    """k = sqrt(2m(E-V))/hbar above the potential, decay constant mu below it."""
    if mass <= 0:
        raise DomainError("mass must be positive")
    if E > V:
        return Wavenumber(math.sqrt(2.0 * mass * (E - V)) / hbar, "propagating")
    if E < V:
        return Wavenumber(math.sqrt(2.0 * mass * (V - E)) / hbar, "evanescent")
    return Wavenumber(0.0, "flat")


def plane_wave_current(amplitude, k, mass=1.0, hbar=1.0):
    return hbar * k * abs(amplitude) ** 2 / mass


def _currents(k1, k2, B, A, mass, hbar):
    j_in = plane_wave_current(1.0, k1, mass, hbar)
    j_ref = plane_wave_current(B, k1, mass, hbar)
    j_tr = plane_wave_current(A, k2, mass, hbar) if k2 > 0 else 0.0
    return {"incoming": j_in, "reflected": j_ref, "transmitted": j_tr}


def step_scatter(E, V_right, mass=1.0, hbar=1.0):
    """Potential 0 on the left, ``V_right`` on the right (a drop if negative)."""
    if E <= 0:
        raise DomainError("incident energy must be positive")
    k1 = math.sqrt(2.0 * mass * E) / hbar
    if E > V_right:
        k2 = math.sqrt(2.0 * mass * (E - V_right)) / hbar
        B = (k1 - k2) / (k1 + k2)
        A = 2.0 * k1 / (k1 + k2)
        R = B**2
        T = 4.0 * k1 * k2 / (k1 + k2) ** 2
        return ScatterResult(E, k1, k2, B, A, R, T, _currents(k1, k2, B, A, mass, hbar))
    mu = math.sqrt(2.0 * mass * (V_right - E)) / hbar
    # evanescent amplitude on the right; no flux gets through
    B = (k1 - 1j * mu) / (k1 + 1j * mu)
    A = 2.0 * k1 / (k1 + 1j * mu)
    return ScatterResult(E, k1, 1j * mu, B, A, abs(B) ** 2, 0.0, _currents(k1, 0.0, B, A, mass, hbar))


def _sinhc(z):
    """sinh(z)/z for complex z, 1 at z = 0."""
    z = complex(z)
    if abs(z) < 1e-4:
        z2 = z * z
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0
    return np.sinh(z) / z


def barrier_transmission(E, V, a, mass=1.0, hbar=1.0):
    """Transmission through a rectangular barrier of height V on (-a, a).

    Below the top the decay constant mu is real; above it mu = i k2 and the
    hyperbolic functions turn into trigonometric ones.  Writing everything in
    terms of sinh(2 mu a)/(2 mu a) keeps E = V a regular point:

        T = 1 / (1 + ((mu^2 + k^2) a sinhc(2 mu a))^2 / k^2)

    which is the closed form for |A3|^2 rearranged.
    """
    if a <= 0:
        raise DomainError("barrier half-width must be positive")
    if E <= 0:
        raise DomainError("incident energy must be positive")
    k = math.sqrt(2.0 * mass * E) / hbar
    mu2 = 2.0 * mass * (V - E) / hbar**2  # negative above the barrier
    mu = np.sqrt(complex(mu2))
    x = 2.0 * mu * a
    if mu2 > 0 and x.real > 300.0:
        return _thick_barrier(E, V, a, k, mu.real, mass, hbar)

    s = _sinhc(x) * 2.0 * a  # sinh(2 mu a) / mu
    c = np.cosh(x)
    kinetic = mu2 + k**2  # 2 m V / hbar^2
    denom = c + 0.5j * (mu2 - k**2) / k * s
    A3 = np.exp(-2j * k * a) / denom
    B1 = -0.5j * kinetic / k * s * np.exp(-2j * k * a) / denom
    T = 1.0 / (1.0 + (kinetic * a * _sinhc(x).real) ** 2 / k**2)
    R = min(abs(B1) ** 2, 1.0)
    log10T = math.log10(T) if T > 0 else -math.inf
    return ScatterResult(E, k, k, complex(B1), complex(A3), float(R), float(T),
                         _currents(k, k, B1, A3, mass, hbar), log10T)


def _thick_barrier(E, V, a, k, mu, mass, hbar):
    # sinh, cosh ~ e^x / 2: keep T in log space, R is 1 to double precision
    x = 2.0 * mu * a
    kinetic = mu**2 + k**2
    log_sinh = x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0)
    logT = math.log(4.0 * k**2 * mu**2) - 2.0 * math.log(kinetic) - 2.0 * log_sinh
    ratio = 0.5 * (mu**2 - k**2) / (k * mu)
    B1 = -0.5j * kinetic / (k * mu) / (1.0 + 1j * ratio) * np.exp(-2j * k * a)
    T = math.exp(logT)
    A3 = math.sqrt(T) * np.exp(-2j * k * a) / (1.0 + 1j * ratio) * abs(1.0 + 1j * ratio)
    return ScatterResult(E, k, k, complex(B1), complex(A3), abs(B1) ** 2, T,
                         _currents(k, k, B1, A3, mass, hbar), logT / math.log(10.0))


@dataclass(frozen=True)
class WideBarrier:
    T: float
    log10T: float


def barrier_transmission_wide(E, V, a, mass=1.0, hbar=1.0):
    """Broad-barrier limit T = 16 exp(-4 mu a) (E/V)(1 - E/V), carried in log space.

    This is the mu a >> 1 limit of the exact result (sinh and cosh of 2 mu a
    both tend to exp(2 mu a)/2).  The version with a leading 4 that is often
    quoted is smaller than that limit by exactly a factor of four.
    """
    if not 0 < E < V:
        raise DomainError("wide-barrier formula needs 0 < E < V")
    if a <= 0:
        raise DomainError("barrier half-width must be positive")
    mu = math.sqrt(2.0 * mass * (V - E)) / hbar
    if mu * a < 1.0:
        warnings.warn(f"mu*a = {mu * a:.3g} < 1: wide-barrier approximation is poor", stacklevel=2)
    r = E / V
    lnT = math.log(16.0 * r * (1.0 - r)) - 4.0 * mu * a
    return WideBarrier(T=math.exp(lnT), log10T=lnT / math.log(10.0))


def _region_matrix(k, x):
    """Maps (A, B) to (psi, psi') at x for psi = A e^{ikx} + B e^{-ikx}; linear basis when k = 0."""
    if k == 0:
        return np.array([[1.0, x], [0.0, 1.0]], dtype=complex)
    e = np.exp(1j * k * x)
    return np.array([[e, 1.0 / e], [1j * k * e, -1j * k / e]], dtype=complex)


def _region_det(k):
    return 1.0 if k == 0 else -2j * k


def transfer_matrix_scatter(potential, E, mass=1.0, hbar=1.0):
    """Reflection and transmission for an arbitrary piecewise-constant potential.

    Interior regions are measured from their left breakpoint so evanescent
    exponentials stay bounded by the region width; the two outer regions use
    the global origin, which keeps the amplitudes comparable with the closed
    forms.
    """
    values, bps = potential.values, potential.breakpoints
    if E <= max(values[0], values[-1]):
        raise NoChannelError("energy must exceed both asymptotic potentials")
    ks = [np.sqrt(complex(2.0 * mass * (E - V))) / hbar for V in values]
    ks = [0.0 if abs(k) == 0 else k for k in ks]
    origins = [0.0] + list(bps[:-1]) + [0.0]
    M = np.eye(2, dtype=complex)
    det = 1.0 + 0j
    for i, xb in enumerate(bps):
        left = _region_matrix(ks[i], xb - origins[i])
        right = _region_matrix(ks[i + 1], xb - origins[i + 1])
        M = np.linalg.solve(right, left) @ M
        det *= _region_det(ks[i]) / _region_det(ks[i + 1])
    k0, kN = float(np.real(ks[0])), float(np.real(ks[-1]))
    # incoming A0 = 1 on the left, nothing incoming from the right (B_N = 0).
    # A_N = M00 + M01 B0 cancels badly under a thick barrier; det(M) / M11 is
    # the same number with the determinant known in closed form.
    B0 = -M[1, 0] / M[1, 1]
    AN = det / M[1, 1]
    R = abs(B0) ** 2
    T = kN / k0 * abs(AN) ** 2
    log10T = math.log10(T) if T > 0 else -math.inf
    return ScatterResult(E, k0, kN, complex(B0), complex(AN), float(R), float(T),
                         _currents(k0, kN, B0, AN, mass, hbar), log10T)


@dataclass(frozen=True)
class BoundState:
    energy: float
    parity: str  # "even" or "odd"


def finite_well_bound_states(depth, half_width, mass=1.0, hbar=1.0):
    """Bound states of V = -depth on (-L, L), energies in (-depth, 0).

    With z = k L and z0 = L sqrt(2 m depth) / hbar the matching conditions are
    z tan z = sqrt(z0^2 - z^2) (even) and -z cot z = sqrt(z0^2 - z^2) (odd);
    they are multiplied through by cos z or sin z so the bracketed root search
    never meets a pole.
    """
    if depth <= 0 or half_width <= 0:
        raise DomainError("well depth and half-width must be positive")
    L = half_width
    z0 = L * math.sqrt(2.0 * mass * depth) / hbar

    def even(z):
        return z * math.sin(z) - math.sqrt(max(z0**2 - z**2, 0.0)) * math.cos(z)

    def odd(z):
        return -z * math.cos(z) - math.sqrt(max(z0**2 - z**2, 0.0)) * math.sin(z)

    roots = []
    n = 0
    while n * math.pi / 2.0 < z0:
        lo = n * math.pi / 2.0
        hi = min((n + 1) * math.pi / 2.0, z0)
        g = even if n % 2 == 0 else odd
        if hi > lo and g(lo) * g(hi) < 0:
            z = brentq(g, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
            roots.append(BoundState((hbar * z / L) ** 2 / (2.0 * mass) - depth, "even" if n % 2 == 0 else "odd"))
        elif hi > lo and g(hi) == 0.0 and hi < z0:
            roots.append(BoundState((hbar * hi / L) ** 2 / (2.0 * mass) - depth, "even" if n % 2 == 0 else "odd"))
        n += 1
    return roots
