"""
Kronig-Penney model: a lattice of square barriers.

Barriers of height V and width b are separated by free regions of width
2a, so the period is c = 2a + b.  Bloch waves exist where |f(E)| <= 1 and
then cos(K c) = f(E).
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, GapEnergyError

# default scan density when no explicit point count is given
POINTS_PER_DECADE = 4000
_EDGE_SLACK = 1e-12


@dataclass(frozen=True)
class KPParams:
    a: float
    b: float
    V: float
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0 or self.mass <= 0 or self.hbar <= 0:
            raise DomainError("a, b, mass and hbar must be positive")
        if self.V < 0:
            raise DomainError("barrier height must be non-negative")

    @property
    def c(self):
        return 2.0 * self.a + self.b


def _barrier_factors(y, b):
    """cosh(kappa b) and sinh(kappa b)/kappa as functions of y = (kappa b)^2, any sign."""
    C = np.empty_like(y)
    S = np.empty_like(y)
    small = np.abs(y) < 1e-4
    ys = y[small]
    C[small] = 1.0 + ys / 2.0 + ys**2 / 24.0
    S[small] = b * (1.0 + ys / 6.0 + ys**2 / 120.0)
    pos = (~small) & (y > 0)
    r = np.sqrt(y[pos])
    C[pos] = np.cosh(r)
    S[pos] = b * np.sinh(r) / r
    neg = (~small) & (y < 0)
    r = np.sqrt(-y[neg])
    C[neg] = np.cos(r)
    S[neg] = b * np.sin(r) / r
    return C, S


def kp_dispersion(E, params):
    """f(E) = cos(2ka) cosh(kappa b) + ((kappa^2 - k^2) / 2 kappa k) sin(2ka) sinh(kappa b).

    Above the barrier kappa = i k2 and the hyperbolic functions become
    trigonometric; both branches share one code path through kappa^2.
    """
    E = np.asarray(E, dtype=float)
    if np.any(E <= 0):
        raise DomainError("Kronig-Penney energies must be positive")
    p = params
    k = np.sqrt(2.0 * p.mass * E) / p.hbar
    kappa2 = 2.0 * p.mass * (p.V - E) / p.hbar**2
    C, S = _barrier_factors(np.atleast_1d(kappa2 * p.b**2), p.b)
    C = C.reshape(E.shape)
    S = S.reshape(E.shape)
    f = np.cos(2.0 * k * p.a) * C + (kappa2 - k**2) / (2.0 * k) * np.sin(2.0 * k * p.a) * S
    return f[()] if f.ndim == 0 else f


def scan_energies(E_max, n_scan=None, E_min=None):
    """Linear grid of ``n_scan`` points, or log-spaced at POINTS_PER_DECADE when n_scan is None."""
    if not E_max > 0:
        raise DomainError("E_max must be positive")
    if n_scan is None:
        lo = E_min if E_min is not None else E_max * 1e-6
        decades = math.log10(E_max / lo)
        return np.logspace(math.log10(lo), math.log10(E_max), max(int(decades * POINTS_PER_DECADE), 2))
    if n_scan < 2:
        raise DomainError("need at least two scan points")
    lo = E_min if E_min is not None else E_max / n_scan
    return np.linspace(lo, E_max, int(n_scan))


@dataclass(frozen=True)
class BandStructure:
    bands: list  # [E_lo, E_hi] allowed intervals, ascending
    gaps: list  # forbidden intervals inside the scanned range
    edges: list  # refined band edges (scan-range endpoints excluded)
    E_range: tuple
    n_scan: int
    xtol: float
    meta: dict = field(default_factory=dict)

    @property
    def band_gaps(self):
        """Gaps lying between two allowed bands."""
        return [(lo, hi) for lo, hi in self.gaps if lo > self.E_range[0] and hi < self.E_range[1]]

    def as_dict(self):
        return {
            "bands": [list(b) for b in self.bands],
            "gaps": [list(g) for g in self.gaps],
            "E_range": list(self.E_range),
            "n_scan": self.n_scan,
            "xtol": self.xtol,
        }


def kp_bands(params, E_max, n_scan=None, E_min=None):
    """Allowed bands below ``E_max`` from sign changes of |f| - 1, refined with Brent's method."""
    E = scan_energies(E_max, n_scan, E_min)
    xtol = 1e-13 * E_max

    def g(e):
        return abs(float(kp_dispersion(e, params))) - 1.0 - _EDGE_SLACK

    vals = np.abs(kp_dispersion(E, params)) - 1.0 - _EDGE_SLACK
    allowed = vals <= 0
    edges = []
    for i in np.nonzero(allowed[1:] != allowed[:-1])[0]:
        edges.append(brentq(g, E[i], E[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200))

    # walk the scan and pair up transitions into intervals
    bands = []
    start = float(E[0]) if allowed[0] else None
    for e in edges:
        if start is None:
            start = e
        else:
            bands.append((start, e))
            start = None
    if start is not None:
        bands.append((start, float(E[-1])))

    gaps = []
    cursor = float(E[0])
    for lo, hi in bands:
        if lo > cursor:
            gaps.append((cursor, lo))
        cursor = hi
    if cursor < E[-1]:
        gaps.append((cursor, float(E[-1])))

    if not bands:
        warnings.warn("no allowed energies found in the scanned range", stacklevel=2)
    return BandStructure(bands, gaps, edges, (float(E[0]), float(E[-1])), len(E), xtol,
                         {"points_per_decade": POINTS_PER_DECADE if n_scan is None else None})


def bloch_k(E, params, tol=1e-10):
    """Crystal momentum K in [0, pi/c] with cos(K c) = f(E)."""
    f = np.asarray(kp_dispersion(E, params), dtype=float)
    if np.any(np.abs(f) > 1.0 + tol):
        raise GapEnergyError(f"energy {E} lies in a gap (|f| = {np.max(np.abs(f)):.6g} > 1)")
    K = np.arccos(np.clip(f, -1.0, 1.0)) / params.c
    return K[()] if K.ndim == 0 else K
