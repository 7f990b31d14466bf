"""
Identical particles: product states, exchange symmetry, Pauli exclusion,
shell filling and the three occupation statistics.

A many-body state is a map from ordered label tuples to amplitudes.  Labels
stand for orthonormal single-particle states, so distinct tuples are
orthonormal and the norm is the root-sum-square of the amplitudes.
"""

import enum
import math
import warnings
from collections import Counter
from dataclasses import dataclass
from itertools import permutations

import numpy as np
from scipy.optimize import brentq

from .analytic import orbital_label
from .constants import SI
from .errors import DomainError

MAX_PARTICLES = 8


def permutation_sign(perm):
    """+1 for even, -1 for odd permutations of 0..n-1 (cycle count)."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        j, length = start, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class ManyBodyState:
    """Superposition of product states with an exchange-symmetry tag.

    ``symmetry`` is "none", "symmetric" or "antisymmetric".  A state with no
    surviving terms is the zero state; ``is_zero`` reports it explicitly.
    """

    def __init__(self, terms, n_particles, symmetry="none"):
        if symmetry not in ("none", "symmetric", "antisymmetric"):
            raise DomainError(f"unknown symmetry {symmetry!r}")
        clean = {}
        for labels, amp in terms.items():
            labels = tuple(labels)
            if len(labels) != n_particles:
                raise DomainError("every term must have one label per particle")
            amp = complex(amp)
            if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                raise DomainError("amplitudes must be finite")
            if amp != 0:
                clean[labels] = amp
        self.terms = clean
        self.n_particles = n_particles
        self.symmetry = symmetry

    @property
    def is_zero(self):
        return not self.terms

    def norm(self):
        return math.sqrt(sum(abs(a) ** 2 for a in self.terms.values()))

    def inner(self, other):
        """<self|other>."""
        return sum(a.conjugate() * other.terms.get(k, 0.0) for k, a in self.terms.items())

    def scaled(self, factor):
        return ManyBodyState({k: factor * a for k, a in self.terms.items()}, self.n_particles, self.symmetry)

    def evolve(self, energy, t, hbar=1.0):
        """Stationary-state time evolution: multiply by exp(-i E t / hbar)."""
        return self.scaled(np.exp(-1j * energy * t / hbar))

    def isclose(self, other, tol=1e-12):
        keys = set(self.terms) | set(other.terms)
        return all(abs(self.terms.get(k, 0) - other.terms.get(k, 0)) <= tol for k in keys)

    def equivalent(self, other, tol=1e-12):
        """Equal up to a global phase."""
        na, nb = self.norm(), other.norm()
        if na == 0 or nb == 0:
            return na == nb == 0
        return abs(abs(self.inner(other)) - na * nb) <= tol * na * nb

    def to_dict(self):
        rows = [
            {"labels": [str(l) for l in k], "re": a.real, "im": a.imag}
            for k, a in sorted(self.terms.items(), key=lambda kv: tuple(map(str, kv[0])))
        ]
        return {"n_particles": self.n_particles, "symmetry": self.symmetry, "zero": self.is_zero, "terms": rows}

    def __repr__(self):
        if self.is_zero:
            return f"ManyBodyState(zero, N={self.n_particles})"
        return f"ManyBodyState({len(self.terms)} terms, N={self.n_particles}, {self.symmetry})"


def product_state(labels, amplitude=1.0):
    labels = tuple(labels)
    return ManyBodyState({labels: amplitude}, len(labels))


def exchange(state, i, j):
    """Swap particles i and j in every term."""
    n = state.n_particles
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise DomainError(f"need distinct particle indices in [0, {n}), got {i}, {j}")
    out = {}
    for labels, amp in state.terms.items():
        swapped = list(labels)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        out[tuple(swapped)] = amp
    return ManyBodyState(out, n, state.symmetry)


def _check_size(n):
    if n < 1:
        raise DomainError("need at least one particle")
    if n > MAX_PARTICLES:
        raise DomainError(f"permutation expansion capped at {MAX_PARTICLES} particles")


def antisymmetrize(labels):
    """sum_P sign(P) |label_P(1)>...|label_P(N)> / sqrt(N!); repeated labels give the zero state."""
    labels = tuple(labels)
    n = len(labels)
    _check_size(n)
    if len(set(labels)) < n:
        return ManyBodyState({}, n, "antisymmetric")
    w = 1.0 / math.sqrt(math.factorial(n))
    terms = {tuple(labels[p] for p in perm): permutation_sign(perm) * w for perm in permutations(range(n))}
    return ManyBodyState(terms, n, "antisymmetric")


def symmetrize(labels):
    """Normalised sum over distinct orderings of ``labels``.

    With multiplicities n_a the N!/prod(n_a!) distinct orderings each carry
    weight sqrt(prod(n_a!) / N!).
    """
    labels = tuple(labels)
    n = len(labels)
    _check_size(n)
    mult = math.prod(math.factorial(c) for c in Counter(labels).values())
    w = math.sqrt(mult / math.factorial(n))
    terms = {tuple(labels[p] for p in perm): w for perm in permutations(range(n))}
    return ManyBodyState(terms, n, "symmetric")


def _project(state, signed):
    n = state.n_particles
    _check_size(n)
    out = {}
    scale = 1.0 / math.factorial(n)
    for labels, amp in state.terms.items():
        for perm in permutations(range(n)):
            key = tuple(labels[p] for p in perm)
            s = permutation_sign(perm) if signed else 1
            out[key] = out.get(key, 0.0) + s * scale * amp
    # cancellations are exact in exact arithmetic; drop rounding residue
    tiny = 1e-15 * max((abs(a) for a in state.terms.values()), default=0.0)
    out = {k: a for k, a in out.items() if abs(a) > tiny}
    return ManyBodyState(out, n, "antisymmetric" if signed else "symmetric")


def antisymmetric_projection(state):
    """(1/N!) sum_P sign(P) P applied to ``state``; idempotent."""
    return _project(state, True)


def symmetric_projection(state):
    return _project(state, False)


def exchange_eigenvalue(state, i, j, tol=1e-12):
    """+1 or -1 if ``state`` is an eigenstate of the (i, j) exchange, else None."""
    swapped = exchange(state, i, j)
    if swapped.isclose(state, tol):
        return 1
    if swapped.isclose(state.scaled(-1.0), tol):
        return -1
    return None


@dataclass(frozen=True)
class TwoOscillatorState:
    energy: float
    state: ManyBodyState
    forbidden: bool


def two_oscillator_eigen(n, m, omega=1.0, hbar=1.0):
    """Two identical fermions in one oscillator, one in level n and one in level m."""
    if n < 0 or m < 0:
        raise DomainError("oscillator levels must be >= 0")
    state = antisymmetrize((n, m))
    return TwoOscillatorState(hbar * omega * (n + m + 1), state, state.is_zero)


# --- statistics --------------------------------------------------------------

class Statistics(enum.Enum):
    MAXWELL_BOLTZMANN = "mb"
    BOSE_EINSTEIN = "be"
    FERMI_DIRAC = "fd"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown statistics {value!r}; use mb, be or fd") from None


@dataclass(frozen=True)
class OccupationModel:
    """Energies, mu and k_B T share one unit; the default k_B is in eV/K."""

    statistics: Statistics
    T: float
    mu: float = 0.0
    k_B: float = SI.k_boltzmann_ev

    def __post_init__(self):
        object.__setattr__(self, "statistics", Statistics.parse(self.statistics))
        if not self.T > 0:
            raise DomainError("temperature must be positive")

    @property
    def kT(self):
        return self.k_B * self.T


def fermi_dirac_from_x(x):
    """1/(e^x + 1), arranged so that n(x) + n(-x) == 1 exactly.

    The tail value r = n(|x|) <= 1/2 is computed directly, keeping full
    relative precision; the other side is 1 - r.  The rounding error of 1 - r
    is at most 2^-54, so r + (1 - r) rounds back to exactly 1.
    """
    x = np.asarray(x, dtype=float)
    e = np.exp(-np.abs(x))
    r = e / (1.0 + e)
    out = np.where(x > 0, r, 1.0 - r)
    return out[()] if out.ndim == 0 else out


def occupation(E, model):
    """Mean occupation of a single-particle level at energy E.

    Maxwell-Boltzmann is returned unnormalised, e^{-(E - mu)/kT}.
    """
    E = np.asarray(E, dtype=float)
    x = (E - model.mu) / model.kT
    stats = model.statistics
    if stats is Statistics.FERMI_DIRAC:
        return fermi_dirac_from_x(x)
    with np.errstate(over="ignore"):
        if stats is Statistics.MAXWELL_BOLTZMANN:
            out = np.exp(-x)
        else:
            if np.any(x <= 0):
                raise DomainError("Bose-Einstein occupation needs E > mu")
            out = 1.0 / np.expm1(x)
    return out[()] if out.ndim == 0 else out


def boltzmann_ratio(E_i, E_j, T, k_B=SI.k_boltzmann_ev):
    """n_i / n_j = exp(-(E_i - E_j)/kT)."""
    if not T > 0:
        raise DomainError("temperature must be positive")
    if math.isinf(T):
        return 1.0
    return math.exp(-(E_i - E_j) / (k_B * T))


def boltzmann_populations(energies, T, degeneracies=None, k_B=SI.k_boltzmann_ev):
    """Normalised Maxwell-Boltzmann fractions over a finite level list."""
    E = np.asarray(energies, dtype=float)
    g = np.ones_like(E) if degeneracies is None else np.asarray(degeneracies, dtype=float)
    w = g * np.exp(-(E - E.min()) / (k_B * T))
    return w / w.sum()


def solve_chemical_potential(levels, N, T, statistics="fd", k_B=SI.k_boltzmann_ev, rtol=1e-10):
    """mu such that sum_i g_i n(E_i; mu) = N.

    ``levels`` is a sequence of (energy, degeneracy) pairs.
    """
    stats = Statistics.parse(statistics)
    if not T > 0:
        raise DomainError("temperature must be positive")
    E = np.array([e for e, _ in levels], dtype=float)
    g = np.array([d for _, d in levels], dtype=float)
    if len(E) == 0 or np.any(g <= 0):
        raise DomainError("need at least one level with positive degeneracy")
    if not N > 0:
        raise DomainError("particle number must be positive")
    kT = k_B * T
    e0 = E.min()

    if stats is Statistics.MAXWELL_BOLTZMANN:
        return e0 + kT * (math.log(N) - math.log(np.sum(g * np.exp(-(E - e0) / kT))))

    if stats is Statistics.FERMI_DIRAC:
        if N >= g.sum():
            raise DomainError(f"{N} fermions do not fit into {g.sum():g} states at finite temperature")
        count = lambda mu: float(np.sum(g * fermi_dirac_from_x((E - mu) / kT))) - N
        span = max(E.max() - e0, kT)
        lo, hi = e0 - span, E.max() + span
        while count(lo) > 0:
            lo -= 2.0 * (hi - lo)
        while count(hi) < 0:
            hi += 2.0 * (hi - lo)
        mu = brentq(count, lo, hi, xtol=1e-15 * max(abs(lo), abs(hi), kT), rtol=4 * np.finfo(float).eps, maxiter=500)
    else:
        # parametrise mu = e0 - exp(s): the ground level diverges as s -> -inf
        def count_s(s):
            d = math.exp(s)
            return float(np.sum(g / np.expm1((E - e0 + d) / kT))) - N

        lo, hi = math.log(kT) - 5.0, math.log(kT) + 5.0
        while count_s(lo) < 0:
            lo -= 10.0
            if lo < -745:
                raise DomainError("cannot place that many bosons")
        while count_s(hi) > 0:
            hi += 5.0
        s = brentq(count_s, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500)
        mu = e0 - math.exp(s)

    model = OccupationModel(stats, T, mu, k_B)
    total = float(np.sum(g * occupation(E, model)))
    if abs(total - N) > rtol * N:
        warnings.warn(f"chemical potential residual {abs(total - N) / N:.2e} exceeds {rtol:g}", stacklevel=2)
    return mu


def fermi_energy(N, volume, mass=SI.m_e, units=SI):
    """(hbar^2 / 2m) (3 pi^2 N / V)^(2/3), two spin states per orbital."""
    if not (N > 0 and volume > 0):
        raise DomainError("particle number and volume must be positive")
    return units.hbar**2 / (2.0 * mass) * (3.0 * math.pi**2 * N / volume) ** (2.0 / 3.0)


def sphere_state_count(R):
    """Continuum count of states with n1^2 + n2^2 + n3^2 <= R^2, n_i > 0, two spins."""
    return 2.0 * (4.0 / 3.0) * math.pi * R**3 / 8.0


def lattice_state_count(R):
    """Brute-force version of :func:`sphere_state_count`."""
    n = np.arange(1, int(math.floor(R)) + 1)
    s = n[:, None] ** 2 + n[None, :] ** 2
    r2 = R * R
    return 2 * sum(int(np.count_nonzero(s <= r2 - a * a)) for a in n)


def fill_shells(Z):
    """Ground configuration filling (n, l) in the order n, then l; capacity 2(2l+1)."""
    if Z < 1 or int(Z) != Z:
        raise DomainError("electron count must be a positive integer")
    left = int(Z)
    config = []
    n = 1
    while left > 0:
        for l in range(n):
            take = min(left, 2 * (2 * l + 1))
            config.append((orbital_label(n, l), take))
            left -= take
            if left == 0:
                break
        n += 1
    return config


def format_configuration(config):
    return " ".join(f"{label}{count}" for label, count in config)
