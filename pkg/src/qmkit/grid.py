"""
Wavefunctions on a uniform 1D grid.

Operators are sparse matrices acting on the full set of grid samples, so
sums, scalar multiples and compositions are plain matrix algebra.  Inner
products use trapezoid weights throughout.  The Hamiltonian puts hard walls
on the first and last node (psi = 0 there) and is solved as the
(n-2)x(n-2) tridiagonal block of interior nodes.
"""

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .errors import ConsistencyError, DomainError, ShapeError, SolverError, ZeroNormError


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 3:
            raise DomainError(f"grid needs at least 3 points, got {self.n_points}")
        if not self.x_max > self.x_min:
            raise DomainError("x_max must exceed x_min")

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @cached_property
    def x(self):
        x = np.linspace(self.x_min, self.x_max, self.n_points)
        x.setflags(write=False)
        return x

    @cached_property
    def weights(self):
        w = np.full(self.n_points, self.dx)
        w[0] = w[-1] = 0.5 * self.dx
        w.setflags(write=False)
        return w

    @property
    def is_symmetric(self):
        return abs(self.x_min + self.x_max) <= 1e-12 * (self.x_max - self.x_min)

    def sample(self, func):
        return WaveFunction(self, func(self.x))


@dataclass(frozen=True, eq=False)
class WaveFunction:
    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.n_points,):
            raise ShapeError(f"expected {self.grid.n_points} samples, got shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def x(self):
        return self.grid.x

    def norm2(self):
        return float(np.sum(self.grid.weights * np.abs(self.values) ** 2))

    def norm(self):
        return np.sqrt(self.norm2())

    def is_normalized(self, tol=1e-9):
        return abs(self.norm2() - 1.0) < tol

    def density(self):
        return np.abs(self.values) ** 2

    def _check(self, other):
        if not isinstance(other, WaveFunction) or other.grid != self.grid:
            raise ShapeError("wavefunctions live on different grids")

    def __add__(self, other):
        self._check(other)
        return WaveFunction(self.grid, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return WaveFunction(self.grid, self.values - other.values)

    def __mul__(self, scalar):
        return WaveFunction(self.grid, self.values * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return WaveFunction(self.grid, self.values / scalar)

    def __neg__(self):
        return WaveFunction(self.grid, -self.values)

    def __repr__(self):
        return f"WaveFunction(grid={self.grid}, norm2={self.norm2():.6g})"


def inner_product(f, g):
    """<f|g> = sum conj(f) g w  (trapezoid weights)."""
    f._check(g)
    return complex(np.sum(f.grid.weights * np.conj(f.values) * g.values))


def normalize(psi):
    n2 = psi.norm2()
    if n2 == 0.0 or not np.isfinite(n2):
        raise ZeroNormError("cannot normalize a zero (or non-finite) wavefunction")
    return psi / np.sqrt(n2)


class GridOperator:
    """A linear operator on grid samples.

    ``kind`` is informational; the action is entirely determined by ``matrix``.
    ``hermitian`` records whether the operator is an observable, which makes
    :func:`expectation` return a real number.
    """

    def __init__(self, grid, matrix, kind="custom", hermitian=False):
        matrix = sp.csr_matrix(matrix)
        if matrix.shape != (grid.n_points, grid.n_points):
            raise ShapeError(f"operator shape {matrix.shape} does not match grid of {grid.n_points}")
        self.grid = grid
        self.matrix = matrix
        self.kind = kind
        self.hermitian = hermitian

    def __call__(self, psi):
        return apply(self, psi)

    def _check(self, other):
        if other.grid != self.grid:
            raise ShapeError("operators live on different grids")

    def __add__(self, other):
        self._check(other)
        return GridOperator(self.grid, self.matrix + other.matrix, f"({self.kind}+{other.kind})",
                            self.hermitian and other.hermitian)

    def __sub__(self, other):
        self._check(other)
        return GridOperator(self.grid, self.matrix - other.matrix, f"({self.kind}-{other.kind})",
                            self.hermitian and other.hermitian)

    def __mul__(self, scalar):
        real = np.isreal(scalar)
        return GridOperator(self.grid, self.matrix * scalar, f"{scalar}*{self.kind}", self.hermitian and real)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __matmul__(self, other):
        """Composition: ``(A @ B)(psi) = A(B(psi))``."""
        if isinstance(other, WaveFunction):
            return apply(self, other)
        self._check(other)
        # A^2 of an observable is again an observable
        return GridOperator(self.grid, self.matrix @ other.matrix, f"{self.kind}{other.kind}",
                            self.hermitian and other is self)

    def toarray(self):
        return self.matrix.toarray()

    def __repr__(self):
        return f"GridOperator(kind={self.kind!r}, n={self.grid.n_points})"


def identity(grid):
    return GridOperator(grid, sp.identity(grid.n_points), "I", hermitian=True)


def position(grid):
    return GridOperator(grid, sp.diags(grid.x), "X", hermitian=True)


def multiply_by(grid, g):
    values = g(grid.x) if callable(g) else np.asarray(g)
    return GridOperator(grid, sp.diags(values), "g(X)", hermitian=bool(np.all(np.isreal(values))))


def derivative(grid):
    """Central differences inside, second-order one-sided differences at the ends."""
    n, h = grid.n_points, grid.dx
    D = sp.diags([np.full(n - 1, -0.5 / h), np.full(n - 1, 0.5 / h)], [-1, 1], format="lil")
    D[0, 0:3] = np.array([-1.5, 2.0, -0.5]) / h
    D[n - 1, n - 3:n] = np.array([0.5, -2.0, 1.5]) / h
    return GridOperator(grid, D, "D")


def momentum(grid, hbar=1.0):
    return GridOperator(grid, -1j * hbar * derivative(grid).matrix, "P")


def second_derivative(grid):
    """Three-point Laplacian with zero field beyond the first and last node."""
    n, h = grid.n_points, grid.dx
    main = np.full(n, -2.0 / h**2)
    off = np.full(n - 1, 1.0 / h**2)
    return GridOperator(grid, sp.diags([off, main, off], [-1, 0, 1]), "D2", hermitian=True)


def parity(grid):
    if not grid.is_symmetric:
        raise DomainError("parity needs a grid symmetric about x = 0")
    n = grid.n_points
    R = sp.csr_matrix((np.ones(n), (np.arange(n), np.arange(n)[::-1])), shape=(n, n))
    return GridOperator(grid, R, "R", hermitian=True)


class Hamiltonian(GridOperator):
    """H = V(X) - (hbar^2 / 2m) D^2 with the wavefunction pinned to zero at both end nodes.

    ``diagonal`` and ``off_diagonal`` hold the real symmetric tridiagonal
    block acting on interior nodes.
    """

    def __init__(self, grid, potential, mass=1.0, hbar=1.0):
        potential = np.asarray(potential(grid.x) if callable(potential) else potential, dtype=float)
        if potential.shape != (grid.n_points,):
            raise ShapeError("potential must be sampled on every grid point")
        interior = potential[1:-1]
        if not np.all(np.isfinite(interior)):
            raise DomainError("potential must be finite at interior points")
        t = hbar**2 / (2.0 * mass * grid.dx**2)
        self.potential = potential
        self.mass = mass
        self.hbar = hbar
        self.diagonal = 2.0 * t + interior
        self.off_diagonal = np.full(grid.n_points - 3, -t)
        block = sp.diags([self.off_diagonal, self.diagonal, self.off_diagonal], [-1, 0, 1])
        full = sp.block_diag([sp.csr_matrix((1, 1)), block, sp.csr_matrix((1, 1))])
        super().__init__(grid, full, "H", hermitian=True)

    def tridiagonal(self):
        return self.diagonal, self.off_diagonal

    def norm_estimate(self):
        off = 2.0 * abs(self.off_diagonal[0]) if len(self.off_diagonal) else 0.0
        return float(np.max(np.abs(self.diagonal)) + off)


def assemble_hamiltonian(grid, potential, mass=1.0, hbar=1.0):
    return Hamiltonian(grid, potential, mass=mass, hbar=hbar)


@dataclass(frozen=True, eq=False)
class Spectrum:
    energies: np.ndarray
    states: list
    hamiltonian: Hamiltonian = field(repr=False)

    @property
    def grid(self):
        return self.hamiltonian.grid

    @property
    def hbar(self):
        return self.hamiltonian.hbar

    @property
    def mass(self):
        return self.hamiltonian.mass

    def __len__(self):
        return len(self.energies)

    def gram(self):
        k = len(self.states)
        return np.array([[inner_product(self.states[i], self.states[j]) for j in range(k)] for i in range(k)])

    def residuals(self):
        return np.array([
            (apply(self.hamiltonian, psi) - E * psi).norm() / psi.norm()
            for E, psi in zip(self.energies, self.states)
        ])


def _fix_sign(v):
    # odd states have two equal peaks; take the leftmost near-maximal sample
    # so the choice does not hinge on rounding
    a = np.abs(v)
    i = int(np.argmax(a >= a.max() * (1 - 1e-6)))
    return -v if v[i] < 0 else v


def solve_eigen(H, k, truncation_warning=True):
    """Lowest ``k`` eigenpairs of a grid Hamiltonian, energies ascending.

    Eigenvectors are normalised under the grid inner product and signed so
    that their largest-magnitude sample is positive (the leftmost one, when
    several agree to 1e-6).
    """
    grid = H.grid
    m = grid.n_points - 2
    if not 1 <= k <= m:
        raise DomainError(f"can compute between 1 and {m} states, asked for {k}")
    try:
        w, v = scipy.linalg.eigh_tridiagonal(H.diagonal, H.off_diagonal, select="i", select_range=(0, k - 1))
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SolverError(f"tridiagonal eigensolver failed: {exc}") from exc
    states = []
    for j in range(k):
        vec = np.zeros(grid.n_points)
        vec[1:-1] = _fix_sign(v[:, j]) / np.sqrt(grid.dx)
        states.append(WaveFunction(grid, vec))
    spectrum = Spectrum(energies=w, states=states, hamiltonian=H)

    tol = 1e-10 * H.norm_estimate()
    res = spectrum.residuals()
    if np.any(res > tol):
        raise SolverError(f"eigen residual {res.max():.3e} exceeds {tol:.3e}", residual=res)
    if truncation_warning:
        _check_truncation(H, w, v)
    return spectrum


def _check_truncation(H, energies, vectors):
    # walls are intentional where the state is classically allowed at the edge (box);
    # elsewhere a state that has not decayed means the domain was cut too short
    V = H.potential
    for E, vec in zip(energies, vectors.T):
        edge = max(abs(vec[0]), abs(vec[-1]))
        forbidden_at_edge = V[1] > E or V[-2] > E
        if forbidden_at_edge and edge > 1e-6 * np.max(np.abs(vec)):
            warnings.warn(f"state with E={E:.6g} has not decayed at the domain boundary; "
                          "enlarge the grid", stacklevel=3)
            return


def apply(op, psi):
    if op.grid != psi.grid:
        raise ShapeError("operator and wavefunction live on different grids")
    return WaveFunction(psi.grid, op.matrix @ psi.values)


def commutator(A, B):
    return A @ B - B @ A


def commutator_apply(A, B, f):
    return apply(A, apply(B, f)) - apply(B, apply(A, f))


def evolve(spectrum, coefficients, t):
    """psi(t) = sum c_n exp(-i E_n t / hbar) psi_n."""
    c = np.asarray(coefficients, dtype=complex)
    if len(c) > len(spectrum):
        raise DomainError("more coefficients than computed eigenstates")
    phases = c * np.exp(-1j * spectrum.energies[:len(c)] * t / spectrum.hbar)
    values = sum(ph * s.values for ph, s in zip(phases, spectrum.states))
    return WaveFunction(spectrum.grid, values)


def expectation(op, psi):
    """Sandwich <psi|op|psi> / <psi|psi>; real for observables."""
    n2 = psi.norm2()
    if n2 == 0.0:
        raise ZeroNormError("expectation value of a zero state")
    value = inner_product(psi, apply(op, psi)) / n2
    return value.real if op.hermitian else value


def variance(op, psi):
    n2 = psi.norm2()
    if n2 == 0.0:
        raise ZeroNormError("variance of a zero state")
    O_psi = apply(op, psi)
    mean = inner_product(psi, O_psi) / n2
    second = O_psi.norm2() / n2
    var = second - abs(mean) ** 2
    if var < -1e-10 * max(1.0, second):
        raise ConsistencyError(f"negative variance {var:.3e}")
    return max(var, 0.0)


def uncertainty(op, psi):
    return float(np.sqrt(variance(op, psi)))


def probability_current(psi, mass=1.0, hbar=1.0):
    dpsi = derivative(psi.grid).matrix @ psi.values
    return hbar / mass * np.imag(np.conj(psi.values) * dpsi)


def position_probability(psi, a, b):
    """Integral of |psi|^2 over [a, b] with the density linearly interpolated between nodes."""
    if not a < b:
        raise DomainError("need a < b")
    x = psi.grid.x
    lo, hi = max(a, x[0]), min(b, x[-1])
    if lo != a or hi != b:
        warnings.warn("interval clipped to the grid", stacklevel=2)
    if lo >= hi:
        return 0.0
    rho = psi.density()
    inside = (x > lo) & (x < hi)
    xs = np.concatenate(([lo], x[inside], [hi]))
    ys = np.concatenate(([np.interp(lo, x, rho)], rho[inside], [np.interp(hi, x, rho)]))
    return float(np.trapezoid(ys, xs))


class EhrenfestPair(NamedTuple):
    lhs: complex
    rhs: complex


def ehrenfest_check(spectrum, coefficients, op, t, dt):
    """Compare d<O>/dt (centred difference of evolved states) with (i/hbar)<[H, O]>."""
    def mean(tt):
        psi = evolve(spectrum, coefficients, tt)
        return inner_product(psi, apply(op, psi)) / psi.norm2()

    lhs = (mean(t + dt) - mean(t - dt)) / (2.0 * dt)
    psi = evolve(spectrum, coefficients, t)
    comm = commutator(spectrum.hamiltonian, op)
    rhs = 1j / spectrum.hbar * inner_product(psi, apply(comm, psi)) / psi.norm2()
    return EhrenfestPair(lhs, rhs)


class ParityParts(NamedTuple):
    even: WaveFunction
    odd: WaveFunction


def parity_split(psi):
    if not psi.grid.is_symmetric:
        raise DomainError("parity split needs a grid symmetric about x = 0")
    flipped = psi.values[::-1]
    return ParityParts(
        WaveFunction(psi.grid, 0.5 * (psi.values + flipped)),
        WaveFunction(psi.grid, 0.5 * (psi.values - flipped)),
    )
