"""
Spin one-half algebra, Larmor precession, Zeeman splitting and small
angular-momentum matrix representations.

Precession convention: H = -gamma B S_z with a signed gyromagnetic ratio,
which matches the classical dS/dt = gamma S x B.  Both rotate <S> by the
angle -gamma B t about z.  For the electron pass ``gamma=-GAMMA_E``; the
expectation values then turn as phi + GAMMA_E B t.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .constants import GAMMA_E, SI
from .errors import DomainError, QuantumNumberError, ShapeError, ZeroNormError

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def is_hermitian(M, tol=1e-12):
    M = np.asarray(M)
    return M.ndim == 2 and M.shape[0] == M.shape[1] and np.allclose(M, M.conj().T, rtol=0, atol=tol * max(1.0, np.abs(M).max()))


def hermitian_eigvals(M, tol=1e-12):
    """Eigenvalues of a Hermitian matrix, ascending; refuses non-Hermitian input."""
    if not is_hermitian(M, tol):
        raise DomainError("matrix is not Hermitian")
    return np.linalg.eigvalsh(M)


def spin_operator(axis, hbar=1.0):
    """S_axis = (hbar/2) sigma_axis."""
    try:
        return 0.5 * hbar * PAULI[axis]
    except KeyError:
        raise DomainError(f"axis must be one of x, y, z; got {axis!r}") from None


def s_squared(hbar=1.0):
    return 0.75 * hbar**2 * np.eye(2, dtype=complex)


@dataclass(frozen=True)
class Direction:
    """Unit vector (sin t cos p, sin t sin p, cos t); phi is wrapped into [0, 2 pi)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")
        object.__setattr__(self, "phi", float(self.phi) % (2.0 * math.pi))

    @classmethod
    def axis(cls, name):
        table = {"x": (math.pi / 2, 0.0), "y": (math.pi / 2, math.pi / 2), "z": (0.0, 0.0),
                 "-x": (math.pi / 2, math.pi), "-y": (math.pi / 2, 1.5 * math.pi), "-z": (math.pi, 0.0)}
        if name not in table:
            raise DomainError(f"unknown axis {name!r}")
        return cls(*table[name])

    def unit_vector(self):
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])


def spin_direction_operator(direction, hbar=1.0):
    t, p = direction.theta, direction.phi
    return 0.5 * hbar * np.array(
        [[math.cos(t), math.sin(t) * cmath.exp(-1j * p)],
         [math.sin(t) * cmath.exp(1j * p), -math.cos(t)]]
    )


@dataclass(frozen=True)
class SpinState:
    """alpha |up> + beta |down> in the S_z basis."""

    up: complex
    down: complex

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=complex).ravel()
        if v.shape != (2,):
            raise ShapeError("spin state needs exactly two amplitudes")
        return cls(complex(v[0]), complex(v[1]))

    def vector(self):
        return np.array([self.up, self.down], dtype=complex)

    def norm(self):
        return math.hypot(abs(self.up), abs(self.down))

    def is_normalized(self, tol=1e-12):
        return abs(self.norm() ** 2 - 1.0) <= tol

    def normalized(self):
        n = self.norm()
        if n == 0:
            raise ZeroNormError("zero spin state cannot be normalised")
        return SpinState(self.up / n, self.down / n)

    def expectation(self, op):
        v = self.vector()
        return complex(np.vdot(v, op @ v) / np.vdot(v, v)).real

    def equivalent(self, other, tol=1e-12):
        """True when the two states differ only by a global phase (and scale)."""
        a, b = self.vector(), other.vector()
        na, nb = np.linalg.norm(a), np.linalg.norm(b)
        if na == 0 or nb == 0:
            return na == nb
        return abs(abs(np.vdot(a, b)) - na * nb) <= tol * na * nb


UP = SpinState(1.0, 0.0)
DOWN = SpinState(0.0, 1.0)


def spin_eigenstates(direction):
    """{"plus": |+>_u, "minus": |->_u} for the direction u."""
    h, p = 0.5 * direction.theta, 0.5 * direction.phi
    em, ep = cmath.exp(-1j * p), cmath.exp(1j * p)
    return {
        "plus": SpinState(em * math.cos(h), ep * math.sin(h)),
        "minus": SpinState(-em * math.sin(h), ep * math.cos(h)),
    }


@dataclass(frozen=True)
class Measurement:
    p_plus: float
    p_minus: float
    collapsed_plus: SpinState
    collapsed_minus: SpinState


def measure_spin(state, direction):
    """Outcome probabilities for S along ``direction`` and the post-measurement states."""
    v = state.vector()
    n2 = float(np.vdot(v, v).real)
    if n2 == 0:
        raise ZeroNormError("cannot measure the zero state")
    eig = spin_eigenstates(direction)
    plus, minus = eig["plus"], eig["minus"]
    pp = abs(np.vdot(plus.vector(), v)) ** 2 / n2
    pm = abs(np.vdot(minus.vector(), v)) ** 2 / n2
    # the eigenbasis is orthonormal, so pp + pm = 1 up to rounding; renormalise
    total = pp + pm
    return Measurement(float(pp / total), float(pm / total), plus, minus)


def larmor_classical(S0, gamma, B, t):
    """Solution of dS/dt = gamma S x B for B along z; ``t`` may be an array (rows are times)."""
    S0 = np.asarray(S0, dtype=float)
    if S0.shape != (3,):
        raise ShapeError("S0 must be a 3-vector")
    t = np.asarray(t, dtype=float)
    w = gamma * B * t
    c, s = np.cos(w), np.sin(w)
    out = np.stack([S0[0] * c + S0[1] * s, S0[1] * c - S0[0] * s, np.full_like(w, S0[2])], axis=-1)
    return out


@dataclass(frozen=True)
class LarmorResult:
    state: SpinState | list
    expectations: np.ndarray  # (3,) or (n_t, 3)


def larmor_quantum(direction, gamma, B, t, hbar=1.0):
    """Evolve |+>_u under H = -gamma B S_z and return <S_x>, <S_y>, <S_z>."""
    t_arr = np.asarray(t, dtype=float)
    e_plus = -0.5 * gamma * B * hbar
    e_minus = -e_plus
    start = spin_eigenstates(direction)["plus"]
    up = np.exp(-1j * e_plus * t_arr / hbar) * start.up
    down = np.exp(-1j * e_minus * t_arr / hbar) * start.down
    cross = np.conj(up) * down  # <S_x> + i <S_y> = hbar conj(alpha) beta
    sx, sy = hbar * cross.real, hbar * cross.imag
    sz = 0.5 * hbar * (np.abs(up) ** 2 - np.abs(down) ** 2)
    expect = np.stack([sx, sy, sz], axis=-1)
    if t_arr.ndim == 0:
        state = SpinState(complex(up), complex(down))
    else:
        state = [SpinState(complex(u), complex(d)) for u, d in zip(up.ravel(), down.ravel())]
    return LarmorResult(state, expect)


@dataclass(frozen=True)
class ZeemanSplitting:
    delta_E: float
    frequency: float


def zeeman_splitting(B, gamma=GAMMA_E, units=SI):
    """Gap |gamma| B hbar between the two spin levels, and the matching photon frequency."""
    if B < 0:
        raise DomainError("field magnitude must be non-negative")
    dE = abs(gamma) * B * units.hbar
    return ZeemanSplitting(dE, dE / units.h)


def orbital_zeeman_energy(n, m, B, gamma, units=SI):
    """Hydrogen level E_n shifted by -gamma B hbar m."""
    if n < 1 or abs(m) > n - 1:
        raise QuantumNumberError(f"m={m} not allowed for n={n}")
    return -units.rydberg_energy / n**2 - gamma * B * units.hbar * m


def stern_gerlach_force(dB_dz, gamma=GAMMA_E, hbar=SI.hbar, sign=+1):
    """F_z = M_z dB/dz with M_z = gamma S_z, S_z = +-hbar/2."""
    return sign * gamma * 0.5 * hbar * dB_dz


def matrix_commutator(A, B):
    A, B = np.asarray(A), np.asarray(B)
    if A.ndim != 2 or A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ShapeError(f"cannot commute matrices of shapes {A.shape} and {B.shape}")
    return A @ B - B @ A


def l1_matrices(hbar=1.0):
    """l = 1 matrices in the basis ordered m = +1, 0, -1, so L_z = hbar diag(1, 0, -1)."""
    r = hbar / math.sqrt(2.0)
    Lx = r * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex)
    Ly = r / 1j * np.array([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], dtype=complex)
    Lz = hbar * np.diag([1.0, 0.0, -1.0]).astype(complex)
    return {"L_z": Lz, "L2": 2.0 * hbar**2 * np.eye(3, dtype=complex), "L_x": Lx, "L_y": Ly}


def lx_basis_change(hbar=1.0):
    """Normalised L_x eigenvectors as columns, ordered hbar, 0, -hbar.

    Each column is phased so its first non-zero entry is real and positive;
    U^dagger L_x U is then diag(hbar, 0, -hbar).
    """
    Lx = l1_matrices(hbar)["L_x"]
    vals, vecs = np.linalg.eigh(Lx)
    order = np.argsort(vals)[::-1]
    vals, vecs = vals[order], vecs[:, order]
    for j in range(3):
        col = vecs[:, j]
        lead = col[np.argmax(np.abs(col) > 1e-12)]
        vecs[:, j] = col * (abs(lead) / lead)
    return vals, vecs


def angular_momentum_matrices(j, hbar=1.0):
    """J_x, J_y, J_z for any j = 0, 1/2, 1, ... in the basis m = j, j-1, ..., -j."""
    if j < 0 or abs(2 * j - round(2 * j)) > 1e-12:
        raise DomainError(f"j must be a non-negative multiple of 1/2, got {j}")
    m = j - np.arange(int(round(2 * j)) + 1)
    # <m+1|J+|m> = hbar sqrt(j(j+1) - m(m+1))
    plus = np.diag(hbar * np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1)), k=1).astype(complex)
    minus = plus.conj().T
    return {
        "J_x": 0.5 * (plus + minus),
        "J_y": (plus - minus) / 2j,
        "J_z": hbar * np.diag(m).astype(complex),
    }


def ladder_operators(Jx, Jy, Jz, hbar=1.0, tol=1e-10):
    """J+- = J_x +- i J_y, after checking that the inputs obey [J_x, J_y] = i hbar J_z and cyclic."""
    scale = max(np.abs(Jx).max(), np.abs(Jy).max(), np.abs(Jz).max(), 1e-300)
    checks = {
        "[Jx,Jy]-i hbar Jz": np.abs(matrix_commutator(Jx, Jy) - 1j * hbar * Jz).max(),
        "[Jy,Jz]-i hbar Jx": np.abs(matrix_commutator(Jy, Jz) - 1j * hbar * Jx).max(),
        "[Jz,Jx]-i hbar Jy": np.abs(matrix_commutator(Jz, Jx) - 1j * hbar * Jy).max(),
    }
    bad = {k: v for k, v in checks.items() if v > tol * hbar * scale}
    if bad:
        raise DomainError("not an angular momentum: " + ", ".join(f"{k} = {v:.3e}" for k, v in bad.items()))
    Jp = Jx + 1j * Jy
    Jm = Jx - 1j * Jy
    residuals = {
        "plus": float(np.abs(matrix_commutator(Jz, Jp) - hbar * Jp).max()),
        "minus": float(np.abs(matrix_commutator(Jz, Jm) + hbar * Jm).max()),
    }
    return {"J_plus": Jp, "J_minus": Jm, "residuals": residuals}


def pauli_product_check(a, b):
    """(a.sigma)(b.sigma) and (a.b) I + i sigma.(a x b)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    sig = [PAULI["x"], PAULI["y"], PAULI["z"]]
    dot = lambda v: sum(c * s for c, s in zip(v, sig))
    lhs = dot(a) @ dot(b)
    rhs = np.dot(a, b) * np.eye(2) + 1j * dot(np.cross(a, b))
    return lhs, rhs
