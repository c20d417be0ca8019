"""State vectors, position/momentum bases and Heisenberg-Weyl operators on H(d).

Operators are plain dense ``numpy`` arrays of shape (d, d); d stays small
enough (a few hundred at most) that nothing sparse is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch

__all__ = [
    "StateVector",
    "clock_z",
    "displacement",
    "equal_up_to_phase",
    "fourier",
    "inner",
    "is_unitary",
    "momentum_state",
    "omega",
    "phase_align",
    "position_state",
    "shift_x",
]

NORM_TOL = 1e-10


def omega(k, d: int):
    """exp(2 pi i k / d), with k reduced modulo d before forming the angle."""
    k = np.mod(np.asarray(k, dtype=np.int64), d)
    return np.exp(2j * np.pi * k / d)


@dataclass(frozen=True, eq=False)
class StateVector:
    """A normalized vector of position-basis components g_m."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 1:
            raise ValueError("state coefficients must be one-dimensional")
        norm = np.vdot(c, c).real
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (|g|^2 = {norm:.3e})")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def dim(self) -> int:
        return self.coefficients.shape[0]

    @classmethod
    def normalized(cls, coefficients) -> StateVector:
        c = np.asarray(coefficients, dtype=complex)
        return cls(c / np.linalg.norm(c))

    def momentum_components(self) -> np.ndarray:
        """The components in the momentum basis |P;m>."""
        return fourier(self.dim).conj().T @ self.coefficients

    def conj(self) -> StateVector:
        return StateVector(self.coefficients.conj())

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coefficients, dtype=dtype)

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"StateVector(dim={self.dim})"


def position_state(n: int, d: int) -> StateVector:
    e = np.zeros(d, dtype=complex)
    e[int(n) % d] = 1.0
    return StateVector(e)


def momentum_state(n: int, d: int) -> StateVector:
    return StateVector(fourier(d)[:, int(n) % d])


def fourier(d: int) -> np.ndarray:
    """F_{mn} = d^{-1/2} omega(mn); its columns are the momentum states."""
    if d < 2:
        raise ValueError("d must be at least 2")
    k = np.arange(d)
    return omega(np.outer(k, k), d) / np.sqrt(d)


def shift_x(d: int) -> np.ndarray:
    """X|X;n> = |X;n+1>."""
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def clock_z(d: int) -> np.ndarray:
    """Z|X;n> = omega(n)|X;n>."""
    return np.diag(omega(np.arange(d), d))


def displacement(alpha, beta, d: int) -> np.ndarray:
    """D(alpha, beta) = Z^alpha X^beta omega(-2^{-1} alpha beta), for odd d."""
    if d % 2 == 0:
        raise ValueError("displacement operators need odd d")
    a, b = int(alpha) % d, int(beta) % d
    half = (d + 1) // 2
    n = np.arange(d)
    # Z^a X^b |n> = omega(a (n + b)) |n + b>
    out = np.zeros((d, d), dtype=complex)
    out[(n + b) % d, n] = omega(a * (n + b), d)
    return out * omega(-half * a * b, d)


def inner(a, b) -> complex:
    """<a|b> = sum_m a_m^* b_m."""
    va, vb = np.asarray(a), np.asarray(b)
    if va.shape != vb.shape:
        raise DimensionMismatch(f"dimensions differ: {va.shape} vs {vb.shape}")
    return complex(np.vdot(va, vb))


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    u = np.asarray(u)
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) < tol)


def phase_align(a: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Divide out the phase of the first entry whose modulus exceeds ``tol``."""
    a = np.asarray(a)
    flat = a.ravel()
    idx = np.flatnonzero(np.abs(flat) > tol)
    if idx.size == 0:
        return a
    z = flat[idx[0]]
    return a * (abs(z) / z)


def equal_up_to_phase(a, b, tol: float = 1e-8) -> bool:
    """True when a = e^{i theta} b for some real theta, entrywise to ``tol``."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False
    # align on the largest entry of b to avoid dividing by a tiny one
    k = int(np.argmax(np.abs(b)))
    if abs(b.flat[k]) < tol:
        return bool(np.max(np.abs(a)) < tol)
    ratio = a.flat[k] / b.flat[k]
    if abs(abs(ratio) - 1.0) > tol:
        return False
    return bool(np.max(np.abs(a - ratio * b)) < tol)
