"""Mutually unbiased bases in prime dimension and weak MUBs for d = p1*p2.

A WMUB is labelled by (nu1, nu2) with nu_i in {-1, 0, ..., p_i - 1}; -1 picks
the position basis of that factor.  Its vectors are the tensor products
|X1(nu1); m1> (x) |X2(nu2); m2>, carried into H(d) by the position-state
identification |X; m> <-> |X1; m_bar1> (x) |X2; m_bar2>.

Vectors of a basis are indexed by m in Z(d), with (m_bar1, m_bar2) the bar
components of m.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import OverlapMismatch, SameBasis
from .hilbert import StateVector, omega
from .modring import CrtContext, is_prime
from .symplectic import embed_tensor

__all__ = [
    "BasisLabel",
    "WmubBasis",
    "all_labels",
    "classify_squared_overlap",
    "enumerate_wmubs",
    "measured_overlap_profile",
    "mub_basis_prime",
    "mub_vector_prime",
    "predicted_overlap",
    "quadratic_phase",
    "unfactored_label",
    "wmub_basis",
    "wmub_vector",
]

ZERO_TOL = 1e-9
MATCH_TOL = 1e-9


@dataclass(frozen=True, order=True)
class BasisLabel:
    """Factored label (nu1, nu2); -1 marks the position basis of a factor.

    Ordering is lexicographic with -1 first, which fixes enumeration order.
    """

    nu1: int
    nu2: int
    p1: int = field(compare=False, default=0)
    p2: int = field(compare=False, default=0)

    def __post_init__(self):
        for nu, p in ((self.nu1, self.p1), (self.nu2, self.p2)):
            if nu < -1 or (p and nu >= p):
                raise ValueError(f"label component {nu} outside -1..{p - 1 if p else '?'}")

    @classmethod
    def of(cls, nu1: int, nu2: int, ctx: CrtContext) -> BasisLabel:
        return cls(int(nu1), int(nu2), ctx.p1, ctx.p2)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.nu1, self.nu2)

    @property
    def case(self) -> str:
        """'both', 'first-position', 'second-position' or 'position'."""
        if self.nu1 >= 0 and self.nu2 >= 0:
            return "both"
        if self.nu1 == -1 and self.nu2 >= 0:
            return "first-position"
        if self.nu1 >= 0:
            return "second-position"
        return "position"

    def __str__(self):
        return f"({self.nu1},{self.nu2})"


def all_labels(ctx: CrtContext) -> list[BasisLabel]:
    return [
        BasisLabel.of(a, b, ctx) for a in range(-1, ctx.p1) for b in range(-1, ctx.p2)
    ]


def unfactored_label(label: BasisLabel, ctx: CrtContext) -> tuple[int, int]:
    """The (mu_hat, nu_hat) of the unfactored notation B(mu_hat, nu_hat).

    (nu1, nu2)  -> (1, mu^{-1} nu),  nu = nu1 s1 + nu2 s2
    (-1, nu2)   -> (p1, s1 + nu2 s2)
    (nu1, -1)   -> (p2, s2 + nu1 s1)
    (-1, -1)    -> (0, 1)
    """
    nu1, nu2 = label.pair
    d = ctx.d
    if nu1 >= 0 and nu2 >= 0:
        return 1, ctx.mu_inv * ctx.combine(nu1, nu2) % d
    if nu1 == -1 and nu2 >= 0:
        return ctx.p1, (ctx.s1 + nu2 * ctx.s2) % d
    if nu1 >= 0 and nu2 == -1:
        return ctx.p2, (ctx.s2 + nu1 * ctx.s1) % d
    return 0, 1


def quadratic_phase(m, j, nu, half: int):
    """phi(m, j, nu) = -j m + 2^{-1} nu j^2, as an integer (reduce mod the dimension)."""
    return -np.asarray(j) * m + half * nu * np.asarray(j) ** 2


def mub_vector_prime(p: int, nu: int, m: int) -> StateVector:
    """|X(nu); m> in H(p): components p^{-1/2} omega_p(-j m + 2^{-1} nu j^2).

    nu = -1 gives the position state |X; m>.
    """
    return StateVector(mub_basis_prime(p, nu)[:, int(m) % p])


@functools.lru_cache(maxsize=256)
def _mub_basis_cached(p: int, nu: int) -> np.ndarray:
    if nu == -1:
        out = np.eye(p, dtype=complex)
    else:
        j = np.arange(p)[:, None]
        m = np.arange(p)[None, :]
        out = omega(quadratic_phase(m, j, nu, (p + 1) // 2), p) / np.sqrt(p)
    out.setflags(write=False)
    return out


def mub_basis_prime(p: int, nu: int) -> np.ndarray:
    """Columns are |X(nu); m>, m = 0..p-1, for odd prime p and nu in -1..p-1."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if not -1 <= nu < p:
        raise ValueError(f"nu={nu} outside -1..{p - 1}")
    return _mub_basis_cached(p, nu)


@dataclass(frozen=True, eq=False)
class WmubBasis:
    label: BasisLabel
    matrix: np.ndarray  # column m is the vector with bar components of m
    unfactored_label: tuple[int, int]
    ctx: CrtContext

    @property
    def d(self) -> int:
        return self.ctx.d

    @property
    def vectors(self) -> list[StateVector]:
        return [StateVector(self.matrix[:, m]) for m in range(self.d)]

    def vector(self, m: int) -> StateVector:
        return StateVector(self.matrix[:, int(m) % self.d])

    def vector_bar(self, m_bar1: int, m_bar2: int) -> StateVector:
        return self.vector(self.ctx.from_bar_components(m_bar1, m_bar2))

    def is_orthonormal(self, tol: float = 1e-10) -> bool:
        g = self.matrix.conj().T @ self.matrix
        return bool(np.max(np.abs(g - np.eye(self.d))) < tol)


def wmub_basis(label: BasisLabel, ctx: CrtContext) -> WmubBasis:
    mat = embed_tensor(
        mub_basis_prime(ctx.p1, label.nu1), mub_basis_prime(ctx.p2, label.nu2), ctx
    )
    return WmubBasis(label, mat, unfactored_label(label, ctx), ctx)


def wmub_vector(label: BasisLabel, m: int, ctx: CrtContext) -> StateVector:
    return wmub_basis(label, ctx).vector(m)


def enumerate_wmubs(ctx: CrtContext) -> list[WmubBasis]:
    """All (p1+1)(p2+1) weak mutually unbiased bases, ordered by factored label."""
    return [wmub_basis(lab, ctx) for lab in all_labels(ctx)]


def predicted_overlap(a: BasisLabel, b: BasisLabel, ctx: CrtContext) -> int:
    """r(a|b): squared overlaps between the two bases are r/d or 0."""
    if a.pair == b.pair:
        raise SameBasis(f"{a} twice")
    if a.nu1 != b.nu1 and a.nu2 != b.nu2:
        return 1
    if a.nu1 == b.nu1:
        return ctx.p1
    return ctx.p2


def classify_squared_overlap(value: float, d: int) -> Fraction:
    """Map a squared overlap to 0 or the nearest k/d; raise if neither fits."""
    if value < ZERO_TOL:
        return Fraction(0)
    k = round(value * d)
    if k < 1 or abs(value - k / d) > MATCH_TOL:
        raise OverlapMismatch(f"squared overlap {value!r} is not 0 or k/{d}")
    return Fraction(k, d)


def measured_overlap_profile(a: WmubBasis, b: WmubBasis) -> frozenset[Fraction]:
    """The distinct values of |<a_i|b_j>|^2 over all vector pairs."""
    if a.label.pair == b.label.pair:
        raise SameBasis(f"{a.label} twice")
    sq = np.abs(a.matrix.conj().T @ b.matrix) ** 2
    return frozenset(classify_squared_overlap(v, a.d) for v in np.unique(np.round(sq, 12)))
