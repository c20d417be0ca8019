"""Theta-function representation of states on H(d) and the zeros of WMUB vectors.

A state |g> = sum_m g_m |X;m> is represented by the entire function

    G(z) = pi^{-1/4} sum_m g_m^* Theta3(pi m/d - pi z/d ; i/d),

which is periodic under z -> z + d, quasi-periodic under z -> z + i d, and has
exactly d zeros in the cell [0, d) x [0, d).  For WMUB vectors G collapses to
a single theta function, so its zeros lie on a straight line and are known in
closed form.

Magnitudes of G grow like exp(pi y^2 / d) with y = Im z.  Every numerical
check here therefore works with the weighted function

    G_w(z) = exp(-pi y^2 / d) G(z)
           = pi^{-1/4} sqrt(d) sum_m g_m^* sum_n exp(-pi [t^2 + 2 i y t] / d),  t = x - m + n d,

whose terms are bounded by one for every z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.polynomial.legendre import leggauss

from .bases import BasisLabel, wmub_vector
from .errors import NonconvergentParameter, QuadratureNotConverged, ZeroResidualTooLarge
from .hilbert import StateVector
from .modring import CrtContext

__all__ = [
    "AnalyticRepr",
    "ClosedFormTheta",
    "ZeroLine",
    "analytic_repr",
    "basis_zero_lattice",
    "cell_grid",
    "half_integer_lattice",
    "scalar_product_quadrature",
    "theta3",
    "theta_zero",
    "wmub_closed_form",
    "zero_line",
]

PI_QUARTER = math.pi ** -0.25
_SERIES_EPS = 1e-16
_MAX_TERMS = 100_000


def theta3(u, tau: complex):
    """Jacobi Theta3(u, tau) = sum_n exp(i pi tau n^2 + 2 i n u), vectorized over ``u``.

    tau is shifted into -1 < Re tau <= 1, and u into the strip
    |Im u| <= pi Im(tau) / 2 with the quasi-period pi*tau; the symmetric
    series is then summed until three consecutive terms fall below
    1e-16 of the partial sum.
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise NonconvergentParameter(f"Im(tau) = {tau.imag} <= 0")
    tau = complex(tau.real - 2.0 * round(tau.real / 2.0), tau.imag)
    u = np.asarray(u, dtype=complex)
    scalar = u.ndim == 0
    u = np.atleast_1d(u)

    k = np.round(u.imag / (math.pi * tau.imag))
    u0 = u - k * math.pi * tau
    u0 = u0 - math.pi * np.round(u0.real / math.pi)
    # Theta3(u0 + k pi tau) = Theta3(u0) exp(-i (pi tau k^2 + 2 k u0))
    factor = np.exp(-1j * (math.pi * tau * k * k + 2.0 * k * u0))

    q = 1j * math.pi * tau
    total = np.ones_like(u0)
    quiet = 0
    n = 0
    while quiet < 3:
        n += 1
        if n > _MAX_TERMS:
            raise NonconvergentParameter(f"theta series did not settle for tau={tau}")
        base = np.exp(q * n * n)
        term = base * (np.exp(2j * n * u0) + np.exp(-2j * n * u0))
        total = total + term
        small = np.all(np.abs(term) <= _SERIES_EPS * np.abs(total))
        quiet = quiet + 1 if small else 0
    out = total * factor
    return out[0] if scalar else out


@dataclass(frozen=True, eq=False)
class AnalyticRepr:
    """G(z) for a state; calling it evaluates the defining theta sum directly."""

    source: StateVector

    @property
    def d(self) -> int:
        return self.source.dim

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        d = self.d
        m = np.arange(d)
        u = math.pi * (m[None, :] - z.reshape(-1, 1)) / d
        vals = theta3(u.ravel(), 1j / d).reshape(u.shape) @ self.source.coefficients.conj()
        return (PI_QUARTER * vals).reshape(z.shape)

    def weighted(self, z):
        """exp(-pi Im(z)^2 / d) G(z), summed over Gaussian images (bounded terms)."""
        z = np.asarray(z, dtype=complex)
        d = self.d
        x = np.mod(z.real.reshape(-1, 1, 1), d)
        y = z.imag.reshape(-1, 1, 1)
        reach = math.sqrt(42.0 * d / math.pi)
        n_max = int(math.ceil(reach / d)) + 1
        n = np.arange(-n_max, n_max + 1)[None, None, :]
        m = np.arange(d)[None, :, None]
        t = x - m + n * d
        terms = np.exp(-math.pi * (t * t + 2j * y * t) / d).sum(axis=2)
        vals = terms @ self.source.coefficients.conj()
        return (PI_QUARTER * math.sqrt(d) * vals).reshape(z.shape)


    def stable(self, z):
        """G(z) recovered from the weighted sum; avoids the cancellation between
        large theta terms that limits direct evaluation when Im(z) is large."""
        z = np.asarray(z, dtype=complex)
        return self.weighted(z) * np.exp(math.pi * z.imag**2 / self.d)


def analytic_repr(g, ctx: CrtContext | None = None) -> AnalyticRepr:
    if not isinstance(g, StateVector):
        g = StateVector(g)
    if ctx is not None and g.dim != ctx.d:
        raise ValueError(f"state has dimension {g.dim}, expected {ctx.d}")
    return AnalyticRepr(g)


def cell_grid(d: int, n: int = 10, offset: float = 0.5) -> np.ndarray:
    """n x n points x + i y over the cell, at x, y = d (k + offset) / n."""
    c = d * (np.arange(n) + offset) / n
    return (c[None, :] + 1j * c[:, None]).ravel()


def scalar_product_quadrature(
    g1: AnalyticRepr, g2: AnalyticRepr, ctx: CrtContext | None = None, tol: float = 1e-6
) -> complex:
    """sqrt(2 pi)/d^{5/2} times the integral over the cell of
    exp(-2 pi y^2/d) G1(z) G2(z^*), which equals sum_m g2_m^* g1_m^*.

    Composite Gauss-Legendre with one 8x8 panel per unit square, checked
    against 12x12 panels.
    """
    d = g1.d
    if g2.d != d:
        raise ValueError("representations of different dimension")

    def integrate(order: int) -> complex:
        xi, wi = leggauss(order)
        nodes = (np.arange(d)[:, None] + (xi[None, :] + 1.0) / 2.0).ravel()
        weights = np.tile(wi / 2.0, d)
        z = nodes[None, :] + 1j * nodes[:, None]
        w = weights[None, :] * weights[:, None]
        integrand = g1.weighted(z) * g2.weighted(z.conj())
        return complex(np.sum(w * integrand)) * math.sqrt(2.0 * math.pi) / d**2.5

    coarse = integrate(8)
    fine = integrate(12)
    if abs(coarse - fine) > tol:
        raise QuadratureNotConverged(f"8- and 12-point panels differ by {abs(coarse - fine):.2e}")
    return fine


# -- closed forms for WMUB vectors ------------------------------------------------


@dataclass(frozen=True)
class ClosedFormTheta:
    """const * exp(-rate (z - center)^2) * Theta3(u0 + u1 z ; tau)."""

    const: float
    rate: float
    center: float
    u0: complex
    u1: complex
    tau: complex

    def __post_init__(self):
        if self.tau.imag <= 0:
            raise NonconvergentParameter(f"Im(tau) = {self.tau.imag} <= 0")

    def prefactor(self, z):
        z = np.asarray(z, dtype=complex)
        return self.const * np.exp(-self.rate * (z - self.center) ** 2)

    def u(self, z):
        return self.u0 + self.u1 * np.asarray(z, dtype=complex)

    def __call__(self, z):
        return self.prefactor(z) * theta3(self.u(z), self.tau)

    def theta_zeros(self, n_range, m_range) -> np.ndarray:
        """Solve u(z) = (M - 1/2) pi + (N - 1/2) pi tau for the given integer ranges."""
        nn, mm = np.meshgrid(np.asarray(n_range), np.asarray(m_range), indexing="ij")
        target = (mm - 0.5) * math.pi + (nn - 0.5) * math.pi * self.tau
        return ((target - self.u0) / self.u1).ravel()


def wmub_closed_form(label: BasisLabel, m_bar1: int, m_bar2: int, ctx: CrtContext) -> ClosedFormTheta:
    """Single-theta form of G for the WMUB vector |X(nu1,nu2); m_bar1, m_bar2>."""
    d, p1, p2 = ctx.d, ctx.p1, ctx.p2
    nu1, nu2 = label.pair
    m_bar1, m_bar2 = m_bar1 % p1, m_bar2 % p2
    pi = math.pi
    if nu1 >= 0 and nu2 >= 0:
        c = ctx.mu_inv * ctx.combine(nu1, nu2) % d
        return ClosedFormTheta(
            const=PI_QUARTER,
            rate=pi / d,
            center=0.0,
            u0=-pi * ctx.mu_inv * (m_bar1 / p1 + m_bar2 / p2),
            u1=1j * pi / d,
            tau=complex(-c * (d + 1), 1.0) / d,
        )
    if nu1 == -1 and nu2 >= 0:
        # w = z/p2 - m_bar1, so exp(-pi p2 w^2 / p1) = exp(-pi (z - p2 m_bar1)^2 / d)
        return ClosedFormTheta(
            const=PI_QUARTER * math.sqrt(p1),
            rate=pi / d,
            center=float(p2 * m_bar1),
            u0=-pi * m_bar2 / p2 - 1j * pi * m_bar1,
            u1=1j * pi / p2,
            tau=complex(-nu2 * (p2 + 1), p1) / p2,
        )
    if nu1 >= 0 and nu2 == -1:
        return ClosedFormTheta(
            const=PI_QUARTER * math.sqrt(p2),
            rate=pi / d,
            center=float(p1 * m_bar2),
            u0=-pi * m_bar1 / p1 - 1j * pi * m_bar2,
            u1=1j * pi / p1,
            tau=complex(-nu1 * (p1 + 1), p2) / p1,
        )
    m = ctx.from_bar_components(m_bar1, m_bar2)
    return ClosedFormTheta(
        const=PI_QUARTER, rate=0.0, center=0.0, u0=pi * m / d, u1=-pi / d, tau=1j / d
    )


# -- zeros ------------------------------------------------------------------------

HALF = Fraction(1, 2)


def _fold(re: Fraction, im: Fraction, d: int) -> complex:
    return complex(float(re % d), float(im % d))


@dataclass(frozen=True, eq=False)
class ZeroLine:
    """The d zeros in [0,d)^2 of one WMUB vector, with the step between consecutive zeros."""

    label: BasisLabel
    m_bar1: int
    m_bar2: int
    m: int
    zeros: tuple[complex, ...]
    direction: complex
    max_residual: float = field(default=float("nan"))

    @property
    def d(self) -> int:
        return len(self.zeros)

    def zero_sum(self) -> complex:
        return complex(sum(self.zeros))

    def point_set(self) -> frozenset[complex]:
        return frozenset(self.zeros)


def theta_zero(label: BasisLabel, m_bar1: int, m_bar2: int, ctx: CrtContext, n: int, M: int = 0):
    """One raw closed-form zero (re, im) as Fractions, before folding into the cell.

    For two-index families (one nu_i = -1) ``n`` and ``M`` are the two indices.
    """
    d, p1, p2 = ctx.d, ctx.p1, ctx.p2
    nu1, nu2 = label.pair
    m = ctx.from_bar_components(m_bar1, m_bar2)
    alpha = n - HALF
    if nu1 >= 0 and nu2 >= 0:
        beta = -(ctx.mu_inv * ctx.combine(nu1, nu2) % d) * (d + 1)
        # alpha (1 - i beta) - i d M + i d/2 - i mu^{-1} m
        return alpha, -alpha * beta - d * M + Fraction(d, 2) - ctx.mu_inv * m % d
    if nu1 == -1 and nu2 >= 0:
        beta = -nu2 * (1 + p2)
        # alpha (p1 - i beta) + m1 p2 - i m2 - i p2 (M - 1/2)
        return alpha * p1 + m_bar1 * p2, -alpha * beta - m_bar2 - p2 * (M - HALF)
    if nu1 >= 0 and nu2 == -1:
        beta = -nu1 * (1 + p1)
        return alpha * p2 + m_bar2 * p1, -alpha * beta - m_bar1 - p1 * (M - HALF)
    # -i alpha + m - M d + d/2 + i d
    return Fraction(m - M * d) + Fraction(d, 2), d - alpha


def _raw_zeros(label: BasisLabel, m_bar1: int, m_bar2: int, ctx: CrtContext):
    nu1, nu2 = label.pair
    if nu1 == -1 and nu2 >= 0:
        idx = [(n, M) for n in range(1, ctx.p2 + 1) for M in range(1, ctx.p1 + 1)]
    elif nu1 >= 0 and nu2 == -1:
        idx = [(n, M) for n in range(1, ctx.p1 + 1) for M in range(1, ctx.p2 + 1)]
    else:
        idx = [(n, 0) for n in range(1, ctx.d + 1)]
    return [theta_zero(label, m_bar1, m_bar2, ctx, n, M) for n, M in idx]


def _direction(label: BasisLabel, ctx: CrtContext) -> complex:
    d, p1, p2 = ctx.d, ctx.p1, ctx.p2
    nu1, nu2 = label.pair
    if nu1 >= 0 and nu2 >= 0:
        return complex(1, (ctx.mu_inv * ctx.combine(nu1, nu2) % d) * (d + 1))
    if nu1 == -1 and nu2 >= 0:
        return complex(p1, nu2 * (1 + p2))
    if nu1 >= 0 and nu2 == -1:
        return complex(p2, nu1 * (1 + p1))
    return -1j


def zero_line(
    label: BasisLabel,
    m_bar1: int,
    m_bar2: int,
    ctx: CrtContext,
    verify: bool = True,
    rtol: float = 1e-7,
) -> ZeroLine:
    """Closed-form zeros of |X(nu1,nu2); m_bar1, m_bar2>, translated into [0,d)^2.

    With ``verify`` each zero is checked against the weighted representation of
    the vector itself: |G_w(zeta)| must be below ``rtol`` times the largest
    |G_w| on a 16 x 16 grid over the cell.
    """
    d = ctx.d
    m_bar1, m_bar2 = m_bar1 % ctx.p1, m_bar2 % ctx.p2
    zeros = tuple(_fold(re, im, d) for re, im in _raw_zeros(label, m_bar1, m_bar2, ctx))
    m = ctx.from_bar_components(m_bar1, m_bar2)
    residual = float("nan")
    if verify:
        rep = analytic_repr(wmub_vector(label, m, ctx))
        scale = np.max(np.abs(rep.weighted(cell_grid(d, 16))))
        residual = float(np.max(np.abs(rep.weighted(np.array(zeros)))) / scale)
        if not residual < rtol:
            raise ZeroResidualTooLarge(
                f"label {label}, m={m}: relative residual {residual:.2e} >= {rtol:g}"
            )
    return ZeroLine(label, m_bar1, m_bar2, m, zeros, _direction(label, ctx), residual)


def half_integer_lattice(d: int) -> frozenset[complex]:
    """{(r + 1/2) + i (s + 1/2) : r, s = 0..d-1}."""
    return frozenset(complex(r + 0.5, s + 0.5) for r in range(d) for s in range(d))


def basis_zero_lattice(label: BasisLabel, ctx: CrtContext, verify: bool = False) -> frozenset[complex]:
    """Union of the zeros of all d vectors of one basis."""
    out = set()
    for m in range(ctx.d):
        out.update(zero_line(label, *ctx.to_bar_components(m), ctx, verify=verify).zeros)
    return frozenset(out)
