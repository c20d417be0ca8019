"""Sp(2, Z(d)) unitaries, their composition, and their action on phase space.

A parameter set (kappa, lambda | mu, nu) with kappa*nu - lambda*mu = 1 fixes a
unitary S, up to a global phase, through

    S X S^dagger = D(lambda, kappa),    S Z S^dagger = D(nu, mu).

Writing a displacement as the row vector (X-power, Z-power), conjugation by S
is right multiplication by the matrix [[kappa, lambda], [mu, nu]], so
S(a) S(b) corresponds to matrix(b) @ matrix(a).

Operators are assembled from three kinds of generator whose matrices are
checked directly against the conjugation rule:

    shear_x(a)   = sum_n omega(a n^2 / 2) |X;n><X;n|      -> [[1, a], [0, 1]]
    shear_p(b)   = sum_n omega(b n^2 / 2) |P;n><P;n|      -> [[1, 0], [-b, 1]]
    squeeze(c)   = sum_n |X;c n><X;n|                     -> [[c, 0], [0, c^-1]]
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotInvertible, NotSymplectic
from .hilbert import fourier, omega
from .modring import CrtContext, ModInt, inverse_mod

__all__ = [
    "SymplecticDecomposition",
    "SymplecticParams",
    "act_on_line",
    "act_on_point",
    "compose",
    "crt_permutation",
    "decomposition",
    "embed_tensor",
    "factor_params",
    "factorize_general",
    "factorize_special",
    "identity_params",
    "inverse",
    "prime_basis_params",
    "shear_p",
    "shear_x",
    "squeeze",
    "symplectic_operator",
]


@dataclass(frozen=True)
class SymplecticParams:
    kappa: ModInt
    lambda_: ModInt
    mu: ModInt
    nu: ModInt

    def __post_init__(self):
        moduli = {x.modulus for x in (self.kappa, self.lambda_, self.mu, self.nu)}
        if len(moduli) != 1:
            raise TypeError(f"mixed moduli {sorted(moduli)}")
        if (self.kappa * self.nu - self.lambda_ * self.mu).value != 1 % self.d:
            raise NotSymplectic(
                f"kappa*nu - lambda*mu = {(self.kappa * self.nu - self.lambda_ * self.mu).value}"
                f" != 1 (mod {self.d}) for {self.as_tuple()}"
            )

    @classmethod
    def of(cls, kappa: int, lambda_: int, mu: int, nu: int, d: int) -> SymplecticParams:
        return cls(*(ModInt(int(v), d) for v in (kappa, lambda_, mu, nu)))

    @classmethod
    def from_matrix(cls, m, d: int) -> SymplecticParams:
        (k, l), (u, n) = m
        return cls.of(k, l, u, n, d)

    @property
    def d(self) -> int:
        return self.kappa.modulus

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.kappa.value, self.lambda_.value), (self.mu.value, self.nu.value))

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.kappa.value, self.lambda_.value, self.mu.value, self.nu.value)

    def __str__(self):
        k, l, m, n = self.as_tuple()
        return f"S({k},{l}|{m},{n})"


@dataclass(frozen=True)
class SymplecticDecomposition:
    """The auxiliary elements xi1, xi2, xi3 of a parameter set.

    xi1 = kappa mu (1 + lambda mu)^{-1},  xi2 = lambda kappa^{-1} (1 + lambda mu),
    xi3 = kappa (1 + lambda mu)^{-1}.  Only defined when kappa and 1 + lambda mu
    are units.
    """

    xi1: ModInt
    xi2: ModInt
    xi3: ModInt


def identity_params(d: int) -> SymplecticParams:
    return SymplecticParams.of(1, 0, 0, 1, d)


def _mat_mul(a, b, d):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) % d for j in range(2)) for i in range(2)
    )


def compose(a: SymplecticParams, b: SymplecticParams) -> SymplecticParams:
    """Parameters of S(a) S(b), i.e. matrix(b) @ matrix(a)."""
    if a.d != b.d:
        raise TypeError("moduli differ")
    return SymplecticParams.from_matrix(_mat_mul(b.matrix, a.matrix, a.d), a.d)


def inverse(a: SymplecticParams) -> SymplecticParams:
    k, l, m, n = a.as_tuple()
    return SymplecticParams.of(n, -l, -m, k, a.d)


def decomposition(params: SymplecticParams) -> SymplecticDecomposition | None:
    """xi1, xi2, xi3 for ``params``, or None when kappa or 1 + lambda mu is a zero divisor."""
    k, l, m = params.kappa, params.lambda_, params.mu
    w = 1 + l * m
    if not (k.is_unit() and w.is_unit()):
        return None
    w_inv = w.inverse()
    return SymplecticDecomposition(xi1=k * m * w_inv, xi2=l * k.inverse() * w, xi3=k * w_inv)


# -- generators ---------------------------------------------------------------


def _half(d: int) -> int:
    return (d + 1) // 2


def shear_x(a: int, d: int) -> np.ndarray:
    """The diagonal generator with matrix [[1, a], [0, 1]]."""
    n = np.arange(d)
    return np.diag(omega(_half(d) * (int(a) % d) * n * n, d))


def shear_p(b: int, d: int) -> np.ndarray:
    """Momentum-diagonal generator with matrix [[1, 0], [-b, 1]]."""
    f = fourier(d)
    n = np.arange(d)
    return (f * omega(_half(d) * (int(b) % d) * n * n, d)) @ f.conj().T


def squeeze(c: int, d: int) -> np.ndarray:
    """|X;n> -> |X;c n> for a unit c; matrix [[c, 0], [0, c^-1]]."""
    c = int(c) % d
    if math.gcd(c, d) != 1:
        raise NotInvertible(f"squeeze factor {c} is not a unit mod {d}")
    n = np.arange(d)
    out = np.zeros((d, d), dtype=complex)
    out[(c * n) % d, n] = 1.0
    return out


def factorize_general(params: SymplecticParams) -> list[tuple[str, int]]:
    """Generator word for ``params`` as (kind, argument) pairs, leftmost factor first.

    The matrix is written as L(c) diag(k', 1/k') U(e) L(-t), where t is the
    smallest shift making k' = kappa + lambda t a unit; such a t exists because
    gcd(kappa, lambda, d) = 1.  Reversing the order gives the operator word.
    """
    d = params.d
    k, l, m, n = params.as_tuple()
    t = next(t for t in range(d) if math.gcd((k + l * t) % d, d) == 1)
    k1 = (k + l * t) % d
    m1 = (m + n * t) % d
    k1_inv = inverse_mod(k1, d)
    c = m1 * k1_inv % d
    e = k1_inv * l % d
    word = [("shear_p", t), ("shear_x", e), ("squeeze", k1), ("shear_p", -c % d)]
    return [(kind, arg) for kind, arg in word if not (kind.startswith("shear") and arg == 0)]


_GENERATORS = {"shear_x": shear_x, "shear_p": shear_p, "squeeze": squeeze}


def symplectic_operator(params: SymplecticParams, ctx: CrtContext | None = None) -> np.ndarray:
    """A unitary S with S X S^dagger = D(lambda, kappa) and S Z S^dagger = D(nu, mu).

    When the xi data exists the operator is the product
    S(1,0|xi1,1) S(1,xi2|0,1) S(xi3,0|0,1/xi3); otherwise it is assembled from
    the generator word of :func:`factorize_general`.  Defined up to a global
    phase.  ``ctx`` is accepted for symmetry with the rest of the API; only
    ``params.d`` matters.
    """
    d = params.d
    if d % 2 == 0:
        raise ValueError("symplectic operators are built for odd d only")
    dec = decomposition(params)
    if dec is not None:
        return shear_p(-dec.xi1.value, d) @ shear_x(dec.xi2.value, d) @ squeeze(dec.xi3.value, d)
    out = np.eye(d, dtype=complex)
    for kind, arg in factorize_general(params):
        out = out @ _GENERATORS[kind](arg, d)
    return out


# -- action on phase space -----------------------------------------------------


def act_on_point(params: SymplecticParams, point) -> tuple[int, int]:
    """(rho, sigma) -> (kappa rho + mu sigma, lambda rho + nu sigma)."""
    rho, sigma = (int(x) for x in point)
    k, l, m, n = params.as_tuple()
    d = params.d
    return ((k * rho + m * sigma) % d, (l * rho + n * sigma) % d)


def act_on_line(params: SymplecticParams, line, ctx: CrtContext):
    """Image of a maximal line through the origin."""
    from .geometry import line as make_line

    rho, sigma = act_on_point(params, (line.rho, line.sigma))
    return make_line(rho, sigma, ctx)


# -- factorization across H(p1) (x) H(p2) ---------------------------------------


def prime_basis_params(p: int, nu: int) -> SymplecticParams:
    """S(0, -1 | 1, nu) on H(p); nu = -1 selects the identity."""
    if nu == -1:
        return identity_params(p)
    return SymplecticParams.of(0, -1, 1, nu, p)


def factorize_special(nu1: int, nu2: int, ctx: CrtContext) -> SymplecticParams:
    """Parameters on H(d) of S(0,-1|1,nu1) (x) S(0,-1|1,nu2).

    A value of -1 stands for the identity on that factor, which gives the
    three mixed forms

        (nu1, nu2)  -> (0, -mu^{-1} | mu, nu1 s1 + nu2 s2),  mu = p1 + p2
        (-1,  nu2)  -> (s1, -s2 p1^{-1} | p1, s1 + nu2 s2)
        (nu1, -1)   -> (s2, -s1 p2^{-1} | p2, s2 + nu1 s1)
        (-1,  -1)   -> identity

    where p1^{-1} is taken in Z(p2) and p2^{-1} in Z(p1).
    """
    d, s1, s2, p1, p2 = ctx.d, ctx.s1, ctx.s2, ctx.p1, ctx.p2
    if nu1 >= 0 and nu2 >= 0:
        return SymplecticParams.of(0, -ctx.mu_inv, ctx.mu, ctx.combine(nu1, nu2), d)
    if nu1 == -1 and nu2 >= 0:
        return SymplecticParams.of(s1, -s2 * inverse_mod(p1, p2), p1, s1 + nu2 * s2, d)
    if nu1 >= 0 and nu2 == -1:
        return SymplecticParams.of(s2, -s1 * inverse_mod(p2, p1), p2, s2 + nu1 * s1, d)
    return identity_params(d)


def factor_params(params: SymplecticParams, ctx: CrtContext) -> tuple[SymplecticParams, SymplecticParams]:
    """Split S(kappa,lambda|mu,nu) into its Sp(2,Z(p1)) x Sp(2,Z(p2)) factors.

    Factor i is (kappa_i, lambda_i r_i | mu_bar_i, nu_i) with plain components
    for kappa, lambda, nu and the bar component for mu.
    """
    k, l, m, n = params.as_tuple()
    out = []
    for i, (p, r, t) in enumerate(((ctx.p1, ctx.r1, ctx.t1), (ctx.p2, ctx.r2, ctx.t2))):
        out.append(SymplecticParams.of(k % p, (l % p) * r, m * t % p, n % p, p))
    return out[0], out[1]


def crt_permutation(ctx: CrtContext) -> np.ndarray:
    """Unitary P with P (|X1;a> (x) |X2;b>) = |X; a r1 + b r2>."""
    d = ctx.d
    perm = np.zeros((d, d))
    for a in range(ctx.p1):
        for b in range(ctx.p2):
            perm[ctx.from_bar_components(a, b), a * ctx.p2 + b] = 1.0
    return perm


def embed_tensor(a: np.ndarray, b: np.ndarray, ctx: CrtContext) -> np.ndarray:
    """The operator a (x) b on H(p1) (x) H(p2), carried to H(d)."""
    perm = crt_permutation(ctx)
    return perm @ np.kron(a, b) @ perm.T
