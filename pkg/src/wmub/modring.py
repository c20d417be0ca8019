"""Arithmetic in Z(d) and the two Chinese-remainder bijections Z(d) <-> Z(p1) x Z(p2).

For d = p1*p2 the constants are r_i = d/p_i, t_i = r_i^{-1} (mod p_i) and
s_i = t_i*r_i (mod d).  Two maps are used:

* plain components  m -> (m mod p1, m mod p2),    inverse m1*s1 + m2*s2
* bar components    m -> (m*t1 mod p1, m*t2 mod p2), inverse m1*r1 + m2*r2

Position states factor through the bar map and momentum states through the
plain map, which is what makes omega(m*n) split into a product of p_i-th roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidDimension, NotInvertible

__all__ = [
    "ModInt",
    "CrtContext",
    "crt_context",
    "egcd",
    "inverse_mod",
    "is_prime",
    "mod_inverse",
]


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def inverse_mod(a: int, n: int) -> int:
    """Inverse of ``a`` modulo ``n`` by the extended Euclidean algorithm."""
    g, x, _ = egcd(a % n, n)
    if g != 1:
        raise NotInvertible(f"{a % n} is not invertible modulo {n} (gcd {g})")
    return x % n


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class ModInt:
    """An element of Z(modulus), stored reduced to [0, modulus)."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                # mixing rings is a programming error, not a data error
                raise TypeError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.value, self.modulus)

    def __pow__(self, k: int):
        if k < 0:
            return ModInt(pow(mod_inverse(self).value, -k, self.modulus), self.modulus)
        return ModInt(pow(self.value, k, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.value == other.value and self.modulus == other.modulus
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    __index__ = __int__

    def is_unit(self) -> bool:
        return math.gcd(self.value, self.modulus) == 1

    def inverse(self) -> ModInt:
        return mod_inverse(self)

    def __repr__(self):
        return f"ModInt({self.value}, {self.modulus})"

    def __str__(self):
        return str(self.value)


def mod_inverse(a: ModInt) -> ModInt:
    """Multiplicative inverse in Z(d); raises NotInvertible for zero divisors."""
    return ModInt(inverse_mod(a.value, a.modulus), a.modulus)


@dataclass(frozen=True)
class CrtContext:
    """The d-dependent constants for d = p1*p2.

    Every other module takes one of these explicitly instead of reading a
    global modulus.
    """

    p1: int
    p2: int

    def __post_init__(self):
        p1, p2 = self.p1, self.p2
        for p in (p1, p2):
            if not isinstance(p, int) or p % 2 == 0 or not is_prime(p):
                raise InvalidDimension(f"{p} is not an odd prime")
        if p1 == p2:
            raise InvalidDimension(f"primes must differ, got {p1} twice")

    @property
    def d(self) -> int:
        return self.p1 * self.p2

    @property
    def primes(self) -> tuple[int, int]:
        return (self.p1, self.p2)

    @property
    def r1(self) -> int:
        return self.p2

    @property
    def r2(self) -> int:
        return self.p1

    @cached_property
    def t1(self) -> int:
        return inverse_mod(self.r1, self.p1)

    @cached_property
    def t2(self) -> int:
        return inverse_mod(self.r2, self.p2)

    @property
    def s1(self) -> int:
        return self.t1 * self.r1 % self.d

    @property
    def s2(self) -> int:
        return self.t2 * self.r2 % self.d

    @property
    def mu(self) -> int:
        return (self.p1 + self.p2) % self.d

    @cached_property
    def mu_inv(self) -> int:
        return inverse_mod(self.mu, self.d)

    @property
    def half_inv(self) -> int:
        """2^{-1} in Z(d), i.e. (d+1)/2."""
        return (self.d + 1) // 2

    @property
    def psi(self) -> int:
        """Dedekind psi of d: the number of WMUBs and of maximal lines."""
        return (self.p1 + 1) * (self.p2 + 1)

    def element(self, value: int) -> ModInt:
        return ModInt(value, self.d)

    # plain map
    def to_components(self, m) -> tuple[int, int]:
        m = int(m)
        return m % self.p1, m % self.p2

    def from_components(self, m1: int, m2: int) -> int:
        return (int(m1) * self.s1 + int(m2) * self.s2) % self.d

    # bar map
    def to_bar_components(self, m) -> tuple[int, int]:
        m = int(m)
        return m * self.t1 % self.p1, m * self.t2 % self.p2

    def from_bar_components(self, m1: int, m2: int) -> int:
        return (int(m1) * self.r1 + int(m2) * self.r2) % self.d

    def combine(self, nu1: int, nu2: int) -> int:
        """nu1*s1 + nu2*s2 (mod d); the Z(d) element whose components are (nu1, nu2)."""
        return self.from_components(nu1, nu2)

    def factor_inverse(self, a: int, i: int) -> int:
        """Inverse of ``a`` in Z(p_i), i in {1, 2}."""
        return inverse_mod(a, self.primes[i - 1])

    def __repr__(self):
        return f"CrtContext(p1={self.p1}, p2={self.p2})"


def crt_context(p1: int, p2: int) -> CrtContext:
    return CrtContext(p1, p2)
