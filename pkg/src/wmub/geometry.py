"""Maximal lines through the origin of the Z(d) x Z(d) phase space, d = p1*p2.

L(rho, sigma) = {(r rho, r sigma) : r in Z(d)} has d points exactly when
gcd(rho, sigma, d) = 1, and L(rho, sigma) = L(tau rho, tau sigma) for any unit
tau.  Each line has one representative of the form

    (0, 1),  (1, sigma),  (p1, sigma) with sigma = 1 mod p1,  (p2, sigma) with sigma = 1 mod p2,

which is the representative used throughout (it coincides with the
unfactored basis label).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bases import BasisLabel, all_labels, unfactored_label
from .errors import NotMaximal, SameLine
from .modring import CrtContext, inverse_mod

__all__ = [
    "Line",
    "canonical_pair",
    "common_points",
    "enumerate_lines",
    "factorize_line",
    "line",
    "line_for_label",
    "line_points",
    "same_slope",
    "slope_cross",
]


@dataclass(frozen=True)
class Line:
    rho: int
    sigma: int
    d: int
    points: tuple[tuple[int, int], ...]
    factored_label: BasisLabel

    @property
    def pair(self) -> tuple[int, int]:
        return (self.rho, self.sigma)

    def __contains__(self, point) -> bool:
        return (point[0] % self.d, point[1] % self.d) in self._point_set

    @property
    def _point_set(self) -> frozenset:
        return frozenset(self.points)

    def __len__(self):
        return len(self.points)

    def __str__(self):
        return f"L({self.rho},{self.sigma})"


def line_points(rho: int, sigma: int, d: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted({(r * rho % d, r * sigma % d) for r in range(d)}))


def canonical_pair(rho: int, sigma: int, ctx: CrtContext) -> tuple[int, int]:
    d, p1, p2 = ctx.d, ctx.p1, ctx.p2
    rho, sigma = rho % d, sigma % d
    if math.gcd(math.gcd(rho, sigma), d) != 1:
        raise NotMaximal(
            f"L({rho},{sigma}) has {len(line_points(rho, sigma, d))} points, not {d}"
        )
    if math.gcd(rho, d) == 1:
        return 1, inverse_mod(rho, d) * sigma % d
    if rho == 0:
        return 0, 1
    if rho % p1 == 0:
        # scale so that rho -> p1 and sigma = 1 (mod p1)
        tau = ctx.from_components(inverse_mod(sigma, p1), p1 * inverse_mod(rho, p2))
        return p1, tau * sigma % d
    tau = ctx.from_components(p2 * inverse_mod(rho, p1), inverse_mod(sigma, p2))
    return p2, tau * sigma % d


def factorize_line(ln: Line, ctx: CrtContext) -> BasisLabel:
    """(nu1, nu2) with nu_i the slope of the factor line L(rho_bar_i, sigma_i), or -1 if vertical.

    The first coordinate is split with the bar map, the second with the plain map.
    """
    return _factor_pair(ln.rho, ln.sigma, ctx)


def _factor_pair(rho: int, sigma: int, ctx: CrtContext) -> BasisLabel:
    rb = ctx.to_bar_components(rho)
    sc = ctx.to_components(sigma)
    nus = []
    for rbi, si, p in zip(rb, sc, ctx.primes):
        nus.append(-1 if rbi == 0 else inverse_mod(rbi, p) * si % p)
    return BasisLabel.of(nus[0], nus[1], ctx)


def line(rho, sigma, ctx: CrtContext) -> Line:
    """The maximal line through (0,0) and (rho, sigma), in canonical form."""
    r, s = canonical_pair(int(rho), int(sigma), ctx)
    return Line(r, s, ctx.d, line_points(r, s, ctx.d), _factor_pair(r, s, ctx))


def line_for_label(label: BasisLabel, ctx: CrtContext) -> Line:
    return line(*unfactored_label(label, ctx), ctx)


def enumerate_lines(ctx: CrtContext) -> list[Line]:
    """Every maximal line through the origin, found by scanning all of Z(d)^2."""
    d = ctx.d
    pairs = set()
    for rho in range(d):
        g = math.gcd(rho, d)
        for sigma in range(d):
            if math.gcd(g, sigma) == 1:
                pairs.add(canonical_pair(rho, sigma, ctx))
    lines = [line(r, s, ctx) for r, s in pairs]
    return sorted(lines, key=lambda ln: ln.factored_label)


def common_points(a: Line, b: Line) -> list[tuple[int, int]]:
    if a.pair == b.pair:
        raise SameLine(f"{a} twice")
    return sorted(set(a.points) & set(b.points))


def slope_cross(u, v, d: int) -> int:
    """rho sigma' - rho' sigma (mod d) for direction pairs u = (rho, sigma), v = (rho', sigma')."""
    return (u[0] * v[1] - v[0] * u[1]) % d


def same_slope(a: Line, b: Line) -> bool:
    return slope_cross(a.pair, b.pair, a.d) == 0


def lines_by_label(ctx: CrtContext) -> dict[tuple[int, int], Line]:
    return {lab.pair: line_for_label(lab, ctx) for lab in all_labels(ctx)}
