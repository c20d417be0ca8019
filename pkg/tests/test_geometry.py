from itertools import combinations

import numpy as np
import pytest

from wmub.bases import BasisLabel, all_labels, predicted_overlap
from wmub.errors import NotMaximal, SameLine
from wmub.geometry import (
    canonical_pair,
    common_points,
    enumerate_lines,
    factorize_line,
    line,
    line_for_label,
    line_points,
    same_slope,
)
from wmub.modring import crt_context
from wmub.symplectic import SymplecticParams, act_on_line


def orbit(rho, sigma, d):
    units = [t for t in range(1, d) if np.gcd(t, d) == 1]
    return {(t * rho % d, t * sigma % d) for t in units}


def test_scaled_line_canonicalizes(ctx21):
    ln = line(2, 16, ctx21)
    assert ln.pair == (1, 8)
    assert (2 * 11) % 21 == 1


def test_vertical_line(ctx21):
    ln = line(0, 1, ctx21)
    assert len(ln) == 21
    assert all(p[0] == 0 for p in ln.points)


def test_non_maximal_line(ctx21):
    with pytest.raises(NotMaximal, match="7 points"):
        line(3, 3, ctx21)
    assert len(line_points(3, 3, 21)) == 7


@pytest.mark.parametrize("p1,p2,count", [(3, 7, 32), (3, 5, 24), (5, 7, 48)])
def test_enumerate_lines(p1, p2, count):
    ctx = crt_context(p1, p2)
    lines = enumerate_lines(ctx)
    assert len(lines) == count
    assert len({ln.pair for ln in lines}) == count
    for ln in lines:
        assert len(ln.points) == ctx.d
        assert (0, 0) in ln


def test_brute_force_line_count(ctx15):
    d = ctx15.d
    sets = {frozenset(line_points(r, s, d)) for r in range(d) for s in range(d)}
    maximal = [s for s in sets if len(s) == d]
    assert len(maximal) == 24
    assert {frozenset(ln.points) for ln in enumerate_lines(ctx15)} == set(maximal)


@pytest.mark.parametrize("p1,p2", [(3, 5), (3, 7), (5, 3)])
def test_canonical_representative_in_orbit(p1, p2):
    ctx = crt_context(p1, p2)
    d = ctx.d
    for ln in enumerate_lines(ctx):
        rho, sigma = ln.pair
        assert rho in (0, 1, p1, p2)
        if rho in (p1, p2):
            assert sigma % rho == 1
        for r, s in orbit(rho, sigma, d):
            assert canonical_pair(r, s, ctx) == (rho, sigma)


def test_factorize_examples(ctx21):
    assert factorize_line(line(1, 8, ctx21), ctx21).pair == (2, 3)
    assert factorize_line(line(0, 1, ctx21), ctx21).pair == (-1, -1)
    assert factorize_line(line(3, 7, ctx21), ctx21).pair == (-1, 0)
    assert factorize_line(line(7, 15, ctx21), ctx21).pair == (0, -1)


def test_line_factorizes_into_prime_lines(ctx21):
    # the points of L match those of L1 x L2 under the (bar, plain) splitting
    c = ctx21
    for lab in all_labels(c):
        ln = line_for_label(lab, c)
        prime_lines = []
        for nu, p in zip(lab.pair, c.primes):
            prime_lines.append({(0, r) for r in range(p)} if nu == -1 else {(r, r * nu % p) for r in range(p)})
        expected = set()
        for a1, b1 in prime_lines[0]:
            for a2, b2 in prime_lines[1]:
                expected.add((c.from_bar_components(a1, a2), c.from_components(b1, b2)))
        assert expected == set(ln.points), lab


@pytest.mark.parametrize("p1,p2", [(3, 5), (3, 7)])
def test_label_bijection(p1, p2):
    ctx = crt_context(p1, p2)
    labels = [ln.factored_label.pair for ln in enumerate_lines(ctx)]
    assert sorted(labels) == sorted(l.pair for l in all_labels(ctx))
    for lab in all_labels(ctx):
        assert line_for_label(lab, ctx).factored_label == lab


def test_intersection_example(ctx21):
    assert common_points(line(1, 8, ctx21), line(1, 11, ctx21)) == [(0, 0), (7, 14), (14, 7)]
    with pytest.raises(SameLine):
        common_points(line(1, 8, ctx21), line(2, 16, ctx21))


def test_generic_pair_meets_only_at_origin(ctx21):
    a = line_for_label(BasisLabel.of(0, 0, ctx21), ctx21)
    b = line_for_label(BasisLabel.of(1, 1, ctx21), ctx21)
    assert common_points(a, b) == [(0, 0)]


@pytest.mark.parametrize("p1,p2", [(3, 5), (3, 7), (3, 11)])
def test_intersection_sizes(p1, p2):
    ctx = crt_context(p1, p2)
    lines = enumerate_lines(ctx)
    sizes = set()
    for a, b in combinations(lines, 2):
        n = len(common_points(a, b))
        assert n == len(common_points(b, a))
        assert n == predicted_overlap(a.factored_label, b.factored_label, ctx)
        sizes.add(n)
    assert sizes == {1, p1, p2}


def test_same_slope(ctx21):
    a = line(1, 8, ctx21)
    assert same_slope(a, a)
    assert not same_slope(a, line(1, 11, ctx21))
    assert 1 * 16 - 2 * 8 == 0


def test_symplectic_covariance(ctx15):
    d = ctx15.d
    rng = np.random.default_rng(7)
    for _ in range(30):
        m = np.eye(2, dtype=np.int64)
        for _ in range(5):
            a = int(rng.integers(0, d))
            m = m @ (np.array([[1, a], [0, 1]]) if rng.integers(2) else np.array([[1, 0], [a, 1]])) % d
        p = SymplecticParams.from_matrix(m.tolist(), d)
        k, l, mu, nu = p.as_tuple()
        for ln in enumerate_lines(ctx15):
            image = act_on_line(p, ln, ctx15)
            expected = {((k * r + mu * s) % d, (l * r + nu * s) % d) for r, s in ln.points}
            assert set(image.points) == expected
