import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wmub.bases import mub_basis_prime
from wmub.errors import NotSymplectic
from wmub.geometry import line
from wmub.hilbert import clock_z, displacement, equal_up_to_phase, fourier, is_unitary, shift_x
from wmub.modring import crt_context
from wmub.symplectic import (
    SymplecticParams,
    act_on_line,
    act_on_point,
    compose,
    decomposition,
    embed_tensor,
    factor_params,
    factorize_general,
    factorize_special,
    identity_params,
    inverse,
    prime_basis_params,
    shear_p,
    shear_x,
    squeeze,
    symplectic_operator,
)


def random_params(d, rng, length=6):
    """A random element of SL(2, Z(d)) as a product of elementary matrices."""
    m = np.eye(2, dtype=np.int64)
    for _ in range(length):
        a = int(rng.integers(0, d))
        e = np.array([[1, a], [0, 1]]) if rng.integers(2) else np.array([[1, 0], [a, 1]])
        m = m @ e % d
    return SymplecticParams.from_matrix(m.tolist(), d)


@st.composite
def sl2(draw, d):
    m = np.eye(2, dtype=np.int64)
    for _ in range(draw(st.integers(1, 6))):
        a = draw(st.integers(0, d - 1))
        e = np.array([[1, a], [0, 1]]) if draw(st.booleans()) else np.array([[1, 0], [a, 1]])
        m = m @ e % d
    return SymplecticParams.from_matrix(m.tolist(), d)


def satisfies_contract(params, op):
    d = params.d
    k, l, m, n = params.as_tuple()
    sx = op @ shift_x(d) @ op.conj().T
    sz = op @ clock_z(d) @ op.conj().T
    return (
        np.max(np.abs(sx - displacement(l, k, d))) < 1e-9
        and np.max(np.abs(sz - displacement(n, m, d))) < 1e-9
    )


def test_determinant_enforced():
    with pytest.raises(NotSymplectic):
        SymplecticParams.of(1, 1, 1, 1, 15)
    SymplecticParams.of(2, 0, 0, 8, 15)


def test_fourier_inverse_and_identity():
    d = 21
    assert equal_up_to_phase(symplectic_operator(SymplecticParams.of(0, -1, 1, 0, d)), fourier(d).conj().T)
    assert equal_up_to_phase(symplectic_operator(identity_params(d)), np.eye(d))


def test_z_conjugation_d21():
    d, nu = 21, 5
    p = SymplecticParams.of(0, -1, 1, nu, d)
    op = symplectic_operator(p)
    assert np.max(np.abs(op @ clock_z(d) @ op.conj().T - displacement(nu, 1, d))) < 1e-9


@pytest.mark.parametrize("a,expected", [
    (lambda d: shear_x(4, d), (1, 4, 0, 1)),
    (lambda d: shear_p(4, d), (1, 0, -4, 1)),
    (lambda d: squeeze(2, d), (2, 0, 0, 8)),
])
def test_generator_matrices(a, expected):
    d = 15
    params = SymplecticParams.of(*expected, d)
    assert satisfies_contract(params, a(d))


@pytest.mark.parametrize("d", [15, 21])
def test_conjugation_contract_random(d):
    rng = np.random.default_rng(d)
    for _ in range(60):
        p = random_params(d, rng)
        op = symplectic_operator(p)
        assert is_unitary(op)
        assert satisfies_contract(p, op), str(p)


def test_contract_where_xi_data_is_missing():
    d = 15
    # kappa = 0 and a zero-divisor 1 + lambda mu both force the generator word
    for p in [SymplecticParams.of(0, -1, 1, 7, d), SymplecticParams.of(1, 2, 1, 3, d)]:
        assert decomposition(p) is None
        assert satisfies_contract(p, symplectic_operator(p))


def test_xi_data():
    d = 21
    p = SymplecticParams.of(2, 1, 1, 1, d)
    dec = decomposition(p)
    w = (1 + 1 * 1) % d
    w_inv = pow(w, -1, d)
    assert dec.xi1.value == 2 * 1 * w_inv % d
    assert dec.xi2.value == 1 * pow(2, -1, d) * w % d
    assert dec.xi3.value == 2 * w_inv % d
    op = shear_p(-dec.xi1.value, d) @ shear_x(dec.xi2.value, d) @ squeeze(dec.xi3.value, d)
    assert satisfies_contract(p, op)


def test_generator_word_reconstructs_matrix():
    d = 15
    rng = np.random.default_rng(1)
    mats = {"shear_x": lambda a: [[1, a], [0, 1]], "shear_p": lambda b: [[1, 0], [-b, 1]], "squeeze": lambda c: [[c, 0], [0, pow(c, -1, d)]]}
    for _ in range(50):
        p = random_params(d, rng)
        m = np.eye(2, dtype=np.int64)
        # operator product A B ... corresponds to matrix product ... M_B M_A
        for kind, arg in factorize_general(p):
            m = np.array(mats[kind](arg)) @ m % d
        assert tuple(map(tuple, m.tolist())) == p.matrix


def test_compose_identity_and_inverse():
    d = 15
    rng = np.random.default_rng(2)
    for _ in range(20):
        b = random_params(d, rng)
        assert compose(identity_params(d), b) == b
        assert compose(b, inverse(b)) == identity_params(d)
        assert inverse(b).as_tuple() == tuple(x % d for x in (b.nu.value, -b.lambda_.value, -b.mu.value, b.kappa.value))


@settings(max_examples=40, deadline=None)
@given(sl2(15), sl2(15))
def test_composition_matches_operator_product(a, b):
    lhs = symplectic_operator(compose(a, b))
    rhs = symplectic_operator(a) @ symplectic_operator(b)
    assert equal_up_to_phase(lhs, rhs, tol=1e-8)


@settings(max_examples=30, deadline=None)
@given(sl2(15))
def test_commutation_preserved(p):
    d = p.d
    op = symplectic_operator(p)
    xp = op @ shift_x(d) @ op.conj().T
    zp = op @ clock_z(d) @ op.conj().T
    assert np.max(np.abs(xp @ zp - zp @ xp * np.exp(-2j * np.pi / d))) < 1e-9


def test_identity_fixes_points():
    d = 15
    for r in range(d):
        for s in range(d):
            assert act_on_point(identity_params(d), (r, s)) == (r, s)


def test_fourier_params_swap_axes():
    ctx = crt_context(3, 7)
    p = SymplecticParams.of(0, -1, 1, 0, 21)
    assert act_on_line(p, line(0, 1, ctx), ctx).pair == (1, 0)


def test_group_action_order_d15():
    d = 15
    rng = np.random.default_rng(4)
    for _ in range(10):
        a, b = random_params(d, rng), random_params(d, rng)
        ab = compose(a, b)
        for r in range(d):
            for s in range(d):
                assert act_on_point(ab, (r, s)) == act_on_point(a, act_on_point(b, (r, s)))


def test_special_parameters_d21():
    ctx = crt_context(3, 7)
    for nu1 in range(3):
        for nu2 in range(7):
            assert factorize_special(nu1, nu2, ctx).as_tuple() == (0, 2, 10, (7 * nu1 + 15 * nu2) % 21)
    for nu2 in range(7):
        assert factorize_special(-1, nu2, ctx).as_tuple() == (7, 9, 3, (7 + 15 * nu2) % 21)


@pytest.mark.parametrize("p1,p2", [(3, 5), (5, 3), (3, 7)])
def test_special_operator_is_tensor_product(p1, p2):
    ctx = crt_context(p1, p2)
    for nu1 in range(-1, p1):
        for nu2 in range(-1, p2):
            s = symplectic_operator(factorize_special(nu1, nu2, ctx))
            s1 = symplectic_operator(prime_basis_params(p1, nu1))
            s2 = symplectic_operator(prime_basis_params(p2, nu2))
            assert equal_up_to_phase(s, embed_tensor(s1, s2, ctx), tol=1e-8), (nu1, nu2)


def test_prime_operator_builds_mub():
    # S(0,-1|1,nu)|X;m> is the m-th vector of basis nu, with no extra phase
    for p in (3, 5, 7):
        for nu in range(p):
            op = symplectic_operator(prime_basis_params(p, nu))
            assert equal_up_to_phase(op, mub_basis_prime(p, nu))


def test_factorization_across_primes():
    ctx = crt_context(3, 5)
    rng = np.random.default_rng(5)
    done = 0
    while done < 40:
        p = random_params(ctx.d, rng)
        if decomposition(p) is None:
            continue
        f1, f2 = factor_params(p, ctx)
        assert equal_up_to_phase(
            symplectic_operator(p),
            embed_tensor(symplectic_operator(f1), symplectic_operator(f2), ctx),
            tol=1e-8,
        )
        done += 1
