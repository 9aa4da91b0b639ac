import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from exceptional_euler import jordan as J
from exceptional_euler.octonion import FANO_LINES, oct_conj, oct_mul, oct_norm, unit

vec8 = arrays(np.float64, 8, elements=st.floats(-10, 10))
vec27 = arrays(np.float64, 27, elements=st.floats(-5, 5))


def test_fano_lines_close_quaternionic_triples():
    for i, j, k in FANO_LINES:
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            assert np.allclose(oct_mul(unit(a), unit(b)), unit(c))
            assert np.allclose(oct_mul(unit(b), unit(a)), -unit(c))


def test_imaginary_units_square_to_minus_one():
    for i in range(1, 8):
        assert np.allclose(oct_mul(unit(i), unit(i)), -unit(0))


@settings(max_examples=200, deadline=None)
@given(vec8, vec8)
def test_norm_is_multiplicative(a, b):
    assert np.isclose(oct_norm(oct_mul(a, b)), oct_norm(a) * oct_norm(b), rtol=1e-10, atol=1e-9)


@settings(max_examples=100, deadline=None)
@given(vec8, vec8)
def test_conjugation_reverses_products(a, b):
    assert np.allclose(oct_conj(oct_mul(a, b)), oct_mul(oct_conj(b), oct_conj(a)), atol=1e-9)


def test_octonions_are_not_associative():
    a, b, c = unit(1), unit(2), unit(4)
    assert not np.allclose(oct_mul(oct_mul(a, b), c), oct_mul(a, oct_mul(b, c)))


@settings(max_examples=50, deadline=None)
@given(vec27)
def test_phi_round_trip(v):
    assert np.array_equal(J.phi(J.phi_inv(v)), v)


@settings(max_examples=50, deadline=None)
@given(vec27, vec27)
def test_jordan_product_is_commutative(u, v):
    assert np.allclose(J.jordan_mul_vec(u, v), J.jordan_mul_vec(v, u), atol=1e-9)


@settings(max_examples=30, deadline=None)
@given(vec27, vec27)
def test_jordan_identity(u, v):
    # (u^2 v) u = u^2 (v u)
    u2 = J.jordan_mul_vec(u, u)
    lhs = J.jordan_mul_vec(J.jordan_mul_vec(u2, v), u)
    rhs = J.jordan_mul_vec(u2, J.jordan_mul_vec(v, u))
    assert np.allclose(lhs, rhs, rtol=1e-9, atol=1e-6)


def test_identity_is_unit_and_diagonals_are_idempotent():
    e = J.phi(J.identity())
    v = np.random.default_rng(0).normal(size=27)
    assert np.allclose(J.jordan_mul_vec(e, v), v)
    for i in (1, 2, 3):
        d = J.phi(J.diagonal(i))
        assert np.allclose(J.jordan_mul_vec(d, d), d)


def test_trace_form_on_diagonals():
    assert J.trace_form(J.phi(J.identity()), J.phi(J.identity())) == 3.0
    assert J.ell(J.identity()) == 3.0


def test_f_basis_change_is_orthogonal():
    F = J.f_basis_change()
    assert np.allclose(F @ F.T, np.eye(27))
