import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from exceptional_euler import derivations as D
from exceptional_euler.lie import (
    Factor,
    adjoint_rep,
    exp_series,
    expm,
    finite_difference_current,
    killing_form,
    product_exponential_current,
    structure_constants,
)


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, 14, elements=st.floats(-3, 3)))
def test_expm_matches_series_on_g2(c):
    X = D.g2_golden().combine(c)
    assert np.allclose(expm(X), exp_series(X), atol=1e-11)


@settings(max_examples=30, deadline=None)
@given(arrays(np.float64, 14, elements=st.floats(-3, 3)))
def test_g2_exponentials_are_orthogonal(c):
    g = expm(D.g2_golden().combine(c))
    assert np.allclose(g @ g.T, np.eye(7), atol=1e-12)
    assert np.isclose(np.linalg.det(g), 1.0)


def test_structure_constants_satisfy_jacobi():
    for b in (D.g2_golden(), D.split_g2_generators(), D.f4_generators()):
        sc = structure_constants(b)
        assert sc.jacobi_residual() < 1e-10
        assert sc.antisymmetry_residual() < 1e-12


def test_killing_forms():
    assert np.allclose(killing_form(structure_constants(D.f4_generators())), -18 * np.eye(52), atol=1e-9)
    assert np.allclose(killing_form(structure_constants(D.e6_generators())), -24 * np.eye(78), atol=1e-9)
    K = killing_form(structure_constants(D.g2_golden()))
    assert np.allclose(K, K[0, 0] * np.eye(14), atol=1e-10) and K[0, 0] < 0


def test_split_killing_form_signature():
    K = killing_form(structure_constants(D.split_g2_generators()))
    assert np.allclose(np.sign(np.diag(K)), D.SPLIT_ETA)


def test_exact_current_matches_finite_differences():
    b = D.g2_golden()
    factors = [Factor(f"C{l}", b[l], s) for l, s in ((3, 1), (2, 1), (11, np.sqrt(3)), (5, 1))]
    x = np.array([0.3, 0.7, 0.2, 1.1])
    exact = product_exponential_current(factors, x, b).components
    fd = finite_difference_current(factors, x, b)
    assert np.abs(exact - fd).max() < 1e-8


def test_adjoint_rep_is_a_representation():
    ad = adjoint_rep(D.g2_golden())
    sc = structure_constants(ad)
    assert np.allclose(sc.f, structure_constants(D.g2_golden()).f, atol=1e-10)
