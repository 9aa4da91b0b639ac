import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from exceptional_euler import euler as E
from exceptional_euler import iwasawa as IW
from exceptional_euler.roots import extract_roots, simple_roots

SQ3 = math.sqrt(3)
small6 = arrays(np.float64, 6, elements=st.floats(-1, 1))


def test_split_pair_is_symmetric():
    dec = IW.g2_split_decomposition()
    assert max(dec.bracket_residuals().values()) < 1e-10
    assert dec.involution_residual() < 1e-10
    dec.check()


def test_positive_form_restricts_to_killing_on_p():
    dec = IW.g2_split_decomposition()
    B = dec.positive_form()
    assert np.linalg.eigvalsh(B).min() > 0


def test_wrong_split_is_rejected():
    dec = IW.cartan_decomposition(IW.D.split_g2_generators(), (1, 2, 3, 4))
    with pytest.raises(IW.NotSymmetric):
        dec.check()


def test_root_vectors_are_eigenvectors():
    d = IW.iwasawa_data()
    assert d.eigen_residual() < 1e-12
    assert np.abs(d.cartan[0] @ d.cartan[1] - d.cartan[1] @ d.cartan[0]).max() < 1e-14


def test_printed_roots_carry_the_opposite_sign():
    # [H_a, R_i] = -r_ia R_i; the vielbein is built with e^{-r.y}
    assert IW.iwasawa_data().root_sign() == -1.0


def test_extracted_split_roots_match_printed():
    d = IW.iwasawa_data()
    rs = simple_roots(extract_roots(d.basis, IW.H_LABELS))
    pos = rs.positive(direction=np.array([0.1, 1.0]))
    for r in IW.PRINTED_ROOTS:
        assert np.min(np.linalg.norm(pos - r, axis=1)) < 1e-9


def test_positive_root_span_is_nilpotent():
    d = IW.iwasawa_data()
    assert d.nilpotency_residual() < 1e-12


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, 2, elements=st.floats(-2, 2)))
def test_cartan_conjugation_scales_root_vectors(y):
    d = IW.iwasawa_data()
    A = IW.cartan_exp(y)
    A_inv = IW.cartan_exp(-y)
    for R, r in zip(d.root_matrices, d.positive_roots):
        assert np.allclose(A @ R @ A_inv, np.exp(-r @ y) * R, atol=1e-10 * max(1, np.exp(abs(r @ y))))


@settings(max_examples=100, deadline=None)
@given(small6)
def test_nilpotent_currents_match_printed_polynomials(x):
    assert np.abs(IW.numeric_nilpotent_currents(x) - IW.nilpotent_currents(x)).max() < 1e-9


@settings(max_examples=50, deadline=None)
@given(small6)
def test_N_is_unipotent(x):
    assert IW.unipotency_residual(x) < 1e-12


def test_printed_current_examples():
    n = IW.nilpotent_currents(np.array([1.0, 0, 0, 0, 0, 0]))
    assert np.array_equal(n[0], np.eye(6)[0])
    assert np.allclose(n[4], [0, 0, 0, 0, 1, -4 / SQ3])
    assert np.isclose(n[1, 5], -64 / (3 * SQ3))


def test_currents_have_degree_at_most_three():
    # fourth finite difference along x1 of a cubic vanishes
    base = np.array([0.1, -0.3, 0.2, 0.4, -0.1, 0.25])
    h = 0.2
    vals = [IW.numeric_nilpotent_currents(base + k * h * np.eye(6)[0]) for k in range(5)]
    d4 = vals[4] - 4 * vals[3] + 6 * vals[2] - 4 * vals[1] + vals[0]
    assert np.abs(d4).max() < 1e-9
    for j in range(1, 6):
        vals = [IW.numeric_nilpotent_currents(base + k * h * np.eye(6)[j]) for k in range(3)]
        assert np.abs(vals[2] - 2 * vals[1] + vals[0]).max() < 1e-9


def test_compose_at_origin_is_identity():
    assert np.allclose(IW.iwasawa_compose(np.zeros(6), np.zeros(2), np.zeros(6)), np.eye(7))


def test_compose_is_a_local_diffeomorphism():
    rng = np.random.default_rng(1)
    for _ in range(5):
        p = rng.uniform(0.1, 0.9, 14)
        s = np.linalg.svd(IW.iwasawa_jacobian(p), compute_uv=False)
        assert np.sum(s > 1e-6) == 14


def test_composed_element_preserves_the_split_metric():
    # split G2 sits in SO(3, 4) with metric diag(-1, -1, -1, 1, 1, 1, 1)
    S = np.diag([-1.0, -1, -1, 1, 1, 1, 1])
    for Q in IW.D.split_g2_generators().generators:
        assert np.abs(Q.T @ S + S @ Q).max() < 1e-12
    rng = np.random.default_rng(2)
    g = IW.iwasawa_compose(rng.normal(size=6), rng.normal(size=2), rng.normal(size=6))
    assert np.abs(g.T @ S @ g - S).max() < 1e-10 * np.abs(g).max() ** 2
    assert np.isclose(np.linalg.det(g), 1.0)


@settings(max_examples=30, deadline=None)
@given(arrays(np.float64, 2, elements=st.floats(-1, 1)), small6)
def test_printed_vielbein_matches_general_construction(y, x):
    assert np.abs(IW.iwasawa_coset_vielbein(y, x) - IW.general_coset_vielbein(y, x)).max() < 1e-8
    assert IW.cartan_leak(y, x) < 1e-10


def test_metric_at_origin_and_dy_block():
    g = IW.iwasawa_metric(np.zeros(2), np.zeros(6))
    assert np.allclose(g, np.diag(np.diag(g)))
    assert np.allclose(g[6:, 6:], np.eye(2))
    assert np.allclose(np.diag(g)[:6], [4, 8 / 3, 8, 4, 8, 8 / 3])


def test_metric_is_positive_definite():
    rng = np.random.default_rng(3)
    for _ in range(100):
        g = IW.iwasawa_metric(rng.uniform(-1, 1, 2), rng.uniform(-1, 1, 6))
        assert np.linalg.eigvalsh(g).min() > 0


def test_weyl_trick_on_g2_schedule():
    s = IW.schedule_g2_split()
    middle = [f for f in s.factors if 6 in f.params][0]
    assert [t.label for t in middle.terms] == ["Q11", "Q5"]
    assert np.isclose(middle.terms[0].scale, SQ3)
    assert s.ranges[6] == (0, math.inf)
    rng = np.random.default_rng(4)
    for _ in range(5):
        x = E.random_interior_point(s, rng)
        x[6], x[7] = 0.3, 1.4
        assert abs(E.haar_density(s, x) / s.closed_form(x) - 1) < 1e-9


def test_weyl_trick_leaves_subgroup_factors():
    s = IW.schedule_g2_split()
    c = E.schedule_g2_so4()
    for a, b in zip(s.factors, c.factors):
        if 6 in a.params:
            continue
        assert np.array_equal(a.terms[0].matrix, b.terms[0].matrix)
