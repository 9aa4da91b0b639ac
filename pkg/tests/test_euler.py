import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exceptional_euler import euler as E

FAST = ["su2", "su3", "g2_so4", "g2_su3", "spin9"]
SLOW = ["f4", "e6"]


@pytest.mark.parametrize("name", FAST + SLOW)
def test_numeric_density_matches_closed_form(name):
    s = E.SCHEDULES[name]()
    rng = np.random.default_rng(11)
    for _ in range(3 if name in FAST else 1):
        x = E.random_interior_point(s, rng)
        assert abs(E.haar_density(s, x) / s.density_form(x) - 1) < 1e-8


def test_full_and_blockwise_density_agree_for_g2():
    s = E.schedule_g2_so4()
    x = E.random_interior_point(s, np.random.default_rng(4))
    assert abs(E.haar_density(s, x, blockwise=True) / E.haar_density(s, x, blockwise=False) - 1) < 1e-9


def test_printed_spin9_measure_differs_pointwise_but_integrates_the_same():
    s = E.schedule_spin9()
    x = E.random_interior_point(s, np.random.default_rng(5))
    assert abs(s.closed_form(x) / s.exact_form(x) - 1) > 1e-3
    assert abs(E.volume(s, s.closed_form) / E.volume(s, s.exact_form) - 1) < 1e-12


@pytest.mark.parametrize("name", FAST + SLOW)
def test_volumes(name):
    s = E.SCHEDULES[name]()
    assert abs(E.volume(s, s.density_form) / s.expected_volume - 1) < 1e-8


def test_doubled_range_gives_multiplicity_two():
    s = E.schedule_g2_so4().with_ranges(x1=(0, 4 * math.pi))
    assert abs(E.covering_multiplicity(s, E.G2_VOLUME) - 2) < 1e-9
    su2 = E.schedule_su2().with_ranges(x3=(0, 8 * math.pi))
    assert abs(E.covering_multiplicity(su2, 2 * math.pi**2) - 2) < 1e-9


def test_printed_e6_x25_range_is_not_a_cover():
    from exceptional_euler.verify import replace_region
    s = E.schedule_e6()
    cut = replace_region(s, E.E6_X25_PRINTED)
    m = E.covering_multiplicity(cut, s.expected_volume, cut.exact_form)
    assert abs(m - round(m)) > 1e-3


def test_su3_coset_constant_is_half_the_printed_one():
    assert E.G2_SU3_COSET_CONSTANT * 2 == E.G2_SU3_PRINTED_CONSTANT
    s = E.schedule_g2_su3()
    x = E.random_interior_point(s, np.random.default_rng(2))
    assert abs(E.haar_density(s, x) / s.closed_form(x) - 1) < 1e-9


def test_out_of_range_rejected():
    s = E.schedule_g2_so4()
    x = E.random_interior_point(s, np.random.default_rng(0))
    x[7] = 3 * x[6] - 0.1  # below the 3 x7 <= x8 wall
    with pytest.raises(E.OutOfRange):
        E.evaluate(s, x)
    with pytest.raises(E.OutOfRange):
        E.evaluate(s, np.zeros(3))


def test_evaluate_at_origin_is_identity():
    s = E.schedule_g2_so4()
    assert np.allclose(E.evaluate(s, np.zeros(14)), np.eye(7))


def test_evaluate_many_matches_evaluate():
    s = E.schedule_g2_su3()
    rng = np.random.default_rng(8)
    pts = np.array([E.random_interior_point(s, rng) for _ in range(4)])
    batch = E.evaluate_many(s, pts)
    for p, g in zip(pts, batch):
        assert np.allclose(E.evaluate(s, p), g, atol=1e-12)


def test_f4_samples_preserve_the_jordan_trace_form():
    from exceptional_euler.jordan import f_basis_change, trace_form
    F = f_basis_change()
    T = np.array([[trace_form(a, b) for b in np.eye(27)] for a in np.eye(27)])
    Tf = F @ T @ F.T
    for g in E.sample_haar(E.schedule_f4(), 3, 5):
        assert np.abs(g.T @ Tf @ g - Tf).max() < 1e-10
        assert np.isclose(np.linalg.det(g), 1.0)


@pytest.mark.parametrize("name", ["su2", "su3", "g2_so4"])
def test_samples_are_group_elements(name):
    s = E.SCHEDULES[name]()
    g = E.sample_haar(s, 3, 20)
    eye = np.eye(g.shape[1])
    assert np.abs(np.einsum("nij,nkj->nik", g, g.conj()) - eye).max() < 1e-10
    assert np.allclose(np.linalg.det(g), 1.0)


def test_sampler_is_deterministic():
    s = E.schedule_g2_so4()
    assert np.array_equal(E.sample_haar(s, 7, 50), E.sample_haar(s, 7, 50))
    assert not np.array_equal(E.sample_haar(s, 7, 50), E.sample_haar(s, 8, 50))


def test_sample_points_respect_ranges():
    s = E.schedule_g2_so4()
    pts = E.sample_points(s, 500, 1)
    for p in pts[:50]:
        E.check_range(s, p)


def test_su2_character_moments():
    m = E.character_moments(E.sample_haar(E.schedule_su2(), 0, 20_000))
    assert m.within()


@settings(max_examples=200, deadline=None)
@given(st.floats(-10, 10), st.floats(-10, 10))
def test_f_function_forms_agree(a, b):
    assert abs(E.f_g2(a, b) - E.f_g2_cosine_form(a, b)) < 1e-12


def test_split_f_function_is_positive_in_the_chamber():
    a = np.linspace(0.05, 1, 20)
    assert np.all(E.f_g2_split(2 * a, 2 * (3 * a + 0.1)) > 0)


def test_region_quadrature_converges_or_raises():
    region = E._g2_region()
    f = E.RegionFactor(region, lambda a, b: np.ones_like(a))
    assert np.isclose(E.integrate_region(f), (math.pi / 2) * (math.pi / 6) - 1.5 * (math.pi / 6) ** 2)
    wild = E.RegionFactor(region, lambda a, b: np.sin(1e4 * a * b))
    with pytest.raises(E.QuadratureNotConverged):
        E.integrate_region(wild, max_nodes=64)
