import math

import numpy as np
import pytest

from exceptional_euler import coset as CS
from exceptional_euler import euler as E
from exceptional_euler.verify import hmetric_fit, split_chart_points


def test_su2_chart_is_the_half_radius_sphere():
    ch = CS.su2_chart()
    for th in (0.3, 1.0, 2.5):
        g = ch.metric(np.array([1.0, th]))
        assert np.allclose(g, 0.25 * np.diag([np.sin(th) ** 2, 1.0]))


def test_sphere_ricci_is_four_g():
    ch = CS.su2_chart()
    p = np.array([0.7, 1.2])
    assert np.allclose(CS.ricci_fd(CS.chart_metric_fn(ch), p), 4 * ch.metric(p), atol=1e-7)


def test_flat_metric_has_zero_ricci():
    assert np.abs(CS.ricci_fd(lambda x: np.eye(2), np.array([0.3, 0.4]))).max() < 1e-12


def test_coarse_step_raises():
    fn = CS.chart_metric_fn(CS.su2_chart())
    with pytest.raises(CS.StepTooLarge):
        CS.ricci_fd(fn, np.array([0.7, 0.8]), step=0.5)


def test_chart_rejects_points_outside_range():
    with pytest.raises(E.OutOfRange):
        CS.su2_chart().metric(np.array([0.0, 4.0]))


def _s6_points(n, seed=0):
    ch = CS.g2_su3_chart()
    rng = np.random.default_rng(seed)
    return ch, [E.random_interior_point(ch.schedule, rng)[:6] for _ in range(n)]


def test_g2_su3_chart_is_round_six_sphere():
    ch, pts = _s6_points(50)
    assert CS.sphere_isometry_check(ch, pts) < 1e-8
    for p in pts[:10]:
        assert np.abs(4 / 3 * ch.metric(p) - CS.six_metric_printed(p)).max() < 1e-9


def test_six_sphere_equator_and_pole():
    p = np.array([0.4, 0.5, 0.6, 0.7, 0.8, math.pi / 2])
    g = CS.six_metric_printed(p)
    q = p.copy()
    q[5] = 1.0
    # angular block scales by sin^2 x6
    assert np.allclose(CS.six_metric_printed(q)[:5, :5], np.sin(1.0) ** 2 * g[:5, :5])
    q[5] = 1e-9
    assert np.allclose(CS.six_metric_printed(q), np.diag([0, 0, 0, 0, 0, 1.0]), atol=1e-12)


def test_fiber_projection_is_complete():
    ch, pts = _s6_points(5, 1)
    for p in pts:
        assert ch.fiber_residual(p) < 1e-10
    so4 = CS.g2_so4_chart()
    x = E.random_interior_point(so4.schedule, np.random.default_rng(2))[:8]
    assert so4.fiber_residual(x) < 1e-10


def test_metric_is_invariant_under_fiber_right_action():
    ch, pts = _s6_points(3, 3)
    b = ch.schedule.basis
    rng = np.random.default_rng(4)
    rows = [b.labels.index(l) for l in ch.coset_labels]
    for p in pts:
        h = E.expm(b.subset(ch.fiber_labels).combine(rng.normal(size=8)))
        h_inv = h.T
        mats = E._left_currents(ch.head, p, ch.dim)
        moved = np.array([h_inv @ M @ h for M in mats])
        J = b.project_many(moved).T[rows]
        assert np.allclose(J.T @ J, ch.metric(p), atol=1e-12)


def test_split_euler_chart_matches_root_structured_metric():
    ch = CS.g2_split_chart()
    for p in split_chart_points(np.random.default_rng(5), 20):
        g = ch.metric(p)
        assert np.abs(g - CS.hmetric_structured(p)).max() < 1e-10 * np.abs(g).max()


def test_printed_split_metric_is_not_a_rescaling_of_the_coset_metric():
    # recorded discrepancy: no single constant maps one onto the other
    k, res = hmetric_fit(split_chart_points(np.random.default_rng(6), 10))
    assert res > 0.1


def test_so4_current_forms_match_numeric_currents():
    s = E.schedule_g2_so4()
    a = E.random_interior_point(s, np.random.default_rng(7))
    J = E.current_components(s, a, s.factors[:6])
    rows = [s.basis.labels.index(l) for l in (1, 2, 3, 8, 9, 10)]
    forms = CS.so4_current_forms(np.concatenate([a[:6], [0, 0]]))
    assert np.allclose(J[rows, :6], forms[:, :6], atol=1e-12)


def test_both_split_charts_are_einstein_with_the_same_constant():
    rng = np.random.default_rng(8)
    euler = CS.einstein_check(CS.chart_metric_fn(CS.g2_split_chart()), split_chart_points(rng, 3))
    iwa = CS.einstein_check(CS.iwasawa_metric_fn, [rng.uniform(-0.5, 0.5, 8) for _ in range(3)])
    assert euler.spread < 1e-3 and iwa.spread < 1e-3
    assert abs(euler.mean / iwa.mean - 1) < 1e-3
    assert np.isclose(iwa.mean, -8.0, rtol=1e-5)
