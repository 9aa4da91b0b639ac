import math

import numpy as np
import pytest

from exceptional_euler import derivations as D
from exceptional_euler.groups import macdonald, root_system
from exceptional_euler.roots import (
    MacdonaldInput,
    NoSimpleSystem,
    NotCommuting,
    RootSystem,
    angle_residual,
    extract_roots,
    macdonald_volume,
    simple_roots,
    sphere_volume,
    torus_volume,
    weyl_closure_residual,
)

CARTAN = {
    "g2": [[2, -1], [-3, 2]],
    "f4": [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    "spin9": [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -2], [0, 0, -1, 2]],
}


@pytest.mark.parametrize("name, count", [("su2", 2), ("su3", 6), ("g2", 12), ("spin9", 32), ("f4", 48), ("e6", 72),
                                         ("g2_split", 12)])
def test_root_counts_and_weyl_closure(name, count):
    rs = root_system(name)
    assert len(rs.roots) == count
    assert weyl_closure_residual(rs) < 1e-9
    assert angle_residual(rs) < 1e-9


@pytest.mark.parametrize("name", sorted(CARTAN))
def test_cartan_matrices(name):
    assert np.array_equal(root_system(name).cartan_matrix, np.array(CARTAN[name]))


def test_e6_cartan_matrix_is_simply_laced_of_rank_6():
    A = root_system("e6").cartan_matrix
    assert A.shape == (6, 6) and np.array_equal(A, A.T)
    assert np.isclose(np.linalg.det(A), 3)


def test_g2_length_ratio():
    n = np.sort(root_system("g2").norms ** 2)
    assert np.isclose(n[-1] / n[0], 3)


def test_split_roots_are_real_and_match_printed_up_to_sign():
    from exceptional_euler.iwasawa import PRINTED_ROOTS
    rs = root_system("g2_split")
    for r in PRINTED_ROOTS:
        assert rs.contains(r) and rs.contains(-r)


def test_noncommuting_cartan_labels_rejected():
    with pytest.raises(NotCommuting):
        extract_roots(D.g2_golden(), (1, 2))


def test_orthogonal_direction_rejected():
    rs = root_system("su3")
    with pytest.raises(NoSimpleSystem):
        simple_roots(RootSystem(rs.rank, rs.roots), direction=np.array([rs.roots[0][1], -rs.roots[0][0]]))


def test_sphere_volumes():
    assert np.isclose(sphere_volume(1), 2 * math.pi)
    assert np.isclose(sphere_volume(3), 2 * math.pi**2)
    with pytest.raises(ValueError):
        sphere_volume(2)


def test_torus_volume_lattices():
    simple = root_system("f4").simple
    assert np.isclose(torus_volume(simple, "coroot"), 2.0)
    assert np.isclose(torus_volume(simple, "root"), 0.5)
    assert np.isclose(torus_volume(root_system("g2").simple), math.sqrt(3) / 2)
    assert np.isclose(torus_volume(root_system("e6").simple), math.sqrt(3))


def test_macdonald_su2():
    # one root of length 2 in the i sigma basis
    assert np.isclose(macdonald_volume(MacdonaldInput(1.0, (3,), (2.0, 2.0))), 2 * math.pi**2)
    assert np.isclose(macdonald("su2"), 2 * math.pi**2)


@pytest.mark.parametrize("name, ref", [
    ("su3", math.sqrt(3) * math.pi**5),
    ("g2", 9 * math.sqrt(3) * math.pi**8 / 20),
    ("spin9", 2**17 * math.pi**20 / (3**4 * 5**2 * 7)),
    ("f4", 2**26 * math.pi**28 / (3**7 * 5**4 * 7**2 * 11)),
    ("e6", math.sqrt(3) * 2**17 * math.pi**42 / (3**10 * 5**5 * 7**3 * 11)),
])
def test_macdonald_closed_forms(name, ref):
    assert abs(macdonald(name) / ref - 1) < 1e-12
