import numpy as np
import pytest

from exceptional_euler import derivations as D
from exceptional_euler.lie import commutator


@pytest.mark.parametrize("problem, dim", [
    (D.octonion_problem, 14), (D.jordan_problem, 52), (D.quaternion_problem, 3)])
def test_derivation_dimensions_and_leibniz(problem, dim):
    p = problem()
    b = D.solve_derivations(p)
    assert b.dim == dim
    assert max(p.leibniz_residual(M) for M in b.generators) < 1e-10


def test_solved_g2_spans_golden_tables():
    solved = D.solve_derivations(D.octonion_problem())
    assert D.subspace_distance(solved.generators, D.g2_golden().generators) < 1e-10


def test_solved_jordan_derivations_span_f4_ebasis():
    solved = D.solve_derivations(D.jordan_problem())
    assert D.subspace_distance(solved.generators, D.f4_ebasis_generators().generators) < 1e-9


def test_golden_g2_is_derivation_and_orthonormal():
    b = D.g2_golden()
    p = D.octonion_problem()
    assert max(p.leibniz_residual(M) for M in b.generators) < 1e-12
    assert np.allclose(b.gram(), np.eye(14))


def test_split_generators_trace_form():
    Q = D.split_g2_generators()
    assert np.allclose(0.25 * np.einsum("aij,bji->ab", Q.generators, Q.generators), np.diag(D.SPLIT_ETA))
    C = D.g2_golden()
    for l in (1, 2, 3, 8, 9, 10):
        assert np.allclose(Q[l], C[l])


def test_f4_normalization_and_su2_triple():
    c = D.f4_generators()
    assert np.allclose(c.gram(), np.eye(52), atol=1e-12)
    assert np.allclose(commutator(c[1], c[2]), -c[3])
    assert np.allclose(commutator(c[2], c[3]), -c[1])
    # rotated to the f-basis: the trace direction decouples
    assert np.abs(c.generators[:, -1, :]).max() < 1e-12
    assert np.abs(c.generators[:, :, -1]).max() < 1e-12


def test_e6_is_complex_and_contains_f4():
    e6 = D.e6_generators()
    assert e6.dim == 78 and e6.is_complex
    f4 = D.f4_generators()
    assert np.allclose(e6.generators[:52], f4.generators)


@pytest.mark.parametrize("v", [22, 37, 45])
def test_adapted_so8_commutes_with_its_direction(v):
    f4 = D.f4_generators()
    basis = D.so8_adapted(v)
    assert len(basis) == 28
    so7 = [k for k in basis if k < 22]
    assert max(np.abs(commutator(basis[k], f4[v])).max() for k in so7) < 1e-12


def test_adapted_basis_at_45_is_the_c_basis():
    f4 = D.f4_generators()
    basis = D.so8_adapted(45)
    assert max(np.abs(basis[k] - f4[k]).max() for k in basis) < 1e-12


def test_adapted_so8_rejects_other_directions():
    with pytest.raises(ValueError):
        D.so8_adapted(23)


def test_spin9_labels_close_under_brackets():
    from exceptional_euler.lie import structure_constants
    b = D.f4_generators().subset(D.SPIN9_LABELS)
    assert b.dim == 36
    structure_constants(b)
