"""Generator bases from derivation equations B(a b) = B(a) b + a B(b).

Compact G2 and split G2(2) come from the explicit tables; F4 and E6 are built
from the exceptional Jordan algebra and checked against the solved nullspace.

F4 labelling convention (c_1 .. c_52, all in the f-basis):

* c_45 .. c_52: derivations [L_{J2-J3}, L_{u}] with u = e_0 .. e_7 in the o3 slot.
  Together with so(8) they span so(9)_1, the stabilizer of J1.
* c_37 .. c_44: same with (J1 - J3, o2), spanning so(9)_2 with so(8).
* c_22 .. c_29: same with (J1 - J2, o1), spanning so(9)_3 with so(8).
* c_{30+i} = -[c_45, c_{46+i}], i = 0..6, the so(8) directions rotating
  e_0 of o3 into e_{i+1}.
* c_{k(k-1)/2+i+1} = -[c_{30+i}, c_{30+k}], 0 <= i < k <= 6, spanning so(7).

The minus sign in the last rule is what makes [c1, c2] = -c3.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import jordan
from .g2_tables import C_ENTRIES, ETA_ENTRIES, Q_ENTRIES, SCALED_FROM, SIGMA_DIAG
from .lie import GeneratorBasis, commutator
from .octonion import OCTONION_TENSOR

RANK_TOL = 1e-8
F4_KAPPA = -1.0 / 6.0
G2_KAPPA = -0.25
SPLIT_ETA = np.array([-1, -1, -1, 1, 1, 1, 1, -1, -1, -1, 1, 1, 1, 1], dtype=float)


class RankAmbiguous(ValueError):
    pass


@dataclass(frozen=True)
class DerivationProblem:
    """Derivations of an algebra with product (a b)_c = sum a_a b_b P[a, b, c].

    Derivations act on ``carrier`` (indices of the basis) and vanish elsewhere.
    """

    product_tensor: np.ndarray
    carrier: tuple

    @property
    def algebra_dim(self) -> int:
        return self.product_tensor.shape[0]

    @property
    def carrier_dim(self) -> int:
        return len(self.carrier)

    def leibniz_residual(self, D: np.ndarray) -> float:
        """max |D(ab) - D(a)b - aD(b)| over basis pairs; D is carrier-sized."""
        Dfull = self.embed(D)
        P = self.product_tensor
        lhs = np.einsum("abc,ec->abe", P, Dfull)
        rhs = np.einsum("fa,fbe->abe", Dfull, P) + np.einsum("fb,afe->abe", Dfull, P)
        return float(np.abs(lhs - rhs).max())

    def embed(self, D: np.ndarray) -> np.ndarray:
        n = self.algebra_dim
        out = np.zeros((n, n))
        idx = np.array(self.carrier)
        out[np.ix_(idx, idx)] = D
        return out


def octonion_problem() -> DerivationProblem:
    return DerivationProblem(OCTONION_TENSOR, tuple(range(1, 8)))


def quaternion_problem() -> DerivationProblem:
    # e1, e2, e3 span a quaternion subalgebra of the table
    idx = [0, 1, 2, 3]
    return DerivationProblem(OCTONION_TENSOR[np.ix_(idx, idx, idx)], (1, 2, 3))


def jordan_problem() -> DerivationProblem:
    return DerivationProblem(jordan.jordan_tensor(), tuple(range(jordan.DIM)))


def derivation_operator(problem: DerivationProblem) -> np.ndarray:
    """Matrix of the linear map D -> D(ab) - D(a)b - aD(b), rows over pairs a <= b."""
    P = problem.product_tensor
    n = problem.algebra_dim
    idx = np.array(problem.carrier)
    m = len(idx)
    E = np.zeros((n, m))
    E[idx, np.arange(m)] = 1.0
    PE = np.einsum("abc,cs->abs", P, E)  # (ab) seen by D's column index
    EP = np.einsum("fr,fbe->rbe", E, P)  # row index of D feeding the left factor
    EP2 = np.einsum("fr,afe->are", E, P)  # row index of D feeding the right factor
    blocks = []
    for a in range(n):
        b = np.arange(a, n)
        t1 = np.einsum("bs,er->bers", PE[a, b], E)
        t2 = np.einsum("s,rbe->bers", E[a], EP[:, b, :])
        t3 = np.einsum("bs,re->bers", E[b], EP2[a])
        blocks.append((t1 - t2 - t3).reshape(len(b) * n, m * m))
    return np.concatenate(blocks)


def solve_derivations(problem: DerivationProblem, rank_tol: float = RANK_TOL, kappa: float = -1.0) -> GeneratorBasis:
    """Nullspace basis of the derivation operator, orthonormal for kappa * Tr."""
    A = derivation_operator(problem)
    _, s, vt = np.linalg.svd(A, full_matrices=False)
    m = problem.carrier_dim
    sv = np.zeros(m * m)
    sv[: len(s)] = s
    smax = float(s.max())
    tol = rank_tol * smax
    near = (sv > tol / 10) & (sv < tol * 10)
    if near.any():
        raise RankAmbiguous(f"singular values straddle the tolerance: {sv[near]}")
    null = vt[sv <= tol]
    gens = null.reshape(-1, m, m)
    G = kappa * np.einsum("aij,bji->ab", gens, gens)
    w, V = np.linalg.eigh(G)
    if w.min() <= 0:
        raise RankAmbiguous("trace form is not definite on the derivation algebra")
    gens = np.einsum("ab,bij->aij", V / np.sqrt(w), gens)
    return GeneratorBasis(f"Der({problem.carrier_dim})", gens, kappa, np.ones(len(gens)))


def subspace_distance(A: np.ndarray, B: np.ndarray) -> float:
    """Largest principal-angle sine between spans of two matrix families."""
    a = np.linalg.qr(A.reshape(len(A), -1).T)[0]
    b = np.linalg.qr(B.reshape(len(B), -1).T)[0]
    if a.shape[1] != b.shape[1]:
        return 1.0
    return float(np.linalg.norm(a - b @ (b.T @ a), 2))


# ---------------------------------------------------------------------------
# G2


def _from_entries(table) -> np.ndarray:
    out = np.zeros((14, 7, 7))
    for i, entries in table.items():
        for r, c, v in entries:
            out[i - 1, r - 1, c - 1] = v
        if i >= SCALED_FROM:
            out[i - 1] /= np.sqrt(3.0)
    return out


@lru_cache(maxsize=None)
def g2_golden() -> GeneratorBasis:
    """C_1 .. C_14 as printed; -1/4 Tr(C_i C_j) = delta_ij."""
    return GeneratorBasis("g2", _from_entries(C_ENTRIES), G2_KAPPA, np.ones(14))


@lru_cache(maxsize=None)
def split_g2_generators() -> GeneratorBasis:
    """Q_1 .. Q_14 as printed; (1/4) Tr(Q_i Q_j) = eta_ij."""
    return GeneratorBasis("g2_split", _from_entries(Q_ENTRIES), 0.25, SPLIT_ETA)


def so4_stabilizer() -> tuple[np.ndarray, np.ndarray]:
    """The matrices sigma, eta generating the stabilizer of (C5, C11) in SO(4)."""
    sigma = np.diag(np.array(SIGMA_DIAG, dtype=float))
    eta = np.zeros((7, 7))
    for r, c, v in ETA_ENTRIES:
        eta[r - 1, c - 1] = v
    return sigma, eta


# ---------------------------------------------------------------------------
# F4 and E6


def _normalize(M: np.ndarray, kappa: float = F4_KAPPA) -> np.ndarray:
    n = (kappa * np.trace(M @ M)).real
    return M / np.sqrt(n)


def _jordan_mixer(diag_pair: tuple[int, int], slot: int, j: int) -> np.ndarray:
    """[L_{J_a - J_b}, L_u] for u = e_j placed in the octonion slot (e-basis)."""
    a, b = diag_pair
    E = jordan.phi(jordan.diagonal(a)) - jordan.phi(jordan.diagonal(b))
    U = np.zeros(jordan.DIM)
    U[slot + j] = 1.0
    return _normalize(commutator(jordan.mult_operator(E), jordan.mult_operator(U)))


def so7_index(i: int, k: int) -> int:
    """Label of c_{k(k-1)/2+i+1}, the so(7) element from the pair (i, k)."""
    return k * (k - 1) // 2 + i + 1


def _so7_from_directions(X: dict) -> dict:
    out = {}
    for k in range(1, 7):
        for i in range(k):
            out[so7_index(i, k)] = -commutator(X[i], X[k])
    return out


@lru_cache(maxsize=None)
def _f4_ebasis() -> dict:
    c = {}
    for j in range(8):
        c[45 + j] = _jordan_mixer((2, 3), jordan.O3, j)
        c[37 + j] = _jordan_mixer((1, 3), jordan.O2, j)
        c[22 + j] = _jordan_mixer((1, 2), jordan.O1, j)
    X = {i: -commutator(c[45], c[46 + i]) for i in range(7)}
    for i in range(7):
        c[30 + i] = X[i]
    c.update(_so7_from_directions(X))
    return c


def to_f_basis(M: np.ndarray) -> np.ndarray:
    F = jordan.f_basis_change()
    return F @ M @ F.T


@lru_cache(maxsize=None)
def f4_generators() -> GeneratorBasis:
    """c_1 .. c_52 in the f-basis, -1/6 Tr(c_i c_j) = delta_ij."""
    c = _f4_ebasis()
    gens = np.array([to_f_basis(c[k]) for k in range(1, 53)])
    return GeneratorBasis("f4", gens, F4_KAPPA, np.ones(52))


def f4_ebasis_generators() -> GeneratorBasis:
    """Same generators in the phi (e-basis) coordinates of the Jordan algebra."""
    c = _f4_ebasis()
    return GeneratorBasis("f4_e", np.array([c[k] for k in range(1, 53)]), F4_KAPPA, np.ones(52))


def traceless_jordan_basis() -> np.ndarray:
    """26 traceless Jordan elements (phi coordinates), ordered by phi slots and
    orthonormal under (A|B) = Tr(A o B).

    Diagonal slots a1, a2 stand for the traceless diagonals (1, 0, -1) and
    (0, 1, -1), Gram-Schmidt orthonormalized in that order.
    """
    out = []
    diag1 = np.zeros(jordan.DIM)
    diag1[[jordan.A1, jordan.A3]] = [1.0, -1.0]
    diag2 = np.zeros(jordan.DIM)
    diag2[[jordan.A2, jordan.A3]] = [1.0, -1.0]
    d1 = diag1 / np.sqrt(jordan.trace_form(diag1, diag1))
    d2 = diag2 - jordan.trace_form(diag2, d1) * d1
    d2 = d2 / np.sqrt(jordan.trace_form(d2, d2))
    for slot in range(jordan.A3):
        if slot == jordan.A1:
            out.append(d1)
        elif slot == jordan.A2:
            out.append(d2)
        else:
            v = np.zeros(jordan.DIM)
            v[slot] = 1.0 / np.sqrt(2.0)
            out.append(v)
    return np.array(out)


@lru_cache(maxsize=None)
def e6_generators() -> GeneratorBasis:
    """c_1 .. c_78 of compact E6: the F4 generators and i M(Y) for traceless Y."""
    f4 = f4_generators()
    extra = [to_f_basis(_normalize(1j * jordan.mult_operator(y))) for y in traceless_jordan_basis()]
    gens = np.concatenate([f4.generators.astype(complex), np.array(extra)])
    return GeneratorBasis("e6", gens, F4_KAPPA, np.ones(78))


def e6_noncompact_generators() -> GeneratorBasis:
    """The real form E6(-26): same as e6_generators without the factor i."""
    e6 = e6_generators()
    gens = e6.generators.copy()
    gens[52:] = (gens[52:] / 1j).real
    return GeneratorBasis("e6(-26)", gens.real, F4_KAPPA, np.r_[np.ones(52), -np.ones(26)])


def e6_cartan_rotated() -> tuple[np.ndarray, np.ndarray]:
    """(c~53, c~70) = rotation of (c53, c70) by 60 degrees."""
    e6 = e6_generators()
    a, b = e6[53], e6[70]
    s = np.sqrt(3.0) / 2
    return 0.5 * a + s * b, -s * a + 0.5 * b


@lru_cache(maxsize=None)
def so8_adapted(v: int) -> dict:
    """so(8) basis whose so(7) part commutes with c_v, v in {22, 37, 45}.

    X_{30+i} = -[c_v, c_{v+1+i}] and X_n follow the same recursion as c_n.
    v = 45 returns the c_a themselves; v = 22 is the c~ family.  Each map
    c_a -> X_a (a in 1..21, 30..36) preserves structure constants, but the
    three so(7)'s are exchanged by triality, so only v = 45 extends to the
    Spin(9) spanned together with c_45..c_52.
    """
    if v not in (22, 37, 45):
        raise ValueError("v must start one of the octonion blocks 22, 37, 45")
    f4 = f4_generators()
    X = {i: -commutator(f4[v], f4[v + 1 + i]) for i in range(7)}
    out = {30 + i: X[i] for i in range(7)}
    out.update(_so7_from_directions(X))
    return out


def tilde_generators() -> dict:
    """The c~ family: so(8) adapted to c_22."""
    return so8_adapted(22)


def tilde_basis() -> GeneratorBasis:
    t = tilde_generators()
    return GeneratorBasis("so8_tilde", np.array([t[k] for k in SO8_LABELS]), F4_KAPPA, np.ones(28), SO8_LABELS)


SPIN9_LABELS = tuple(list(range(1, 22)) + list(range(30, 37)) + list(range(45, 53)))
SO8_LABELS = tuple(list(range(1, 22)) + list(range(30, 37)))
