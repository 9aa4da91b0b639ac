"""The 27-dimensional exceptional Jordan algebra of 3x3 octonionic hermitian matrices.

A hermitian matrix

    [[a1,  o1,  o2 ],
     [o1*, a2,  o3 ],
     [o2*, o3*, a3 ]]

is flattened by ``phi`` into R^27 in the order (a1, o1, o2, a2, o3, a3),
each octonion contributing its 8 coefficients.  Slot numbers quoted in
docstrings are 1-based, so a1 sits in slot 1, a2 in slot 18, a3 in slot 27.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .octonion import oct_conj, oct_mul

DIM = 27
# 0-based offsets inside the 27-vector
A1, O1, O2, A2, O3, A3 = 0, 1, 9, 17, 18, 26


@dataclass(frozen=True)
class JordanElement:
    a: tuple = (0.0, 0.0, 0.0)
    o1: np.ndarray = field(default_factory=lambda: np.zeros(8))
    o2: np.ndarray = field(default_factory=lambda: np.zeros(8))
    o3: np.ndarray = field(default_factory=lambda: np.zeros(8))

    def matrix(self) -> np.ndarray:
        """3x3x8 array of octonion entries."""
        M = np.zeros((3, 3, 8))
        for i in range(3):
            M[i, i, 0] = self.a[i]
        for (i, j), o in (((0, 1), self.o1), ((0, 2), self.o2), ((1, 2), self.o3)):
            M[i, j] = o
            M[j, i] = oct_conj(o)
        return M

    @classmethod
    def from_matrix(cls, M: np.ndarray) -> "JordanElement":
        return cls(
            a=(float(M[0, 0, 0]), float(M[1, 1, 0]), float(M[2, 2, 0])),
            o1=np.array(M[0, 1]),
            o2=np.array(M[0, 2]),
            o3=np.array(M[1, 2]),
        )

    def __add__(self, other):
        return phi_inv(phi(self) + phi(other))

    def __sub__(self, other):
        return phi_inv(phi(self) - phi(other))

    def __mul__(self, s: float):
        return phi_inv(s * phi(self))

    __rmul__ = __mul__


def phi(A: JordanElement) -> np.ndarray:
    v = np.zeros(DIM)
    v[A1] = A.a[0]
    v[O1:O1 + 8] = A.o1
    v[O2:O2 + 8] = A.o2
    v[A2] = A.a[1]
    v[O3:O3 + 8] = A.o3
    v[A3] = A.a[2]
    return v


def phi_inv(v) -> JordanElement:
    v = np.asarray(v, dtype=float)
    return JordanElement(
        a=(float(v[A1]), float(v[A2]), float(v[A3])),
        o1=v[O1:O1 + 8].copy(),
        o2=v[O2:O2 + 8].copy(),
        o3=v[O3:O3 + 8].copy(),
    )


def diagonal(i: int) -> JordanElement:
    """J_i: the single diagonal entry (i, i) equal to one, i = 1, 2, 3."""
    a = [0.0, 0.0, 0.0]
    a[i - 1] = 1.0
    return JordanElement(a=tuple(a))


def identity() -> JordanElement:
    return JordanElement(a=(1.0, 1.0, 1.0))


def _oct_matmul(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return np.einsum("ika,kjb,abc->ijc", X, Y, _T())


@lru_cache(maxsize=1)
def _T():
    from .octonion import OCTONION_TENSOR
    return OCTONION_TENSOR


def jordan_mul(A: JordanElement, B: JordanElement) -> JordanElement:
    """A o B = (AB + BA)/2."""
    X, Y = A.matrix(), B.matrix()
    return JordanElement.from_matrix(0.5 * (_oct_matmul(X, Y) + _oct_matmul(Y, X)))


@lru_cache(maxsize=1)
def jordan_tensor() -> np.ndarray:
    """P[a, b, c] with phi(A o B)_c = sum_ab phi(A)_a phi(B)_b P[a, b, c]."""
    P = np.zeros((DIM, DIM, DIM))
    basis = [phi_inv(np.eye(DIM)[a]) for a in range(DIM)]
    for a in range(DIM):
        for b in range(a, DIM):
            P[a, b] = P[b, a] = phi(jordan_mul(basis[a], basis[b]))
    return P


def jordan_mul_vec(u, v) -> np.ndarray:
    """Jordan product in phi coordinates."""
    return np.einsum("...a,...b,abc->...c", u, v, jordan_tensor())


def mult_operator(y) -> np.ndarray:
    """27x27 matrix M(Y) with M(Y) v = phi(Y o phi^-1(v))."""
    return np.einsum("a,abc->cb", np.asarray(y, dtype=float), jordan_tensor())


def ell(A: JordanElement) -> float:
    """Trace A11 + A22 + A33."""
    return float(sum(A.a))


def trace_form(u, v) -> float:
    """(A|B) = Trace(A o B) in phi coordinates."""
    w = jordan_mul_vec(np.asarray(u, float), np.asarray(v, float))
    return float(w[A1] + w[A2] + w[A3])


def f_basis_change() -> np.ndarray:
    """Orthogonal F whose rows are f_1..f_27 written in the e-basis.

    f1 = (e1 - e18)/sqrt2, f18 = (e1 + e18 - 2 e27)/sqrt6,
    f27 = (e1 + e18 + e27)/sqrt3, f_a = e_a otherwise.
    """
    F = np.eye(DIM)
    F[A1] = 0.0
    F[A2] = 0.0
    F[A3] = 0.0
    F[A1, [A1, A2]] = [1 / np.sqrt(2), -1 / np.sqrt(2)]
    F[A2, [A1, A2, A3]] = np.array([1.0, 1.0, -2.0]) / np.sqrt(6)
    F[A3, [A1, A2, A3]] = 1 / np.sqrt(3)
    return F
