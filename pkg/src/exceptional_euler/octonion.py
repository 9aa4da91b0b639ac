"""Octonion arithmetic on the Fano-plane multiplication table.

Elements are stored as length-8 coefficient arrays over (e0, e1, ..., e7),
with e0 the unit. All products go through a dense structure tensor
``OCTONION_TENSOR[a, b, c]`` defined by ``e_a e_b = sum_c T[a, b, c] e_c``.

The oriented lines below are the unique orientation (up to global reversal)
of the Fano plane for which the explicit G2 generators C1..C14 are
derivations with e1 e2 = e3.  The reversed table is the opposite algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# oriented lines (i, j, k): e_i e_j = e_k, cyclically
FANO_LINES = (
    (1, 2, 3),
    (1, 4, 5),
    (1, 7, 6),
    (2, 4, 6),
    (2, 5, 7),
    (3, 4, 7),
    (3, 6, 5),
)


def _build_tensor(lines=FANO_LINES) -> np.ndarray:
    T = np.zeros((8, 8, 8))
    for a in range(8):
        T[0, a, a] = 1.0
        T[a, 0, a] = 1.0
    for i in range(1, 8):
        T[i, i, 0] = -1.0
    for i, j, k in lines:
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            T[a, b, c] = 1.0
            T[b, a, c] = -1.0
    return T


OCTONION_TENSOR = _build_tensor()


def fano_table() -> dict[tuple[int, int], tuple[int, int]]:
    """Map (i, j) in 1..7 to (sign, k) with e_i e_j = sign * e_k."""
    table = {}
    for i in range(1, 8):
        for j in range(1, 8):
            k = int(np.flatnonzero(OCTONION_TENSOR[i, j])[0])
            table[(i, j)] = (int(OCTONION_TENSOR[i, j, k]), k)
    return table


def oct_mul(a, b) -> np.ndarray:
    """Product of octonions given as (..., 8) coefficient arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.einsum("...a,...b,abc->...c", a, b, OCTONION_TENSOR)


def oct_conj(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a[..., 1:] *= -1.0
    return a


def oct_norm(a) -> np.ndarray:
    return np.linalg.norm(np.asarray(a, dtype=float), axis=-1)


def unit(i: int) -> np.ndarray:
    """Basis octonion e_i, i = 0..7."""
    e = np.zeros(8)
    e[i] = 1.0
    return e


def left_mul_matrix(a) -> np.ndarray:
    """8x8 matrix of x -> a x."""
    return np.einsum("a,abc->cb", np.asarray(a, dtype=float), OCTONION_TENSOR)


def right_mul_matrix(a) -> np.ndarray:
    """8x8 matrix of x -> x a."""
    return np.einsum("b,abc->ca", np.asarray(a, dtype=float), OCTONION_TENSOR)


@dataclass(frozen=True)
class Octonion:
    coeffs: tuple

    def __post_init__(self):
        c = tuple(float(v) for v in self.coeffs)
        if len(c) != 8:
            raise ValueError("an octonion has 8 coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def basis(cls, i: int) -> "Octonion":
        return cls(tuple(unit(i)))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs)

    def __mul__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(oct_mul(self.array, other.array)))

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(self.array + other.array))

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(self.array - other.array))

    def __neg__(self) -> "Octonion":
        return Octonion(tuple(-self.array))

    def conj(self) -> "Octonion":
        return Octonion(tuple(oct_conj(self.array)))

    def norm(self) -> float:
        return float(oct_norm(self.array))
