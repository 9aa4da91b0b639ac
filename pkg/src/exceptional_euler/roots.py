"""Root systems from simultaneous diagonalization, and Macdonald's volume formula.

Roots are expressed in the frame of the chosen Cartan generators, which are
orthonormal under the basis trace form; lengths therefore live in the same
normalization as the Haar densities of ``euler``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .lie import GeneratorBasis, adjoint_matrices, commutator, structure_constants

CLUSTER_TOL = 1e-7
COMMUTE_TOL = 1e-10
INTEGER_TOL = 1e-8


class NotCommuting(ValueError):
    pass


class DegenerateClustering(ValueError):
    pass


class NoSimpleSystem(ValueError):
    pass


@dataclass(frozen=True)
class RootSystem:
    rank: int
    roots: np.ndarray  # (n_roots, rank)
    simple: np.ndarray | None = None  # (rank, rank)
    cartan_matrix: np.ndarray | None = None

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.roots, axis=1)

    def contains(self, v, tol: float = CLUSTER_TOL) -> bool:
        return bool(np.min(np.linalg.norm(self.roots - v, axis=1)) < tol)

    def positive(self, direction=None) -> np.ndarray:
        d = _generic_direction(self.rank) if direction is None else np.asarray(direction, float)
        return self.roots[self.roots @ d > 0]


def _generic_direction(rank: int) -> np.ndarray:
    # fixed generic direction; orthogonal to no root in practice
    return np.random.default_rng(20240531).normal(size=rank)


def _weights(ad_cartan: np.ndarray, seed: int = 0) -> np.ndarray:
    """Eigenvalue tuples of commuting ad matrices, one row per eigenvector."""
    rng = np.random.default_rng(seed)
    coeffs = rng.normal(size=len(ad_cartan))
    M = np.einsum("a,aij->ij", coeffs, ad_cartan)
    _, V = np.linalg.eig(M)
    # Rayleigh quotients on each eigenvector give the individual eigenvalues
    AV = np.einsum("aij,jk->aik", ad_cartan, V)
    Vinv = np.linalg.inv(V)
    return np.einsum("ki,aik->ka", Vinv, AV)


def extract_roots(basis: GeneratorBasis, cartan_labels, tol: float = CLUSTER_TOL) -> RootSystem:
    H = [basis[l] for l in cartan_labels]
    for i in range(len(H)):
        for j in range(i + 1, len(H)):
            r = float(np.abs(commutator(H[i], H[j])).max())
            if r > COMMUTE_TOL:
                raise NotCommuting(f"labels {cartan_labels[i]}, {cartan_labels[j]}: residual {r:.2e}")
    ad = adjoint_matrices(structure_constants(basis))
    idx = [basis.labels.index(l) for l in cartan_labels]
    w = _weights(ad[idx])
    # compact forms give imaginary eigenvalues, split forms real ones
    vals = w.imag if np.abs(w.imag).max() > np.abs(w.real).max() else w.real
    vals = vals[np.linalg.norm(vals, axis=1) > tol]

    roots: list[np.ndarray] = []
    for v in vals:
        if not any(np.linalg.norm(v - r) < tol for r in roots):
            roots.append(v)
    roots_arr = np.round(np.array(roots), 9) + 0.0
    gaps = np.linalg.norm(roots_arr[:, None] - roots_arr[None], axis=-1)
    np.fill_diagonal(gaps, np.inf)
    if gaps.min() < 10 * tol:
        raise DegenerateClustering(f"two roots within {gaps.min():.2e}")
    order = np.lexsort(roots_arr.T[::-1])
    return RootSystem(len(cartan_labels), np.array(roots)[order])


def cartan_integers(a: np.ndarray, b: np.ndarray) -> float:
    """n_ab = 2 (a|b)/(a|a)."""
    return 2.0 * float(a @ b) / float(a @ a)


def simple_roots(rs: RootSystem, direction=None) -> RootSystem:
    pos = rs.positive(direction)
    if len(pos) * 2 != len(rs.roots):
        raise NoSimpleSystem("positivity direction is orthogonal to a root")
    decomposable = set()
    for i, a in enumerate(pos):
        for b in pos:
            s = a + b
            d = np.linalg.norm(pos - s, axis=1)
            j = int(np.argmin(d))
            if d[j] < CLUSTER_TOL:
                decomposable.add(j)
    simple = np.array([r for k, r in enumerate(pos) if k not in decomposable])
    if len(simple) != rs.rank:
        raise NoSimpleSystem(f"found {len(simple)} indecomposable roots, rank is {rs.rank}")
    # order simple roots along a Dynkin path, starting from a leaf
    n = np.array([[cartan_integers(a, b) for b in simple] for a in simple])
    simple = simple[_dynkin_order(n)]
    n = np.array([[cartan_integers(a, b) for b in simple] for a in simple])
    if np.abs(n - np.round(n)).max() > INTEGER_TOL:
        raise NoSimpleSystem("Cartan integers are not integral")
    coeffs = np.linalg.solve(simple.T, rs.roots.T).T
    if np.abs(coeffs - np.round(coeffs)).max() > INTEGER_TOL:
        raise NoSimpleSystem("roots are not integer combinations of the simple roots")
    c = np.round(coeffs)
    if not np.all((c >= 0).all(axis=1) | (c <= 0).all(axis=1)):
        raise NoSimpleSystem("mixed-sign decomposition")
    return replace(rs, simple=simple, cartan_matrix=np.round(n.T).astype(int))


def _dynkin_order(n: np.ndarray) -> list[int]:
    r = len(n)
    adj = [[j for j in range(r) if j != i and abs(n[i, j]) > 0.5] for i in range(r)]
    start = min(range(r), key=lambda i: (len(adj[i]), i))
    order, seen, stack = [], set(), [start]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        order.append(v)
        stack.extend(sorted((w for w in adj[v] if w not in seen), reverse=True))
    order.extend(i for i in range(r) if i not in seen)
    return order


def weyl_closure_residual(rs: RootSystem) -> float:
    """Largest distance from a reflected root to the root set."""
    worst = 0.0
    R = rs.roots
    for a in R:
        for b in R:
            v = b - cartan_integers(a, b) * a
            worst = max(worst, float(np.min(np.linalg.norm(R - v, axis=1))))
    return worst


def angle_residual(rs: RootSystem) -> float:
    """max |cos^2 theta_ab - n_ab n_ba / 4| over pairs."""
    R = rs.roots
    G = R @ R.T
    d = np.diag(G)
    cos2 = G**2 / np.outer(d, d)
    nn = (2 * G / d[:, None]) * (2 * G / d[None, :]) / 4
    return float(np.abs(cos2 - nn).max())


# ---------------------------------------------------------------------------
# volumes


def sphere_volume(d: int) -> float:
    """Vol(S^d) for odd d = 2i+1: 2 pi^(i+1) / i!."""
    if d % 2 != 1:
        raise ValueError("odd dimensions only")
    i = (d - 1) // 2
    return 2.0 * math.pi ** (i + 1) / math.factorial(i)


@dataclass(frozen=True)
class MacdonaldInput:
    torus_volume: float
    sphere_dims: tuple
    root_norms: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "sphere_dims", tuple(int(d) for d in self.sphere_dims))
        object.__setattr__(self, "root_norms", tuple(float(n) for n in self.root_norms))


def macdonald_volume(data: MacdonaldInput) -> float:
    """mu(G) = mu_o(T) * prod Vol(S^d_i) * prod over all roots of 2/|alpha|."""
    spheres = math.prod(sphere_volume(d) for d in data.sphere_dims)
    root_factor = math.prod(2.0 / n for n in data.root_norms)
    return data.torus_volume * spheres * root_factor


def torus_volume(simple, lattice: str = "coroot") -> float:
    """Covolume of the lattice spanned by the simple roots or their coroots.

    ``lattice="root"`` is the absolute determinant of the simple-root matrix.
    The coroot lattice (alpha^v = 2 alpha/|alpha|^2) is the kernel of exp on
    the torus up to 2 pi, and is the one that enters Macdonald's formula.
    """
    S = np.atleast_2d(np.asarray(simple, dtype=float))
    if lattice == "coroot":
        S = 2.0 * S / np.sum(S**2, axis=1, keepdims=True)
    elif lattice != "root":
        raise ValueError("lattice must be 'root' or 'coroot'")
    return float(abs(np.linalg.det(S)))


def macdonald_input(rs: RootSystem, sphere_dims) -> MacdonaldInput:
    if rs.simple is None:
        rs = simple_roots(rs)
    if len(sphere_dims) != rs.rank:
        raise ValueError("one sphere per rank")
    return MacdonaldInput(torus_volume(rs.simple), tuple(sphere_dims), tuple(rs.norms))


SPHERE_DIMS = {
    "su2": (3,),
    "su3": (3, 5),
    "g2": (3, 11),
    "spin9": (3, 7, 11, 15),
    "f4": (3, 11, 15, 23),
    "e6": (3, 9, 11, 15, 17, 23),
}
