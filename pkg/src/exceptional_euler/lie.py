"""Matrix Lie algebra utilities.

Bases are lists of matrices orthonormal under a trace form
``kappa * Tr(T_i T_j) = signature_i * delta_ij``; every projection below goes
through that form rather than a linear solve.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

CLOSURE_TOL = 1e-8


class ClosureViolation(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorBasis:
    """Ordered generators with their trace-form normalization.

    ``labels`` are the 1-based indices used in formulas (C_5, c_22, ...);
    ``generators[i]`` carries label ``labels[i]``.
    """

    name: str
    generators: np.ndarray
    kappa: float
    signature: np.ndarray
    labels: tuple = field(default=())

    def __post_init__(self):
        gens = np.asarray(self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "signature", np.asarray(self.signature, dtype=float))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, len(gens) + 1)))

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def dim_rep(self) -> int:
        return self.generators.shape[1]

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.generators) and bool(np.abs(self.generators.imag).max() > 0)

    def __getitem__(self, label: int) -> np.ndarray:
        return self.generators[self.labels.index(label)]

    def gram(self) -> np.ndarray:
        G = np.einsum("aij,bji->ab", self.generators, self.generators)
        return (self.kappa * G).real

    def project(self, X: np.ndarray) -> np.ndarray:
        """Components of X along the basis (valid when X lies in the span)."""
        c = self.kappa * np.einsum("aij,ji->a", self.generators, X)
        return c.real / self.signature

    def project_many(self, Xs: np.ndarray) -> np.ndarray:
        c = self.kappa * np.einsum("aij,kji->ka", self.generators, Xs)
        return c.real / self.signature

    def combine(self, coeffs) -> np.ndarray:
        return np.einsum("a,aij->ij", np.asarray(coeffs), self.generators)

    def subset(self, labels, name: str | None = None) -> "GeneratorBasis":
        idx = [self.labels.index(l) for l in labels]
        return GeneratorBasis(
            name or f"{self.name}[sub]",
            self.generators[idx],
            self.kappa,
            self.signature[idx],
            tuple(labels),
        )


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


@dataclass(frozen=True)
class StructureConstants:
    f: np.ndarray  # f[i, j, k] = f_ij^k

    @property
    def dim(self) -> int:
        return self.f.shape[0]

    def jacobi_residual(self) -> float:
        f = self.f
        # sum over cyclic (i,j,k) of f_ij^l f_lk^m
        t = np.einsum("ijl,lkm->ijkm", f, f)
        cyc = t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3))
        return float(np.abs(cyc).max())

    def antisymmetry_residual(self) -> float:
        return float(np.abs(self.f + np.transpose(self.f, (1, 0, 2))).max())

    def lowered(self, K: np.ndarray | None = None) -> np.ndarray:
        K = killing_form(self) if K is None else K
        return np.einsum("ijl,lk->ijk", self.f, K)


def structure_constants(basis: GeneratorBasis, tol: float = CLOSURE_TOL) -> StructureConstants:
    """f_ij^k by trace projection of [T_i, T_j] onto T_k."""
    T = basis.generators
    comm = np.einsum("aij,bjk->abik", T, T)
    comm = comm - np.transpose(comm, (1, 0, 2, 3))
    f = basis.kappa * np.einsum("abij,cji->abc", comm, T)
    f = f.real / basis.signature[None, None, :]
    rebuilt = np.einsum("abc,cij->abij", f, T)
    scale = max(1.0, float(np.abs(comm).max()))
    resid = float(np.abs(rebuilt - comm).max()) / scale
    if resid > tol:
        raise ClosureViolation(f"{basis.name}: commutators leave the span (residual {resid:.2e})")
    return StructureConstants(f)


def killing_form(sc: StructureConstants) -> np.ndarray:
    """K_ij = sum_{l,m} f_il^m f_jm^l."""
    return np.einsum("ilm,jml->ij", sc.f, sc.f)


def adjoint_matrices(sc: StructureConstants) -> np.ndarray:
    """ad[i] acting on component vectors: (ad_i)_{kj} = f_ij^k."""
    return np.transpose(sc.f, (0, 2, 1)).copy()


def adjoint_rep(basis: GeneratorBasis) -> GeneratorBasis:
    sc = structure_constants(basis)
    ad = adjoint_matrices(sc)
    K = killing_form(sc)
    k0 = float(np.mean(np.abs(np.diag(K))))
    return GeneratorBasis(f"ad({basis.name})", ad, 1.0 / k0, np.sign(np.diag(K)), basis.labels)


def expm(X: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling and squaring with a Pade approximant)."""
    return scipy.linalg.expm(X)


def exp_series(X: np.ndarray, terms: int = 60) -> np.ndarray:
    """Plain Taylor series after power-of-two scaling; reference for tests."""
    X = np.asarray(X)
    nrm = np.linalg.norm(X, 1)
    s = max(0, int(np.ceil(np.log2(nrm))) + 1) if nrm > 0.5 else 0
    Y = X / 2.0**s
    out = np.eye(len(X), dtype=np.result_type(X, float))
    term = out.copy()
    for n in range(1, terms):
        term = term @ Y / n
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


# ---------------------------------------------------------------------------
# products of exponentials


@dataclass(frozen=True)
class Factor:
    """One exponential e^{scale * x * matrix}; ``label`` names the generator."""

    label: str
    matrix: np.ndarray
    scale: float = 1.0


def factor_exponentials(factors, point) -> list:
    return [expm(f.scale * x * f.matrix) for f, x in zip(factors, point)]


def product(mats, dim: int | None = None):
    out = None
    for m in mats:
        out = m if out is None else out @ m
    return out


def left_current_matrices(factors, point) -> np.ndarray:
    """g^{-1} d_k g for each parameter k, exactly.

    g^{-1} d_k g = S_k^{-1} (s_k T_k) S_k, S_k the product of factors k..n.
    """
    exps = factor_exponentials(factors, point)
    n = len(exps)
    d = exps[0].shape[0]
    dtype = np.result_type(*exps)
    out = np.zeros((n, d, d), dtype=dtype)
    suffix = np.eye(d, dtype=dtype)
    suffix_inv = np.eye(d, dtype=dtype)
    for k in range(n - 1, -1, -1):
        suffix = exps[k] @ suffix
        suffix_inv = suffix_inv @ expm(-factors[k].scale * point[k] * factors[k].matrix)
        out[k] = suffix_inv @ (factors[k].scale * factors[k].matrix) @ suffix
    return out


def right_current_matrices(factors, point) -> np.ndarray:
    """d_k g g^{-1} = P_k (s_k T_k) P_k^{-1}, P_k the product of factors 1..k."""
    n = len(factors)
    d = factors[0].matrix.shape[0]
    dtype = np.result_type(*(f.matrix for f in factors), float)
    out = np.zeros((n, d, d), dtype=dtype)
    prefix = np.eye(d, dtype=dtype)
    prefix_inv = np.eye(d, dtype=dtype)
    for k in range(n):
        prefix = prefix @ expm(factors[k].scale * point[k] * factors[k].matrix)
        prefix_inv = expm(-factors[k].scale * point[k] * factors[k].matrix) @ prefix_inv
        out[k] = prefix @ (factors[k].scale * factors[k].matrix) @ prefix_inv
    return out


@dataclass(frozen=True)
class CurrentFrame:
    point: np.ndarray
    components: np.ndarray  # J[i, k]: algebra index i, parameter index k


def product_exponential_current(factors, point, basis: GeneratorBasis, side: str = "left") -> CurrentFrame:
    point = np.asarray(point, dtype=float)
    if side == "left":
        mats = left_current_matrices(factors, point)
    elif side == "right":
        mats = right_current_matrices(factors, point)
    else:
        raise ValueError("side must be 'left' or 'right'")
    return CurrentFrame(point, basis.project_many(mats).T)


def finite_difference_current(factors, point, basis: GeneratorBasis, step: float = 1e-5) -> np.ndarray:
    """Central-difference estimate of g^{-1} d_k g, for cross-checks."""
    point = np.asarray(point, dtype=float)

    def g(p):
        return product(factor_exponentials(factors, p))

    g0_inv = np.linalg.inv(g(point))
    cols = []
    for k in range(len(point)):
        e = np.zeros_like(point)
        e[k] = step
        dg = (g(point + e) - g(point - e)) / (2 * step)
        cols.append(basis.project(g0_inv @ dg))
    return np.array(cols).T
