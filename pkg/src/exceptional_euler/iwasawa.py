"""Split G2: Weyl unitary trick, Cartan decomposition and the Iwasawa chart G = HAN.

The split generators Q_i agree with the compact C_i on the SO(4) labels and
are the real counterparts of the coset generators.  The Cartan pair is
(H1, H2) = (Q11, Q5); R1..R6 are the positive root vectors written with the
integer/sqrt3 coefficients of the golden tables, but evaluated on Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from . import derivations as D
from .euler import (
    G2_COSET,
    PI,
    SO4_LABELS,
    SQ3,
    ClosedFormDensity,
    EulerSchedule,
    ExpFactor,
    RegionConstraint,
    RegionFactor,
    Term,
    TrigPower,
    f_g2_split,
    schedule_g2_so4,
)
from .lie import (
    Factor,
    GeneratorBasis,
    commutator,
    expm,
    killing_form,
    right_current_matrices,
    structure_constants,
)

SYMMETRY_TOL = 1e-10
NILPOTENT_DEPTH = 7


class NotSymmetric(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cartan decomposition


@dataclass(frozen=True)
class CartanDecomposition:
    """g = h + p with involution theta = +1 on h, -1 on p.

    ``theta`` is indexed like the basis.  B(a, b) = -K(a, theta b) is the
    positive definite form; on p it equals K itself.
    """

    basis: GeneratorBasis
    h_labels: tuple
    p_labels: tuple
    theta: np.ndarray

    def bracket_residuals(self) -> dict:
        """Largest component of [h,h], [h,p], [p,p] outside h, p, h respectively."""
        sc = structure_constants(self.basis)
        lab = self.basis.labels
        h = [lab.index(l) for l in self.h_labels]
        p = [lab.index(l) for l in self.p_labels]
        f = sc.f
        return {
            "[h,h] in h": float(np.abs(f[np.ix_(h, h, p)]).max()),
            "[h,p] in p": float(np.abs(f[np.ix_(h, p, h)]).max()),
            "[p,p] in h": float(np.abs(f[np.ix_(p, p, p)]).max()),
        }

    def involution_residual(self) -> float:
        """max |theta[a,b] - [theta a, theta b]| on structure constants."""
        f = structure_constants(self.basis).f
        t = self.theta
        lhs = f * t[None, None, :]
        rhs = f * (t[:, None, None] * t[None, :, None])
        return float(np.abs(lhs - rhs).max())

    def positive_form(self) -> np.ndarray:
        K = killing_form(structure_constants(self.basis))
        return -K * self.theta[None, :]

    def check(self, tol: float = SYMMETRY_TOL) -> None:
        bad = {k: v for k, v in self.bracket_residuals().items() if v > tol}
        if bad:
            raise NotSymmetric(f"not a symmetric pair: {bad}")
        if np.linalg.eigvalsh(self.positive_form()).min() <= 0:
            raise NotSymmetric("-K(a, theta b) is not positive definite")


def cartan_decomposition(basis: GeneratorBasis, h_labels, p_labels=None) -> CartanDecomposition:
    h_labels = tuple(h_labels)
    p_labels = tuple(p_labels) if p_labels is not None else tuple(l for l in basis.labels if l not in h_labels)
    theta = np.array([1.0 if l in h_labels else -1.0 for l in basis.labels])
    return CartanDecomposition(basis, h_labels, p_labels, theta)


def g2_split_decomposition() -> CartanDecomposition:
    return cartan_decomposition(D.split_g2_generators(), SO4_LABELS, G2_COSET)


# ---------------------------------------------------------------------------
# Weyl unitary trick

SPLIT_RANGES = ((0, PI), (0, PI / 2), (0, PI / 2), (0, 2 * PI), (0, PI / 4), (0, PI),
                (0, math.inf), (0, math.inf),
                (0, 2 * PI), (0, PI / 2), (0, PI), (0, PI), (0, PI / 2), (0, PI))


def _split_region() -> RegionConstraint:
    return RegionConstraint(6, 7, (0.0, math.inf), lambda a: 3 * np.asarray(a),
                            lambda a: np.full_like(np.asarray(a, float), math.inf),
                            "x7 >= 0, 3 x7 <= x8")


def weyl_trick(schedule: EulerSchedule, decomposition: CartanDecomposition | None = None) -> EulerSchedule:
    """Swap every coset generator for its split counterpart, C_p -> Q_p.

    Subgroup generators are shared by both forms and stay as they are.  For
    the G2 SO(4) schedule the result carries the noncompact ranges and the
    hyperbolic density.
    """
    dec = decomposition or g2_split_decomposition()
    split = dec.basis
    p = set(dec.p_labels)

    def swap(t: Term) -> Term:
        label = int(t.label.lstrip("C"))
        if label in p:
            return replace(t, label=f"Q{label}", matrix=split[label])
        return t

    factors = tuple(ExpFactor(tuple(swap(t) for t in f.terms)) for f in schedule.factors)
    out = replace(schedule, name=f"{schedule.name}_split", basis=split, factors=factors,
                  closed_form=None, exact_form=None, expected_volume=None, volume_tag="")
    if schedule.name != "g2_so4":
        return out
    region = _split_region()
    form = ClosedFormDensity(
        27 * SQ3,
        tuple(TrigPower(k, sin_pow=1, freq=2) for k in (1, 4, 9, 12)),
        (RegionFactor(region, lambda a, b: f_g2_split(2 * np.asarray(a), 2 * np.asarray(b))),),
        tag="27 sqrt3 f_split(2x7, 2x8) sin2x2 sin2x5 sin2x10 sin2x13",
    )
    return replace(out, ranges=SPLIT_RANGES, constraints=(region,), closed_form=form)


@lru_cache(maxsize=None)
def schedule_g2_split() -> EulerSchedule:
    return weyl_trick(schedule_g2_so4())


# ---------------------------------------------------------------------------
# Iwasawa data

H_LABELS = (11, 5)

# R_i as coefficient maps {label: coefficient} on Q
R_COEFFS = (
    {3: SQ3, 8: -1.0, 12: 2.0},
    {1: 1 / SQ3, 2: -1 / SQ3, 6: 1 / SQ3, 7: -1 / SQ3, 9: -1.0, 10: 1.0, 13: 1.0, 14: 1.0},
    {1: SQ3, 2: SQ3, 6: SQ3, 7: SQ3, 9: 1.0, 10: 1.0, 13: -1.0, 14: 1.0},
    {3: 1.0, 4: -2.0, 8: SQ3},
    {1: -SQ3, 2: SQ3, 6: -SQ3, 7: SQ3, 9: -1.0, 10: 1.0, 13: 1.0, 14: 1.0},
    {1: -1 / SQ3, 2: -1 / SQ3, 6: -1 / SQ3, 7: -1 / SQ3, 9: 1.0, 10: 1.0, 13: -1.0, 14: 1.0},
)

# positive roots in the (H1, H2) frame
PRINTED_ROOTS = np.array([
    [2 / SQ3, 0.0],
    [SQ3, 1.0],
    [1 / SQ3, 1.0],
    [0.0, 2.0],
    [-1 / SQ3, 1.0],
    [-SQ3, 1.0],
])


@dataclass(frozen=True)
class IwasawaData:
    basis: GeneratorBasis
    cartan: np.ndarray  # (2, 7, 7): H1, H2
    root_matrices: np.ndarray  # (6, 7, 7)
    positive_roots: np.ndarray  # (6, 2), as printed

    def eigenvalues(self) -> np.ndarray:
        """e[i, a] with [H_a, R_i] = e[i, a] R_i, by trace projection."""
        e = np.zeros((len(self.root_matrices), 2))
        for i, R in enumerate(self.root_matrices):
            nrm = float(np.sum(R * R))
            for a, H in enumerate(self.cartan):
                e[i, a] = float(np.sum(commutator(H, R) * R)) / nrm
        return e

    def eigen_residual(self) -> float:
        e = self.eigenvalues()
        worst = 0.0
        for i, R in enumerate(self.root_matrices):
            for a, H in enumerate(self.cartan):
                worst = max(worst, float(np.abs(commutator(H, R) - e[i, a] * R).max()))
        return worst

    def root_sign(self) -> float:
        """+1 if [H_a, R_i] = r_ia R_i, -1 if the printed roots carry the opposite sign."""
        e = self.eigenvalues()
        for s in (1.0, -1.0):
            if np.abs(e - s * self.positive_roots).max() < 1e-10:
                return s
        raise ValueError("eigenvalues match the printed roots under neither sign")

    def nilpotency_residual(self, depth: int = NILPOTENT_DEPTH) -> float:
        """Largest nested bracket [R_i1, [R_i2, ... R_id]] over an orthonormal spanning set."""
        level = list(self.root_matrices)
        for _ in range(depth - 1):
            nxt = np.array([commutator(R, X).ravel() for R in self.root_matrices for X in level])
            _, s, vt = np.linalg.svd(nxt, full_matrices=False)
            if s[0] < 1e-12:
                return float(s[0])
            # unit-norm spanning set; brackets are linear, so this is enough
            level = [v.reshape(7, 7) for k, v in enumerate(vt) if s[k] > 1e-9 * s[0]]
        return float(max(np.abs(commutator(R, X)).max() for R in self.root_matrices for X in level))


@lru_cache(maxsize=None)
def iwasawa_data() -> IwasawaData:
    Q = D.split_g2_generators()
    R = np.array([sum(c * Q[l] for l, c in coeffs.items()) for coeffs in R_COEFFS])
    H = np.array([Q[l] for l in H_LABELS])
    return IwasawaData(Q, H, R, PRINTED_ROOTS)


def so4_factors(h_params) -> list:
    """H = e^{a1 Q3} e^{a2 Q2} e^{a3 Q3} e^{sqrt3 a4 Q8} e^{sqrt3 a5 Q9} e^{sqrt3 a6 Q8}."""
    Q = D.split_g2_generators()
    scales = (1.0, 1.0, 1.0, SQ3, SQ3, SQ3)
    return [Factor(f"Q{l}", Q[l], s) for l, s in zip((3, 2, 3, 8, 9, 8), scales)]


def cartan_exp(y) -> np.ndarray:
    d = iwasawa_data()
    return expm(y[0] * d.cartan[0] + y[1] * d.cartan[1])


def nilpotent_factors() -> list:
    return [Factor(f"R{i + 1}", R) for i, R in enumerate(iwasawa_data().root_matrices)]


def _nilpotent_exp(X: np.ndarray) -> np.ndarray:
    """Finite exponential series, exact for X^7 = 0."""
    out = np.eye(len(X))
    term = np.eye(len(X))
    for k in range(1, 7):
        term = term @ X / k
        out = out + term
    return out


def nilpotent_element(x) -> np.ndarray:
    """N(x) = e^{x1 R1} ... e^{x6 R6}."""
    N = np.eye(7)
    for xi, R in zip(x, iwasawa_data().root_matrices):
        N = N @ _nilpotent_exp(xi * R)
    return N


def unipotency_residual(x, scaled: bool = True) -> float:
    """max |(N - I)^7|, divided by max(1, max |N - I|)^7 so that it measures roundoff."""
    M = nilpotent_element(x) - np.eye(7)
    res = float(np.abs(np.linalg.matrix_power(M, 7)).max())
    return res / max(1.0, float(np.abs(M).max())) ** 7 if scaled else res


def iwasawa_compose(h_params, y, x) -> np.ndarray:
    """H(h) A(y) N(x)."""
    g = np.eye(7)
    for f, a in zip(so4_factors(h_params), h_params):
        g = g @ expm(f.scale * a * f.matrix)
    return g @ cartan_exp(y) @ nilpotent_element(x)


def iwasawa_jacobian(params) -> np.ndarray:
    """49 x 14 matrix of g^{-1} dg / d(params), params = (h1..h6, y1, y2, x1..x6), by central differences."""
    p = np.asarray(params, dtype=float)
    step = 1e-6

    def g(q):
        return iwasawa_compose(q[:6], q[6:8], q[8:])

    g_inv = np.linalg.inv(g(p))
    cols = []
    for k in range(14):
        e = np.zeros(14)
        e[k] = step
        cols.append((g_inv @ (g(p + e) - g(p - e)) / (2 * step)).ravel())
    return np.array(cols).T


# ---------------------------------------------------------------------------
# nilpotent currents


def nilpotent_currents(x) -> np.ndarray:
    """Printed right currents: dN N^{-1} = sum_i n^i R_i, n^i = sum_j n[i, j] dx_j."""
    x1, x2, x3 = x[0], x[1], x[2]
    n = np.eye(6)
    n[1, 2] = -4 * SQ3 * x1
    n[1, 4] = 16 * x1**2
    n[1, 5] = -64 / (3 * SQ3) * x1**3
    n[2, 4] = -8 / SQ3 * x1
    n[2, 5] = 16 / 3 * x1**2
    n[3, 4] = 8 * x3
    n[3, 5] = -8 / 3 * x2
    n[4, 5] = -4 / SQ3 * x1
    return n


def _r_coordinates(mats: np.ndarray) -> np.ndarray:
    """Coefficients on R1..R6 of matrices in their span (least squares on entries)."""
    R = iwasawa_data().root_matrices.reshape(6, -1).T
    coef, *_ = np.linalg.lstsq(R, mats.reshape(len(mats), -1).T, rcond=None)
    return coef


def numeric_nilpotent_currents(x) -> np.ndarray:
    """n[i, j] from the exact right currents of N(x)."""
    mats = right_current_matrices(nilpotent_factors(), np.asarray(x, dtype=float))
    return _r_coordinates(mats)


# ---------------------------------------------------------------------------
# coset vielbein; coordinates ordered (x1..x6, y1, y2)

VIELBEIN_LABELS = (4, 6, 7, 12, 13, 14)


def _root_exponentials(y) -> np.ndarray:
    """E_i = e^{-r_i . y}; the vielbein scales each root current by it."""
    return np.exp(-(PRINTED_ROOTS @ np.asarray(y, dtype=float)))


def iwasawa_coset_vielbein(y, x) -> np.ndarray:
    """Printed e^1..e^8 as rows over (dx1..dx6, dy1, dy2).

    e^6 is assembled by the pattern of e^5 with all signs positive, the
    combination the general construction produces.
    """
    n = nilpotent_currents(x)
    E = _root_exponentials(y)
    e1, e2, e3, e4, e5, e6 = (E[k] * n[k] for k in range(6))
    out = np.zeros((8, 8))
    out[0, :6] = -2 * e4
    out[1, :6] = (e2 - e6) / SQ3 + SQ3 * (e3 - e5)
    out[2, :6] = -(e2 + e6) / SQ3 + SQ3 * (e3 + e5)
    out[3, :6] = 2 * e1
    out[4, :6] = e2 - e6 + e5 - e3
    out[5, :6] = e2 + e6 + e5 + e3
    out[6, 6] = 1.0
    out[7, 7] = 1.0
    return out


def general_coset_vielbein(y, x) -> np.ndarray:
    """Vielbein from the right current of A N projected on p.

    d(AN)(AN)^{-1} = dA A^{-1} + A (dN N^{-1}) A^{-1}; components are
    (1/4) Tr(. Q_p), so that dy enters with unit weight.
    """
    Q = D.split_g2_generators()
    A = cartan_exp(y)
    A_inv = cartan_exp(-np.asarray(y, dtype=float))
    mats = right_current_matrices(nilpotent_factors(), np.asarray(x, dtype=float))
    out = np.zeros((8, 8))
    for j, M in enumerate(mats):
        M = A @ M @ A_inv
        out[:6, j] = [0.25 * np.trace(M @ Q[p]) for p in VIELBEIN_LABELS]
    out[6, 6] = 1.0
    out[7, 7] = 1.0
    return out


def cartan_leak(y, x) -> float:
    """Largest H1/H2 component of the conjugated nilpotent current; zero in exact arithmetic."""
    A = cartan_exp(y)
    A_inv = cartan_exp(-np.asarray(y, dtype=float))
    mats = right_current_matrices(nilpotent_factors(), np.asarray(x, dtype=float))
    d = iwasawa_data()
    return float(max(abs(0.25 * np.trace(A @ M @ A_inv @ H)) for M in mats for H in d.cartan))


def iwasawa_metric(y, x, vielbein=iwasawa_coset_vielbein) -> np.ndarray:
    """d sigma^2 = sum_i e^i (x) e^i over (x1..x6, y1, y2)."""
    e = vielbein(y, x)
    return e.T @ e
