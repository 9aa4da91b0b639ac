"""Coset metrics from projected currents, closed-form targets, and curvature by finite differences.

A chart is the head B exp(V) of an Euler schedule: its left current,
restricted to the coset generators, gives d sigma^2 = sum_p eta_p (J^p)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import derivations as D
from .euler import (
    PI,
    SQ3,
    EulerSchedule,
    ExpFactor,
    OutOfRange,
    Term,
    _left_currents,
    _su2_basis,
    schedule_g2_so4,
    schedule_g2_su3,
)
from .iwasawa import R_COEFFS, PRINTED_ROOTS, iwasawa_metric, schedule_g2_split

FD_STEP = 1e-3
RICHARDSON_TOL = 1e-3


class StepTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class CosetChart:
    """Coset block of ``schedule``: parameters below ``split_index``."""

    name: str
    schedule: EulerSchedule
    split_index: int
    coset_labels: tuple
    fiber_labels: tuple

    @property
    def dim(self) -> int:
        return self.split_index

    @property
    def head(self) -> list:
        return [f for f in self.schedule.factors if max(f.params) < self.split_index]

    def check(self, point, tol: float = 1e-12) -> None:
        x = np.asarray(point, dtype=float)
        if x.shape != (self.dim,):
            raise OutOfRange(f"expected {self.dim} coordinates, got {x.shape}")
        for k in range(self.dim):
            lo, hi = self.schedule.ranges[k]
            if not (lo - tol <= x[k] <= hi + tol):
                raise OutOfRange(f"x{k + 1} = {x[k]} outside [{lo}, {hi}]")
        for c in self.schedule.constraints:
            if max(c.i, c.j) < self.dim and not bool(c.contains(x[c.i], x[c.j], tol)):
                raise OutOfRange(f"(x{c.i + 1}, x{c.j + 1}) outside region: {c.description}")

    def currents(self, point) -> np.ndarray:
        """Components J[i, k] of the head's left current on the full basis."""
        x = np.asarray(point, dtype=float)
        mats = _left_currents(self.head, x, self.dim)
        return self.schedule.basis.project_many(mats).T

    def metric(self, point, check: bool = True) -> np.ndarray:
        if check:
            self.check(point)
        b = self.schedule.basis
        rows = [b.labels.index(l) for l in self.coset_labels]
        J = self.currents(point)[rows]
        eta = b.signature[rows]
        return J.T @ (eta[:, None] * J)

    def fiber_residual(self, point) -> float:
        """Part of the current outside span(coset) + span(fiber); zero when the split is complete."""
        x = np.asarray(point, dtype=float)
        b = self.schedule.basis
        mats = _left_currents(self.head, x, self.dim)
        keep = [b.labels.index(l) for l in self.coset_labels + self.fiber_labels]
        worst = 0.0
        for M in mats:
            c = b.project(M)
            rebuilt = np.einsum("a,aij->ij", c[keep], b.generators[keep])
            worst = max(worst, float(np.abs(rebuilt - M).max()))
        return worst


def coset_metric(chart: CosetChart, point) -> np.ndarray:
    return chart.metric(point)


@dataclass(frozen=True)
class MetricSample:
    point: np.ndarray
    g: np.ndarray
    ricci: np.ndarray | None = None
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# charts


def su2_chart() -> CosetChart:
    """SU(2)/U(1): e^{i phi s3/2} e^{i theta s1/2}, coordinates (phi, theta)."""
    b = _su2_basis()
    head = (ExpFactor((Term(0, "is3", b[3], 0.5),)), ExpFactor((Term(1, "is1", b[1], 0.5),)))
    sched = EulerSchedule("su2_u1", None, head, ((0, 2 * PI), (0, PI)))
    sched = _with_basis(sched, b)
    return CosetChart("su2/u1", sched, 2, (1, 2), (3,))


def _with_basis(schedule: EulerSchedule, basis) -> EulerSchedule:
    # EulerSchedule checks parameter count against the basis; charts only use the head
    object.__setattr__(schedule, "basis", basis)
    return schedule


def g2_su3_chart() -> CosetChart:
    s = schedule_g2_su3()
    return CosetChart("g2/su3", s, s.split_index, s.coset_labels, s.subgroup_labels)


def g2_so4_chart() -> CosetChart:
    s = schedule_g2_so4()
    return CosetChart("g2/so4", s, s.split_index, s.coset_labels, s.subgroup_labels)


def g2_split_chart() -> CosetChart:
    s = schedule_g2_split()
    return CosetChart("g2split/so4", s, s.split_index, s.coset_labels, s.subgroup_labels)


# ---------------------------------------------------------------------------
# the six-sphere


S6_RADIUS = SQ3 / 2


def sphere_embedding(x) -> np.ndarray:
    """(cos x6, sin x6 z) in R^7 with z = (z1, z2, z3) on the unit S^5."""
    x1, x2, x3, x4, x5, x6 = x
    z = np.array([
        np.cos(x5) * np.exp(1j * x4),
        np.sin(x5) * np.cos(x2) * np.exp(1j * (x1 + x3 + x4 / 2)),
        np.sin(x5) * np.sin(x2) * np.exp(1j * (x1 - x3 - x4 / 2)),
    ])
    return np.concatenate([[np.cos(x6)], np.sin(x6) * z.real, np.sin(x6) * z.imag])


def _embedding_jacobian(x, h: float = 1e-4) -> np.ndarray:
    """Fourth-order central differences."""
    x = np.asarray(x, dtype=float)
    cols = []
    for k in range(len(x)):
        e = np.zeros_like(x)
        e[k] = h
        f = [sphere_embedding(x + s * e) for s in (-2, -1, 1, 2)]
        cols.append((f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * h))
    return np.array(cols).T


def sphere_pullback(x, radius: float = S6_RADIUS) -> np.ndarray:
    D_ = _embedding_jacobian(x)
    return radius**2 * D_.T @ D_


def six_metric_printed(x) -> np.ndarray:
    """dx6^2 + sin^2 x6 (dx5^2 + cos^2 x5 dx4^2 + sin^2 x5 (s1^2 + s2^2 + (s3 + dx4/2)^2))."""
    x1, x2, x3, x4, x5, x6 = x
    d = np.eye(6)
    s1 = -np.sin(2 * x2) * np.cos(2 * x3) * d[0] + np.sin(2 * x3) * d[1]
    s2 = np.sin(2 * x2) * np.sin(2 * x3) * d[0] + np.cos(2 * x3) * d[1]
    s3 = np.cos(2 * x2) * d[0] + d[2]
    o = np.outer
    return o(d[5], d[5]) + np.sin(x6) ** 2 * (
        o(d[4], d[4]) + np.cos(x5) ** 2 * o(d[3], d[3])
        + np.sin(x5) ** 2 * (o(s1, s1) + o(s2, s2) + o(s3 + 0.5 * d[3], s3 + 0.5 * d[3])))


def sphere_isometry_check(chart: CosetChart, points) -> float:
    """Max componentwise |coset metric - pulled-back round S^6(sqrt3/2) metric|."""
    return max(float(np.abs(chart.metric(p) - sphere_pullback(p)).max()) for p in points)


# ---------------------------------------------------------------------------
# split G2 / SO(4) in Euler coordinates


def _i_forms(x, y, z) -> np.ndarray:
    """Rows I1, I2, I3 over (dx, dy, dz)."""
    return np.array([
        [np.sin(2 * y) * np.cos(2 * z), -np.sin(2 * z), 0.0],
        [np.sin(2 * y) * np.sin(2 * z), np.cos(2 * z), 0.0],
        [np.cos(2 * y), 0.0, 1.0],
    ])


def _embed(rows: np.ndarray, offset: int) -> np.ndarray:
    out = np.zeros((len(rows), 8))
    out[:, offset:offset + 3] = rows
    return out


def hmetric_printed(a) -> np.ndarray:
    """The G2(2)/SO(4) metric exactly as printed, assembled from I-forms."""
    a1, a2, a3, a4, a5, a6, a7, a8 = a
    IA = _embed(_i_forms(a1, a2, a3), 0)
    IB = _embed(_i_forms(a4, a5, a6), 3)
    d = np.eye(8)
    o = np.outer
    g = o(d[7], d[7]) + o(d[6], d[6])
    c1 = np.sinh(a8) ** 2 * np.cosh(a7) ** 2 + np.cosh(a8) ** 2 * np.sinh(a7) ** 2
    g += c1 * (o(d[4], d[4]) + np.sin(2 * a5) ** 2 * o(d[3], d[3])
               + 3 * o(d[1], d[1]) + 3 * np.sin(2 * a2) ** 2 * o(d[0], d[0]))
    v1 = IB[0] + 3 * IA[1]
    v2 = IB[1] - 3 * IA[0]
    g += 0.5 * np.cosh(2 * a8) * np.cosh(2 * a7) * np.sinh(2 * a7) ** 2 * (o(v1, v1) + o(v2, v2))
    v3 = IB[2] - IA[2]
    g += 0.75 * np.sinh(2 * a7) ** 2 * o(v3, v3)
    v4 = IB[2] + 3 * IA[2]
    g += 0.25 * np.sinh(2 * a8) ** 2 * o(v4, v4)
    return g


def so4_current_forms(a) -> np.ndarray:
    """H^{-1} dH on (C1, C2, C3, C8, C9, C10) as I-form rows over (da1..da8).

    The two SU(2) factors commute, so each block is the left-invariant
    frame of its own three Euler angles.
    """
    IA = _embed(_i_forms(*a[:3]), 0)
    IB = _embed(_i_forms(*a[3:6]), 3)
    return np.array([-IA[0], IA[1], IA[2], SQ3 * IB[2], SQ3 * IB[1], SQ3 * IB[0]])


def hmetric_structured(a) -> np.ndarray:
    """3 da7^2 + da8^2 + sum_r sinh^2(r(V)) omega_r^2, V = sqrt3 a7 H1 + a8 H2.

    omega_r is the SO(4) current along the compact part of the root vector
    R_r, unit normalized; distinct roots give orthogonal compact parts.
    """
    a = np.asarray(a, dtype=float)
    j = so4_current_forms(a)
    labels = (1, 2, 3, 8, 9, 10)
    g = np.zeros((8, 8))
    g[6, 6] = 3.0
    g[7, 7] = 1.0
    v = np.array([SQ3 * a[6], a[7]])
    for coeffs, r in zip(R_COEFFS, PRINTED_ROOTS):
        k = np.array([coeffs.get(l, 0.0) for l in labels])
        omega = (k / np.linalg.norm(k)) @ j
        g += np.sinh(r @ v) ** 2 * np.outer(omega, omega)
    return g


# ---------------------------------------------------------------------------
# curvature


def _metric_derivatives(metric: Callable, x: np.ndarray, h: float):
    n = len(x)
    g0 = metric(x)
    E = np.eye(n) * h
    plus = [metric(x + E[k]) for k in range(n)]
    minus = [metric(x - E[k]) for k in range(n)]
    dg = np.array([(p - m) / (2 * h) for p, m in zip(plus, minus)])  # dg[k] = d_k g
    ddg = np.zeros((n, n, n, n))
    for k in range(n):
        ddg[k, k] = (plus[k] - 2 * g0 + minus[k]) / h**2
        for l in range(k + 1, n):
            v = (metric(x + E[k] + E[l]) - metric(x + E[k] - E[l])
                 - metric(x - E[k] + E[l]) + metric(x - E[k] - E[l])) / (4 * h**2)
            ddg[k, l] = ddg[l, k] = v
    return g0, dg, ddg


def _ricci_from_derivatives(g, dg, ddg) -> np.ndarray:
    gi = np.linalg.inv(g)
    # Gamma_{m ij} = (d_i g_mj + d_j g_mi - d_m g_ij) / 2, dg indexed [deriv, a, b]
    low = 0.5 * (np.einsum("imj->mij", dg) + np.einsum("jmi->mij", dg) - dg)
    gam = np.einsum("km,mij->kij", gi, low)
    # d_l Gamma_{m ij}
    dlow = 0.5 * (np.einsum("limj->lmij", ddg) + np.einsum("ljmi->lmij", ddg) - ddg)
    dgi = -np.einsum("ka,lab,bm->lkm", gi, dg, gi)
    dgam = np.einsum("lkm,mij->lkij", dgi, low) + np.einsum("km,lmij->lkij", gi, dlow)
    ric = (np.einsum("kkij->ij", dgam) - np.einsum("jkik->ij", dgam)
           + np.einsum("kkl,lij->ij", gam, gam) - np.einsum("kjl,lik->ij", gam, gam))
    return 0.5 * (ric + ric.T)


def ricci_fd(metric: Callable, point, step: float = FD_STEP, tol: float = RICHARDSON_TOL) -> np.ndarray:
    """Ricci tensor from central differences at step h and h/2, Richardson-combined.

    ``metric`` maps a coordinate vector to the metric matrix.  Raises
    StepTooLarge when the two steps disagree by more than ``tol`` relative to
    the size of the metric and of the curvature.
    """
    x = np.asarray(point, dtype=float)
    r1 = _ricci_from_derivatives(*_metric_derivatives(metric, x, step))
    r2 = _ricci_from_derivatives(*_metric_derivatives(metric, x, step / 2))
    scale = max(float(np.abs(r2).max()), float(np.abs(metric(x)).max()) * 1e-6, 1e-300)
    if float(np.abs(r1 - r2).max()) > tol * scale:
        raise StepTooLarge(f"h = {step:g} and h/2 disagree by {np.abs(r1 - r2).max() / scale:.2e} relative")
    return (4 * r2 - r1) / 3


def chart_metric_fn(chart: CosetChart) -> Callable:
    return lambda x: chart.metric(x, check=False)


def iwasawa_metric_fn(x) -> np.ndarray:
    """Iwasawa metric over (x1..x6, y1, y2) as one coordinate vector."""
    x = np.asarray(x, dtype=float)
    return iwasawa_metric(x[6:], x[:6])


@dataclass(frozen=True)
class EinsteinReport:
    lambdas: np.ndarray  # per point, trace(g^-1 Ric) / dim
    residuals: np.ndarray  # per point, max |Ric - lambda g| / max |g|

    @property
    def mean(self) -> float:
        return float(np.mean(self.lambdas))

    @property
    def spread(self) -> float:
        return float((self.lambdas.max() - self.lambdas.min()) / abs(self.mean))


def einstein_check(metric: Callable, points, step: float = FD_STEP) -> EinsteinReport:
    lams, res = [], []
    for p in points:
        g = metric(np.asarray(p, dtype=float))
        ric = ricci_fd(metric, p, step)
        lam = float(np.trace(np.linalg.solve(g, ric))) / len(g)
        lams.append(lam)
        res.append(float(np.abs(ric - lam * g).max() / np.abs(g).max()))
    return EinsteinReport(np.array(lams), np.array(res))
