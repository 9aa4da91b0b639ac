"""Generalized Euler parametrizations g = B exp(V) H as data.

A schedule is an ordered list of exponential factors.  Each factor is
exp(sum_t scale_t * x[param_t] * M_t) with pairwise commuting M_t, so the
left current of a parameter is always S^{-1} (scale M) S with S the suffix
product.  Densities are |det| of current components on an orthonormal
basis; the closed forms are products of sin/cos powers plus coupled
two-parameter factors that live on a RegionConstraint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import derivations as D
from .lie import GeneratorBasis, expm

PI = math.pi
SQ3 = math.sqrt(3.0)
GL_NODES = 64
REGION_TOL = 1e-10
CDF_NODES = 10_000
ENVELOPE_GRID = 200


class OutOfRange(ValueError):
    pass


class QuadratureNotConverged(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class Term:
    param: int  # 0-based parameter index
    label: str
    matrix: np.ndarray
    scale: float = 1.0


@dataclass(frozen=True)
class ExpFactor:
    terms: tuple

    def exponent(self, x) -> np.ndarray:
        return sum(t.scale * x[t.param] * t.matrix for t in self.terms)

    @property
    def params(self) -> tuple:
        return tuple(t.param for t in self.terms)


@dataclass(frozen=True)
class RegionConstraint:
    """x_j between lower(x_i) and upper(x_i) for x_i in outer."""

    i: int
    j: int
    outer: tuple
    lower: Callable
    upper: Callable
    description: str = ""

    def contains(self, xi, xj, tol: float = 1e-12) -> np.ndarray:
        xi = np.asarray(xi)
        xj = np.asarray(xj)
        return ((xi >= self.outer[0] - tol) & (xi <= self.outer[1] + tol)
                & (xj >= self.lower(xi) - tol) & (xj <= self.upper(xi) + tol))


@dataclass(frozen=True)
class TrigPower:
    """|sin(freq x)|^sin_pow |cos(freq x)|^cos_pow in one parameter."""

    param: int
    sin_pow: int = 0
    cos_pow: int = 0
    freq: float = 1.0

    def __call__(self, x):
        a = self.freq * np.asarray(x, dtype=float)
        return np.abs(np.sin(a)) ** self.sin_pow * np.abs(np.cos(a)) ** self.cos_pow


@dataclass(frozen=True)
class RegionFactor:
    constraint: RegionConstraint
    func: Callable  # func(x_i, x_j), vectorized

    def __call__(self, xi, xj):
        return np.abs(self.func(xi, xj))


@dataclass(frozen=True)
class ClosedFormDensity:
    constant: float
    powers: tuple = ()
    coupled: tuple = ()
    tag: str = ""

    def __call__(self, point) -> float:
        x = np.asarray(point, dtype=float)
        val = self.constant
        for p in self.powers:
            val *= float(p(x[p.param]))
        for c in self.coupled:
            val *= float(c(x[c.constraint.i], x[c.constraint.j]))
        return abs(val)

    def factors_of(self, param: int) -> list:
        return [p for p in self.powers if p.param == param]


@dataclass(frozen=True)
class EulerSchedule:
    """Factors, ranges and block structure of one Euler parametrization.

    The first ``split_index`` parameters form the coset block B exp(V); the
    rest parametrize the subgroup H.  ``coset_labels``/``subgroup_labels``
    select the rows of the current matrix used by the blockwise density.
    """

    name: str
    basis: GeneratorBasis
    factors: tuple
    ranges: tuple
    split_index: int = 0
    coset_labels: tuple = ()
    subgroup_labels: tuple = ()
    constraints: tuple = ()
    closed_form: ClosedFormDensity | None = None
    exact_form: ClosedFormDensity | None = None
    expected_volume: float | None = None
    volume_tag: str = ""
    notes: tuple = field(default=())

    @property
    def n_params(self) -> int:
        return len(self.ranges)

    def __post_init__(self):
        params = sorted(p for f in self.factors for p in f.params)
        if params != list(range(len(self.ranges))):
            raise ValueError(f"{self.name}: factors must use each parameter exactly once")
        if self.basis is not None and len(self.ranges) != self.basis.dim:
            raise ValueError(f"{self.name}: {len(self.ranges)} parameters for a {self.basis.dim}-dim group")

    @property
    def density_form(self) -> ClosedFormDensity | None:
        """Closed form that matches the numeric density pointwise."""
        return self.exact_form if self.exact_form is not None else self.closed_form

    def with_ranges(self, **changes) -> "EulerSchedule":
        """Copy with some parameter ranges replaced, e.g. with_ranges(x6=(0, pi))."""
        ranges = list(self.ranges)
        for key, rng in changes.items():
            ranges[int(key.lstrip("x")) - 1] = tuple(rng)
        return replace(self, ranges=tuple(ranges))


def _term(param: int, basis: GeneratorBasis, label: int, scale: float = 1.0, prefix: str = "C") -> Term:
    return Term(param, f"{prefix}{label}", basis[label], scale)


def _chain(basis: GeneratorBasis, labels, first_param: int, scales=None, prefix: str = "C") -> list:
    scales = scales or [1.0] * len(labels)
    return [ExpFactor((_term(first_param + k, basis, l, s, prefix),)) for k, (l, s) in enumerate(zip(labels, scales))]


# ---------------------------------------------------------------------------
# evaluation and currents


def check_range(schedule: EulerSchedule, point, tol: float = 1e-12) -> None:
    x = np.asarray(point, dtype=float)
    if x.shape != (schedule.n_params,):
        raise OutOfRange(f"expected {schedule.n_params} parameters, got {x.shape}")
    for k, (lo, hi) in enumerate(schedule.ranges):
        if not (lo - tol <= x[k] <= hi + tol):
            raise OutOfRange(f"x{k + 1} = {x[k]} outside [{lo}, {hi}]")
    for c in schedule.constraints:
        if not bool(c.contains(x[c.i], x[c.j], tol)):
            raise OutOfRange(f"(x{c.i + 1}, x{c.j + 1}) outside region: {c.description}")


def evaluate(schedule: EulerSchedule, point, check: bool = True) -> np.ndarray:
    x = np.asarray(point, dtype=float)
    if check:
        check_range(schedule, x)
    g = None
    for f in schedule.factors:
        E = expm(f.exponent(x))
        g = E if g is None else g @ E
    return g


def _left_currents(factors, x, dim: int) -> np.ndarray:
    """g^{-1} d_k g as matrices, indexed by global parameter k."""
    d = factors[0].terms[0].matrix.shape[0]
    dtype = np.result_type(*(t.matrix for f in factors for t in f.terms), float)
    out = np.zeros((dim, d, d), dtype=dtype)
    S = np.eye(d, dtype=dtype)
    S_inv = np.eye(d, dtype=dtype)
    for f in reversed(factors):
        X = f.exponent(x)
        S = expm(X) @ S
        S_inv = S_inv @ expm(-X)
        for t in f.terms:
            out[t.param] = S_inv @ (t.scale * t.matrix) @ S
    return out


def current_components(schedule: EulerSchedule, point, factors=None) -> np.ndarray:
    """J[i, k]: component along basis generator i of g^{-1} d_k g."""
    x = np.asarray(point, dtype=float)
    mats = _left_currents(factors or schedule.factors, x, schedule.n_params)
    return schedule.basis.project_many(mats).T


def haar_density(schedule: EulerSchedule, point, blockwise: bool | None = None) -> float:
    """|det J|; blockwise as |det J_p| |det J_h| when the schedule has a split."""
    x = np.asarray(point, dtype=float)
    s = schedule.split_index
    if blockwise is None:
        blockwise = 0 < s < schedule.n_params
    if not blockwise:
        return float(abs(np.linalg.det(current_components(schedule, x))))
    head = [f for f in schedule.factors if max(f.params) < s]
    tail = [f for f in schedule.factors if min(f.params) >= s]
    b = schedule.basis
    rows_p = [b.labels.index(l) for l in schedule.coset_labels]
    rows_h = [b.labels.index(l) for l in schedule.subgroup_labels]
    Jp = current_components(schedule, x, head)[np.ix_(rows_p, range(s))]
    Jh = current_components(schedule, x, tail)[np.ix_(rows_h, range(s, schedule.n_params))]
    return float(abs(np.linalg.det(Jp)) * abs(np.linalg.det(Jh)))


def random_interior_point(schedule: EulerSchedule, rng: np.random.Generator, margin: float = 0.05) -> np.ndarray:
    """Uniform point inside the ranges, kept a relative margin away from the edges."""
    x = np.empty(schedule.n_params)
    for k, (lo, hi) in enumerate(schedule.ranges):
        hi = min(hi, lo + 10.0) if math.isinf(hi) else hi
        w = hi - lo
        x[k] = rng.uniform(lo + margin * w, hi - margin * w)
    for c in schedule.constraints:
        lo, hi = c.outer
        hi = min(hi, lo + 3.0) if math.isinf(hi) else hi
        w = hi - lo
        xi = rng.uniform(lo + margin * w, hi - margin * w)
        a, b = c.lower(xi), c.upper(xi)
        b = min(b, a + 3.0) if math.isinf(b) else b
        x[c.i] = xi
        x[c.j] = rng.uniform(a + margin * (b - a), b - margin * (b - a))
    return x


# ---------------------------------------------------------------------------
# the G2 f-function


def f_g2(alpha, beta):
    """sin((b-a)/2) sin((b+a)/2) sin((b-3a)/2) sin((b+3a)/2) sin a sin b."""
    a = np.asarray(alpha, dtype=float)
    b = np.asarray(beta, dtype=float)
    return (np.sin((b - a) / 2) * np.sin((b + a) / 2) * np.sin((b - 3 * a) / 2)
            * np.sin((b + 3 * a) / 2) * np.sin(a) * np.sin(b))


def f_g2_cosine_form(alpha, beta):
    """The same function as (cos a - cos b)(cos 3a - cos b) sin a sin b / 4."""
    a = np.asarray(alpha, dtype=float)
    b = np.asarray(beta, dtype=float)
    return 0.25 * (np.cos(a) - np.cos(b)) * (np.cos(3 * a) - np.cos(b)) * np.sin(a) * np.sin(b)


def f_g2_split(alpha, beta):
    """Hyperbolic counterpart of f_g2 for the split form."""
    a = np.asarray(alpha, dtype=float)
    b = np.asarray(beta, dtype=float)
    return (np.sinh((b - a) / 2) * np.sinh((b + a) / 2) * np.sinh((b - 3 * a) / 2)
            * np.sinh((b + 3 * a) / 2) * np.sinh(a) * np.sinh(b))


# ---------------------------------------------------------------------------
# schedules

def _su2_basis() -> GeneratorBasis:
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]])
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    return GeneratorBasis("su2", 1j * np.array([s1, s2, s3]), -0.5, np.ones(3))


@lru_cache(maxsize=None)
def schedule_su2() -> EulerSchedule:
    """g = exp(i phi s3/2) exp(i theta s1/2) exp(i psi s3/2) on the basis i s_k."""
    b = _su2_basis()
    f = [ExpFactor((Term(0, "is3", b[3], 0.5),)),
         ExpFactor((Term(1, "is1", b[1], 0.5),)),
         ExpFactor((Term(2, "is3", b[3], 0.5),))]
    cf = ClosedFormDensity(1 / 8, (TrigPower(1, sin_pow=1),), tag="sin(theta)/8")
    return EulerSchedule("su2", b, tuple(f), ((0, 2 * PI), (0, PI), (0, 4 * PI)),
                         closed_form=cf, expected_volume=2 * PI**2, volume_tag="2*pi^2")


def _su3_factors(b: GeneratorBasis, first: int) -> list:
    """e^{y1 C3} e^{y2 C2} e^{y3 C3} e^{y4 C5} e^{sqrt3 y5 C8} e^{y6 C3} e^{y7 C2} e^{y8 C3}."""
    return _chain(b, [3, 2, 3, 5, 8, 3, 2, 3], first, [1, 1, 1, 1, SQ3, 1, 1, 1])


SU3_RANGES = ((0, PI), (0, PI / 2), (0, PI), (0, PI / 2), (0, 2 * PI), (0, 2 * PI), (0, PI / 2), (0, PI))


def _su3_density(first: int) -> ClosedFormDensity:
    return ClosedFormDensity(SQ3 / 2, (
        TrigPower(first + 1, sin_pow=1, freq=2),
        TrigPower(first + 3, sin_pow=1, freq=2),
        TrigPower(first + 3, sin_pow=2),
        TrigPower(first + 6, sin_pow=1, freq=2),
    ), tag="sqrt3/2 sin2y2 sin2y4 sin^2 y4 sin2y7")


@lru_cache(maxsize=None)
def schedule_su3() -> EulerSchedule:
    """The SU(3) subgroup of G2 spanned by C1..C8, in the 7-dim representation."""
    g2 = D.g2_golden()
    b = g2.subset(range(1, 9), "su3")
    return EulerSchedule("su3", b, tuple(_su3_factors(b, 0)), SU3_RANGES,
                         closed_form=_su3_density(0), expected_volume=SQ3 * PI**5, volume_tag="sqrt3*pi^5")


def _so4_block(b: GeneratorBasis, first: int) -> list:
    """H = e^{x1 C3} e^{x2 C2} e^{x3 C3} e^{sqrt3 x4 C8} e^{sqrt3 x5 C9} e^{sqrt3 x6 C8}."""
    return _chain(b, [3, 2, 3, 8, 9, 8], first, [1, 1, 1, SQ3, SQ3, SQ3])


G2_VOLUME = 9 * SQ3 * PI**8 / 20
G2_COSET = (4, 5, 6, 7, 11, 12, 13, 14)
SO4_LABELS = (1, 2, 3, 8, 9, 10)


def _g2_region() -> RegionConstraint:
    return RegionConstraint(6, 7, (0.0, PI / 6), lambda a: 3 * np.asarray(a), lambda a: np.full_like(np.asarray(a, float), PI / 2),
                            "x7 in [0, pi/6], 3 x7 <= x8 <= pi/2")


def _g2_so4_density(f=f_g2, region=None) -> ClosedFormDensity:
    region = region or _g2_region()
    return ClosedFormDensity(
        27 * SQ3,
        tuple(TrigPower(p, sin_pow=1, freq=2) for p in (1, 4, 9, 12)),
        (RegionFactor(region, lambda a, b: f(2 * np.asarray(a), 2 * np.asarray(b))),),
        tag="27 sqrt3 f(2x7, 2x8) sin2x2 sin2x5 sin2x10 sin2x13",
    )


@lru_cache(maxsize=None)
def schedule_g2_so4() -> EulerSchedule:
    b = D.g2_golden()
    middle = ExpFactor((_term(6, b, 11, SQ3), _term(7, b, 5)))
    factors = _so4_block(b, 0) + [middle] + _so4_block(b, 8)
    ranges = ((0, 2 * PI), (0, PI / 4), (0, PI), (0, PI), (0, PI / 2), (0, PI / 2),
              (0, PI / 6), (0, PI / 2),
              (0, 2 * PI), (0, PI / 2), (0, PI), (0, PI), (0, PI / 2), (0, PI))
    region = _g2_region()
    return EulerSchedule("g2_so4", b, tuple(factors), ranges, 8, G2_COSET, SO4_LABELS, (region,),
                         _g2_so4_density(region=region), expected_volume=G2_VOLUME, volume_tag="9*sqrt3*pi^8/20")


# measured constant of the S^6 block; the printed one is twice this
G2_SU3_COSET_CONSTANT = 27 / 64
G2_SU3_PRINTED_CONSTANT = 27 / 32


@lru_cache(maxsize=None)
def schedule_g2_su3() -> EulerSchedule:
    """p(x1..x6) H(x7..x14): S^6 coset block followed by the SU(3) subgroup."""
    b = D.g2_golden()
    p = _chain(b, [3, 2, 3, 8, 5, 9], 0, [1, 1, 1, SQ3 / 2, 1, SQ3 / 2])
    factors = p + _su3_factors(b, 6)
    ranges = ((0, PI), (0, PI / 2), (0, 2 * PI), (0, 2 * PI), (0, PI / 2), (0, PI)) + SU3_RANGES
    su3 = _su3_density(6)
    cf = ClosedFormDensity(
        G2_SU3_COSET_CONSTANT * su3.constant,
        (TrigPower(5, sin_pow=5), TrigPower(4, sin_pow=3, cos_pow=1), TrigPower(1, sin_pow=1, freq=2)) + su3.powers,
        tag="27/64 sin^5 x6 cos x5 sin^3 x5 sin2x2 * dmu_SU(3)",
    )
    return EulerSchedule("g2_su3", b, tuple(factors), ranges, 6, tuple(range(9, 15)), tuple(range(1, 9)),
                         closed_form=cf, expected_volume=G2_VOLUME, volume_tag="9*sqrt3*pi^8/20")


# Spin(9), F4, E6 ----------------------------------------------------------

SPIN9_SCHEDULE = (3, 16, 15, 35, 5, 1, 30, 45, 3, 16, 15, 35, 5, 1, 30,
                  3, 5, 4, 7, 11, 16, 3, 5, 4, 7, 11, 3, 5, 4, 7, 3, 5, 4, 3, 2, 3)


def _spin9_ranges() -> tuple:
    r = {}
    for i in (1, 2, 3, 9, 10, 11, 16, 22, 27, 31, 34):
        r[i] = (0, 2 * PI)
    for i in (4, 8, 12, 17, 21, 23, 26, 28, 30, 32, 33, 35):
        r[i] = (0, PI)
    for i in (5, 13, 18, 19, 20, 24, 25, 29):
        r[i] = (-PI / 2, PI / 2)
    for i in (6, 7, 14, 15):
        r[i] = (0, PI / 2)
    r[36] = (0, 4 * PI)
    return tuple(r[i] for i in range(1, 37))


# (coordinate, sin power, cos power), 1-based inside the Spin(9) block
SPIN9_PRINTED = ((4, 1, 0), (5, 0, 1), (6, 2, 1), (7, 2, 4), (8, 7, 0),
                 (12, 1, 0), (13, 0, 1), (14, 2, 1), (15, 4, 2),
                 (17, 1, 0), (18, 0, 2), (19, 0, 3), (20, 0, 4), (21, 5, 0),
                 (23, 1, 0), (24, 0, 2), (25, 0, 3), (26, 4, 0),
                 (28, 1, 0), (29, 0, 2), (30, 3, 0), (32, 1, 0), (33, 2, 0), (35, 1, 0))
# what the current determinant gives; differs in x7, x18, x24, x29, x33
SPIN9_EXACT = ((4, 1, 0), (5, 0, 1), (6, 2, 1), (7, 4, 2), (8, 7, 0),
               (12, 1, 0), (13, 0, 1), (14, 2, 1), (15, 4, 2),
               (17, 1, 0), (18, 2, 0), (19, 0, 3), (20, 0, 4), (21, 5, 0),
               (23, 1, 0), (24, 2, 0), (25, 0, 3), (26, 4, 0),
               (28, 1, 0), (29, 2, 0), (30, 3, 0), (32, 1, 0), (33, 0, 2), (35, 1, 0))
# the B block of F4 and E6 carries the first 15 Spin(9) factors
B_PRINTED = SPIN9_PRINTED[:9]
B_EXACT = SPIN9_EXACT[:9]


def _powers(table, offset: int = 0) -> tuple:
    return tuple(TrigPower(offset + i - 1, sin_pow=s, cos_pow=c) for i, s, c in table)


def _spin9_factors(gens: dict, labels, first: int, prefix: str = "c") -> list:
    return [ExpFactor((Term(first + k, f"{prefix}{l}", gens[l]),)) for k, l in enumerate(labels)]


@lru_cache(maxsize=None)
def _f4_dict() -> dict:
    b = D.f4_generators()
    return {l: b[l] for l in b.labels}


# Macdonald's formula on the extracted B4 roots; the Euler measure integrates to it
SPIN9_VOLUME = 2**17 * PI**20 / (3**4 * 5**2 * 7)


@lru_cache(maxsize=None)
def schedule_spin9() -> EulerSchedule:
    f4 = D.f4_generators()
    b = f4.subset(D.SPIN9_LABELS, "spin9")
    factors = _spin9_factors(_f4_dict(), SPIN9_SCHEDULE, 0)
    return EulerSchedule("spin9", b, tuple(factors), _spin9_ranges(),
                         closed_form=ClosedFormDensity(1.0, _powers(SPIN9_PRINTED), tag="printed Spin(9) measure"),
                         exact_form=ClosedFormDensity(1.0, _powers(SPIN9_EXACT), tag="Spin(9) measure from currents"),
                         expected_volume=SPIN9_VOLUME, volume_tag="2^17*pi^20/(3^4*5^2*7)")


F4_VOLUME = 2**26 * PI**28 / (3**7 * 5**4 * 7**2 * 11)
E6_VOLUME = SQ3 * 2**17 * PI**42 / (3**10 * 5**5 * 7**3 * 11)
F4_COSET = tuple(range(22, 30)) + tuple(range(37, 45))

B_RANGES = ((0, 2 * PI), (0, 2 * PI), (0, 2 * PI), (0, PI), (-PI / 2, PI / 2), (0, PI / 2), (0, PI / 2), (0, PI),
            (0, 2 * PI), (0, 2 * PI), (0, 2 * PI), (0, PI), (-PI / 2, PI / 2), (0, PI / 2), (0, PI / 2))


def _b_factors(first: int = 0, cast=None) -> list:
    """B[x1..x15]: an S^7 block on c, e^{x8 c45}, then an S^7 block on c~.

    The second block is written with the rotated so(8) generators, so the
    last 21 Spin(9) factors that would follow it span so(7)~, the part of
    Spin(9) that commutes with c22.
    """
    cast = cast or (lambda m: m)
    c, t = _f4_dict(), D.tilde_generators()
    labels = SPIN9_SCHEDULE[:15]
    out = []
    for k, l in enumerate(labels):
        gens, prefix = (c, "c") if k < 8 else (t, "ct")
        out.append(ExpFactor((Term(first + k, f"{prefix}{l}", cast(gens[l])),)))
    return out


def _f4_measure(offset: int, spin9_table, b_table) -> tuple:
    """dmu_o x dmu_Spin(9) for an F4 block starting at parameter ``offset``."""
    return (_powers(b_table, offset)
            + (TrigPower(offset + 15, sin_pow=15, cos_pow=7, freq=0.5),)
            + _powers(spin9_table, offset + 16))


@lru_cache(maxsize=None)
def schedule_f4() -> EulerSchedule:
    """B[x1..x15] e^{x16 c22} Spin(9)[x17..x52]."""
    f4 = D.f4_generators()
    factors = _b_factors(0) + [ExpFactor((Term(15, "c22", f4[22]),))] + _spin9_factors(_f4_dict(), SPIN9_SCHEDULE, 16)
    ranges = B_RANGES + ((0, PI),) + _spin9_ranges()
    cf = ClosedFormDensity(2.0**7, _f4_measure(0, SPIN9_PRINTED, B_PRINTED), tag="dmu_o x dmu_Spin(9), printed")
    ex = ClosedFormDensity(2.0**7, _f4_measure(0, SPIN9_EXACT, B_EXACT), tag="dmu_o x dmu_Spin(9), from currents")
    return EulerSchedule("f4", f4, tuple(factors), ranges, 16, F4_COSET, D.SPIN9_LABELS,
                         closed_form=cf, exact_form=ex, expected_volume=F4_VOLUME,
                         volume_tag="2^26*pi^28/(3^7*5^4*7^2*11)")


# printed upper limit for x25; the measure needs [0, pi] (see decisions ledger)
E6_X25_PRINTED = PI / 2
E6_X25 = PI


def _e6_region(upper: float = E6_X25) -> RegionConstraint:
    return RegionConstraint(24, 25, (0.0, upper), lambda a: -np.asarray(a) / SQ3, lambda a: np.asarray(a) / SQ3,
                            "x25 in [0, pi], -x25/sqrt3 <= x26 <= x25/sqrt3")


B9_PRINTED = ((20, 1, 0), (21, 0, 1), (22, 2, 1), (23, 4, 2), (24, 7, 0))


def e6_cartan_block(x25, x26):
    x25 = np.asarray(x25, dtype=float)
    x26 = np.asarray(x26, dtype=float)
    return (np.sin(x25) * np.sin(SQ3 / 2 * x26 + x25 / 2) * np.sin(SQ3 / 2 * x26 - x25 / 2)) ** 8


@lru_cache(maxsize=None)
def schedule_e6() -> EulerSchedule:
    """B[x1..x15] e^{x16 c22} B9[x17..x23] e^{x24 c37} e^{x25 c53 + x26 c70} F4[x27..x78].

    B9 runs over the so(8) basis adapted to c37, so that B9 e^{x24 c37}
    sweeps the 8-sphere Spin(9)_2 / Spin(8).
    """
    e6 = D.e6_generators()
    gens = {l: g.astype(complex) for l, g in _f4_dict().items()}
    hat = {l: g.astype(complex) for l, g in D.so8_adapted(37).items()}
    head = _b_factors(0, lambda m: m.astype(complex))
    head.append(ExpFactor((Term(15, "c22", gens[22]),)))
    head += [ExpFactor((Term(16 + k, f"c37_{l}", hat[l]),)) for k, l in enumerate(SPIN9_SCHEDULE[:7])]
    head.append(ExpFactor((Term(23, "c37", gens[37]),)))
    head.append(ExpFactor((Term(24, "c53", e6[53]), Term(25, "c70", e6[70]))))
    f4_tail = [ExpFactor((Term(26 + k, t.label, t.matrix.astype(complex)),))
               for k, t in enumerate(f.terms[0] for f in schedule_f4().factors)]
    region = _e6_region()
    b9_ranges = ((0, 2 * PI), (0, 2 * PI), (0, 2 * PI), (0, PI), (-PI / 2, PI / 2), (0, PI / 2), (0, PI / 2), (0, PI))
    ranges = B_RANGES + ((0, PI),) + b9_ranges + ((0, E6_X25), (-E6_X25 / SQ3, E6_X25 / SQ3)) + schedule_f4().ranges
    coupled = (RegionFactor(region, e6_cartan_block),)

    def form(spin9_table, b_table, b9_table, tag):
        head_powers = (_powers(b_table) + (TrigPower(15, sin_pow=7, cos_pow=15, freq=0.5),) + _powers(b9_table))
        return ClosedFormDensity(2.0**14, head_powers + _f4_measure(26, spin9_table, b_table), coupled, tag)

    return EulerSchedule("e6", e6, tuple(head + f4_tail), ranges, 26, tuple(range(53, 79)), tuple(range(1, 53)),
                         (region,), form(SPIN9_PRINTED, B_PRINTED, B9_PRINTED, "dmu_E6, printed"),
                         form(SPIN9_EXACT, B_EXACT, B9_PRINTED, "dmu_E6, from currents"),
                         expected_volume=E6_VOLUME, volume_tag="sqrt3*2^17*pi^42/(3^10*5^5*7^3*11)")


SCHEDULES = {
    "su2": schedule_su2,
    "su3": schedule_su3,
    "g2_su3": schedule_g2_su3,
    "g2_so4": schedule_g2_so4,
    "spin9": schedule_spin9,
    "f4": schedule_f4,
    "e6": schedule_e6,
}


# ---------------------------------------------------------------------------
# quadrature


@lru_cache(maxsize=None)
def _gl(n: int):
    return leggauss(n)


def _integrate_1d(func, lo: float, hi: float, n: int = GL_NODES) -> float:
    t, w = _gl(n)
    x = 0.5 * (hi - lo) * t + 0.5 * (hi + lo)
    return 0.5 * (hi - lo) * float(np.dot(w, func(x)))


def integrate_region(factor: RegionFactor, tol: float = REGION_TOL, start: int = 16, max_nodes: int = 1024) -> float:
    """Tensor Gauss-Legendre on the region, doubling the order until stable."""
    c = factor.constraint
    lo, hi = c.outer
    prev = None
    n = start
    while n <= max_nodes:
        t, w = _gl(n)
        xi = 0.5 * (hi - lo) * t + 0.5 * (hi + lo)
        wi = 0.5 * (hi - lo) * w
        a, b = c.lower(xi), c.upper(xi)
        xj = 0.5 * (b - a)[:, None] * t[None, :] + 0.5 * (b + a)[:, None]
        wj = 0.5 * (b - a)[:, None] * w[None, :]
        val = float(np.sum(wi[:, None] * wj * factor(np.broadcast_to(xi[:, None], xj.shape), xj)))
        if prev is not None and abs(val - prev) <= tol * abs(val):
            return val
        prev = val
        n *= 2
    raise QuadratureNotConverged(f"region integral did not settle below {tol:g}")


def volume(schedule: EulerSchedule, form: ClosedFormDensity | None = None) -> float:
    """Integral of the closed-form density over the schedule's ranges."""
    form = form or schedule.closed_form
    if form is None:
        raise ValueError(f"{schedule.name} has no closed-form density")
    coupled_params = {p for c in form.coupled for p in (c.constraint.i, c.constraint.j)}
    total = form.constant
    for k, (lo, hi) in enumerate(schedule.ranges):
        if k in coupled_params:
            continue
        fs = form.factors_of(k)
        if not fs:
            total *= hi - lo
        else:
            total *= _integrate_1d(lambda x: np.prod([f(x) for f in fs], axis=0), lo, hi)
    for c in form.coupled:
        total *= integrate_region(c)
    return total


def covering_multiplicity(schedule: EulerSchedule, group_volume: float, form: ClosedFormDensity | None = None) -> float:
    return volume(schedule, form) / group_volume


# ---------------------------------------------------------------------------
# sampling


def _inverse_cdf_sampler(funcs, lo: float, hi: float, n_nodes: int = CDF_NODES):
    x = np.linspace(lo, hi, n_nodes)
    dens = np.prod([f(x) for f in funcs], axis=0) if funcs else np.ones_like(x)
    cdf = np.concatenate([[0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * np.diff(x))])
    cdf /= cdf[-1]
    return lambda u: np.interp(u, cdf, x)


def _region_sampler(factor: RegionFactor, rng: np.random.Generator, n: int) -> np.ndarray:
    c = factor.constraint
    lo, hi = c.outer
    gi = np.linspace(lo, hi, ENVELOPE_GRID)
    ja, jb = c.lower(gi), c.upper(gi)
    jlo, jhi = float(np.min(ja)), float(np.max(jb))
    gj = np.linspace(jlo, jhi, ENVELOPE_GRID)
    I, J = np.meshgrid(gi, gj, indexing="ij")
    inside = c.contains(I, J)
    envelope = 1.01 * float(np.max(np.where(inside, factor(I, J), 0.0)))
    out = np.empty((0, 2))
    while len(out) < n:
        m = 2 * (n - len(out)) + 64
        xi = rng.uniform(lo, hi, m)
        xj = rng.uniform(jlo, jhi, m)
        keep = c.contains(xi, xj) & (rng.uniform(0, envelope, m) < factor(xi, xj))
        out = np.concatenate([out, np.stack([xi[keep], xj[keep]], axis=1)])
    return out[:n]


def sample_points(schedule: EulerSchedule, n: int, seed: int) -> np.ndarray:
    """Parameter points distributed by the closed-form Haar density."""
    form = schedule.density_form
    if form is None:
        raise ValueError(f"{schedule.name} has no closed-form density to sample")
    rng = np.random.default_rng(seed)
    coupled_params = {p for c in form.coupled for p in (c.constraint.i, c.constraint.j)}
    pts = np.empty((n, schedule.n_params))
    for k, (lo, hi) in enumerate(schedule.ranges):
        if k in coupled_params:
            continue
        pts[:, k] = _inverse_cdf_sampler(form.factors_of(k), lo, hi)(rng.uniform(size=n))
    for c in form.coupled:
        pair = _region_sampler(c, rng, n)
        pts[:, c.constraint.i] = pair[:, 0]
        pts[:, c.constraint.j] = pair[:, 1]
    return pts


def _batched_factor(f: ExpFactor, x: np.ndarray) -> np.ndarray:
    """exp of one factor at many points via a shared eigenbasis."""
    mats = [t.matrix for t in f.terms]
    M = sum((k + math.e) * m for k, m in enumerate(mats))
    _, V = np.linalg.eig(M)
    V_inv = np.linalg.inv(V)
    lams = [np.diag(V_inv @ m @ V) for m in mats]
    ok = all(np.allclose(V @ np.diag(l) @ V_inv, m, atol=1e-10) for l, m in zip(lams, mats))
    if not ok or np.linalg.cond(V) > 1e6:
        return np.array([expm(f.exponent(row)) for row in x])
    expo = sum(t.scale * x[:, t.param][:, None] * l[None, :] for t, l in zip(f.terms, lams))
    out = np.einsum("ij,nj,jk->nik", V, np.exp(expo), V_inv)
    real = all(np.isrealobj(m) for m in mats)
    return out.real if real else out


def evaluate_many(schedule: EulerSchedule, points) -> np.ndarray:
    x = np.atleast_2d(np.asarray(points, dtype=float))
    g = None
    for f in schedule.factors:
        E = _batched_factor(f, x)
        g = E if g is None else np.einsum("nij,njk->nik", g, E)
    return g


def sample_haar(schedule: EulerSchedule, seed: int, n: int = 1) -> np.ndarray:
    """n Haar-distributed group matrices; deterministic for a given seed."""
    return evaluate_many(schedule, sample_points(schedule, n, seed))


@dataclass(frozen=True)
class CharacterMoments:
    n: int
    mean_trace: complex
    mean_trace_sq: float
    se_trace: float
    se_trace_sq: float

    def within(self, sigmas: float = 3.0, first: float = 0.0, second: float = 1.0) -> bool:
        return (abs(self.mean_trace - first) <= sigmas * self.se_trace
                and abs(self.mean_trace_sq - second) <= sigmas * self.se_trace_sq)


def character_moments(samples: np.ndarray) -> CharacterMoments:
    """Mean of tr g and |tr g|^2 with their standard errors."""
    tr = np.trace(samples, axis1=1, axis2=2)
    sq = np.abs(tr) ** 2
    n = len(tr)
    mt = tr.mean()
    mt = mt.real if np.isrealobj(samples) else mt
    return CharacterMoments(n, mt, float(sq.mean()), float(np.std(tr) / math.sqrt(n)), float(np.std(sq) / math.sqrt(n)))
