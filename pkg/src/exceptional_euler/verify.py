"""The acceptance suite: eleven checks, each reporting the numbers it reproduced."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import coset as CS
from . import derivations as D
from . import euler as E
from . import iwasawa as IW
from .config import Tolerances
from .groups import macdonald, root_system
from .jordan import f_basis_change, jordan_mul_vec
from .octonion import oct_mul


@dataclass(frozen=True)
class CheckResult:
    key: str
    title: str
    passed: bool
    values: dict = field(default_factory=dict)
    failures: tuple = ()
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({'; '.join(self.failures)})" if self.failures else ""
        return f"[{status}] {self.key}: {self.title}{extra}"


class _Recorder:
    def __init__(self):
        self.values: dict = {}
        self.failures: list = []

    def require(self, ok: bool, name: str, value=None) -> None:
        if value is not None:
            self.values[name] = value
        if not ok:
            self.failures.append(name)

    def note(self, name: str, value) -> None:
        self.values[name] = value


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def check_g2_volume(tol: Tolerances, seed: int) -> _Recorder:
    r = _Recorder()
    t = time.perf_counter()
    v = E.volume(E.schedule_g2_so4())
    elapsed = time.perf_counter() - t
    r.require(_rel(v, E.G2_VOLUME) <= tol.volume_rel, "so4 volume rel err", _rel(v, E.G2_VOLUME))
    r.require(elapsed < 5.0, "so4 quadrature seconds", elapsed)
    v2 = E.volume(E.schedule_g2_su3())
    r.require(_rel(v2, E.G2_VOLUME) <= tol.volume_rel, "su3 volume rel err", _rel(v2, E.G2_VOLUME))
    r.note("volume", v)
    r.note("9*sqrt3*pi^8/20", E.G2_VOLUME)
    r.note("su3 coset constant (measured / printed)", E.G2_SU3_COSET_CONSTANT / E.G2_SU3_PRINTED_CONSTANT)
    return r


def _block_volume(schedule: E.EulerSchedule, tol: Tolerances, limit: float) -> _Recorder:
    r = _Recorder()
    for name, form in (("currents", schedule.exact_form), ("printed", schedule.closed_form)):
        t = time.perf_counter()
        v = E.volume(schedule, form)
        elapsed = time.perf_counter() - t
        r.require(_rel(v, schedule.expected_volume) <= tol.volume_rel, f"{name} measure rel err",
                  _rel(v, schedule.expected_volume))
        r.require(elapsed < limit, f"{name} quadrature seconds", elapsed)
        r.note(f"{name} volume", v)
    r.note(schedule.volume_tag, schedule.expected_volume)
    return r


def check_f4_volume(tol: Tolerances, seed: int) -> _Recorder:
    return _block_volume(E.schedule_f4(), tol, 10.0)


def check_e6_volume(tol: Tolerances, seed: int) -> _Recorder:
    r = _block_volume(E.schedule_e6(), tol, 10.0)
    s = E.schedule_e6()
    printed = replace_region(s, E.E6_X25_PRINTED)
    r.note("multiplicity with x25 in [0, pi/2]", E.covering_multiplicity(printed, s.expected_volume, printed.exact_form))
    return r


def replace_region(schedule: E.EulerSchedule, upper: float) -> E.EulerSchedule:
    """E6 schedule with the (x25, x26) region cut at x25 <= upper."""
    region = E._e6_region(upper)

    def swap(form):
        coupled = tuple(E.RegionFactor(region, c.func) for c in form.coupled)
        return replace(form, coupled=coupled)

    ranges = list(schedule.ranges)
    ranges[24] = (0, upper)
    ranges[25] = (-upper / E.SQ3, upper / E.SQ3)
    return replace(schedule, ranges=tuple(ranges), constraints=(region,),
                   closed_form=swap(schedule.closed_form), exact_form=swap(schedule.exact_form))


GOLDEN = ("su2", "su3", "g2_so4", "g2_su3", "spin9", "f4", "e6")


def check_macdonald(tol: Tolerances, seed: int) -> _Recorder:
    r = _Recorder()
    for name, ref in (("g2", E.G2_VOLUME), ("f4", E.F4_VOLUME), ("e6", E.E6_VOLUME)):
        m = macdonald(name)
        r.require(_rel(m, ref) <= tol.macdonald_rel, f"{name} Macdonald rel err", _rel(m, ref))
    for name in GOLDEN:
        s = E.SCHEDULES[name]()
        grp = {"g2_so4": "g2", "g2_su3": "g2"}.get(name, name)
        m = E.covering_multiplicity(s, macdonald(grp), s.density_form)
        r.require(abs(m - 1.0) <= tol.covering, f"{name} multiplicity", m)
    return r


def check_derivations(tol: Tolerances, seed: int) -> _Recorder:
    r = _Recorder()
    for name, problem, dim in (("octonions", D.octonion_problem(), 14),
                               ("jordan", D.jordan_problem(), 52),
                               ("quaternions", D.quaternion_problem(), 3)):
        b = D.solve_derivations(problem)
        r.require(b.dim == dim, f"{name} dimension", b.dim)
        res = max(problem.leibniz_residual(M) for M in b.generators)
        r.require(res <= tol.leibniz, f"{name} Leibniz residual", res)
    return r


def check_roots(tol: Tolerances, seed: int) -> _Recorder:
    r = _Recorder()
    g2 = root_system("g2")
    n2 = np.sort(g2.norms**2)
    r.require(len(g2.roots) == 12, "g2 roots", len(g2.roots))
    r.require(abs(n2[-1] / n2[0] - 3) < 1e-10, "g2 length^2 ratio", n2[-1] / n2[0])
    f4 = root_system("f4")
    short = int(np.sum(np.abs(f4.norms - 1) < 1e-8))
    long_ = int(np.sum(np.abs(f4.norms - math.sqrt(2)) < 1e-8))
    r.require(len(f4.roots) == 48 and short == 24 and long_ == 24, "f4 roots (short, long)", (short, long_))
    e6 = root_system("e6")
    r.require(len(e6.roots) == 72 and bool(np.all(np.abs(e6.norms - math.sqrt(2)) < 1e-8)), "e6 roots", len(e6.roots))
    split = root_system("g2_split")
    r.require(_matches_up_to_sign(split.roots, IW.PRINTED_ROOTS), "split positive roots = r1..r6 up to sign")
    worst = 0.0
    for name in ("g2", "f4", "e6", "g2_split", "spin9", "su3"):
        rs = root_system(name)
        R = rs.roots
        n = 2 * (R @ R.T) / np.sum(R * R, axis=1)[:, None]
        worst = max(worst, float(np.abs(n - np.round(n)).max()))
    r.require(worst <= tol.cartan_integer, "max Cartan integer deviation", worst)
    return r


def _matches_up_to_sign(roots: np.ndarray, printed: np.ndarray) -> bool:
    for s in (1.0, -1.0):
        if all(np.min(np.linalg.norm(roots - s * p, axis=1)) < 1e-8 for p in printed):
            if len(roots) == 2 * len(printed):
                return True
    return False


def check_automorphism(tol: Tolerances, seed: int) -> _Recorder:
    r = _Recorder()
    rng = np.random.default_rng(seed)
    s = E.schedule_g2_so4()
    worst = 0.0
    for _ in range(100):
        g7 = E.evaluate(s, E.random_interior_point(s, rng))
        g = np.eye(8)
        g[1:, 1:] = g7
        a, b = rng.normal(size=8), rng.normal(size=8)
        worst = max(worst, float(np.abs(g @ oct_mul(a, b) - oct_mul(g @ a, g @ b)).max()))
    r.require(worst <= tol.automorphism, "g2 octonion residual", worst)
    f4 = E.schedule_f4()
    F = f_basis_change()
    worst = 0.0
    for _ in range(20):
        gf = E.evaluate(f4, E.random_interior_point(f4, rng))
        g = F.T @ gf @ F
        a, b = rng.normal(size=27), rng.normal(size=27)
        worst = max(worst, float(np.abs(g @ jordan_mul_vec(a, b) - jordan_mul_vec(g @ a, g @ b)).max()))
    r.require(worst <= tol.automorphism, "f4 Jordan residual", worst)
    return r


def check_iwasawa(tol: Tolerances, seed: int) -> _Recorder:
    r = _Recorder()
    rng = np.random.default_rng(seed)
    cur, uni, raw = 0.0, 0.0, 0.0
    for _ in range(100):
        x = rng.uniform(-1, 1, 6)
        cur = max(cur, float(np.abs(IW.numeric_nilpotent_currents(x) - IW.nilpotent_currents(x)).max()))
        uni = max(uni, IW.unipotency_residual(x))
        raw = max(raw, IW.unipotency_residual(x, scaled=False))
    r.require(cur <= tol.currents, "current residual", cur)
    r.require(uni <= tol.unipotent, "(N - I)^7 / max(1, |N - I|)^7", uni)
    r.note("(N - I)^7 unscaled", raw)
    return r


def hmetric_fit(points) -> tuple:
    """Best single constant k with coset metric ~ k * printed, and the relative residual."""
    chart = CS.g2_split_chart()
    G = np.array([chart.metric(p) for p in points])
    H = np.array([CS.hmetric_printed(p) for p in points])
    k = float(np.sum(G * H) / np.sum(H * H))
    res = max(float(np.abs(g - k * h).max() / np.abs(g).max()) for g, h in zip(G, H))
    return k, res


def split_chart_points(rng: np.random.Generator, n: int) -> list:
    """Interior points of the split Euler chart with moderate a7, a8."""
    out = []
    for _ in range(n):
        a = np.array([rng.uniform(0.3, 2.8), rng.uniform(0.2, 1.3), rng.uniform(0.2, 1.3),
                      rng.uniform(0.5, 5.7), rng.uniform(0.1, 0.7), rng.uniform(0.3, 2.8), 0.0, 0.0])
        a[6] = rng.uniform(0.1, 0.5)
        a[7] = rng.uniform(3 * a[6] + 0.2, 3 * a[6] + 1.0)
        out.append(a)
    return out


def check_coset_metrics(tol: Tolerances, seed: int) -> _Recorder:
    r = _Recorder()
    rng = np.random.default_rng(seed)
    s6 = CS.g2_su3_chart()
    pts = [E.random_interior_point(s6.schedule, rng)[:6] for _ in range(50)]
    res = CS.sphere_isometry_check(s6, pts)
    r.require(res <= tol.metric, "S^6(sqrt3/2) pullback residual", res)
    spts = split_chart_points(rng, 50)
    chart = CS.g2_split_chart()
    structured = max(float(np.abs(chart.metric(p) - CS.hmetric_structured(p)).max() / np.abs(chart.metric(p)).max())
                     for p in spts)
    r.note("root-structured metric rel residual", structured)
    k, res = hmetric_fit(spts)
    r.note("printed hmetric best constant", k)
    r.require(res <= tol.metric, "printed hmetric rel residual", res)
    ipts = [rng.uniform(-0.5, 0.5, 8) for _ in range(10)]
    rep = CS.einstein_check(CS.iwasawa_metric_fn, ipts)
    r.note("iwasawa lambda", rep.mean)
    r.require(rep.spread <= tol.einstein_spread, "iwasawa lambda spread", rep.spread)
    return r


def check_sampler(tol: Tolerances, seed: int) -> _Recorder:
    r = _Recorder()
    s = E.schedule_g2_so4()
    samples = E.sample_haar(s, seed, 100_000)
    m = E.character_moments(samples)
    r.require(abs(m.mean_trace) <= tol.sigmas * m.se_trace, "mean tr g", float(m.mean_trace))
    r.require(abs(m.mean_trace_sq - 1) <= tol.sigmas * m.se_trace_sq, "mean (tr g)^2", m.mean_trace_sq)
    r.require(bool(np.array_equal(E.sample_haar(s, seed, 1000), E.sample_haar(s, seed, 1000))), "deterministic")
    return r


def check_f_identity(tol: Tolerances, seed: int) -> _Recorder:
    r = _Recorder()
    rng = np.random.default_rng(seed)
    a, b = rng.uniform(-2 * math.pi, 2 * math.pi, (2, 10_000))
    res = float(np.abs(E.f_g2(a, b) - E.f_g2_cosine_form(a, b)).max())
    r.require(res <= tol.f_identity, "max |f - f_cos|", res)
    return r


CHECKS: dict[str, tuple[str, Callable]] = {
    "g2_volume": ("Vol(G2) from the SO(4) and SU(3) Euler measures", check_g2_volume),
    "f4_volume": ("Vol(F4) from dmu_o x dmu_Spin(9)", check_f4_volume),
    "e6_volume": ("Vol(E6) with the coupled sin^8 block", check_e6_volume),
    "macdonald": ("Macdonald volumes and covering multiplicities", check_macdonald),
    "derivations": ("derivation algebras of O, J, H", check_derivations),
    "roots": ("root systems and Cartan integers", check_roots),
    "automorphism": ("G2 and F4 act as automorphisms", check_automorphism),
    "iwasawa": ("nilpotent currents and unipotency", check_iwasawa),
    "coset_metrics": ("S^6 pullback, printed split metric, Einstein Iwasawa chart", check_coset_metrics),
    "sampler": ("Haar sampler character moments", check_sampler),
    "f_function": ("two forms of the G2 f-function", check_f_identity),
}


def run_check(key: str, tol: Tolerances | None = None, seed: int = 0) -> CheckResult:
    title, fn = CHECKS[key]
    t = time.perf_counter()
    rec = fn(tol or Tolerances(), seed)
    return CheckResult(key, title, not rec.failures, rec.values, tuple(rec.failures), time.perf_counter() - t)


def run_all(only=None, tol: Tolerances | None = None, seed: int = 0) -> list:
    keys = [k for k in CHECKS if not only or k in only]
    unknown = set(only or ()) - set(CHECKS)
    if unknown:
        raise KeyError(f"unknown checks: {sorted(unknown)}")
    return [run_check(k, tol, seed) for k in keys]
