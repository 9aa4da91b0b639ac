"""exceptional-euler: algebras, roots, volumes, samples, metrics and the acceptance suite.

Exit codes: 0 success, 1 verification or IO failure, 2 non-integer covering
multiplicity, 64 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import coset as CS
from . import euler as E
from . import io as IO
from . import verify as V
from .config import OUTPUT_DIR_ENV, ConfigError, RunConfig, Tolerances, default_output_dir
from .groups import GROUPS, SCHEDULE_KINDS, group, macdonald, root_system
from .lie import killing_form, structure_constants

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_COVERING = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--group", choices=GROUPS, default="g2")
    p.add_argument("--schedule", choices=SCHEDULE_KINDS, default="default")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", dest="output_format", choices=("json", "csv"), default="json")
    p.add_argument("--output", type=Path, default=None,
                   help=f"output file; defaults to stdout, or a file under ${OUTPUT_DIR_ENV} when set")
    p.add_argument("--tolerance", type=float, default=None, help="loosen every residual threshold to this value")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="exceptional-euler", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common()
    sub.add_parser("algebra", parents=[common], help="generators, structure constants and Killing form")
    sub.add_parser("roots", parents=[common], help="roots, simple roots and Cartan matrix")
    sub.add_parser("volume", parents=[common], help="quadrature and Macdonald volumes, covering multiplicity")
    s = sub.add_parser("sample", parents=[common], help="seeded Haar samples")
    s.add_argument("-n", type=int, default=1000)
    m = sub.add_parser("metric", parents=[common], help="coset metric samples, optionally with Ricci")
    m.add_argument("--points", type=int, default=5)
    m.add_argument("--ricci", action="store_true")
    v = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    v.add_argument("--only", default=None, help="comma-separated check names: " + ", ".join(V.CHECKS))
    return parser


def config_from_args(args) -> RunConfig:
    tol = Tolerances()
    if args.tolerance is not None:
        tol = tol.loosened(args.tolerance)
    output = args.output
    if output is None and OUTPUT_DIR_ENV in os.environ:
        ext = "csv" if args.output_format == "csv" else "json"
        output = default_output_dir() / f"{args.command}_{args.group}_{args.schedule}.{ext}"
    return RunConfig(args.group, args.schedule, args.seed, tol, args.output_format, output)


# ---------------------------------------------------------------------------
# commands


def cmd_algebra(cfg: RunConfig) -> int:
    if cfg.output_format != "json":
        raise UsageError("algebra exports JSON only")
    b = group(cfg.group).basis()
    sc = structure_constants(b)
    doc = IO.document("algebra", {
        "group": cfg.group,
        "dim": b.dim,
        "rep_dim": b.dim_rep,
        "complex": bool(b.is_complex),
        "kappa": b.kappa,
        "signature": b.signature.tolist(),
        "labels": list(b.labels),
        "generators": IO.array_field(b.generators),
        "structure_constants": IO.array_field(sc.f),
        "killing": IO.array_field(killing_form(sc)),
    })
    IO.write_text(IO.dumps(doc), cfg.output)
    return EXIT_OK


def cmd_roots(cfg: RunConfig) -> int:
    rs = root_system(cfg.group)
    if cfg.output_format == "csv":
        rows = [["root", i] + list(r) for i, r in enumerate(rs.roots)]
        rows += [["simple", i] + list(r) for i, r in enumerate(rs.simple)]
        rows += [["cartan", i] + [int(v) for v in row] for i, row in enumerate(rs.cartan_matrix)]
        header = ["kind", "index"] + [f"c{k + 1}" for k in range(rs.rank)]
        IO.write_text(IO.to_csv(header, rows), cfg.output)
        return EXIT_OK
    doc = IO.document("roots", {
        "group": cfg.group,
        "cartan_labels": list(group(cfg.group).cartan_labels),
        "roots": IO.array_field(rs.roots),
        "simple_roots": IO.array_field(rs.simple),
        "cartan_matrix": rs.cartan_matrix.tolist(),
    })
    IO.write_text(IO.dumps(doc), cfg.output)
    return EXIT_OK


def _schedule(cfg: RunConfig) -> E.EulerSchedule:
    if cfg.schedule == "iwasawa":
        raise UsageError("the Iwasawa chart has no finite-volume schedule")
    return group(cfg.group).schedule(cfg.schedule)


def cmd_volume(cfg: RunConfig) -> int:
    spec = group(cfg.group)
    if not spec.compact:
        raise UsageError(f"{cfg.group} is noncompact; its volume is infinite")
    s = _schedule(cfg)
    vol = E.volume(s, s.density_form)
    mac = macdonald(cfg.group)
    m = vol / mac
    rel = abs(vol - mac) / mac
    ok = rel <= cfg.tolerances.volume_rel
    integral = abs(m - round(m)) <= cfg.tolerances.covering
    report = {
        "group": cfg.group, "schedule": s.name, "quadrature_volume": vol, "macdonald_volume": mac,
        "closed_form": s.volume_tag, "covering_multiplicity": m, "relative_error": rel, "passed": bool(ok and integral),
    }
    if cfg.output_format == "json" and cfg.output is not None:
        IO.write_text(IO.dumps(IO.document("volume", report)), cfg.output)
    else:
        print(f"group            {cfg.group} ({s.name})")
        print(f"quadrature       {vol:.17g}")
        print(f"Macdonald        {mac:.17g}")
        print(f"closed form      {s.volume_tag}")
        print(f"multiplicity m   {m:.12f}")
        print(f"relative error   {rel:.3e}  {'PASS' if ok else 'FAIL'} at {cfg.tolerances.volume_rel:g}")
    if not integral:
        print(f"non-integer covering multiplicity {m}", file=sys.stderr)
        return EXIT_COVERING
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sample(cfg: RunConfig, n: int) -> int:
    if n < 1:
        raise UsageError("-n must be positive")
    s = _schedule(cfg)
    if s.density_form is None or not group(cfg.group).compact:
        raise UsageError(f"no Haar sampler for {cfg.group}")
    g = E.sample_haar(s, cfg.seed, n)
    if cfg.output_format == "csv":
        d = g.shape[1]
        cplx = np.iscomplexobj(g)
        header = ["index"] + [f"g{i + 1}_{j + 1}{p}" for i in range(d) for j in range(d) for p in (("_re", "_im") if cplx else ("",))]
        rows = []
        for k, M in enumerate(g):
            flat = np.stack([M.real.ravel(), M.imag.ravel()], axis=1).ravel() if cplx else M.ravel()
            rows.append([k] + [float(v) for v in flat])
        IO.write_text(IO.to_csv(header, rows), cfg.output)
        return EXIT_OK
    doc = IO.document("samples", {
        "group": cfg.group, "schedule": s.name, "seed": cfg.seed, "n": n,
        "samples": [{"index": k, "matrix": IO.array_field(M)} for k, M in enumerate(g)],
    })
    IO.write_text(IO.dumps(doc), cfg.output)
    return EXIT_OK


def _metric_target(cfg: RunConfig):
    """(metric function, point generator) for the chosen chart."""
    rng = np.random.default_rng(cfg.seed)
    if cfg.group == "g2_split" and cfg.schedule == "iwasawa":
        return CS.iwasawa_metric_fn, lambda: rng.uniform(-0.5, 0.5, 8)
    if cfg.group == "g2_split":
        return CS.chart_metric_fn(CS.g2_split_chart()), lambda: V.split_chart_points(rng, 1)[0]
    charts = {("su2", "default"): CS.su2_chart, ("g2", "euler_su3"): CS.g2_su3_chart,
              ("g2", "euler_so4"): CS.g2_so4_chart, ("g2", "default"): CS.g2_so4_chart}
    if (cfg.group, cfg.schedule) not in charts:
        raise UsageError(f"no coset chart for {cfg.group}/{cfg.schedule}")
    chart = charts[(cfg.group, cfg.schedule)]()
    return CS.chart_metric_fn(chart), lambda: E.random_interior_point(chart.schedule, rng, 0.1)[:chart.dim]


def cmd_metric(cfg: RunConfig, n_points: int, ricci: bool) -> int:
    if cfg.output_format != "json":
        raise UsageError("metric exports JSON only")
    fn, draw = _metric_target(cfg)
    samples = []
    for k in range(n_points):
        p = draw()
        item = {"index": k, "point": p.tolist(), "g": IO.array_field(fn(p))}
        if ricci:
            item["ricci"] = IO.array_field(CS.ricci_fd(fn, p))
        samples.append(item)
    doc = IO.document("metric", {"group": cfg.group, "schedule": cfg.schedule, "seed": cfg.seed, "samples": samples})
    IO.write_text(IO.dumps(doc), cfg.output)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, only) -> int:
    keys = [k.strip() for k in only.split(",")] if only else None
    try:
        results = V.run_all(keys, cfg.tolerances, cfg.seed)
    except KeyError as e:
        raise UsageError(str(e)) from None
    for r in results:
        print(r.line())
        for name, val in r.values.items():
            print(f"    {name}: {val}")
    print(f"tolerances: {cfg.tolerances.as_dict()}")
    if cfg.output is not None:
        doc = IO.document("verify", {
            "seed": cfg.seed,
            "tolerances": cfg.tolerances.as_dict(),
            "results": [{"key": r.key, "title": r.title, "passed": r.passed, "failures": list(r.failures),
                         "values": {k: _plain(v) for k, v in r.values.items()}} for r in results],
        })
        IO.write_text(IO.dumps(doc), cfg.output)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _plain(v):
    if isinstance(v, (tuple, list)):
        return [_plain(x) for x in v]
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer, int)):
        return int(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        if args.command == "algebra":
            return cmd_algebra(cfg)
        if args.command == "roots":
            return cmd_roots(cfg)
        if args.command == "volume":
            return cmd_volume(cfg)
        if args.command == "sample":
            return cmd_sample(cfg, args.n)
        if args.command == "metric":
            return cmd_metric(cfg, args.points, args.ricci)
        if args.command == "verify":
            return cmd_verify(cfg, args.only)
    except (ConfigError, UsageError, KeyError) as e:
        print(f"exceptional-euler: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"exceptional-euler: {e}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
