"""Command-line front end.

Subcommands: map, optimize, bench, compare, tune, coverage. Each one
reads the merged configuration (embedded defaults, optional TOML file,
CLI overrides), validates it fully, then writes its outputs into the
configured directory. Outputs are deterministic: rerunning a subcommand
on identical inputs produces byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import bench, fileio, metrics, sbs
from .config import RunConfig, build_problem, load_config
from .errors import ArmBalanceError, ConfigError
from .optimizer import optimize


def _mm(value: float) -> float:
    return value * 1000.0

#: Screw thread pitch of the tuning knob, mm per turn.
KNOB_PITCH_MM = 1.5


def _sbs_maps(config: RunConfig, body, label, geometry, outdir, suffix=""):
    support = metrics.SbsSupport(geometry, config.spring)
    domain = config.domain(body)
    written = []
    maps = []
    for metric in metrics.METRICS:
        fmap = metrics.evaluate_field(support, body, domain, metric, config.moment_arm)
        path = outdir / f"map_sbs_{metric}{suffix}_{label}.csv"
        fileio.write_field_csv(path, fmap)
        written.append(path)
        maps.append(fmap)
    return written, maps


def _gss_maps(config: RunConfig, body, label, outdir):
    params = config.gss_for(body)
    if params is None:
        return [], []
    domain = config.domain(body, unconstrained=True)
    written = []
    maps = []
    for metric in metrics.METRICS:
        fmap = metrics.evaluate_field(params, body, domain, metric, config.moment_arm)
        path = outdir / f"map_gss_{metric}_{label}.csv"
        fileio.write_field_csv(path, fmap)
        written.append(path)
        maps.append(fmap)
    return written, maps


def cmd_map(config: RunConfig, args) -> list[Path]:
    outdir = Path(config.out_dir)
    written = []
    for body, label in config.bodies():
        geometry, _ = config.geometry_for(body)
        sbs_files, sbs_fields = _sbs_maps(config, body, label, geometry, outdir)
        gss_files, gss_fields = _gss_maps(config, body, label, outdir)
        written += sbs_files + gss_files
        stats_path = outdir / f"map_stats_{label}.txt"
        fileio.write_field_stats(stats_path, sbs_fields + gss_fields)
        written.append(stats_path)
    return written


def cmd_coverage(config: RunConfig, args) -> list[Path]:
    outdir = Path(config.out_dir)
    written = []
    for body, label in config.bodies():
        domain = config.domain(body)
        rom_path = outdir / f"rom_{label}.csv"
        fileio.write_rom_csv(rom_path, domain)
        written.append(rom_path)
        pairs = [("sbs_coverage", fileio.fmt(domain.coverage))]
        params = config.gss_for(body)
        if params is not None:
            from .gss import gss_coverage

            cov = gss_coverage(body, params, domain.alpha_values, domain.beta_values)
            pairs.append(("gss_coverage", fileio.fmt(cov)))
        cov_path = outdir / f"coverage_{label}.txt"
        fileio.write_key_values(cov_path, pairs)
        written.append(cov_path)
    return written


def cmd_bench(config: RunConfig, args) -> list[Path]:
    outdir = Path(config.out_dir)
    curves = bench.theoretical_sweep(config.geometry_base, config.spring, config.sweep)
    written = []
    for curve in curves:
        mm = int(round(_mm(curve.delta_s)))
        path = outdir / f"bench_ds{mm:02d}mm.csv"
        fileio.write_curve_csv(path, curve)
        written.append(path)
    return written


def cmd_compare(config: RunConfig, args) -> list[Path]:
    outdir = Path(config.out_dir)
    if args.delta_s is not None:
        delta_s = args.delta_s
    else:
        body, _ = config.bodies()[0]
        geometry, _ = config.geometry_for(body)
        delta_s = geometry.delta_s
    spec = replace(config.sweep, delta_s_values=(delta_s,))
    curve = bench.theoretical_sweep(config.geometry_base, config.spring, spec)[0]
    measured = bench.ingest_measured(args.measured)
    if not measured:
        raise ConfigError(f"compare: no measured branches found in {args.measured}")
    written = []
    for branch in measured:
        rel = bench.relative_error(branch, curve)
        path = outdir / f"compare_{branch.direction}.csv"
        fileio.write_relative_error_csv(path, branch.angles, rel)
        written.append(path)
    return written


def cmd_tune(config: RunConfig, args) -> list[Path]:
    outdir = Path(config.out_dir)
    written = []
    for body, label in config.bodies():
        tuned = sbs.tune_delta_s(body, config.geometry_base, config.spring, config.moment_arm)
        geometry = replace(config.geometry_base, delta_s=tuned.delta_s)
        support = metrics.SbsSupport(geometry, config.spring)
        domain = config.domain(body)
        field = metrics.evaluate_field(support, body, domain, "torque_error", config.moment_arm)
        peak = geometry.a * config.spring.k * geometry.delta_s
        pairs = [
            ("delta_s_mm", fileio.fmt(_mm(tuned.delta_s))),
            ("requested_mm", fileio.fmt(_mm(tuned.requested))),
            ("clamped", "true" if tuned.clamped else "false"),
            ("knob_turns", fileio.fmt(_mm(tuned.delta_s) / KNOB_PITCH_MM)),
            ("peak_torque_nm", fileio.fmt(peak)),
            ("residual_mean_nm_per_kg", fileio.fmt(field.mean)),
            ("residual_max_abs_nm_per_kg", fileio.fmt(field.max_abs)),
        ]
        path = outdir / f"tune_{label}.txt"
        fileio.write_key_values(path, pairs)
        written.append(path)
        print(f"[{label}]")
        for key, value in pairs:
            print(f"{key} = {value}")
        if tuned.clamped:
            print(
                f"warning: requested travel {fileio.fmt(_mm(tuned.requested))} mm exceeds the "
                f"{fileio.fmt(_mm(sbs.DELTA_S_MAX))} mm range; clamped"
            )
    return written


def cmd_optimize(config: RunConfig, args) -> list[Path]:
    outdir = Path(config.out_dir)
    written = []
    for body, label in config.bodies():
        problem = build_problem(config, body)
        result = optimize(problem, config.opt_method)
        report = outdir / f"optimize_{label}.txt"
        fileio.write_optimization_report(report, problem, result)
        written.append(report)
        optimised_geometry = problem.geometry
        optimised_spring = problem.spring
        if "delta_s" in result.parameters:
            optimised_geometry = replace(optimised_geometry, delta_s=result.parameters["delta_s"])
        spring_updates = {
            name: result.parameters[name] for name in ("k", "l0", "f0") if name in result.parameters
        }
        if spring_updates:
            optimised_spring = replace(optimised_spring, **spring_updates)
        support = metrics.SbsSupport(optimised_geometry, optimised_spring)
        domain = config.domain(body)
        for metric in metrics.METRICS:
            fmap = metrics.evaluate_field(support, body, domain, metric, config.moment_arm)
            path = outdir / f"map_sbs_{metric}_post_{label}.csv"
            fileio.write_field_csv(path, fmap)
            written.append(path)
    return written


def _overrides(args) -> dict:
    overrides: dict = {}
    if args.out is not None:
        overrides.setdefault("output", {})["directory"] = args.out
    if args.percentile is not None:
        overrides.setdefault("body", {})["percentile"] = args.percentile
    if args.resolution is not None:
        overrides.setdefault("rom", {})["resolution"] = args.resolution
    if args.paper_mode:
        overrides.setdefault("kinematics", {})["literal_elbow_form"] = True
        overrides.setdefault("sbs", {})["constant_b"] = True
    return overrides


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", metavar="PATH", help="TOML configuration file")
    shared.add_argument("--out", metavar="DIR", help="output directory")
    shared.add_argument(
        "--percentile",
        metavar="P",
        help="body selection: 1pf, 99pm, or a fraction in [0, 1]",
    )
    shared.add_argument("--resolution", type=float, metavar="DEG", help="grid step in degrees")
    shared.add_argument(
        "--paper-mode",
        action="store_true",
        help="literal published elbow form and constant cable length",
    )

    parser = argparse.ArgumentParser(
        prog="armbalance",
        description="Gravity-compensation arm support analysis toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_map = sub.add_parser("map", parents=[shared], help="error and parasitic field maps")
    p_map.set_defaults(func=cmd_map)
    p_opt = sub.add_parser("optimize", parents=[shared], help="spring parameter optimisation")
    p_opt.set_defaults(func=cmd_optimize)
    p_bench = sub.add_parser("bench", parents=[shared], help="theoretical bench torque curves")
    p_bench.set_defaults(func=cmd_bench)
    p_cmp = sub.add_parser("compare", parents=[shared], help="relative error vs measured data")
    p_cmp.add_argument("measured", metavar="CSV", help="measured torque CSV")
    p_cmp.add_argument(
        "--delta-s", type=float, metavar="M", help="grounding travel of the measured run (m)"
    )
    p_cmp.set_defaults(func=cmd_compare)
    p_tune = sub.add_parser("tune", parents=[shared], help="grounding-part setting for a body")
    p_tune.set_defaults(func=cmd_tune)
    p_cov = sub.add_parser("coverage", parents=[shared], help="reachability map and coverage")
    p_cov.set_defaults(func=cmd_coverage)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config, _overrides(args))
        outdir = Path(config.out_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        written = args.func(config, args)
    except ArmBalanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
