"""Command line front end: ``aglab verify``, ``aglab field ...`` and ``aglab export-plot``."""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from ..canonical_fields import (
    eikonal_residual,
    field_from_u,
    jump_field,
    minimize_aviles_giga,
    vortex_superposition,
)
from ..entropy_core.entropies import JinKohnEntropy
from ..field_lab import (
    Box,
    GridSpec,
    PlanarField,
    besov_seminorm,
    bump_family,
    divergence,
    p_eps,
    read_field,
    weak_entropy_production,
    write_field,
)
from ..identity_verifier.suite import rows_per_grid, run_suite
from ..inclusion_map import singular_set_csv, singular_set_scan
from .config import ConfigError, RunConfig, load_config, parse_grid_flag

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _pair(text: str) -> tuple[float, float]:
    a, b = text.split(",")
    return float(a), float(b)


def _spec(cfg: RunConfig, margin: int = 2) -> GridSpec:
    return GridSpec.centered(cfg.nx, cfg.ny, cfg.h, boundary_margin=margin)


# ---------------------------------------------------------------- verify


def cmd_verify(args, cfg: RunConfig) -> int:
    select = tuple(args.only.split(",")) if args.only else (cfg.identities or None)
    try:
        report = run_suite(cfg.grids, select=select, seed=cfg.seed, jobs=cfg.jobs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    out = Path(args.out_dir) / "suite.csv"
    _write(out, report.to_csv())
    failed = [r.identity_id for r in report.rows if not r.passed]
    print(f"suite: {len(report.rows)} rows, grids {rows_per_grid(report)}, wrote {out}", file=sys.stderr)
    if failed:
        print("failed: " + ", ".join(sorted(set(failed))), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------- field


def _gen(args, cfg: RunConfig) -> int:
    spec = _spec(cfg)
    out_dir = Path(args.out_dir)
    name = args.output or f"{args.generator}.field"
    if args.generator == "vortex":
        centers = [_pair(c) for c in args.center] or [(0.0, 0.0)]
        m = vortex_superposition(centers, spec, alpha=args.alpha)
    elif args.generator == "jump":
        m = jump_field(args.beta, (np.cos(args.nu_angle), np.sin(args.nu_angle)), spec)
    elif args.generator == "from-u":
        X = spec.coords()
        z = _pair(args.center[0]) if args.center else (0.0, 0.0)
        u = np.hypot(X[..., 0] - z[0], X[..., 1] - z[1]) if args.profile == "distance" else args.slope * X[..., 0]
        m = field_from_u(PlanarField(spec, u, "scalar"))
    else:  # minimize
        u0 = PlanarField(spec, args.slope * spec.coords()[..., 0], "scalar")
        result = minimize_aviles_giga(u0, args.epsilon, args.steps, args.step_size, boundary=args.boundary)
        _write(out_dir / "energy_trace.csv", result.trace_csv())
        write_field(result.field, str(out_dir / name))
        print(
            f"minimize: energy {result.trace[0][1]:.6g} -> {result.trace[-1][1]:.6g}, "
            f"eikonal residual {eikonal_residual(u0):.4g} -> {eikonal_residual(result.field):.4g}",
            file=sys.stderr,
        )
        return EXIT_OK
    out_dir.mkdir(parents=True, exist_ok=True)
    write_field(m, str(out_dir / name))
    print(f"{args.generator}: {spec.nx}x{spec.ny} nodes, max ||m|-1| = {m.unit_defect():.3g}", file=sys.stderr)
    return EXIT_OK


def _singular_points(m: PlanarField) -> list[tuple[float, float]]:
    X = m.spec.coords()
    return [tuple(X[i, j]) for i, j in zip(*np.nonzero(m.singular))]


def _analyze(args, cfg: RunConfig) -> int:
    m = read_field(args.file)
    if m.role != "vector":
        raise ConfigError("analyze expects a vector field file")
    spec = replace(m.spec, boundary_margin=2)
    m = PlanarField(spec, m.values, m.role, m.singular)
    stem = Path(args.file).stem
    tests = bump_family(spec, exclude=_singular_points(m))
    report = weak_entropy_production(m, JinKohnEntropy(args.entropy), tests)
    out_dir = Path(args.out_dir)
    _write(out_dir / f"{stem}_production.csv", report.to_csv())
    x0, x1, y0, y1 = spec.extent
    cx, cy, wx, wy = (x0 + x1) / 2, (y0 + y1) / 2, (x1 - x0) / 4, (y1 - y0) / 4
    U = Box(cx - wx, cx + wx, cy - wy, cy + wy)
    div = divergence(m)
    lines = [
        f"tests {len(tests)}",
        f"max_abs_pairing {float(report.max_abs)!r}",
        f"besov {float(besov_seminorm(m, U))!r}",
    ]
    for k in args.eps_multiples:
        lines.append(f"p_eps_max_eps{k}h {float(np.max(p_eps(m, k * spec.h).values))!r}")
    lines.append(f"max_abs_divergence_off_singular {float(np.max(np.abs(div.values[~div.singular])))!r}")
    _write(out_dir / f"{stem}_summary.txt", "\n".join(lines) + "\n")
    print(f"analyze: {len(tests)} tests, max |pairing| = {report.max_abs:.3g}", file=sys.stderr)
    return EXIT_OK


def _scan(args, cfg: RunConfig) -> int:
    m = read_field(args.file)
    pts = singular_set_scan(m)
    _write(Path(args.out_dir) / f"{Path(args.file).stem}_singular.csv", singular_set_csv(pts))
    print(f"scan: {len(pts)} singular plaquette(s)", file=sys.stderr)
    return EXIT_OK


def cmd_field(args, cfg: RunConfig) -> int:
    return {"gen": _gen, "analyze": _analyze, "scan": _scan}[args.field_cmd](args, cfg)


# ---------------------------------------------------------------- export


_COLUMNS = {
    ("identity_id", "grid_h", "residual", "observed_order", "pass"): None,
    ("step", "energy", "step_size"): ("step", "energy"),
    ("test_id", "center_x", "center_y", "radius", "pairing"): ("center_x", "center_y", "radius", "pairing"),
    ("x", "y", "winding"): ("x", "y", "winding"),
}


def export_columns(text: str) -> str:
    """gnuplot-style whitespace columns from any CSV the CLI writes."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        return ""
    header = tuple(rows[0])
    if header not in _COLUMNS:
        raise ValueError(f"line 1: unrecognised header {rows[0]!r}")
    body = rows[1:]
    for lineno, r in enumerate(body, start=2):
        if len(r) != len(header):
            raise ValueError(f"line {lineno}: expected {len(header)} columns, got {len(r)}")
    out = []
    if _COLUMNS[header] is None:
        ids = []
        for r in body:
            if r[1] and r[0] not in ids:
                ids.append(r[0])
        for k, ident in enumerate(ids):
            if k:
                out.append("")
                out.append("")
            out.append(f"# {ident}")
            out.extend(f"{r[1]} {r[2]}" for r in body if r[0] == ident and r[1])
    else:
        keep = [header.index(c) for c in _COLUMNS[header]]
        out.append("# " + " ".join(_COLUMNS[header]))
        out.extend(" ".join(r[i] for i in keep) for r in body)
    return "\n".join(out) + "\n"


def cmd_export_plot(args, cfg: RunConfig) -> int:
    try:
        with open(args.csv, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {args.csv!r}: {exc.strerror}") from None
    out = export_columns(text)
    if args.output:
        _write(Path(args.output), out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _global_flags(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--config", default=default(None), help="INI file with [run], [verify] and [grid] sections")
    p.add_argument("--out-dir", default=default("."), help="directory for every file written")
    p.add_argument("--jobs", type=int, default=default(None), help="worker threads for the identity suite")
    p.add_argument("--grid", default=default(None), help="nx,ny,h of the grid centred at the origin")
    p.add_argument("--seed", type=int, default=default(None), help="seed of the portable LCG")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aglab", description=__doc__)
    _global_flags(p, lambda d: d)
    # the same flags after a subcommand; SUPPRESS keeps them from clobbering earlier values
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, lambda d: argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run the identity suite and write suite.csv")
    v.add_argument("--only", help="comma-separated families or identity ids")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("field", parents=[common], help="generate, analyze or scan field files")
    fsub = f.add_subparsers(dest="field_cmd", required=True)
    g = fsub.add_parser("gen", parents=[common], help="write a generated field")
    g.add_argument("generator", choices=["vortex", "jump", "from-u", "minimize"])
    g.add_argument("--alpha", type=int, default=1, choices=[1, -1])
    g.add_argument("--center", action="append", default=[], help="x,y (repeat for several vortices)")
    g.add_argument("--beta", type=float, default=np.pi / 2)
    g.add_argument("--nu-angle", type=float, default=0.0, help="angle of the jump normal")
    g.add_argument("--profile", choices=["distance", "affine"], default="distance")
    g.add_argument("--slope", type=float, default=0.9)
    g.add_argument("--epsilon", type=float, default=0.1)
    g.add_argument("--steps", type=int, default=500)
    g.add_argument("--step-size", type=float, default=1e-2)
    g.add_argument("--boundary", choices=["fixed", "free"], default="fixed")
    g.add_argument("--output", help="file name inside --out-dir")
    a = fsub.add_parser("analyze", parents=[common], help="production report and summaries for a field file")
    a.add_argument("file")
    a.add_argument("--entropy", type=int, choices=[1, 2], default=1)
    a.add_argument("--eps-multiples", type=int, nargs="+", default=[4, 8])
    s = fsub.add_parser("scan", parents=[common], help="singular-set CSV for a field file")
    s.add_argument("file")
    f.set_defaults(func=cmd_field)

    e = sub.add_parser("export-plot", parents=[common], help="whitespace columns from a CSV report")
    e.add_argument("csv")
    e.add_argument("--output")
    e.set_defaults(func=cmd_export_plot)
    return p


def resolve_config(args) -> RunConfig:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    if args.jobs is not None:
        cfg = replace(cfg, jobs=args.jobs)
    if args.grid:
        nx, ny, h = parse_grid_flag(args.grid)
        cfg = replace(cfg, nx=nx, ny=ny, h=h)
    return cfg.validate()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        os.makedirs(args.out_dir, exist_ok=True)
        return args.func(args, cfg)
    except ConfigError as exc:
        print(f"aglab: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"aglab: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
