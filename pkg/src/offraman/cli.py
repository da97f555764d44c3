"""Command-line front end.

Subcommands::

    witness       every witness at one parameter set
    scan          named quantities over a 1D or 2D sweep
    figure        figure datasets (presets 1-9), one CSV per panel
    dist          number distributions and quasidistribution grids
    oracle-check  perturbative versus exact evolution at small coupling

Exit status is 0 on success, 2 for invalid input and 3 when the exact
simulation breaks its numerical contract.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import distributions as dist
from . import oracle
from .config import ConfigError
from .sweeps import QUANTITIES, Point, build_config, figure_panels, parse_params, parse_sweep
from .witnesses import closed_form_checks, witness_report

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3

#: small-amplitude parameter sets for ``oracle-check`` without a config file
ORACLE_PRESETS = {
    "coherent": {"chi": 0.8, "dw1": 3.0, "dw2": -2.0, "xi_L": 0.5, "xi_S": 0.3j, "xi_V": 0.25, "xi_A": 0.4 - 0.1j},
    "chaotic": {"chi": 0.8, "dw1": 3.0, "dw2": -2.0, "xi_L": 0.5, "xi_S": 0.3j, "xi_A": 0.3 - 0.1j,
                "phonon": "chaotic", "n_mean": 0.1},
}


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    return format(float(v), ".17g")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    def default(o):
        if isinstance(o, np.generic):
            return o.item()
        raise TypeError(f"cannot serialise {type(o).__name__}")

    return json.dumps(obj, indent=2, default=default) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)


def _load(path: str | None) -> dict:
    if not path:
        return {}
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse_params(text, str(p))


def _table(header, rows, fmt: str) -> str:
    if fmt == "json":
        return _json([dict(zip(header, r)) for r in rows])
    return _csv(header, rows)


def cmd_witness(args) -> int:
    params = _load(args.config)
    pt = Point(params)
    rows = witness_report(pt.nt, pt["dbar"]).rows()
    header = ["witness", "value", "nonclassical"]
    if args.closed_form:
        checks = closed_form_checks(pt.cfg, dbar_mode=pt["dbar"])
        header = ["witness", "value", "nonclassical", "closed_form", "rel_diff"]
        out = []
        for name, value, flag in rows:
            if name in checks:
                cf = checks[name][0]
                out.append((name, value, flag, cf, abs(cf - value) / max(abs(value), 1e-300)))
            else:
                out.append((name, value, flag, None, None))
        rows = out
    _emit(_table(header, rows, args.format), args.out)
    return EXIT_OK


def _quantities(text: str | None) -> list[str]:
    if not text:
        raise ConfigError("--quantity is required")
    names = [q.strip() for q in text.split(",") if q.strip()]
    for q in names:
        if q not in QUANTITIES:
            raise ConfigError(f"unknown quantity {q!r}")
    return names


def _sweep_rows(params, sweep, names):
    rows = []
    for coords, p in sweep.points(params):
        pt = Point(p)
        rows.append(list(coords) + [QUANTITIES[q](pt) for q in names])
    return rows


def cmd_scan(args) -> int:
    params = _load(args.config)
    if args.s is not None:
        params["s"] = args.s
    if not args.sweep:
        raise ConfigError("--sweep is required")
    sweep = parse_sweep(args.sweep)
    names = _quantities(args.quantity)
    header = [ax.name for ax in sweep.axes] + names
    _emit(_table(header, _sweep_rows(params, sweep, names), args.format), args.out)
    return EXIT_OK


def cmd_figure(args) -> int:
    fig = args.preset or args.figure
    if not fig:
        raise ConfigError("name a figure with --preset (e.g. 4 or 3b)")
    panels = figure_panels(fig)
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    for panel in panels:
        sweep = parse_sweep(panel.sweep)
        header = [ax.name for ax in sweep.axes] + list(panel.quantities)
        rows = _sweep_rows(dict(panel.params), sweep, panel.quantities)
        suffix = "json" if args.format == "json" else "csv"
        (outdir / f"fig{panel.name}.{suffix}").write_text(_table(header, rows, args.format), newline="\n")
    return EXIT_OK


def _grid_axes(sweep_text: str | None, names: tuple[str, str]):
    if not sweep_text:
        raise ConfigError(f"--sweep must give the {names[0]} and {names[1]} grid")
    sweep = parse_sweep(sweep_text)
    axes = {ax.name: np.array(ax.values) for ax in sweep.axes}
    if set(axes) != set(names):
        raise ConfigError(f"grid axes must be {names[0]} and {names[1]}")
    return axes[names[0]], axes[names[1]]


def cmd_dist(args) -> int:
    params = _load(args.config)
    pt = Point(params)
    kind = args.quantity or "joint_sv"
    n = args.cutoff
    if kind == "joint_sv":
        d = dist.joint_sv(pt.nt_sv, n)
        rows = [(i, i, d.probs[i, i]) for i in range(n + 1)]
        header = ["n_S", "n_V", "p"]
    elif kind == "joint_lv":
        d = dist.joint_lv(pt.nt_lv, n)
        rows = [(i, j, d.probs[i, j]) for i in range(n + 1) for j in range(n + 1)]
        header = ["n_L", "n_V", "p"]
    elif kind == "conditional_L":
        counts, p = dist.conditional_numbers(pt.nt_lv, int(pt["n_V"]), given="V")
        rows, header = list(zip(counts, p)), ["n_L", "p"]
    elif kind == "conditional_V":
        counts, p = dist.conditional_numbers(pt.nt_lv, int(pt["n_L"]), given="L", cutoff=n)
        rows, header = list(zip(counts, p)), ["n_V", "p"]
    elif kind == "difference":
        pm, pp = dist.difference_dist(pt.nt_lv, n)
        rows, header = [(k, pm[k], pp[k]) for k in range(n + 1)], ["n", "p_minus", "p_poisson"]
    elif kind == "quasi_sv":
        s = args.s if args.s is not None else pt["s"]
        ws, wv = _grid_axes(args.sweep, ("W_S", "W_V"))
        g = dist.quasi_sv(pt.nt_sv, s, ws, wv)
        rows = [(a, b, g.values[i, j]) for i, a in enumerate(ws) for j, b in enumerate(wv)]
        header = ["W_S", "W_V", "P"]
    elif kind == "quasi_lv":
        wl, wv = _grid_axes(args.sweep, ("W_L", "W_V"))
        g = dist.quasi_lv(pt.nt_lv, wl, wv)
        rows = [(a, b, g.values[i, j]) for i, a in enumerate(wl) for j, b in enumerate(wv)]
        header = ["W_L", "W_V", "P"]
    else:
        raise ConfigError(
            f"unknown distribution {kind!r}; choose joint_sv, joint_lv, conditional_L, "
            "conditional_V, difference, quasi_sv or quasi_lv"
        )
    _emit(_table(header, rows, args.format), args.out)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    if args.config:
        params = _load(args.config)
    else:
        params = dict(ORACLE_PRESETS[args.preset or "coherent"])
    cfg = build_config(params)
    if args.cutoffs:
        try:
            cuts = tuple(int(c) for c in args.cutoffs.split(","))
        except ValueError:
            raise ConfigError(f"--cutoffs must be four integers, got {args.cutoffs!r}") from None
        basis = oracle.FockBasis(cuts)
    else:
        basis = oracle.FockBasis.for_config(cfg)
    gts = tuple(float(v) for v in args.gts.split(","))
    report = oracle.compare(cfg, basis, gts)
    sens = oracle.cutoff_sensitivity(cfg.replace(gt=max(gts)), basis)
    report["cutoff_sensitivity"] = sens
    report["converged"] = sens <= 1.0
    _emit(_json(report), args.out)
    if not report["converged"]:
        raise oracle.UnconvergedError(f"moments change by {sens:.2f}x the tolerance when cutoffs grow")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="offraman", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", help="key=value parameter file")
        p.add_argument("--out", help="output file (directory for figure); default stdout")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("witness", help="all witnesses at one parameter set")
    common(p)
    p.add_argument("--closed-form", action="store_true", help="add closed-form columns where defined")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("scan", help="quantities over a sweep")
    common(p)
    p.add_argument("--sweep", help="e.g. dw1=0:50:101 or dw1=0:50:51,n_mean=0:10:21")
    p.add_argument("--quantity", help="comma-separated quantity names")
    p.add_argument("--s", type=float, help="ordering parameter for quasidistributions")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("figure", help="figure datasets, one file per panel")
    common(p, config=False)
    p.add_argument("figure", nargs="?", help="figure or panel id (same as --preset)")
    p.add_argument("--preset", help="figure or panel id, e.g. 4 or 3b")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("dist", help="number distributions and quasidistribution grids")
    common(p)
    p.add_argument("--quantity", help="joint_sv, joint_lv, conditional_L, conditional_V, difference, quasi_sv, quasi_lv")
    p.add_argument("--cutoff", type=int, default=10, help="largest count tabulated")
    p.add_argument("--sweep", help="W grid for quasidistributions, e.g. W_S=0:2:41,W_V=0:2:41")
    p.add_argument("--s", type=float, help="ordering parameter for quasi_sv")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("oracle-check", help="perturbative versus exact moments")
    common(p)
    p.add_argument("--preset", choices=sorted(ORACLE_PRESETS), help="built-in parameter set when no --config")
    p.add_argument("--cutoffs", help="per-mode Fock cutoffs L,S,V,A (default: chosen from the amplitudes)")
    p.add_argument("--gts", default="0.01,0.02,0.04", help="comma-separated |g|t values")
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (oracle.NormDriftError, oracle.UnconvergedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, TypeError, oracle.LeakageError) as exc:
        # ConfigError, RegimeError and DimensionError are all ValueErrors;
        # leakage means the requested cutoffs are too small for the amplitudes
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
