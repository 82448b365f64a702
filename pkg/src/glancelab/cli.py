"""Command-line front end.

Subcommands
-----------
sweep-disk     disk amplitude sweep; with --rho1/--rho2 a band-filtered
               sigma^s-weighted sweep; with --derivative an h-scaled
               normal-derivative sweep weighted by sigma^{-s}
sweep-sphere   equator amplitude sweep over spherical-harmonic degrees
quasimode      random quasimodes on unit frequency windows, weighted norms
normal-band    sqrt(xi_d)-weighted trace norms (bounded by theory)
fit            power-law exponent of one CSV column against another (JSON)
plot           log-log SVG scatter of CSV columns with fitted lines
selftest       run the full oracle suite, report as JSON

Table-producing commands write ``<out>.csv`` plus ``<out>.manifest.json``
holding the fully resolved configuration (enough to reproduce the CSV
byte-for-byte; the timestamp lives only in the manifest).

Every flag can instead be given in an INI config file (``--config``): keys
match flag names without the leading dashes, in a section named after the
subcommand, with ``[common]`` applying everywhere.  Explicit flags override
the file.  Exit status: 0 success, 1 configuration error, 2 numerical
failure, 3 oracle failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import experiments, io, modes, oracle, specfun, svgplot

_EXIT_OK = 0
_EXIT_CONFIG = 1
_EXIT_NUMERICAL = 2
_EXIT_ORACLE = 3


class _ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with the documented exit status for bad usage."""

    def error(self, message):
        raise _ConfigError(message)


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# Option tables: (dest, flag, type, default, help).  Defaults are applied
# after the config file so that flags > file > default, and so the manifest
# can record the fully resolved values.
_COMMON_SWEEP = [
    ("n_min", "--n-min", int, 1000, "smallest angular order / degree"),
    ("n_max", "--n-max", int, 100000, "largest angular order / degree"),
    ("points", "--points", int, 24, "geometric grid size"),
    ("offset_const", "--offset-const", float, 4.0,
     "window offset constant of the scale target"),
]

_OPTIONS = {
    "sweep-disk": _COMMON_SWEEP + [
        ("alpha", "--alpha", float, None, "scale exponent (required)"),
        ("radius", "--radius", float, 0.5, "restriction circle radius"),
        ("s", "--s", float, 0.0, "weight power"),
        ("rho1", "--rho1", float, None, "band outer scale (with --rho2)"),
        ("rho2", "--rho2", float, None, "band inner scale (with --rho1)"),
        ("derivative", "--derivative", _bool, False,
         "sweep the h-scaled normal derivative weighted by sigma^{-s}"),
        ("rho", "--rho", float, 2.0 / 3.0,
         "glancing-weight scale for --derivative"),
        ("cutoff", "--cutoff", str, "exp",
         "cutoff shape: exp or smoothstep"),
        ("optimize", "--optimize", str, None,
         "mode choice within the window: first, restriction, "
         "normal_derivative (default: match the measured quantity)"),
        ("out", "--out", str, None, "output prefix (required)"),
    ],
    "sweep-sphere": _COMMON_SWEEP + [
        ("alpha", "--alpha", float, None, "scale exponent (required)"),
        ("out", "--out", str, None, "output prefix (required)"),
    ],
    "normal-band": _COMMON_SWEEP + [
        ("alpha", "--alpha", float, None, "scale exponent (required)"),
        ("radius", "--radius", float, 0.5, "restriction circle radius"),
        ("out", "--out", str, None, "output prefix (required)"),
    ],
    "quasimode": [
        ("lam_min", "--lam-min", float, 200.0, "first window edge"),
        ("lam_max", "--lam-max", float, 2000.0, "last window edge"),
        ("windows", "--windows", int, 8, "number of frequency windows"),
        ("trials", "--trials", int, 20, "random draws per window"),
        ("seed", "--seed", int, 2025, "root RNG seed"),
        ("s", "--s", float, 0.3, "weight power"),
        ("rho", "--rho", float, 2.0 / 3.0, "glancing-weight scale"),
        ("radius", "--radius", float, 0.5, "restriction circle radius"),
        ("cutoff", "--cutoff", str, "exp", "cutoff shape: exp or smoothstep"),
        ("out", "--out", str, None, "output prefix (required)"),
    ],
    "fit": [
        ("infile", "--in", str, None, "input CSV (required)"),
        ("x", "--x", str, None, "abscissa column (required)"),
        ("y", "--y", str, None, "ordinate column (required)"),
        ("drop_low", "--drop-low", float, 0.25,
         "leading fraction of rows to drop"),
    ],
    "plot": [
        ("infile", "--in", str, None, "input CSV (required)"),
        ("x", "--x", str, None, "abscissa column (required)"),
        ("drop_low", "--drop-low", float, 0.25,
         "leading fraction of rows dropped by the fits"),
        ("title", "--title", str, "", "plot title"),
        ("out", "--out", str, None, "output prefix (required)"),
    ],
    "selftest": [],
}

_REQUIRED = {
    "sweep-disk": ("alpha", "out"),
    "sweep-sphere": ("alpha", "out"),
    "normal-band": ("alpha", "out"),
    "quasimode": ("out",),
    "fit": ("infile", "x", "y"),
    "plot": ("infile", "x", "out"),
    "selftest": (),
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="glancelab",
                     description="scaling experiments for restricted "
                                 "eigenfunctions near glancing")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    for name, options in _OPTIONS.items():
        p = sub.add_parser(name, prog=f"glancelab {name}")
        p.add_argument("--config", default=None,
                       help="INI file of defaults for this subcommand")
        for dest, flag, typ, _default, help_text in options:
            if typ is _bool:
                p.add_argument(flag, dest=dest, action="store_const",
                               const=True, default=None, help=help_text)
            else:
                p.add_argument(flag, dest=dest, type=typ, default=None,
                               help=help_text)
        if name == "plot":
            p.add_argument("--y", dest="y", action="append", default=None,
                           help="ordinate column (repeat for more series)")
    return parser


def _resolve(args, name: str) -> dict:
    """Merge flag values, config-file values, and defaults; validate."""
    section, own = {}, {}
    if args.config is not None:
        raw = io.load_config(args.config)
        section = io.config_for(raw, name)
        own = dict(raw.get(name, {}))
    known = {}
    for dest, flag, typ, default, _help in _OPTIONS[name]:
        key = flag.lstrip("-")
        value = getattr(args, dest)
        if value is None and key in section:
            try:
                value = typ(section[key])
            except ValueError as exc:
                raise _ConfigError(f"config key {key!r}: {exc}") from exc
        if value is None:
            value = default
        known[dest] = value
        section.pop(key, None)
    if name == "plot" and getattr(args, "y", None):
        known["y"] = list(args.y)
    elif name == "plot":
        known["y"] = ([s.strip() for s in section.pop("y", "").split(",")
                       if s.strip()] or None)
    # a [common] key another subcommand uses is fine; a stray key in this
    # subcommand's own section is a config error
    unknown = sorted(set(section) & set(own))
    if unknown:
        raise _ConfigError(f"unknown config keys for {name}: "
                           + ", ".join(unknown))
    for dest in _REQUIRED[name]:
        if known.get(dest) is None:
            flag = next(f for d, f, *_ in _OPTIONS[name] if d == dest)
            raise _ConfigError(f"{name}: {flag} is required"
                               + (" (flag or config)" if args.config else ""))
    return known


# ----------------------------------------------------------------------
# subcommand bodies
# ----------------------------------------------------------------------

def _write_outputs(out_prefix: str, name: str, result, vals: dict,
                   seed=None, cutoff: str = "exp") -> str:
    csv_path = out_prefix + ".csv"
    if isinstance(result, experiments.QuasimodeResult):
        io.write_quasimode_csv(csv_path, result)
        rows, skipped = len(result.rows), 0
    else:
        io.write_sweep_csv(csv_path, result)
        rows, skipped = len(result.rows), len(result.skipped)
    io.write_manifest(io.manifest_path(csv_path), name,
                      {k: v for k, v in vals.items() if k != "out"},
                      rows=rows, skipped=skipped, seed=seed, cutoff=cutoff)
    return csv_path


def _run_sweep_disk(vals: dict) -> int:
    band_flags = (vals["rho1"] is not None, vals["rho2"] is not None)
    if any(band_flags) and not all(band_flags):
        raise _ConfigError("--rho1 and --rho2 must be given together")
    if all(band_flags) and vals["derivative"]:
        raise _ConfigError("--derivative cannot carry a band filter")
    config = experiments.SweepConfig(
        kind="disk", alpha=vals["alpha"], n_lo=vals["n_min"],
        n_hi=vals["n_max"], points=vals["points"], radius=vals["radius"],
        offset=vals["offset_const"],
        optimize=vals["optimize"] or "restriction")
    if vals["derivative"]:
        result = experiments.normal_derivative_sweep(
            config, s=vals["s"], rho=vals["rho"], cutoff=vals["cutoff"])
    elif all(band_flags):
        from .weights import BandSpec
        result = experiments.sharpness_sweep(
            config, s=vals["s"], band=BandSpec(vals["rho1"], vals["rho2"]))
    else:
        result = experiments.amplitude_sweep(config)
    path = _write_outputs(vals["out"], "sweep-disk", result, vals,
                          cutoff=vals["cutoff"])
    print(f"wrote {path} ({len(result.rows)} rows, "
          f"{len(result.skipped)} skipped)")
    return _EXIT_OK


def _run_sweep_sphere(vals: dict) -> int:
    config = experiments.SweepConfig(
        kind="sphere", alpha=vals["alpha"], n_lo=vals["n_min"],
        n_hi=vals["n_max"], points=vals["points"],
        offset=vals["offset_const"])
    result = experiments.amplitude_sweep(config)
    path = _write_outputs(vals["out"], "sweep-sphere", result, vals)
    print(f"wrote {path} ({len(result.rows)} rows, "
          f"{len(result.skipped)} skipped)")
    return _EXIT_OK


def _run_normal_band(vals: dict) -> int:
    config = experiments.SweepConfig(
        kind="disk", alpha=vals["alpha"], n_lo=vals["n_min"],
        n_hi=vals["n_max"], points=vals["points"], radius=vals["radius"],
        offset=vals["offset_const"])
    result = experiments.normal_band_check(config)
    path = _write_outputs(vals["out"], "normal-band", result, vals)
    print(f"wrote {path} ({len(result.rows)} rows, "
          f"{len(result.skipped)} skipped)")
    return _EXIT_OK


def _run_quasimode(vals: dict) -> int:
    result = experiments.quasimode_boundedness(
        lam_lo=vals["lam_min"], lam_hi=vals["lam_max"],
        windows=vals["windows"], trials=vals["trials"], seed=vals["seed"],
        s=vals["s"], rho=vals["rho"], radius=vals["radius"],
        cutoff=vals["cutoff"])
    path = _write_outputs(vals["out"], "quasimode", result, vals,
                          seed=vals["seed"], cutoff=vals["cutoff"])
    print(f"wrote {path} ({len(result.rows)} windows, "
          f"max/min {result.spread:.3f})")
    return _EXIT_OK


def _run_fit(vals: dict) -> int:
    table = io.read_table(vals["infile"])
    for col in (vals["x"], vals["y"]):
        if col not in table.columns:
            raise _ConfigError(f"no column {col!r} in {vals['infile']} "
                               f"(has: {', '.join(table.names)})")
    fit = experiments.fit_exponent(table[vals["x"]], table[vals["y"]],
                                   drop_low=vals["drop_low"])
    print(json.dumps(dataclasses.asdict(fit), sort_keys=True))
    return _EXIT_OK


def _run_plot(vals: dict) -> int:
    table = io.read_table(vals["infile"])
    ys = vals["y"] or ["weighted_norm"]
    for col in [vals["x"]] + ys:
        if col not in table.columns:
            raise _ConfigError(f"no column {col!r} in {vals['infile']} "
                               f"(has: {', '.join(table.names)})")
    try:
        text = svgplot.render_log_log(
            table[vals["x"]], [(col, table[col]) for col in ys],
            xlabel=vals["x"], ylabel=", ".join(ys), title=vals["title"],
            drop_low=vals["drop_low"])
    except svgplot.PlotError as exc:
        raise _ConfigError(str(exc)) from exc
    svg_path = vals["out"] + ".svg"
    svgplot.write_svg(svg_path, text)
    io.write_manifest(io.manifest_path(svg_path), "plot",
                      {k: v for k, v in vals.items() if k != "out"},
                      rows=len(table),
                      input_hash=io.hash_file(vals["infile"]))
    print(f"wrote {svg_path}")
    return _EXIT_OK


def _run_selftest(vals: dict) -> int:
    report = oracle.run_all()
    doc = {
        "all_passed": bool(report.all_passed),
        "elapsed_seconds": round(float(report.elapsed), 3),
        "checks": [{"name": c.name, "passed": bool(c.passed),
                    "worst": float(c.worst), "detail": c.detail}
                   for c in report.checks],
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return _EXIT_OK if report.all_passed else _EXIT_ORACLE


_RUNNERS = {
    "sweep-disk": _run_sweep_disk,
    "sweep-sphere": _run_sweep_sphere,
    "normal-band": _run_normal_band,
    "quasimode": _run_quasimode,
    "fit": _run_fit,
    "plot": _run_plot,
    "selftest": _run_selftest,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.subcommand is None:
            parser.print_help()
            return _EXIT_CONFIG
        vals = _resolve(args, args.subcommand)
        return _RUNNERS[args.subcommand](vals)
    except _ConfigError as exc:
        print(f"glancelab: error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG
    except oracle.OracleError as exc:
        print(f"glancelab: oracle failure: {exc}", file=sys.stderr)
        return _EXIT_ORACLE
    except (specfun.NumericalError, experiments.FitError,
            modes.NoModeError) as exc:
        print(f"glancelab: numerical failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"glancelab: error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
