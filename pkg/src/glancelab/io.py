"""Deterministic file I/O: CSV tables, run manifests, config files.

Every table is written with ``%.17g`` floats (round-trip exact for doubles),
LF line endings, and no timestamps, so identical runs produce byte-identical
files; the only timestamp lives in the run manifest written next to a table.
"""

from __future__ import annotations

import configparser
import datetime as _dt
import hashlib
import json
import os
from dataclasses import dataclass

import numpy as np

from .experiments import QuasimodeResult, SweepResult

# one row per selected mode; "b" is the glancing distance sigma of the trace
SWEEP_COLUMNS = ("n", "lambda", "h", "b", "xi_d", "amplitude",
                 "weighted_norm", "s", "alpha", "rho1", "rho2")

# one row per frequency window of a quasimode ensemble
QUASIMODE_COLUMNS = ("lambda", "dim", "weyl_estimate", "max_norm",
                     "mean_norm", "s", "rho", "trials", "seed")


def format_value(v) -> str:
    """Render one CSV cell: integers verbatim, floats round-trip exact."""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % float(v)


def _write_text(path: str, text: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def sweep_to_csv_text(result: SweepResult) -> str:
    lines = [",".join(SWEEP_COLUMNS)]
    for r in result.rows:
        lines.append(",".join(format_value(v) for v in (
            r.n, r.lam, r.h, r.sigma, r.xi_d, r.amplitude,
            r.weighted_norm, r.s, r.alpha, r.rho1, r.rho2)))
    return "\n".join(lines) + "\n"


def quasimode_to_csv_text(result: QuasimodeResult) -> str:
    lines = [",".join(QUASIMODE_COLUMNS)]
    for r in result.rows:
        lines.append(",".join(format_value(v) for v in (
            r.lam, r.dim, r.weyl_estimate, r.max_norm, r.mean_norm,
            result.spec.s, result.spec.rho, result.trials, result.seed)))
    return "\n".join(lines) + "\n"


def write_sweep_csv(path: str, result: SweepResult) -> None:
    _write_text(path, sweep_to_csv_text(result))


def write_quasimode_csv(path: str, result: QuasimodeResult) -> None:
    _write_text(path, quasimode_to_csv_text(result))


@dataclass(frozen=True)
class Table:
    """A CSV table as named float columns (order preserved)."""
    names: tuple
    columns: dict

    def __getitem__(self, name: str) -> np.ndarray:
        return self.columns[name]

    def __len__(self) -> int:
        return 0 if not self.names else len(self.columns[self.names[0]])


def read_table(path: str) -> Table:
    """Read a headed CSV of numeric columns, as written by this package."""
    with open(path, newline="") as fh:
        text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty table")
    names = tuple(s.strip() for s in lines[0].split(","))
    rows = []
    for k, ln in enumerate(lines[1:], start=2):
        cells = ln.split(",")
        if len(cells) != len(names):
            raise ValueError(f"{path}:{k}: expected {len(names)} cells, "
                             f"got {len(cells)}")
        try:
            rows.append([float(c) for c in cells])
        except ValueError as exc:
            raise ValueError(f"{path}:{k}: non-numeric cell") from exc
    data = np.array(rows, dtype=float).reshape(len(rows), len(names))
    return Table(names=names,
                 columns={nm: data[:, j] for j, nm in enumerate(names)})


def write_manifest(path: str, command: str, config: dict, rows: int,
                   skipped: int = 0, seed=None, cutoff: str = "exp",
                   input_hash: str | None = None) -> None:
    """Run metadata written next to a table, as JSON.

    The resolved configuration recorded here is complete: replaying
    `command` with exactly these values reproduces the table byte-for-byte
    (the timestamp lives only in this file, never in the table).
    `input_hash` ties the record to its content: for table-consuming
    commands it hashes the input CSV, for sweeps the resolved config.
    """
    from . import __version__
    config = {k: config[k] for k in sorted(config)}
    if input_hash is None:
        blob = json.dumps(config, sort_keys=True).encode()
        input_hash = "sha256:" + hashlib.sha256(blob).hexdigest()
    doc = {
        "command": command,
        "version": __version__,
        "config": config,
        "seed": seed,
        "cutoff_shape": cutoff,
        "rows": rows,
        "skipped": skipped,
        "input_hash": input_hash,
        "written": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }
    _write_text(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def hash_file(path: str) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


def read_manifest(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def manifest_path(table_path: str) -> str:
    base, _ = os.path.splitext(table_path)
    return base + ".manifest.json"


def load_config(path: str) -> dict:
    """Read an INI config: {section: {key: value}} with string values.

    A [common] section applies to every subcommand; a section named after a
    subcommand overrides it.  Unknown keys are left for the CLI to reject.
    """
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except (configparser.Error, OSError) as exc:
        raise ValueError(f"cannot read config {path}: {exc}") from exc
    return {sect: dict(parser.items(sect)) for sect in parser.sections()}


def config_for(config: dict, subcommand: str) -> dict:
    merged = dict(config.get("common", {}))
    merged.update(config.get(subcommand, {}))
    return merged
