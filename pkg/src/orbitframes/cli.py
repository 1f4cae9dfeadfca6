"""Batch experiment runner.

    orbitframes run --config experiment.json
    orbitframes goldens --suite carleson [--dir tests/goldens]
    orbitframes schema

Output files hold only the computed rows, so repeated runs of one
configuration are byte-identical. The run report (timing, config digest)
goes to standard output; failures go to standard error as one JSON object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np
from numpy.polynomial import polynomial as P

from . import __version__
from .config import CONFIG_SCHEMA, ExperimentConfig, load_config, sequence_factory, validate_config
from .disc import carleson_products
from .errors import ConfigError
from .frames import carleson_frame_experiment
from .hardy import interpolate
from .operator_repr import (
    block_orbit_coefficients,
    example_factory,
    kernel_shift_check,
    norm_ratio_sequence,
    restricted_norm_estimate,
)


@dataclass
class RunReport:
    command: str
    config_hash: str
    columns: List[str]
    rows: List[Dict[str, Any]]
    duration: float = 0.0
    version: str = __version__
    summary: Dict[str, Any] = field(default_factory=dict)

    def to_json(self):
        return {
            "command": self.command,
            "config_hash": self.config_hash,
            "version": self.version,
            "duration_s": self.duration,
            "n_rows": len(self.rows),
            "summary": self.summary,
        }


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _jsonable(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        value = float(value)
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render(columns, rows, fmt):
    """Serialize rows as CSV (17 significant digits) or a JSON array."""
    if fmt == "json":
        data = [{c: _jsonable(r.get(c)) for c in columns} for r in rows]
        return json.dumps(data, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def _run_carleson(cfg):
    make = sequence_factory(cfg.sequence, cfg.tolerances["separation"])
    if cfg.K_list:
        columns = ["K", "infimum", "ratio_sup", "tail_sum", "verdict"]
        rows = []
        for K in sorted(set(cfg.K_list)):
            rep = carleson_products(make(K), ratio_bound=cfg.ratio_bound)
            rows.append({"K": K, "infimum": rep.infimum, "ratio_sup": rep.ratio_sup,
                         "tail_sum": rep.tail_sum, "verdict": rep.verdict.value})
        return columns, rows, {}
    seq = make(cfg.K) if cfg.K is not None else make()
    rep = carleson_products(seq, ratio_bound=cfg.ratio_bound)
    complex_values = bool(np.any(seq.values.imag != 0))
    columns = ["k", "lambda", "delta_n", "ratio"]
    if complex_values:
        columns.insert(2, "lambda_imag")
    rows = []
    for i, lam in enumerate(seq.values):
        row = {"k": i + 1, "lambda": lam.real, "delta_n": rep.per_index_products[i],
               "ratio": rep.ratios[i] if i < rep.ratios.size else None}
        if complex_values:
            row["lambda_imag"] = lam.imag
        rows.append(row)
    rows.append({"k": "summary", "delta_n": rep.infimum, "ratio": rep.ratio_sup})
    summary = {"infimum": rep.infimum, "ratio_sup": rep.ratio_sup,
               "tail_sum": rep.tail_sum, "verdict": rep.verdict.value}
    return columns, rows, summary


def _run_interpolate(cfg):
    seq = sequence_factory(cfg.sequence, cfg.tolerances["separation"])(cfg.K)
    rng = np.random.default_rng(cfg.seed)
    targets = [rng.standard_normal(len(seq)) + 1j * rng.standard_normal(len(seq))
               for _ in range(cfg.trials)]
    fs = [interpolate(seq, c, degree=cfg.degree, residual_tol=cfg.tolerances["residual"])
          for c in targets]
    # one Horner pass over all interpolants (they share the degree)
    values = P.polyval(seq.values, np.stack([f.coeffs for f in fs], axis=1), tensor=True)
    rows = []
    for trial, (f, c, v) in enumerate(zip(fs, targets, values)):
        res = np.linalg.norm(v * seq.weights() - c) / np.linalg.norm(c)
        rows.append({"trial": trial, "degree": f.degree, "residual": float(res), "norm": f.norm()})
    worst = max(r["residual"] for r in rows)
    return ["trial", "degree", "residual", "norm"], rows, {"max_residual": worst}


def _run_frame_sweep(cfg):
    make = sequence_factory(cfg.sequence, cfg.tolerances["separation"])
    table = carleson_frame_experiment(make, cfg.K_list, cfg.N_list)
    rows = [{"K": r.K, "N": r.N, "A": r.lower, "B": r.upper, "delta": r.delta} for r in table]
    return ["K", "N", "A", "B", "delta"], rows, {}


def _run_represent(cfg):
    F = example_factory(cfg.name, cfg.N, d=cfg.d, **cfg.params)
    rows = []
    norms = np.linalg.norm(F.columns, axis=0)
    for k, v in enumerate(norms, start=1):
        rows.append({"metric": "norm", "index": k, "value": v})
    for k, v in enumerate(norm_ratio_sequence(F), start=1):
        rows.append({"metric": "norm_ratio", "index": k, "value": v})
    est = restricted_norm_estimate(F, rank_tol=cfg.tolerances["rank"])
    rows.append({"metric": "restricted_norm", "index": None, "value": est})
    ker = kernel_shift_check(F, tol=cfg.tolerances["kernel"])
    rows.append({"metric": "kernel_dimension", "index": None, "value": ker.dimension})
    rows.append({"metric": "kernel_max_residual", "index": None, "value": ker.max_residual})
    return ["metric", "index", "value"], rows, {"restricted_norm": est}


def _run_examples(cfg):
    if cfg.name == "block":
        values = block_orbit_coefficients(cfg.count)
    else:
        F = example_factory(cfg.name, max(cfg.count, 2), d=cfg.d, **cfg.params)
        values = np.linalg.norm(F.columns, axis=0)[: cfg.count]
    rows = [{"n": n, "value": v} for n, v in enumerate(values)]
    return ["n", "value"], rows, {}


_DISPATCH = {
    "carleson": _run_carleson,
    "interpolate": _run_interpolate,
    "frame-sweep": _run_frame_sweep,
    "represent": _run_represent,
    "examples": _run_examples,
}


def run(config, write=True):
    """Execute one experiment configuration and write its output file.

    ``config`` may be an :class:`ExperimentConfig` or a raw mapping.
    """
    cfg = config if isinstance(config, ExperimentConfig) else validate_config(config)
    t0 = time.perf_counter()
    columns, rows, summary = _DISPATCH[cfg.command](cfg)
    report = RunReport(cfg.command, cfg.digest, columns, rows, summary=summary)
    if write:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(render(columns, rows, cfg.output_format))
    report.duration = time.perf_counter() - t0
    return report


def _error(exc, context):
    payload = {"code": type(exc).__name__, "message": str(exc), "context": context}
    sys.stderr.write(json.dumps(payload) + "\n")


def main(argv=None):
    parser = argparse.ArgumentParser(prog="orbitframes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="action", required=True)
    p_run = sub.add_parser("run", help="run one experiment configuration")
    p_run.add_argument("--config", required=True)
    p_gold = sub.add_parser("goldens", help="regenerate golden reference files")
    p_gold.add_argument("--suite", required=True)
    p_gold.add_argument("--dir", default="tests/goldens")
    sub.add_parser("schema", help="print the configuration JSON schema")
    args = parser.parse_args(argv)

    if args.action == "schema":
        print(json.dumps(CONFIG_SCHEMA, indent=2))
        return 0
    if args.action == "goldens":
        from .goldens import regenerate_goldens
        try:
            paths = regenerate_goldens(args.suite, args.dir)
        except (ConfigError, OSError) as exc:
            _error(exc, {"action": "goldens", "suite": args.suite})
            return 2
        print(json.dumps({"suite": args.suite, "files": [str(p) for p in paths]}))
        return 0

    context = {"action": "run", "config": args.config}
    try:
        cfg = load_config(args.config)
        context["command"] = cfg.command
        report = run(cfg)
    except ConfigError as exc:
        _error(exc, context)
        return 2
    except Exception as exc:  # domain errors carry their class name as the code
        _error(exc, context)
        return 1
    print(json.dumps(report.to_json()))
    return 0


if __name__ == "__main__":
    sys.exit(main())
