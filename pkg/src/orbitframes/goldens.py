"""Regeneration of the golden reference files used by the test suite.

Every file starts with ``#`` provenance lines (oracle, seed, date, version)
followed by a CSV table. Reference values come from the high-precision
oracles or from closed forms, never from the code path under test, except
for the explicitly labelled run-and-freeze baselines.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io
from pathlib import Path

import mpmath as mp
import numpy as np

from . import __version__
from .disc import RootMap, generate_geometric, transform_sequence
from .errors import ConfigError
from .frames import DiagonalSystem, orbit_matrix
from .hardy import evaluation_matrix, interpolate, interpolation_residual
from .operator_repr import (
    VectorFamily,
    example_factory,
    kernel_shift_check,
    restricted_norm_estimate,
    scaled_riesz_bound_check,
)
from .oracles import (
    algebraic_points_mp,
    carleson_products_mp,
    frame_bounds_mp,
    geometric_points_mp,
)

SUITES = ("carleson", "frames", "repr", "hardy")
SEED = 20170918


def _write(path, oracle, columns, rows, seed=None):
    buf = io.StringIO()
    buf.write(f"# oracle: {oracle}\n")
    buf.write(f"# seed: {seed if seed is not None else 'none'}\n")
    buf.write(f"# generated: {_dt.date.today().isoformat()}\n")
    buf.write(f"# orbitframes {__version__}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([format(v, ".17g") if isinstance(v, float) else v for v in r])
    path.write_text(buf.getvalue(), encoding="utf-8")
    return path


def read_golden(path):
    """Rows of a golden file as dicts of strings (provenance lines skipped)."""
    lines = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def _mpf(x):
    return float(mp.mpf(x))


def _carleson(outdir):
    rows = []
    cases = [("geometric(2)", K, geometric_points_mp(2, K)) for K in (5, 10, 20, 40)]
    cases += [("algebraic(2)", K, algebraic_points_mp(2, K)) for K in (10, 20, 40, 60)]
    with mp.workdps(50):
        root = [p ** (mp.mpf(1) / 3) for p in geometric_points_mp(2, 15)]
    cases.append(("root(geometric(2),3)", 15, root))
    for fam, K, pts in cases:
        prods = carleson_products_mp(pts)
        with mp.workdps(50):
            tail = sum(1 - abs(p) ** 2 for p in pts)
        rows.append((fam, K, _mpf(min(prods)), _mpf(tail)))
    return [_write(outdir / "carleson.csv", "mpmath direct product, 50 digits",
                   ["family", "K", "infimum", "tail_sum"], rows)]


def _frames(outdir):
    grid = [("geometric(2)", 5, (100, 300, 600, None)),
            ("geometric(2)", 10, (300, 600, 1200, 5000, None)),
            ("geometric(2)", 15, (300, 600, None)),
            ("algebraic(2)", 10, (800, None)),
            ("algebraic(2)", 20, (800, None))]
    rows = []
    for fam, K, Ns in grid:
        pts = geometric_points_mp(2, K) if fam.startswith("geometric") else algebraic_points_mp(2, K)
        for N in Ns:
            A, B = frame_bounds_mp(pts, N)
            rows.append((fam, K, "inf" if N is None else N, _mpf(A), _mpf(B)))
    return [_write(outdir / "frames.csv",
                   "mpmath closed-form frame operator eigenvalues, 80 digits",
                   ["family", "K", "N", "A", "B"], rows)]


def _repr(outdir):
    rows = []
    for N in (5, 10, 15):
        rows.append(("factorial", N, "restricted_norm",
                     restricted_norm_estimate(example_factory("factorial", N)), float(N)))
    rows.append(("sum_basis", 49, "restricted_norm",
                 restricted_norm_estimate(example_factory("sum_basis", 49, d=50)), 1.0))
    for N in (10, 20):
        # largest stretch is (q-1)/q over 1/q for the last complete q
        fr = example_factory("fractional", N)
        norms = np.abs(np.diag(fr.columns))
        rows.append(("fractional", N, "restricted_norm",
                     restricted_norm_estimate(fr), float(np.max(norms[1:] / norms[:-1]))))
    M = orbit_matrix(DiagonalSystem(generate_geometric(2, 5)), 800)
    rep = kernel_shift_check(VectorFamily(M.entries), tol=1e-8)
    rows.append(("orbit_geometric(2)_K5_N800", 801, "kernel_max_residual", rep.max_residual, ""))
    rng = np.random.default_rng(SEED)
    worst = np.inf
    for _ in range(20):
        E = np.eye(12) + 0.05 * rng.standard_normal((12, 12))
        m = np.cumprod(rng.uniform(0.2, 3.0, 12))
        worst = min(worst, scaled_riesz_bound_check(E, m).slack)
    rows.append(("scaled_riesz_random", 12, "min_slack", float(worst), ""))
    return [_write(outdir / "repr.csv",
                   "closed forms (N, 1, max stretch); run-and-freeze for kernel and slack rows",
                   ["family", "N", "quantity", "value", "oracle"], rows, seed=SEED)]


def _hardy(outdir):
    rows = []
    rng = np.random.default_rng(SEED)
    for K in (4, 8, 10):
        seq = generate_geometric(2, K)
        worst = 0.0
        for _ in range(10):
            c = rng.standard_normal(K) + 1j * rng.standard_normal(K)
            worst = max(worst, interpolation_residual(interpolate(seq, c), seq, c))
        rows.append(("roundtrip_geometric(2)", K, "max_residual", worst))
    seq = generate_geometric(2, 5)
    for D in (200, 400):
        s = np.linalg.svd(evaluation_matrix(seq, D), compute_uv=False)[0]
        rows.append(("phi_norm_geometric(2)", 5, f"sigma_max_D{D}", float(s)))
    root = transform_sequence(generate_geometric(2, 8), RootMap(3))
    c = rng.standard_normal(8) + 0j
    rows.append(("roundtrip_root(geometric(2),3)", 8, "max_residual",
                 interpolation_residual(interpolate(root, c), root, c)))
    return [_write(outdir / "hardy.csv", "interpolation round trip (Horner evaluation), run-and-freeze",
                   ["family", "K", "quantity", "value"], rows, seed=SEED)]


_BUILDERS = {"carleson": _carleson, "frames": _frames, "repr": _repr, "hardy": _hardy}


def regenerate_goldens(suite, directory="tests/goldens"):
    """Recompute one golden suite and rewrite its files; returns the paths written."""
    if suite not in _BUILDERS:
        raise ConfigError(f"unknown golden suite {suite!r}; expected one of {', '.join(SUITES)}")
    outdir = Path(directory)
    outdir.mkdir(parents=True, exist_ok=True)
    return _BUILDERS[suite](outdir)
