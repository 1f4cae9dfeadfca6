"""Orbits of diagonal operators and their frame bounds.

A sequence ``lambda_k`` in the disc defines ``T e_k = lambda_k e_k`` and the
seed ``h = sum_k sqrt(1 - |lambda_k|^2) e_k``. The orbit ``{T^n h}`` is
studied through its ``K x (N+1)`` coordinate matrix, whose extreme squared
singular values are the optimal frame bounds of the truncated family in C^K.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .disc import DiscSequence, RootMap, carleson_infimum, transform_sequence
from .errors import DimensionError, DomainError
from .hardy import kernel_gram

__all__ = [
    "DiagonalSystem",
    "OrbitMatrix",
    "FrameBounds",
    "build_h",
    "build_h_root",
    "apply_diag",
    "orbit_matrix",
    "frame_bounds",
    "limit_frame_bounds",
    "default_orbit_length",
    "SweepRow",
    "carleson_frame_experiment",
    "RootOrbitRecord",
    "root_orbit_decomposition",
]


@dataclass(frozen=True, eq=False)
class DiagonalSystem:
    """Diagonal operator with eigenvalues ``seq`` on the first ``K`` coordinates."""

    seq: DiscSequence

    def __post_init__(self):
        if len(self.seq) == 0:
            raise DomainError("a diagonal system needs at least one eigenvalue")

    @property
    def K(self):
        return len(self.seq)

    @property
    def eigenvalues(self):
        return self.seq.values

    def norm(self):
        return float(np.max(np.abs(self.seq.values)))


@dataclass(frozen=True, eq=False)
class OrbitMatrix:
    """Coordinates of ``h, Th, ..., T^N h``; column ``n`` is ``T^n h``."""

    entries: np.ndarray

    @property
    def K(self):
        return self.entries.shape[0]

    @property
    def N(self):
        return self.entries.shape[1] - 1


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float

    @property
    def condition(self):
        return self.upper / self.lower if self.lower > 0 else np.inf


def build_h(sys):
    """Seed vector with coordinates ``sqrt(1 - |lambda_k|^2)``."""
    return sys.seq.weights().astype(complex)


def apply_diag(sys, x):
    """Apply ``T`` to a coordinate vector (or to each column of a matrix)."""
    x = np.asarray(x, dtype=complex)
    if x.shape[0] != sys.K:
        raise DimensionError(f"vector has {x.shape[0]} coordinates, system has {sys.K}")
    lam = sys.eigenvalues
    return lam * x if x.ndim == 1 else lam[:, None] * x


def orbit_matrix(sys, N, h=None):
    """Orbit matrix ``M[k, n] = lambda_k**n * h_k`` for ``n = 0..N``.

    Each column is obtained from the previous one by :func:`apply_diag`, so
    ``M[:, n+1] == apply_diag(sys, M[:, n])`` holds bit for bit.
    """
    if N < 0:
        raise DimensionError("N must be non-negative")
    col = build_h(sys) if h is None else np.asarray(h, dtype=complex)
    if col.shape != (sys.K,):
        raise DimensionError("seed vector does not match the system")
    M = np.empty((sys.K, N + 1), dtype=complex)
    M[:, 0] = col
    for n in range(1, N + 1):
        col = apply_diag(sys, col)
        M[:, n] = col
    return OrbitMatrix(M)


def frame_bounds(M):
    """Optimal frame bounds ``(sigma_min**2, sigma_max**2)`` of the orbit columns in C^K.

    When there are fewer columns than coordinates the lower bound is 0.
    """
    entries = M.entries if isinstance(M, OrbitMatrix) else np.asarray(M)
    s = linalg.svdvals(entries)
    upper = float(s[0] ** 2)
    lower = float(s[-1] ** 2) if entries.shape[1] >= entries.shape[0] else 0.0
    return FrameBounds(lower, upper)


def limit_frame_bounds(seq):
    """Frame bounds of the full orbit ``{T^n h}_{n>=0}`` restricted to C^K.

    As ``N`` grows, ``M M^*`` converges to the Gram matrix of the normalized
    reproducing kernels at the eigenvalues, so its extreme eigenvalues are
    the ``N -> infinity`` limits of :func:`frame_bounds`.
    """
    ev = linalg.eigvalsh(kernel_gram(seq, check=False).matrix)
    return FrameBounds(float(max(ev[0], 0.0)), float(ev[-1]))


def default_orbit_length(K):
    return 20 * K


@dataclass(frozen=True)
class SweepRow:
    K: int
    N: int
    lower: float
    upper: float
    delta: float


def _threads():
    env = os.environ.get("ORBITFRAMES_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def carleson_frame_experiment(generator, K_list, N_list, threads=None):
    """Frame bounds and Carleson infimum over a ``(K, N)`` grid.

    Parameters
    ----------
    generator : callable
        ``generator(K)`` returns the first ``K`` points of the sequence.
    K_list, N_list : iterable of int
    threads : int, optional
        Worker count; defaults to ``ORBITFRAMES_THREADS`` or the CPU count.

    Returns
    -------
    list of SweepRow
        Sorted by ``(K, N)`` regardless of evaluation order.
    """
    Ks = sorted(set(int(k) for k in K_list))
    Ns = sorted(set(int(n) for n in N_list))
    if not Ks or not Ns:
        raise DimensionError("K_list and N_list must be non-empty")
    seqs = {K: generator(K) for K in Ks}
    deltas = {K: carleson_infimum(seqs[K]) for K in Ks}

    def cell(key):
        K, N = key
        fb = frame_bounds(orbit_matrix(DiagonalSystem(seqs[K]), N))
        return SweepRow(K, N, fb.lower, fb.upper, deltas[K])

    keys = [(K, N) for K in Ks for N in Ns]
    workers = threads or _threads()
    if workers > 1 and len(keys) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(cell, keys))
    else:
        rows = [cell(k) for k in keys]
    return sorted(rows, key=lambda r: (r.K, r.N))


def _root_system(sys, ell):
    seq = sys.seq
    if not seq.is_real_nonnegative():
        raise DomainError("root constructions need eigenvalues in [0, 1)")
    return DiagonalSystem(transform_sequence(seq, RootMap(ell)))


def build_h_root(sys, ell):
    """Seed ``h_ell`` with coordinates ``sqrt(1 - lambda_k**(2/ell))``."""
    return build_h(_root_system(sys, ell))


@dataclass(frozen=True)
class RootOrbitRecord:
    ell: int
    N: int
    max_deviation: float
    bounds: FrameBounds
    base_bounds: FrameBounds


def root_orbit_decomposition(sys, ell, N):
    """Check that the orbit of ``T_ell`` splits into ``T_ell**r`` images of the ``T`` orbit.

    ``T_ell`` has eigenvalues ``lambda_k**(1/ell)``. For every ``n`` and
    ``r < ell`` with ``n*ell + r <= N`` the column ``T_ell**(n*ell+r) h`` is
    compared with ``T_ell**r (T**n h)``.

    Returns
    -------
    RootOrbitRecord
        Largest absolute deviation, frame bounds of the ``T_ell`` orbit of
        length ``N+1``, and bounds of the plain ``T`` orbit of the same length.
    """
    ell = int(ell)
    if ell < 1:
        raise DomainError("ell must be at least 1")
    root = _root_system(sys, ell)
    h = build_h(sys)
    M_root = orbit_matrix(root, N, h=h)
    M_base = orbit_matrix(sys, N // ell, h=h)
    dev = 0.0
    for r in range(ell):
        shifted = M_base.entries
        for _ in range(r):
            shifted = apply_diag(root, shifted)
        n_max = (N - r) // ell
        if n_max < 0:
            continue
        direct = M_root.entries[:, r::ell][:, : n_max + 1]
        dev = max(dev, float(np.max(np.abs(direct - shifted[:, : n_max + 1]))))
    return RootOrbitRecord(ell, N, dev, frame_bounds(M_root), frame_bounds(orbit_matrix(sys, N)))
