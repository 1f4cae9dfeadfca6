"""Representing a finite family ``f_1, ..., f_N`` as an orbit ``f_{k+1} = T f_k``.

Families are stored as the columns of a ``d x N`` complex matrix. The operator
``T`` is never formed explicitly unless asked for: its action on the span is
read off by shifting columns, and its norm on ``span{f_1..f_{N-1}}`` is the
largest singular value of ``A R^{-1}``, where ``B = QR`` holds the first
``N-1`` columns and ``A`` the last ``N-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

from .errors import DimensionError, DomainError, OverflowRisk, RankError, UnknownExample

__all__ = [
    "VectorFamily",
    "DualFamily",
    "right_shift",
    "synthesis_apply",
    "restricted_norm_estimate",
    "representing_operator",
    "norm_ratio_sequence",
    "KernelShiftReport",
    "kernel_shift_check",
    "expansion_residuals",
    "RieszCheckReport",
    "riesz_bounds",
    "scaled_riesz_bound_check",
    "block_orbit_coefficients",
    "fractional_norms",
    "example_factory",
    "EXAMPLES",
]

RANK_TOL = 1e-10
FACTORIAL_MAX_N = 18


def _normalized_rank(X, tol=RANK_TOL):
    """Numerical rank of ``X`` after scaling every nonzero column to unit norm."""
    norms = np.linalg.norm(X, axis=0)
    keep = norms > 0
    if not np.any(keep):
        return 0
    s = linalg.svdvals(X[:, keep] / norms[keep])
    return int(np.sum(s > tol * s[0]))


@dataclass(frozen=True, eq=False)
class VectorFamily:
    """Ordered family of vectors ``f_1..f_N`` in C^d, stored as columns.

    With ``independent=True`` the constructor verifies linear independence
    (rank of the column-normalized matrix at ``1e-10 * sigma_max``).
    """

    columns: np.ndarray
    label: Optional[str] = None
    independent: bool = False

    def __post_init__(self):
        X = np.asarray(self.columns, dtype=complex)
        if X.ndim != 2:
            raise DimensionError("family must be a d x N matrix")
        d, N = X.shape
        if d < 1 or N < 2:
            raise DimensionError(f"need d >= 1 and N >= 2, got d={d}, N={N}")
        if self.independent and _normalized_rank(X) < N:
            raise RankError(f"family {self.label or ''} is numerically linearly dependent")
        X.setflags(write=False)
        object.__setattr__(self, "columns", X)

    @property
    def d(self):
        return self.columns.shape[0]

    @property
    def N(self):
        return self.columns.shape[1]

    def __getitem__(self, k):
        """Zero-based column ``f_{k+1}``."""
        return self.columns[:, k]

    def shifted(self):
        """Family ``f_2, ..., f_N, 0``."""
        X = np.zeros_like(self.columns)
        X[:, :-1] = self.columns[:, 1:]
        return VectorFamily(X, label=f"shift({self.label})" if self.label else None)


@dataclass(frozen=True, eq=False)
class DualFamily:
    columns: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.columns, dtype=complex)
        if X.ndim != 2:
            raise DimensionError("dual family must be a d x N matrix")
        object.__setattr__(self, "columns", X)


def right_shift(c):
    """``(c_1, ..., c_N) -> (0, c_1, ..., c_N)``."""
    c = np.asarray(c)
    out = np.zeros(c.size + 1, dtype=np.result_type(c.dtype, float))
    out[1:] = c
    return out


def synthesis_apply(F, c):
    """``sum_k c_k f_k``; missing trailing coefficients count as zero.

    Terms are accumulated in index order and zero coefficients are skipped,
    so padding ``c`` with zeros or shifting it never changes the result bits.
    """
    c = np.asarray(c, dtype=complex).ravel()
    if c.size > F.N:
        raise DimensionError(f"{c.size} coefficients for a family of {F.N} vectors")
    out = np.zeros(F.d, dtype=complex)
    for k in np.flatnonzero(c):
        out += c[k] * F.columns[:, k]
    return out


def _shift_pair(F, rank_tol):
    """Column-normalized ``(A, Q, R)`` with ``B = QR`` spanning ``f_1..f_{N-1}``.

    Scaling column ``k`` of both ``A`` and ``B`` by ``1/||f_k||`` leaves the
    ratio ``||A c|| / ||B c||`` unchanged over all ``c`` and removes the
    artificial ill-conditioning of families with wildly varying norms.
    """
    X = F.columns
    B = X[:, :-1]
    A = X[:, 1:]
    norms = np.linalg.norm(B, axis=0)
    if np.any(norms == 0):
        raise RankError("family contains a zero vector among f_1..f_{N-1}")
    Bn = B / norms
    An = A / norms
    if _normalized_rank(Bn, rank_tol) < Bn.shape[1]:
        raise RankError("f_1..f_{N-1} are numerically linearly dependent")
    Q, R = linalg.qr(Bn, mode="economic")
    return An, Q, R


def restricted_norm_estimate(F, rank_tol=RANK_TOL):
    """Norm of ``T: f_k -> f_{k+1}`` on ``span{f_1, ..., f_{N-1}}``.

    Equals the smallest ``K`` with ``||sum c_k f_{k+1}|| <= K ||sum c_k f_k||``
    for all ``c`` supported on ``1..N-1``.

    Raises
    ------
    RankError
        If ``f_1..f_{N-1}`` are numerically dependent.
    """
    An, _, R = _shift_pair(F, rank_tol)
    # A R^{-1}, via the transposed triangular solve
    X = linalg.solve_triangular(R, An.conj().T, trans="C").conj().T
    return float(linalg.svdvals(X)[0])


def representing_operator(F, rank_tol=RANK_TOL):
    """``d x d`` matrix of ``T`` on ``span{f_1..f_{N-1}}``, zero on its complement."""
    An, Q, R = _shift_pair(F, rank_tol)
    X = linalg.solve_triangular(R, An.conj().T, trans="C").conj().T
    return X @ Q.conj().T


def norm_ratio_sequence(F):
    """``||f_{k+1}|| / ||f_k||`` for ``k = 1..N-1``."""
    norms = np.linalg.norm(F.columns, axis=0)
    if np.any(norms == 0):
        raise DomainError("family contains a zero vector")
    return norms[1:] / norms[:-1]


@dataclass(frozen=True)
class KernelShiftReport:
    kernel_basis: np.ndarray
    synthesis_residuals: np.ndarray
    off_kernel_residuals: np.ndarray
    tol: float

    @property
    def dimension(self):
        return self.kernel_basis.shape[1]

    @property
    def max_residual(self):
        r = self.synthesis_residuals
        return float(r.max()) if r.size else 0.0

    @property
    def invariant(self):
        return self.max_residual <= self.tol


def kernel_shift_check(F, tol=1e-8):
    """Test whether the numerical kernel of the synthesis map is shift invariant.

    Kernel vectors are the right singular vectors with singular value at most
    ``tol * sigma_max`` (plus all directions beyond ``d`` when ``N > d``).
    Each is shifted right, truncated to ``N`` entries, and two residuals are
    recorded: ``||U shift(c)|| / sigma_max`` and the norm of the part of
    ``shift(c)`` outside the numerical kernel.
    """
    X = F.columns
    N = X.shape[1]
    _, s, Vh = linalg.svd(X, full_matrices=True)
    smax = s[0] if s.size else 0.0
    if smax == 0:
        null = np.ones(N, dtype=bool)
    else:
        null = np.ones(N, dtype=bool)
        null[: s.size] = s <= tol * smax
    basis = Vh[null].conj().T
    if basis.shape[1] == 0:
        empty = np.zeros(0)
        return KernelShiftReport(basis, empty, empty, tol)
    shifted = np.zeros_like(basis)
    shifted[1:] = basis[:-1]
    scale = smax if smax > 0 else 1.0
    syn = np.linalg.norm(X @ shifted, axis=0) / scale
    outside = shifted - basis @ (basis.conj().T @ shifted)
    return KernelShiftReport(basis, syn, np.linalg.norm(outside, axis=0), tol)


def expansion_residuals(F, G):
    """``||f_{j+1} - sum_{k<N} <f_j, g_k> f_{k+1}||`` for ``j = 1..N-1``.

    Small residuals mean the shifted expansion reproduces the next vector,
    which is the criterion for the orbit to come from a bounded operator.
    """
    Fx = F.columns
    Gx = G.columns
    if Fx.shape != Gx.shape:
        raise DimensionError(f"families differ in shape: {Fx.shape} vs {Gx.shape}")
    n = Fx.shape[1] - 1
    # coef[k, j] = <f_j, g_k> = g_k^H f_j
    coef = Gx[:, :n].conj().T @ Fx[:, :n]
    pred = Fx[:, 1:] @ coef
    return np.linalg.norm(Fx[:, 1:] - pred, axis=0)


def riesz_bounds(E):
    """Optimal Riesz bounds ``(sigma_min**2, sigma_max**2)`` of the columns of ``E``."""
    s = linalg.svdvals(np.asarray(E, dtype=complex))
    return float(s[-1] ** 2), float(s[0] ** 2)


@dataclass(frozen=True)
class RieszCheckReport:
    estimate: float
    ratio_bound: float
    lower: float
    upper: float
    bound: float

    @property
    def slack(self):
        return self.bound - self.estimate ** 2

    @property
    def passed(self):
        return self.estimate ** 2 <= self.bound * (1 + 1e-12) + 1e-15


def scaled_riesz_bound_check(basis, multipliers, bounds=None):
    """Compare ``||T||^2`` for ``f_k = m_k e_k`` against ``(B/A) * C**2``.

    Parameters
    ----------
    basis : array_like, shape (d, N)
        Riesz basis vectors ``e_k`` as columns.
    multipliers : array_like, shape (N,)
        Nonzero scalars ``m_k``.
    bounds : (float, float), optional
        Riesz bounds ``(A, B)``; measured from ``basis`` when omitted.
    """
    E = np.asarray(basis, dtype=complex)
    m = np.asarray(multipliers, dtype=complex)
    if E.ndim != 2 or m.shape != (E.shape[1],):
        raise DimensionError("need one multiplier per basis vector")
    if np.any(m == 0):
        raise DomainError("multipliers must be nonzero")
    A, B = riesz_bounds(E) if bounds is None else bounds
    C = float(np.max(np.abs(m[1:] / m[:-1])))
    est = restricted_norm_estimate(VectorFamily(E * m, label="scaled_riesz"))
    return RieszCheckReport(est, C, A, B, (B / A) * C * C)


def _block_index(k):
    """Block number ``M >= 2`` with ``(M-1)M/2 <= k <= M(M+1)/2 - 1``."""
    M = int((1 + math.isqrt(1 + 8 * k)) // 2)
    while (M - 1) * M // 2 > k:
        M -= 1
    while M * (M + 1) // 2 - 1 < k:
        M += 1
    return M


def block_orbit_coefficients(count):
    """Coefficients ``c_n`` with ``T^n e_1 = c_n e_{n+1}`` for ``n < count``.

    ``T e_k`` is ``2 e_{k+1}`` when ``k`` lies in an odd-numbered block and
    ``e_{k+1} / 2`` in an even-numbered one; block ``M`` holds the ``M``
    indices ``(M-1)M/2 .. M(M+1)/2 - 1``.
    """
    out = np.empty(count)
    c = 1.0
    for n in range(count):
        if n:
            c *= 2.0 if _block_index(n) % 2 else 0.5
        out[n] = c
    return out


def fractional_norms(count):
    """``1/2, 1/3, 2/3, 1/4, 3/4, 1/5, 4/5, ...``"""
    out = []
    q = 2
    while len(out) < count:
        out.append(1.0 / q)
        if q > 2:
            out.append((q - 1.0) / q)
        q += 1
    return np.array(out[:count])


def _diag_family(d, values, label):
    X = np.zeros((d, len(values)), dtype=complex)
    X[np.arange(len(values)), np.arange(len(values))] = values
    return VectorFamily(X, label=label)


def _need(d, n, name):
    if d < n:
        raise DimensionError(f"{name} needs ambient dimension at least {n}, got {d}")


def _sum_basis(d, N):
    _need(d, N + 1, "sum_basis")
    X = np.zeros((d, N), dtype=complex)
    k = np.arange(N)
    X[k, k] = 1.0
    X[k + 1, k] = 1.0
    return VectorFamily(X, label="sum_basis")


def _factorial(d, N):
    if N > FACTORIAL_MAX_N:
        raise OverflowRisk(f"factorial family capped at N={FACTORIAL_MAX_N}")
    _need(d, N, "factorial")
    return _diag_family(d, [float(math.factorial(k)) for k in range(1, N + 1)], "factorial")


def _fractional(d, N):
    _need(d, N, "fractional")
    return _diag_family(d, fractional_norms(N), "fractional")


def _block(d, N):
    _need(d, N, "block")
    return _diag_family(d, block_orbit_coefficients(N), "block")


def _scaled(d, N, factor=2.0):
    _need(d, N, "scaled")
    return _diag_family(d, [float(factor) ** k for k in range(1, N + 1)], f"scaled({factor:g})")


EXAMPLES = {
    "sum_basis": _sum_basis,
    "factorial": _factorial,
    "fractional": _fractional,
    "block": _block,
    "scaled": _scaled,
}


def example_factory(name, N, d=None, **params):
    """Build one of the named example families in standard coordinates.

    ``sum_basis``  ``f_k = e_k + e_{k+1}`` (isometric shift, not a frame)
    ``factorial``  ``f_k = k! e_k`` (unbounded shift)
    ``fractional`` ``1/2 e_1, 1/3 e_2, 2/3 e_3, 1/4 e_4, ...`` (unbounded shift)
    ``block``      ``T^n e_1`` for the block-scaled weighted shift
    ``scaled``     ``factor**k e_k`` (``params: factor``, default 2)

    ``d`` defaults to the smallest admissible dimension.
    """
    try:
        build = EXAMPLES[name]
    except KeyError:
        raise UnknownExample(name) from None
    if d is None:
        d = N + 1 if name == "sum_basis" else N
    return build(int(d), int(N), **params)
