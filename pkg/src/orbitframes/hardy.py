"""Truncated Hardy space computations on the unit disc.

Elements of H^2 are represented by finite coefficient vectors. Interpolation
uses the Gram matrix of normalized reproducing kernels, whose conditioning
tracks how well separated the nodes are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import linalg

from .disc import DiscSequence, _one_minus_unit
from .errors import DimensionError, SingularGram, TailError

__all__ = [
    "HardyPoly",
    "KernelGram",
    "hardy_inner",
    "eval_poly",
    "phi_lambda",
    "evaluation_matrix",
    "kernel_gram",
    "normalized_kernel",
    "auto_degree",
    "interpolate",
    "interpolation_residual",
]

DEFAULT_TAIL_TOL = 1e-12
DEFAULT_RCOND = 1e-12


@dataclass(frozen=True, eq=False)
class HardyPoly:
    """Polynomial ``sum_n coeffs[n] z**n`` viewed as an element of H^2."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise DimensionError("coefficient vector must be one-dimensional and non-empty")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def monomial(cls, n):
        c = np.zeros(n + 1, dtype=complex)
        c[n] = 1.0
        return cls(c)

    @property
    def degree(self):
        return self.coeffs.size - 1

    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def __call__(self, z):
        return eval_poly(self, z)


def _pad(a, n):
    out = np.zeros(n, dtype=complex)
    out[: a.size] = a
    return out


def hardy_inner(f, g):
    """``<f, g> = sum_n a_n conj(b_n)``, zero-padding the shorter vector."""
    n = max(f.coeffs.size, g.coeffs.size)
    return complex(np.vdot(_pad(g.coeffs, n), _pad(f.coeffs, n)))


def eval_poly(f, z):
    """Evaluate ``f`` at ``z`` (scalar or array) by Horner's scheme."""
    out = P.polyval(np.asarray(z, dtype=complex), f.coeffs)
    return complex(out) if np.ndim(out) == 0 else out


def phi_lambda(f, seq):
    """Weighted samples ``f(lambda_k) * sqrt(1 - |lambda_k|^2)``."""
    return eval_poly(f, seq.values) * seq.weights()


def evaluation_matrix(seq, degree):
    """``K x (degree+1)`` matrix with entries ``sqrt(1-|l_k|^2) * l_k**n``.

    This is the restriction of the weighted evaluation map to polynomials of
    degree at most ``degree``. Powers are built by repeated multiplication.
    """
    return seq.weights()[:, None] * _powers(seq.values, degree)


def _powers(z, degree):
    """Rows ``(1, z_k, z_k**2, ...)`` formed by cumulative multiplication."""
    z = np.asarray(z, dtype=complex)
    M = np.empty((z.size, degree + 1), dtype=complex)
    M[:, 0] = 1.0
    M[:, 1:] = z[:, None]
    return np.cumprod(M, axis=1)


def normalized_kernel(lam, degree):
    """Truncated normalized reproducing kernel at ``lam``: coefficients ``s * conj(lam)**n``."""
    lam = complex(lam)
    s = math.sqrt(1.0 - abs(lam) ** 2)
    return HardyPoly(s * np.conj(lam) ** np.arange(degree + 1))


@dataclass(frozen=True, eq=False)
class KernelGram:
    matrix: np.ndarray
    seq: DiscSequence

    @property
    def singular_values(self):
        return linalg.svdvals(self.matrix)

    def rank(self, rcond=DEFAULT_RCOND):
        s = self.singular_values
        return int(np.sum(s > rcond * s[0]))

    def cond(self):
        s = self.singular_values
        return float(s[0] / s[-1]) if s[-1] > 0 else math.inf


def _gram_matrix(seq):
    K = len(seq)
    g, t = seq.gaps, seq.angles
    w = seq.weights()
    G = np.eye(K, dtype=complex)
    iu, ju = np.triu_indices(K, 1)
    g1, g2 = g[iu], g[ju]
    # 1 - l_j conj(l_k), evaluated from gaps to survive points near the boundary
    den = (g1 + g2 - g1 * g2) + (1.0 - g1) * (1.0 - g2) * _one_minus_unit(t[iu] - t[ju])
    G[iu, ju] = (w[iu] * w[ju]) / den
    G[ju, iu] = np.conj(G[iu, ju])
    return G


def kernel_gram(seq, check=True, rcond=DEFAULT_RCOND):
    """Gram matrix of the normalized reproducing kernels at the points of ``seq``.

    ``G[j, k] = w_j w_k / (1 - l_j conj(l_k))`` with ``w = sqrt(1 - |l|^2)``;
    it is Hermitian with unit diagonal by construction.

    Raises
    ------
    SingularGram
        If ``check`` and the numerical rank is below ``len(seq)``.
    """
    gram = KernelGram(_gram_matrix(seq), seq)
    if check and gram.rank(rcond) < len(seq):
        raise SingularGram(f"kernel Gram matrix has numerical rank {gram.rank(rcond)} < {len(seq)}")
    return gram


def auto_degree(seq, tail_tol=DEFAULT_TAIL_TOL):
    """Smallest ``D`` with ``max|l_k|**D <= tail_tol``."""
    rmax = 1.0 - float(np.min(seq.gaps))
    if rmax <= 0.0:
        return 0
    # log(max|l|) = log1p(-min gap) keeps precision for points near the boundary
    return max(0, int(math.ceil(math.log(tail_tol) / math.log1p(-float(np.min(seq.gaps))))))


def _solve_gram(G, target, rcond):
    try:
        cf = linalg.cho_factor(G, lower=True, check_finite=False)
        return linalg.cho_solve(cf, target, check_finite=False)
    except linalg.LinAlgError:
        coef, *_ = linalg.lstsq(G, target, cond=rcond, check_finite=False)
        return coef


def interpolate(seq, target, degree="auto", tail_tol=DEFAULT_TAIL_TOL,
                residual_tol=1e-8, rcond=DEFAULT_RCOND, strict=True):
    """Minimal-norm H^2 interpolant truncated to a polynomial.

    Solves ``G a = target`` for the kernel Gram matrix ``G`` and returns the
    first ``degree + 1`` coefficients of ``sum_j a_j w_j k_{l_j}``, so that
    ``phi_lambda(f, seq)`` reproduces ``target``.

    Parameters
    ----------
    seq : DiscSequence
    target : array_like
        Desired weighted values, one per point.
    degree : int or "auto"
        Truncation degree; ``"auto"`` picks :func:`auto_degree`.
    strict : bool
        Raise :class:`SingularGram` on rank deficiency instead of falling
        back to a pseudo-inverse solve.

    Raises
    ------
    SingularGram
        Gram matrix numerically singular and ``strict``.
    TailError
        Residual above ``residual_tol`` while the truncated tail
        ``max|l_k|**(degree+1)`` exceeds ``tail_tol``.
    """
    target = np.asarray(target, dtype=complex).ravel()
    if target.size != len(seq):
        raise DimensionError(f"target has length {target.size}, expected {len(seq)}")
    if degree == "auto":
        degree = auto_degree(seq, tail_tol)
    degree = int(degree)
    if degree < 0:
        raise DimensionError("degree must be non-negative")

    gram = kernel_gram(seq, check=strict, rcond=rcond)
    a = _solve_gram(gram.matrix, target, rcond)
    # coefficient n of sum_j a_j w_j k_{l_j} is sum_j a_j w_j conj(l_j)**n
    powers = _powers(seq.values, degree)
    f = HardyPoly(np.conj(powers).T @ (a * seq.weights()))

    phi = seq.weights() * (powers @ f.coeffs)
    nt = np.linalg.norm(target)
    res = float(np.linalg.norm(phi - target) / nt) if nt > 0 else float(np.linalg.norm(phi))
    rmax = 1.0 - float(np.min(seq.gaps))
    if res > residual_tol and rmax ** (degree + 1) > tail_tol:
        raise TailError(
            f"degree {degree} leaves tail {rmax ** (degree + 1):.3g} > {tail_tol:g}; "
            f"relative residual {res:.3g}")
    return f


def interpolation_residual(f, seq, target):
    """Relative residual ``||phi_lambda(f) - target|| / ||target||``."""
    target = np.asarray(target, dtype=complex)
    nt = np.linalg.norm(target)
    r = np.linalg.norm(phi_lambda(f, seq) - target)
    return float(r / nt) if nt > 0 else float(r)
