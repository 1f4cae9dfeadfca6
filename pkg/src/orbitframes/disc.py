"""Sequences in the open unit disc and the Carleson condition.

Points are stored in polar form as ``(gap, angle)`` with ``gap = 1 - |lambda|``.
Carleson-type sequences accumulate at the boundary, where ``lambda`` itself
rounds to 1 long before the gap underflows, so every distance in this module
is evaluated from gaps and angle differences rather than from the raw values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DomainError

__all__ = [
    "DiscSequence",
    "CarlesonReport",
    "Verdict",
    "Subsequence",
    "DropPrefix",
    "RootMap",
    "pseudo_hyperbolic_distance",
    "pairwise_log_distance",
    "carleson_products",
    "carleson_infimum",
    "tail_sum",
    "generate_geometric",
    "generate_algebraic",
    "transform_sequence",
    "root_lemma_factor",
    "is_positive_increasing",
]

DEFAULT_SEPARATION_TOL = 1e-14


def _one_minus_unit(delta):
    """Return ``1 - exp(i*delta)`` without cancellation for small ``delta``."""
    s = np.sin(0.5 * delta)
    return 2.0 * s * s - 1j * np.sin(delta)


def _ph_parts(g1, t1, g2, t2):
    """Moduli of ``a - b`` and ``1 - conj(a) b`` for polar points.

    With ``a = (1-g1) e^{i t1}``, ``b = (1-g2) e^{i t2}`` and ``d = t2 - t1``:

        a - b          = e^{i t1} [(g2 - g1) + (1 - g2)(1 - e^{i d})]
        1 - conj(a) b  = (g1 + g2 - g1 g2) + (1 - g1)(1 - g2)(1 - e^{i d})
    """
    w = _one_minus_unit(np.subtract(t2, t1))
    num = (np.subtract(g2, g1)) + (1.0 - np.asarray(g2)) * w
    den = (np.add(g1, g2) - np.multiply(g1, g2)) + (1.0 - np.asarray(g1)) * (1.0 - np.asarray(g2)) * w
    return np.abs(num), np.abs(den)


def _to_polar(values):
    values = np.asarray(values, dtype=complex)
    gaps = 1.0 - np.abs(values)
    angles = np.angle(values)
    return gaps, angles


def _check_open_disc(gaps, what="value"):
    gaps = np.asarray(gaps)
    bad = ~(gaps > 0)
    if np.any(bad):
        idx = int(np.flatnonzero(bad.ravel())[0])
        raise DomainError(f"{what} at position {idx} does not lie in the open unit disc")


def pseudo_hyperbolic_distance(a, b):
    """Pseudo-hyperbolic distance ``|a - b| / |1 - conj(a) b|`` on the unit disc.

    Parameters
    ----------
    a, b : complex or array_like
        Points with modulus strictly below one. Arrays broadcast.

    Returns
    -------
    float or ndarray
        Distance in ``[0, 1)``.

    Raises
    ------
    DomainError
        If any argument has modulus ``>= 1``.
    """
    ga, ta = _to_polar(a)
    gb, tb = _to_polar(b)
    _check_open_disc(ga, "first argument")
    _check_open_disc(gb, "second argument")
    num, den = _ph_parts(ga, ta, gb, tb)
    out = num / den
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True, eq=False)
class DiscSequence:
    """Finite ordered truncation of a sequence in the open unit disc.

    Build instances with :meth:`from_values`, :meth:`from_polar` or one of the
    generators. ``exact_gaps`` holds rational values of ``1 - |lambda_k|``
    when the generator knows them exactly; ratio statistics then use exact
    arithmetic.
    """

    values: np.ndarray
    gaps: np.ndarray
    angles: np.ndarray
    generator: Optional[str] = None
    exact_gaps: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        for name in ("values", "gaps", "angles"):
            arr = getattr(self, name)
            arr.setflags(write=False)

    @classmethod
    def from_values(cls, values, generator=None, separation_tol=DEFAULT_SEPARATION_TOL):
        values = np.array(values, dtype=complex).ravel()
        gaps, angles = _to_polar(values)
        _check_open_disc(gaps)
        seq = cls(values, gaps, angles, generator or "explicit")
        seq._check_separation(separation_tol)
        return seq

    @classmethod
    def from_polar(cls, gaps, angles=None, generator=None, exact_gaps=None,
                   separation_tol=DEFAULT_SEPARATION_TOL):
        gaps = np.array(gaps, dtype=float).ravel()
        if angles is None:
            angles = np.zeros_like(gaps)
        angles = np.array(angles, dtype=float).ravel()
        if angles.shape != gaps.shape:
            raise DomainError("gaps and angles must have the same length")
        _check_open_disc(gaps)
        if np.any(gaps > 1):
            raise DomainError("gap 1 - |lambda| cannot exceed 1")
        r = 1.0 - gaps
        values = r * np.cos(angles) + 1j * (r * np.sin(angles))
        seq = cls(values, gaps, angles, generator, exact_gaps)
        seq._check_separation(separation_tol)
        return seq

    def _check_separation(self, tol):
        n = len(self)
        if n < 2:
            return
        g, t = self.gaps, self.angles
        if np.all(t == 0) and np.all(np.diff(g) < 0):
            # increasing points on [0, 1): the closest pair is adjacent
            iu = (np.arange(n - 1), np.arange(1, n))
        else:
            iu = np.triu_indices(n, 1)
        num, den = _ph_parts(g[iu[0]], t[iu[0]], g[iu[1]], t[iu[1]])
        d = num / den
        close = d <= tol
        if np.any(close):
            j = int(np.flatnonzero(close)[0])
            raise DomainError(
                f"points {iu[0][j]} and {iu[1][j]} are not separated "
                f"(pseudo-hyperbolic distance {d[j]:.3g} <= {tol:g})")

    def __len__(self):
        return self.gaps.shape[0]

    def __getitem__(self, idx):
        return self.values[idx]

    @property
    def moduli(self):
        return 1.0 - self.gaps

    def weights(self):
        """``sqrt(1 - |lambda_k|^2)`` computed from the gaps."""
        return np.sqrt(self.gaps * (2.0 - self.gaps))

    def is_real_nonnegative(self):
        return bool(np.all((self.angles == 0) | (self.gaps == 1.0)))

    def prefix(self, k):
        return transform_sequence(self, Subsequence(range(min(k, len(self)))))


class Verdict(str, enum.Enum):
    CARLESON_BY_RATIO = "CarlesonByRatio"
    LIKELY_CARLESON = "LikelyCarleson"
    FAILS_NECESSARY_CONDITION = "FailsNecessaryCondition"


@dataclass(frozen=True)
class CarlesonReport:
    per_index_products: np.ndarray
    infimum: float
    ratio_sup: float
    tail_sum: float
    verdict: Verdict
    ratios: np.ndarray


def pairwise_log_distance(seq):
    """Matrix of ``log d(lambda_j, lambda_k)`` with zeros on the diagonal."""
    num, den = _ph_parts(seq.gaps[:, None], seq.angles[:, None],
                         seq.gaps[None, :], seq.angles[None, :])
    with np.errstate(divide="ignore"):
        logd = np.log(num) - np.log(den)
    np.fill_diagonal(logd, 0.0)
    return logd


def _gap_ratios(seq):
    if len(seq) < 2:
        return np.zeros(0), 0.0
    if seq.exact_gaps is not None:
        # correctly rounded b/a from integers; rounding is monotone, so the
        # max of the rounded ratios is the rounded exact max
        g = seq.exact_gaps
        ratios = np.array([(b.numerator * a.denominator) / (b.denominator * a.numerator)
                           for a, b in zip(g[:-1], g[1:])])
        return ratios, float(ratios.max())
    ratios = seq.gaps[1:] / seq.gaps[:-1]
    return ratios, float(ratios.max())


def is_positive_increasing(seq):
    """True when every point is real, positive, and the sequence strictly increases."""
    if not np.all(seq.angles == 0) or np.any(seq.gaps >= 1.0):
        return False
    return bool(np.all(np.diff(seq.gaps) < 0))


def carleson_products(seq, ratio_bound=None, tail_diverging=False):
    """Truncated Carleson products and the ratio test.

    ``delta_n`` is the product over ``k != n`` of pseudo-hyperbolic distances
    in the given truncation, accumulated as a sum of logarithms.

    Parameters
    ----------
    seq : DiscSequence
    ratio_bound : float, optional
        Constant ``c < 1``. If every ratio ``(1-|l_{k+1}|)/(1-|l_k|)`` is at
        most ``c`` the verdict is ``CarlesonByRatio``. For a positive
        increasing sequence whose ratios exceed ``c`` the necessary condition
        fails at that constant.
    tail_diverging : bool
        Set by callers that observed ``tail_sum`` growing without bound over
        longer prefixes.
    """
    n = len(seq)
    if n == 0:
        raise DomainError("Carleson products need at least one point")
    if ratio_bound is not None and not (0 < ratio_bound < 1):
        raise DomainError("ratio_bound must lie in (0, 1)")
    products = np.exp(pairwise_log_distance(seq).sum(axis=0))
    products = np.clip(products, 0.0, 1.0)
    ratios, ratio_sup = _gap_ratios(seq)
    tsum = tail_sum(seq)

    if ratio_bound is not None and ratio_sup <= ratio_bound:
        verdict = Verdict.CARLESON_BY_RATIO
    elif tail_diverging or (ratio_bound is not None and is_positive_increasing(seq)):
        verdict = Verdict.FAILS_NECESSARY_CONDITION
    else:
        verdict = Verdict.LIKELY_CARLESON
    return CarlesonReport(products, float(products.min()), ratio_sup, tsum, verdict, ratios)


def carleson_infimum(seq):
    """Minimum truncated Carleson product, ``min_n delta_n``."""
    return carleson_products(seq).infimum


def tail_sum(seq):
    """Sum of ``1 - |lambda_k|^2`` over the truncation (0 for an empty sequence)."""
    if len(seq) == 0:
        return 0.0
    # gaps are accurate to an ulp even near the boundary, so no exact path is needed
    return math.fsum(seq.gaps * (2.0 - seq.gaps))


def generate_geometric(alpha, K):
    """The sequence ``lambda_k = 1 - alpha**(-k)`` for ``k = 1..K``."""
    if not alpha > 1:
        raise DomainError("alpha must exceed 1")
    if K < 1:
        raise DomainError("K must be at least 1")
    p, q = Fraction(alpha).as_integer_ratio()
    exact = tuple(Fraction(q ** k, p ** k) for k in range(1, K + 1))
    gaps = [q ** k / p ** k for k in range(1, K + 1)]  # int division rounds correctly
    return DiscSequence.from_polar(gaps, generator=f"geometric({alpha:g})", exact_gaps=exact)


def generate_algebraic(power, K, shift=1):
    """The sequence ``lambda_k = 1 - (k + shift)**(-power)`` for ``k = 1..K``.

    For ``power > 1`` the tail sum is finite, yet the consecutive gap ratios
    tend to one, so the Carleson condition fails.
    """
    if not power > 0:
        raise DomainError("power must be positive")
    if K < 1:
        raise DomainError("K must be at least 1")
    p = Fraction(power)
    if p.denominator == 1:
        exact = tuple(Fraction(1, (k + shift) ** p.numerator) for k in range(1, K + 1))
        gaps = [float(g) for g in exact]
    else:
        exact = None
        gaps = [(k + shift) ** (-float(power)) for k in range(1, K + 1)]
    return DiscSequence.from_polar(gaps, generator=f"algebraic({power:g},{shift})", exact_gaps=exact)


@dataclass(frozen=True)
class Subsequence:
    indices: Sequence[int]


@dataclass(frozen=True)
class DropPrefix:
    n: int


@dataclass(frozen=True)
class RootMap:
    ell: int


Transform = Union[Subsequence, DropPrefix, RootMap]


def transform_sequence(seq, op):
    """Apply a Carleson-preserving modification to ``seq``.

    ``Subsequence`` keeps the listed (strictly increasing) positions,
    ``DropPrefix`` removes the first ``n`` points and ``RootMap`` replaces
    each point of a sequence in ``[0, 1)`` by its ``ell``-th root.
    """
    if isinstance(op, DropPrefix):
        if not 0 <= op.n < len(seq):
            raise IndexError(f"cannot drop {op.n} points from a sequence of length {len(seq)}")
        op = Subsequence(range(op.n, len(seq)))
    if isinstance(op, Subsequence):
        idx = np.asarray(list(op.indices), dtype=int)
        if idx.size and (idx.min() < 0 or idx.max() >= len(seq)):
            raise IndexError("subsequence index out of range")
        if np.any(np.diff(idx) <= 0):
            raise IndexError("subsequence indices must be strictly increasing")
        exact = None if seq.exact_gaps is None else tuple(seq.exact_gaps[i] for i in idx)
        # Subsets of a separated set stay separated; skip the O(K^2) check.
        return DiscSequence(seq.values[idx].copy(), seq.gaps[idx].copy(), seq.angles[idx].copy(),
                            seq.generator, exact)
    if isinstance(op, RootMap):
        ell = int(op.ell)
        if ell < 1:
            raise DomainError("root order must be at least 1")
        if not seq.is_real_nonnegative():
            raise DomainError("root map needs real values in [0, 1)")
        if ell == 1:
            return seq
        with np.errstate(divide="ignore"):
            gaps = -np.expm1(np.log1p(-seq.gaps) / ell)
        gen = f"root({seq.generator},{ell})" if seq.generator else f"root({ell})"
        return DiscSequence.from_polar(gaps, generator=gen)
    raise TypeError(f"unsupported transform {op!r}")


def root_lemma_factor(x, y, ell):
    """Ratio of power sums linking distances of ``ell``-th roots to the originals.

    With ``a = x**(1/ell)`` and ``b = y**(1/ell)`` this returns
    ``sum_i (ab)**i / sum_j a**(ell-j-1) b**j`` (both sums over ``0..ell-1``),
    which satisfies ``d(a, b) = d(x, y) * factor`` and is at least one.
    ``x``, ``y`` and ``ell`` broadcast against each other.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any((x <= 0) | (x >= 1) | (y <= 0) | (y >= 1)):
        raise DomainError("root_lemma_factor needs 0 < x, y < 1")
    ell = np.asarray(ell)
    if ell.dtype.kind not in "iu" or np.any(ell < 1):
        raise DomainError("ell must be an integer of at least 1")
    x, y, ell = np.broadcast_arrays(x, y, ell)
    out = np.empty(x.shape)
    for e in np.unique(ell):
        m = ell == e
        a = x[m] ** (1.0 / e)
        b = y[m] ** (1.0 / e)
        num = sum((a * b) ** i for i in range(e))
        den = sum(a ** (e - j - 1) * b ** j for j in range(e))
        out[m] = num / den
    return float(out) if out.ndim == 0 else out
