"""High-precision reference computations.

These routines take a different numerical route from the main modules
(direct products and closed-form frame operators in mpmath) and are used to
produce golden values and to cross-check the double precision code.
"""

import mpmath as mp

__all__ = [
    "carleson_products_mp",
    "frame_bounds_mp",
    "tail_sum_geometric",
    "geometric_points_mp",
    "algebraic_points_mp",
]


def geometric_points_mp(alpha, K):
    a = mp.mpf(alpha)
    return [1 - a ** (-k) for k in range(1, K + 1)]


def algebraic_points_mp(power, K, shift=1):
    return [1 - mp.mpf(k + shift) ** (-mp.mpf(power)) for k in range(1, K + 1)]


def carleson_products_mp(points, dps=50):
    """Products ``prod_{k != n} |l_k - l_n| / |1 - conj(l_k) l_n|`` multiplied out directly."""
    with mp.workdps(dps):
        pts = [mp.mpc(p) for p in points]
        out = []
        for n, ln in enumerate(pts):
            prod = mp.mpf(1)
            for k, lk in enumerate(pts):
                if k != n:
                    prod *= abs(lk - ln) / abs(1 - mp.conj(lk) * ln)
            out.append(prod)
        return out


def frame_bounds_mp(points, N, dps=80):
    """Extreme eigenvalues of the frame operator of ``{T^n h}_{n<=N}`` on C^K.

    Uses the closed form ``S[j,k] = w_j w_k (1 - z**(N+1)) / (1 - z)`` with
    ``z = l_j conj(l_k)``; ``N=None`` gives the full orbit, ``S[j,k] = w_j w_k / (1 - z)``.
    """
    with mp.workdps(dps):
        pts = [mp.mpc(p) for p in points]
        K = len(pts)
        w = [mp.sqrt(1 - abs(p) ** 2) for p in pts]
        S = mp.matrix(K, K)
        for j in range(K):
            for k in range(K):
                z = pts[j] * mp.conj(pts[k])
                geo = 1 / (1 - z) if N is None else (1 - z ** (N + 1)) / (1 - z)
                S[j, k] = w[j] * w[k] * geo
        E = mp.eigh(S, eigvals_only=True)
        E = sorted(mp.re(e) for e in E)
        return E[0], E[-1]


def tail_sum_geometric(alpha):
    """``sum_k (1 - |1 - alpha**-k|**2) = 2/(alpha-1) - 1/(alpha**2-1)``."""
    a = mp.mpf(alpha)
    return 2 / (a - 1) - 1 / (a * a - 1)
