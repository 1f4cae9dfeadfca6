"""
Frames from iterating a diagonal operator
=========================================

The orbit h, Th, T^2 h, ... of a diagonal operator is a frame exactly when the
eigenvalues satisfy the Carleson condition. In finite truncations this shows
up as a lower frame bound that settles (geometric eigenvalues) or collapses
(algebraic eigenvalues).
"""

from orbitframes import carleson_frame_experiment, generate_algebraic, generate_geometric
from orbitframes.frames import limit_frame_bounds

rows = carleson_frame_experiment(lambda K: generate_geometric(2, K), [3, 5], [50, 100, 300, 600])
for r in rows:
    print(f"geometric K={r.K} N={r.N:4d}  A={r.lower:.6e}  B={r.upper:.4f}")

# the N -> infinity limit comes from the kernel Gram matrix
for K in (5, 10, 15):
    lim = limit_frame_bounds(generate_geometric(2, K))
    print(f"geometric K={K:2d}, all N: A={lim.lower:.3e}")
for K in (5, 10, 20):
    lim = limit_frame_bounds(generate_algebraic(2, K))
    print(f"algebraic K={K:2d}, all N: A={lim.lower:.3e}")
