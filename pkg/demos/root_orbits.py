"""
Orbits of operator roots
========================

Taking ell-th roots of the eigenvalues keeps the Carleson property, and the
orbit of the root operator interleaves ell shifted copies of the original
orbit.
"""

from orbitframes import DiagonalSystem, generate_geometric
from orbitframes.frames import root_orbit_decomposition

sys = DiagonalSystem(generate_geometric(2, 5))
for ell in (1, 2, 3):
    rec = root_orbit_decomposition(sys, ell, 600 * ell)
    print(f"ell={ell}: max deviation {rec.max_deviation:.1e}, "
          f"A={rec.bounds.lower:.3e}, B={rec.bounds.upper:.3f}")
