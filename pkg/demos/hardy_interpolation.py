"""
Interpolation in the Hardy space
================================

Any square-summable data can be matched on a Carleson sequence by an H^2
function, found here as the minimal-norm kernel combination.
"""

import numpy as np

from orbitframes import generate_geometric
from orbitframes.hardy import interpolate, interpolation_residual, kernel_gram

seq = generate_geometric(2, 8)

# the Gram matrix of normalized kernels; its conditioning reflects separation
G = kernel_gram(seq)
print("Gram condition number:", f"{G.cond():.3e}")

# ask for the third unit vector as data
target = np.zeros(8)
target[2] = 1.0
f = interpolate(seq, target)
print("degree", f.degree, " norm", f"{f.norm():.4f}",
      " residual", f"{interpolation_residual(f, seq, target):.2e}")

# random data works the same way
rng = np.random.default_rng(0)
c = rng.standard_normal(8) + 1j * rng.standard_normal(8)
print("random target residual", f"{interpolation_residual(interpolate(seq, c), seq, c):.2e}")
