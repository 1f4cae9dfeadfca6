"""
When is a sequence an operator orbit?
=====================================

A linearly independent family f_1, f_2, ... is always the orbit of the map
f_k -> f_{k+1} on its span; the question is whether that map is bounded.
"""

import numpy as np

from orbitframes.operator_repr import (
    block_orbit_coefficients,
    example_factory,
    norm_ratio_sequence,
    restricted_norm_estimate,
    scaled_riesz_bound_check,
)

# e_k + e_{k+1}: the shift extends to an isometry
print("sum_basis:", restricted_norm_estimate(example_factory("sum_basis", 30)))

# k! e_k: the norm on the first N vectors is N, so there is no bounded extension
for N in (5, 10, 15):
    print(f"factorial N={N}:", restricted_norm_estimate(example_factory("factorial", N)))
print("norm ratios:", norm_ratio_sequence(example_factory("factorial", 6)))

# a weighted shift whose orbit of e_1 swings up and down block by block
print("block orbit:", block_orbit_coefficients(15))

# scaling a Riesz basis: the norm is controlled by the largest multiplier ratio
rng = np.random.default_rng(1)
E = np.eye(8) + 0.05 * rng.standard_normal((8, 8))
rep = scaled_riesz_bound_check(E, np.cumprod(rng.uniform(0.5, 2.0, 8)))
print(f"estimate^2={rep.estimate ** 2:.3f} <= (B/A)C^2={rep.bound:.3f}: {rep.passed}")
