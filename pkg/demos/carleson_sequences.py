"""
Carleson products of sequences in the disc
==========================================

A geometric approach to the boundary keeps the products bounded away from
zero; an algebraic approach does not.
"""

import numpy as np

from orbitframes import carleson_products, generate_algebraic, generate_geometric

# the geometric sequence 1 - 2**-k: ratio test and products
geo = generate_geometric(2, 30)
rep = carleson_products(geo, ratio_bound=0.5)
print("geometric:", rep.verdict.value)
print("  ratio_sup =", rep.ratio_sup, " infimum =", rep.infimum, " tail =", rep.tail_sum)

# the algebraic sequence 1 - (k+1)**-2 crowds together; watch the infimum fall
for K in (5, 10, 20, 40, 80):
    delta = carleson_products(generate_algebraic(2, K)).infimum
    print(f"algebraic K={K:3d}: infimum = {delta:.3e}")

# the per-index products show where the crowding happens
prods = carleson_products(generate_algebraic(2, 20)).per_index_products
print("smallest products at indices", np.argsort(prods)[:3] + 1)
