"""The infinite-window PMI matrix on small graphs.

For the triangle K3 everything can be done by hand: the Laplacian
pseudoinverse is (1/3)I - (1/9)J and the limiting PMI matrix comes out as
(1/3)J - I. This script checks the hand algebra and shows that the two
independent constructions (normalized-Laplacian route and the rank-3
identity over the unnormalized Laplacian) agree on arbitrary graphs.
"""

import numpy as np

from infinitewalk import (
    pmi_limit,
    pmi_limit_rank3,
    spectral_cache,
    unnormalized_laplacian_pinv,
)
from infinitewalk.synthetic import complete_graph, erdos_renyi_walkable

np.set_printoptions(precision=4, suppress=True)

k3 = complete_graph(3)
cache = spectral_cache(k3)

print("K3 transition-matrix eigenvalues:", cache.eigenvalues)
print("\nUnnormalized Laplacian pseudoinverse of K3:")
print(unnormalized_laplacian_pinv(k3))

limit = pmi_limit(k3, cache)
print("\nLimiting PMI matrix of K3 (expected (1/3)J - I):")
print(limit.values)

print("\nRank-3 route gives the same matrix:")
print(pmi_limit_rank3(k3).values)

print("\nAgreement on random walkable graphs:")
for seed in range(4):
    g = erdos_renyi_walkable(30, 0.2, seed=seed)
    a = pmi_limit(g, spectral_cache(g)).values
    b = pmi_limit_rank3(g).values
    rel = np.linalg.norm(a - b) / np.linalg.norm(a)
    print(f"  n={g.n} volume={g.volume:8.2f}  relative difference {rel:.2e}")
