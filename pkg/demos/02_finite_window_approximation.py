"""How well log(R(1 + M_inf/T)) approximates the true finite-window PMI.

The approximation error is controlled by how fast the random walk mixes:
the subdominant eigenvalues of the transition matrix. Larger windows T
mean smaller error; graphs with a big spectral gap converge faster.
"""

import numpy as np

from infinitewalk import (
    PmiConfig,
    approx_error_report,
    fiedler_value,
    pmi_approx,
    pmi_exact,
    pmi_limit,
    spectral_cache,
)
from infinitewalk.pmi import RAMP_ONE
from infinitewalk.synthetic import erdos_renyi_walkable

for seed, n, p in [(1, 40, 0.3), (2, 40, 0.1), (3, 80, 0.06)]:
    g = erdos_renyi_walkable(n, p, seed=seed)
    cache = spectral_cache(g)
    limit = pmi_limit(g, cache)
    print(f"graph n={g.n}  fiedler={fiedler_value(cache):.3f}")
    for T in (1, 2, 5, 10, 20):
        cfg = PmiConfig(T=T, ramp=RAMP_ONE)
        rep = approx_error_report(pmi_exact(g, cfg), pmi_approx(limit, cfg))
        print(
            f"  T={T:2d}  rel. Frobenius error {rep.relative_frobenius_error:.5f}"
            f"  ramp disagreement {rep.ramped_disagreement_fraction:.5f}"
        )
    print()
