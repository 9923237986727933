"""The dense C/D/E tensors against their O(P log P) evaluation.

The tensors are assembled literally from basis matrices B_j and the flat
pairing, which costs O(P^5). The fast formulas replace them with pointwise
products on the grid. This script shows they agree to round-off and that
the C - D bracket does no work, which is why energy only changes through
the time discretisation.

Run: python demos/02_oracle_vs_fast.py
"""

import time

import numpy as np

from epdiff1d import c_term, d_term, e_term, energy, make_grid, tensors

rng = np.random.default_rng(0)
for n_modes in (2, 3, 4, 7):
    grid = make_grid(n_modes, 1.0)
    t0 = time.perf_counter()
    dense = tensors(grid)
    build = time.perf_counter() - t0
    X = rng.standard_normal(grid.n_points)
    errs = [np.abs(f(grid, X) - g(X)).max() / np.abs(g(X)).max()
            for f, g in ((e_term, dense.e_contract), (c_term, dense.c_contract),
                         (d_term, dense.d_contract))]
    print(f"P={grid.n_points:2d}  tensors in {build:.3f} s   rel err e/c/d: "
          + "  ".join(f"{e:.1e}" for e in errs))

grid = make_grid(64, 1.0)
X = rng.standard_normal(grid.n_points)
print("\nsum_p X_p (c - d)_p =", np.dot(X, c_term(grid, X) - d_term(grid, X)))
print("energy / (pi * X.e)  =", energy(grid, X) / (np.pi * np.dot(X, e_term(grid, X))))
