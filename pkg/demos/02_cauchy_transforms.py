"""
Local and global Cauchy transforms
==================================

The windowed T-transform of chi[0, delta] has L^1 norm delta ln 3 while the
Hilbert transform of the same function is not integrable.
"""

# ## Imports

import math

import numpy as np

from amalgam_ft import FunctionModel, hilbert_l1_truncated, hilbert_transform, t_transform, t_transform_l1_norm

chi = FunctionModel([0.0, 1.0], [1.0, 1.0])

# ## Pointwise values

for t in (0.5, 0.8, 1.5, 2.0):
    print(f"T chi({t}) = {t_transform(chi, t):+.6f}   H chi({t}) = {hilbert_transform(chi, t):+.6f}")

# ## L^1 norms of T

for delta in (0.5, 1.0, 2.0):
    val = t_transform_l1_norm(FunctionModel([0.0, delta], [1.0, 1.0]))
    print(f"delta = {delta}: {val:.12f}  vs  {delta * math.log(3):.12f}")

# ## Hilbert: logarithmic growth
#
# Each decade of the truncation adds about ln 10.

prev = None
for X in 10.0 ** np.arange(1, 6):
    val = hilbert_l1_truncated(chi, X)
    step = "" if prev is None else f"  (+{val - prev:.4f})"
    print(f"X = {X:>8.0f}: {val:.4f}{step}")
    prev = val
print("ln 10 =", math.log(10))
