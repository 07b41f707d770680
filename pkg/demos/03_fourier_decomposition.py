"""
Splitting a Fourier transform
=============================

For a continuous piecewise-linear f the sine or cosine transform splits
into a main term (1/x) f(pi/(2x)) and a remainder whose integral is
controlled by the block norm of f'.
"""

# ## Imports

import math

import numpy as np

from amalgam_ft import (
    FunctionModel,
    decompose_grid,
    fourier_transform,
    fubini_sides,
    remainder_l1,
    tail_reduction_sum,
    total_variation,
)

f = FunctionModel([0.0, 0.5, 1.5, 3.0], [0.0, 1.2, -0.4, 0.0])

# ## The transform itself

xs = np.array([0.1, 1.0, 10.0, 100.0])
print("cosine:", fourier_transform(f, 0, xs))
print("sine:  ", fourier_transform(f, 1, xs))

# ## Main term and remainder
#
# The split is exact in floating point: remainder is defined as the difference.

for row in decompose_grid(f, 1, np.geomspace(0.1, 100, 7)):
    print("x={:9.4f}  F={:+.6f}  main={:+.6f}  rem={:+.6f}".format(*row.to_row()))

# ## Integrated remainder

for gamma in (0, 1):
    est = remainder_l1(f, gamma, 0.01, 1000.0)
    print(f"gamma={gamma}: int|rem| = {est.l1_value:.6f}, ||f'||_A = {est.f_prime_norm:.6f}, ratio = {est.ratio:.4f}")

# ## Two identities used along the way

lhs, rhs = fubini_sides(f)
print("Fubini:", lhs, rhs, "(rhs = pi/2 int|f'|)", math.pi / 2 * total_variation(f))
for gamma in (0, 1):
    print(f"tail sum gamma={gamma}:", tail_reduction_sum(f, gamma), "<= var f =", total_variation(f))
