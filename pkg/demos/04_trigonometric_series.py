"""
Trigonometric series with block-summable differences
====================================================

Linear interpolation turns a coefficient sequence into a piecewise-linear
function, so the function-side machinery applies to series.
"""

# ## Imports

import math

import numpy as np

from amalgam_ft import (
    CoefficientSequence,
    FunctionModel,
    condsin_equivalence_ratio,
    condsin_sum,
    derivative,
    difference_sequence,
    interpolate,
    partial_sums,
    sequence_amalgam_norm,
    sine_asymptotic_check,
    trigub_discrepancy,
    windowed_amalgam_sum,
)
from amalgam_ft.amalgam import _top_scale

# ## Interpolation

c = CoefficientSequence([1.0, 0.6, 0.5, 0.1])
A = interpolate(c)
print(A.breakpoints, A.values)
print("A at half-integers:", A.evaluate(np.arange(0.5, 5, 1.0)))

# ## Sequence and function norms agree
#
# A' equals -Delta c_n on [n, n+1), so the m >= 0 scales reproduce a_{1,2}.

rng = np.random.default_rng(1)
c = CoefficientSequence(rng.uniform(-1, 1, 50))
g = derivative(interpolate(c))
print(sequence_amalgam_norm(difference_sequence(c)), windowed_amalgam_sum(g, 0, _top_scale(g.support[1])))

# ## Sine series: main term and the |b_n|/n condition

for N in (250, 500, 1000, 2000):
    b = CoefficientSequence.from_dict({"gen": "power", "p": 1, "N": N})
    lo, hi = condsin_equivalence_ratio(b)
    print(f"N={N}: sum |b_n|/n = {condsin_sum(b):.4f}, ratio bracket [{lo:.4f}, {hi:.4f}]")

b = CoefficientSequence.from_dict({"gen": "power", "p": 1, "N": 200})
xs = np.array([0.05, 0.5, 1.5, 3.0])
print("partial sums:", partial_sums(b, "sine", xs))
est = sine_asymptotic_check(b)
print(f"int|Gamma| over [{est.window[0]:.5f}, pi] = {est.l1_value:.4f}, ratio = {est.ratio:.4f}")

# ## Integral versus integer samples

tent = FunctionModel([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])
sup, tv = trigub_discrepancy(tent)
print(f"tent: sup defect {sup:.4f}, variation {tv}, ratio {sup / tv:.4f}")
