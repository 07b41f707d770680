"""
Dyadic block norms
==================

The a_{1,2} sequence norm and its continuous cousin A_{1,2}, computed
exactly for a few small examples.
"""

# ## Imports

import math

import numpy as np

from amalgam_ft import (
    CoefficientSequence,
    FunctionModel,
    embedding_ratio,
    function_amalgam_norm,
    scale_norm,
    sequence_amalgam_norm,
)

# ## Unit vectors
#
# e_n sits in exactly one block per dyadic scale up to log2 n, so its
# norm counts scales.

for n in (1, 2, 3, 4, 7, 8, 1000):
    e = CoefficientSequence.from_dict({"gen": "single-spike", "n": n})
    print(f"||e_{n}|| = {sequence_amalgam_norm(e):g}")

# ## A decaying sequence

b = CoefficientSequence.from_dict({"gen": "power", "p": 1, "N": 4096})
print("||1/n|| up to 4096:", sequence_amalgam_norm(b))

# ## The indicator of [0, 1]
#
# At scale 2^-k there are 2^k - 1 whole blocks of mass 2^-k inside [2^-k, 1].

chi = FunctionModel([0.0, 1.0], [1.0, 1.0])
for k in range(1, 6):
    print(f"scale -{k}:", scale_norm(chi, -k), 2.0**-k * math.sqrt(2.0**k - 1))

report = function_amalgam_norm(chi, tol=1e-12)
print("||chi||_A =", report.value, "+", report.tail_bound)

# ## Dilation invariance
#
# Dyadic dilation shuffles the scales and leaves the norm alone.

tent = FunctionModel([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])
for k in (-3, 0, 3):
    print(k, function_amalgam_norm(tent.dilate(k), tol=1e-12).value)

# ## Embedding into L^1

rng = np.random.default_rng(0)
ratios = []
for _ in range(10):
    t = np.sort(rng.uniform(0, 8, 6))
    ratios.append(embedding_ratio(FunctionModel(t, rng.uniform(-2, 2, 6))))
print("int|g| / ||g||_A, worst of 10:", max(ratios))
