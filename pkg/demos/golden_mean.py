#!/usr/bin/env python3

# Decimations of the golden-mean polynomial x^2 - x - 1.
#
# The N-th decimation has roots lambda^N and mu^N, so its middle
# coefficient is a Lucas number and the rescaled coefficient logs trace
# out a tent that sharpens towards min(r, 2 - r) log(lambda).

import math

import numpy as np

from decilim import concave_hull, decimate, log_rescale, parse_poly
from decilim.reference import GOLDEN, golden_limit

f = parse_poly("x^2-x-1")

for N in (2, 3, 4, 5):
    print(f"f<{N}> =", decimate(f, N))

print()
print(" N   D_N f(1)        error")
grid = np.linspace(0, 2, 401)
for N in (2, 4, 8, 16, 32, 64):
    D = concave_hull(log_rescale(decimate(f, N, method="doubling"), N, N))
    err = max(abs(D.eval([r]) - golden_limit(r)) for r in grid)
    print(f"{N:3d}  {D.eval([1.0]):.12f}  {err:.3e}")

print("log lambda =", math.log(GOLDEN))
