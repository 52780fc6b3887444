#!/usr/bin/env python3

# The polyhedral surfaces D_N f for f = 1 + x + y close in on the
# smooth limit whose maximum, at the centroid of the simplex, is the
# logarithmic Mahler measure m(f).

from decilim import (concave_hull, decimate, decimation_limit_1xy,
                     log_rescale, mahler_measure, parse_poly)

f = parse_poly("1+x+y")
f5 = decimate(f, 5)
print("f<5> has", len(f5), "terms; largest coefficient",
      max(f5.terms.values()))

grid = [(i / 7, j / 7) for i in range(1, 7) for j in range(1, 7) if i + j <= 6]
limit = {p: decimation_limit_1xy(*p) for p in grid}

print("\n  N  sup error on grid   max D_N f")
for N in (2, 4, 8, 16, 32):
    D = concave_hull(log_rescale(decimate(f, N), N * N, N))
    err = max(abs(D.eval(p) - limit[p]) for p in grid)
    print(f"{N:3d}  {err:.6f}           {D.maximum():.6f}")

print("\nm(1+x+y) =", mahler_measure(f).value)
