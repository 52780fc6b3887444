#!/usr/bin/env python3

# Lopsidedness certificates for the amoeba of 5 + x + 1/x + y + 1/y.
#
# At the origin the constant 5 beats the four unit terms, so the origin
# sits in a bounded complement component (the hole). Decimating makes
# more cells lopsided, but not monotonically in N, and the four
# unbounded gaps only appear in [-2, 2]^2 once N is large enough.

from decilim import amoeba_scan, lopsided, parse_poly

f = parse_poly("5+x+1/x+y+1/y")
print("lopsided at the origin:", lopsided(f, (0.0, 0.0)))

for N in (1, 2, 4, 8, 16, 32):
    scan = amoeba_scan(f, box=(-2, 2, -2, 2), resolution=81, N=N)
    print(f"N={N:2d}: {scan.n_components} certified components, "
          f"{int(scan.outside.sum())} cells outside")

scan = amoeba_scan(f, box=(-2, 2, -2, 2), resolution=41, N=32)
for row in scan.outside[::-2]:
    print("".join("#" if c else "." for c in row[::1]))
