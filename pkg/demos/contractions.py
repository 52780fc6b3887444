#!/usr/bin/env python3

# Perfect powers hiding in decimations.
#
# For x^2 - 2 the decimation is a square exactly when N is even, which
# makes the normalized log-length of the contraction alternate between
# log 2 and (1/2) log 2. For 1 + x + y^2 the exponent e_N equals the
# order of a finite group read off from a Smith normal form.

import math

from decilim import parse_poly
from decilim.contraction import (asymptotic_length, contract,
                                 degenerate_ratios, stabilizer_order,
                                 support_group)

f = parse_poly("x^2-2")
print(" N  e_N  (1/N) log L(g_N)")
for row in asymptotic_length(f, range(2, 13)):
    print(f"{row.N:2d}  {row.eN:3d}  {row.normalized_log:.6f}")
print("log 2 =", math.log(2), " half =", math.log(2) / 2)

g = parse_poly("1+x+y^2")
gamma = support_group(g)
print("\nsupport lattice invariants:", gamma.invariants)
for N in (2, 3, 4, 5, 6):
    print(f"N={N}: e_N={contract(g, N).eN}  "
          f"stabilizer={stabilizer_order(gamma, N)}")

q = parse_poly("1-2x+4x^2-3x^3+x^4")
rep = degenerate_ratios(q)
print("\nresultant:", rep.resultant)
print("cyclotomic witnesses:", rep.witnesses, rep.multiplicities)
print("e_5 =", contract(q, 5).eN, " e_3 =", contract(q, 3).eN)
