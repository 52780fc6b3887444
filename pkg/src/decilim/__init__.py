"""Decimations of Laurent polynomials and their limits.

The main entry points are re-exported here; see the submodules for the
full API.
"""

__version__ = "0.1.0"

from .errors import (BudgetError, DecilimError, DimensionError, NumericError,
                     PolySyntaxError)
from .poly import (LaurentPoly, adjust, coeff_stats, eval_torus, exact_div,
                   mul, newton_polytope, parse_poly, rescale_down,
                   restrict_to_face)
from .decimate import DecimationSpec, decimate, decimate_lattice, log_rescale
from .hull import (PolyhedralConcaveFn, concave_hull, sup_distance,
                   tropical_convolution)
from .ronkin import (CertifiedValue, amoeba_scan, decimation_limit, lopsided,
                     mahler_bracket, mahler_measure, ronkin, tropicalization)
from .contraction import (IntegerLattice, asymptotic_length, contract,
                          degenerate_ratios, perfect_power_split,
                          stabilizer_order, support_group)
from .reference import (angle_gradient, b_of, decimation_limit_1xy,
                        golden_limit, smyth_constant)

__all__ = [
    "BudgetError", "DecilimError", "DimensionError", "NumericError",
    "PolySyntaxError", "LaurentPoly", "adjust", "coeff_stats", "eval_torus",
    "exact_div", "mul", "newton_polytope", "parse_poly", "rescale_down",
    "restrict_to_face", "DecimationSpec", "decimate", "decimate_lattice",
    "log_rescale", "PolyhedralConcaveFn", "concave_hull", "sup_distance",
    "tropical_convolution", "CertifiedValue", "amoeba_scan",
    "decimation_limit", "lopsided", "mahler_bracket", "mahler_measure",
    "ronkin", "tropicalization", "IntegerLattice", "asymptotic_length",
    "contract", "degenerate_ratios", "perfect_power_split",
    "stabilizer_order", "support_group", "angle_gradient", "b_of",
    "decimation_limit_1xy", "golden_limit", "smyth_constant",
]
