"""Exact decimation ``f<N>`` and its logarithmic rescaling.

``f<N>(x) = prod f(w x)`` over all ``w`` in ``Omega_N^d``, the d-tuples of
N-th roots of unity. Two exact routes are provided:

* *doubling*: for ``N = 2^k``, iterate ``h -> E_2(prod_e h(e x))`` over the
  ``2^d`` sign patterns ``e``, one variable at a time, starting from ``f``.
* *norm*: for general (rectangular) lattices, the product over the
  ``a``-th roots of unity in one variable is the determinant of a circulant
  matrix over the Laurent ring, computed by fraction-free elimination.
"""

import math
import os
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import BudgetError
from .poly import (LaurentPoly, _as_tuple, coeff_stats, exact_div, inflate,
                   log_abs_int, mul)

__all__ = [
    "DecimationSpec", "ScaledLogCoeffs", "decimate", "decimate_lattice",
    "log_rescale", "predicted_bits", "budget_bits", "doubling_step",
]

DEFAULT_BUDGET_BITS = 2 ** 31


class DecimationSpec(NamedTuple):
    """Rectangular lattice ``a_1 Z + ... + a_d Z`` and the method to use."""
    lattice: tuple
    method: str = "auto"

    @property
    def index(self):
        return math.prod(self.lattice)


class ScaledLogCoeffs(NamedTuple):
    """Finite values of ``L_N f``.

    Attributes
    ----------
    points : list of (tuple of Fraction, float)
        Position ``k / index`` and value ``log|c_k| / index`` for every
        nonzero coefficient, in ascending grlex order of ``k``.
    N : int or tuple
        Decimation parameter (tuple for rectangular lattices).
    index : int
        Lattice index ``[Z^d : Lambda]``.
    """
    points: list
    N: object
    index: int

    @property
    def dim(self):
        return len(self.points[0][0])

    def positions(self):
        return np.array([[float(a) for a in r] for r, _ in self.points])

    def values(self):
        return np.array([v for _, v in self.points])


def budget_bits(override=None):
    """Active coefficient budget in bits (argument, env var, or default)."""
    if override is not None:
        return int(override)
    env = os.environ.get("DECILIM_BUDGET_BITS")
    if env:
        return int(env)
    return DEFAULT_BUDGET_BITS


def predicted_bits(f, lattice):
    """Rough upper estimate of the total bit size of ``f<Lambda>``.

    Term count of the scaled coordinate box times the index times
    ``log2 L(f)``, which dominates ``log2 M(f)``.
    """
    index = math.prod(lattice)
    bounds = f.degree_bounds()
    terms = 1
    for (lo, hi), a in zip(bounds, lattice):
        terms *= (index // a) * (hi - lo) + 1
    length = coeff_stats(f).length
    per_coeff = index * max(math.log2(length), 1.0) + 64
    return terms * per_coeff


def _check_budget(f, lattice, budget):
    bits = predicted_bits(f, lattice)
    cap = budget_bits(budget)
    if bits > cap:
        raise BudgetError(
            f"predicted size {bits:.3g} bits exceeds budget {cap} bits")


def _is_power_of_two(n):
    return n >= 1 and n & (n - 1) == 0


# ---------------------------------------------------------------------------
# doubling route

def _split_parity(h, i):
    """Write ``h = A(x_i^2) + x_i B(x_i^2)``; return A, B with halved exponents."""
    A, B = {}, {}
    for e, c in h.items():
        a = e[i]
        if a % 2 == 0:
            A[e[:i] + (a // 2,) + e[i + 1:]] = c
        else:
            B[e[:i] + ((a - 1) // 2,) + e[i + 1:]] = c
    return LaurentPoly._raw(h.dim, A), LaurentPoly._raw(h.dim, B)


def doubling_step(h):
    """``E_2`` of the product of ``h(e x)`` over all sign patterns ``e``.

    Done per variable with ``h(x) h(-x) = A(x^2)^2 - x^2 B(x^2)^2`` so that
    after halving the exponents the factor is ``A^2 - x B^2``.
    """
    for i in range(h.dim):
        A, B = _split_parity(h, i)
        xi = LaurentPoly.variable(i, h.dim)
        h = mul(A, A) - mul(xi, mul(B, B))
    return h


def _decimate_doubling(f, N):
    k = N.bit_length() - 1
    h = f
    for _ in range(k):
        h = doubling_step(h)
    return inflate(h, N)


# ---------------------------------------------------------------------------
# norm route

def _bareiss_det(M):
    """Determinant of a square matrix of Laurent polynomials (fraction-free).

    Sylvester's identity makes every intermediate entry an exact quotient,
    so :func:`exact_div` never fails on a correct input.
    """
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    dim = M[0][0].dim
    M = [row[:] for row in M]
    sign = 1
    prev = LaurentPoly.constant(1, dim)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for r in range(k + 1, n):
                if not M[r][k].is_zero():
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly(dim)
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                num = mul(pivot, M[i][j]) - mul(mik, M[k][j])
                M[i][j] = exact_div(num, prev)
            M[i][k] = LaurentPoly(dim)
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def _norm_in_variable(f, i, a):
    """``prod_{j<a} f(..., zeta^j x_i, ...)`` with ``zeta = exp(2 pi i / a)``."""
    if a == 1:
        return f
    dim = f.dim
    classes = [dict() for _ in range(a)]
    for e, c in f.items():
        classes[e[i] % a][e] = c
    c = [LaurentPoly._raw(dim, t) for t in classes]
    M = [[c[(j - k) % a] for k in range(a)] for j in range(a)]
    return _bareiss_det(M)


def _decimate_norm(f, lattice):
    h = f
    for i, a in enumerate(lattice):
        h = _norm_in_variable(h, i, a)
    return h


# ---------------------------------------------------------------------------
# public API

def decimate(f, N, method="auto", budget=None):
    """Exact ``N``-th decimation of ``f``.

    Parameters
    ----------
    f : LaurentPoly
        Nonzero polynomial.
    N : int
        Positive decimation parameter.
    method : {"auto", "doubling", "norm"}
        ``auto`` uses doubling for powers of two and the norm route
        otherwise.
    budget : int, optional
        Bit budget; defaults to ``DECILIM_BUDGET_BITS`` or ``2**31``.

    Returns
    -------
    LaurentPoly
        ``f<N>``, supported on ``N Z^d``.

    Raises
    ------
    ValueError
        If ``N < 1``, ``f`` is zero, or ``doubling`` is requested for a
        non-power of two.
    BudgetError
        If the predicted result size exceeds the budget.
    """
    N = int(N)
    if N < 1:
        raise ValueError("N must be a positive integer")
    if f.is_zero():
        raise ValueError("cannot decimate the zero polynomial")
    if method not in ("auto", "doubling", "norm"):
        raise ValueError(f"unknown method {method!r}")
    if method == "doubling" and not _is_power_of_two(N):
        raise ValueError("doubling requires N to be a power of two")
    if N == 1:
        return f
    _check_budget(f, (N,) * f.dim, budget)
    if method == "doubling" or (method == "auto" and _is_power_of_two(N)):
        return _decimate_doubling(f, N)
    return _decimate_norm(f, (N,) * f.dim)


def decimate_lattice(f, spec, budget=None):
    """Decimation along the rectangular lattice ``spec.lattice``.

    ``spec`` may be a :class:`DecimationSpec` or a plain tuple. A square
    lattice with a power-of-two side is routed through :func:`decimate`
    when the method allows it; everything else uses the norm route.
    """
    if not isinstance(spec, DecimationSpec):
        spec = DecimationSpec(tuple(spec))
    if f.is_zero():
        raise ValueError("cannot decimate the zero polynomial")
    lattice = tuple(int(a) for a in spec.lattice)
    if len(lattice) != f.dim:
        lattice = _as_tuple(lattice, f.dim)
    if any(a < 1 for a in lattice):
        raise ValueError("lattice entries must be positive")
    if len(set(lattice)) == 1 and spec.method != "norm":
        return decimate(f, lattice[0], spec.method, budget)
    if spec.method == "doubling":
        raise ValueError("doubling requires a square lattice")
    _check_budget(f, lattice, budget)
    return _decimate_norm(f, lattice)


def log_rescale(fN, index, N=None):
    """Points of ``L_N f`` from a decimation ``fN``.

    Parameters
    ----------
    fN : LaurentPoly
        Output of :func:`decimate` or :func:`decimate_lattice`.
    index : int
        ``[Z^d : Lambda]``, i.e. ``N^d`` in the square case.
    N : optional
        Recorded in the result for reporting.
    """
    index = int(index)
    if index <= 0:
        raise ValueError("index must be positive")
    pts = []
    for e in fN.support:
        r = tuple(Fraction(a, index) for a in e)
        pts.append((r, log_abs_int(fN.coeff(e)) / index))
    return ScaledLogCoeffs(pts, N, index)
