"""Closed forms used as independent oracles.

For ``f = 1 + x + y`` the decimation limit on the unit simplex has a series
representation in terms of ``b(r, s) = sin(pi s) / sin(pi (r + s))``; its
maximum is the Mahler measure ``(3 sqrt 3 / 4 pi) L(2, chi_3)``. For the
golden-mean polynomial ``x^2 - x - 1`` the limit is a tent with peak
``log lambda``.
"""

import math
from typing import NamedTuple

import numpy as np

__all__ = [
    "SimplexPoint", "classify", "b_of", "decimation_limit_1xy",
    "series_tail_bound", "golden_limit", "golden_ronkin", "angle_gradient",
    "smyth_constant", "smyth_tail_bound", "GOLDEN",
]

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

DEFAULT_TERMS = 100_000
SEAM_TERMS = 10_000_000
_SEAM_WIDTH = 1e-3


class SimplexPoint(NamedTuple):
    """Symmetrized point (``s <= r``) and the region containing it."""
    r: float
    s: float
    region: str  # "delta1", "delta2" or "boundary"


def classify(r, s):
    """Symmetrize ``(r, s)`` and report which series applies."""
    r, s = float(r), float(s)
    if s > r:
        r, s = s, r
    if s <= 0 or r + s >= 1:
        return SimplexPoint(r, s, "boundary")
    seam = (1.0 - r) / 2.0
    if s == seam:
        region = "delta1"  # both apply; b = 1
    else:
        region = "delta1" if s < seam else "delta2"
    return SimplexPoint(r, s, region)


def b_of(r, s):
    """``sin(pi s) / sin(pi (r + s))``; requires ``r, s >= 0`` and ``r + s < 1``."""
    r, s = float(r), float(s)
    if r < 0 or s < 0 or r + s >= 1 or r + s <= 0:
        raise ValueError("b(r, s) needs 0 < r + s < 1 with r, s >= 0")
    return math.sin(math.pi * s) / math.sin(math.pi * (r + s))


def _series(x, r, terms):
    n = np.arange(1, terms + 1, dtype=float)
    signs = np.where(n % 2 == 1, 1.0, -1.0)
    with np.errstate(under="ignore"):
        powers = np.exp(n * math.log(x)) if x > 0 else np.zeros_like(n)
    t = signs * powers * np.sin(n * math.pi * (1.0 - r)) / (math.pi * n * n)
    return math.fsum(t.tolist())


def series_tail_bound(r, s, terms):
    """Bound on the truncation error of :func:`decimation_limit_1xy`.

    Geometric envelope ``x^{T+1} / (pi (T+1)^2 (1 - x))`` with
    ``x = min(b, 1/b)``, capped by the crude ``1 / (pi T)``.
    """
    p = classify(r, s)
    b = b_of(p.r, p.s)
    x = min(b, 1.0 / b) if b > 0 else 0.0
    crude = 1.0 / (math.pi * terms)
    if x >= 1.0:
        return crude
    T = terms + 1
    geo = math.exp(T * math.log(x)) / (math.pi * T * T * (1.0 - x)) if x > 0 else 0.0
    return min(crude, geo)


def decimation_limit_1xy(r, s, terms=None, region=None):
    """Series value of the decimation limit of ``1 + x + y`` at ``(r, s)``.

    Parameters
    ----------
    r, s : float
        Interior point of the unit simplex.
    terms : int, optional
        Series length. By default ``1e5`` terms, or ``1e7`` when
        ``b`` is within ``1e-3`` of 1 where convergence is slow.
    region : {"delta1", "delta2"}, optional
        Force one of the two series (useful on the seam ``b = 1``).

    Raises
    ------
    ValueError
        On the boundary of the simplex, or if the forced series diverges.
    """
    p = classify(r, s)
    if p.region == "boundary":
        raise ValueError("boundary point; use the face values instead")
    b = b_of(p.r, p.s)
    if terms is None:
        terms = SEAM_TERMS if abs(b - 1.0) < _SEAM_WIDTH else DEFAULT_TERMS
    terms = int(terms)
    if terms < 1:
        raise ValueError("terms must be positive")
    region = region or p.region
    x = b if region == "delta1" else 1.0 / b
    if x > 1.0 + 1e-12:
        raise ValueError(f"the {region} series diverges at this point")
    if region == "delta1":
        return _series(b, p.r, terms) - p.s * math.log(b)
    return _series(1.0 / b, p.r, terms) + (1.0 - p.r - p.s) * math.log(b)


def golden_limit(r):
    """Tent ``min(r, 2 - r) log(lambda)`` on ``[0, 2]``, ``-inf`` outside."""
    r = float(r)
    if r < 0 or r > 2:
        return -math.inf
    return min(r, 2.0 - r) * math.log(GOLDEN)


def golden_ronkin(u):
    """Ronkin function of ``x^2 - x - 1``: ``2u + log+(e^-u lam) + log+(e^-u |mu|)``."""
    u = float(u)
    mu = 1.0 / GOLDEN
    return (2 * u + max(0.0, math.log(GOLDEN) - u) +
            max(0.0, math.log(mu) - u))


def angle_gradient(u, v):
    """Angles ``(r, s)`` (in units of pi) of the triangle with sides 1, e^u, e^v.

    ``pi r`` is opposite ``e^u`` and ``pi s`` is opposite ``e^v``.

    Raises
    ------
    ValueError
        If the sides violate the strict triangle inequality, i.e. ``(u, v)``
        is not an interior point of the amoeba of ``1 + x + y``.
    """
    a, b = math.exp(u), math.exp(v)
    if not (a < 1 + b and b < 1 + a and 1 < a + b):
        raise ValueError("(u, v) is not inside the amoeba of 1 + x + y")
    r = math.acos((1 + b * b - a * a) / (2 * b)) / math.pi
    s = math.acos((1 + a * a - b * b) / (2 * a)) / math.pi
    return r, s


def _chi3(n):
    m = n % 3
    return np.where(m == 0, 0.0, np.where(m == 1, 1.0, -1.0))


def smyth_constant(terms=1_000_000):
    """``(3 sqrt 3 / 4 pi) sum_{n <= terms} chi_3(n) / n^2``."""
    terms = int(terms)
    if terms < 1:
        raise ValueError("terms must be positive")
    n = np.arange(1, terms + 1, dtype=float)
    total = math.fsum((_chi3(np.arange(1, terms + 1)) / (n * n)).tolist())
    return 3 * math.sqrt(3) / (4 * math.pi) * total


def smyth_tail_bound(terms):
    """Abel-summation bound on the omitted tail (partial sums of chi_3 are 0 or 1)."""
    return 3 * math.sqrt(3) / (4 * math.pi) * 2.0 / (terms + 1) ** 2
