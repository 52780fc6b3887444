"""Ronkin functions, Mahler measures, tropicalizations and amoeba scans.

The Ronkin function of ``f`` is the mean of ``log|f|`` over the torus with
log-radii ``u``::

    R_f(u) = int_{[0,1]^d} log|f(e^{u_1} e^{2 pi i s_1}, ...)| ds

Evaluation routes
-----------------
``d1-roots``
    Jensen's formula over the roots, ``d = 1`` only.
``fiber-jensen``
    ``d = 2``: Jensen's formula in the last variable on every fiber, then
    adaptive Gauss-Legendre quadrature over the first angle, split at the
    angles where a fiber root crosses the circle of radius ``e^v``.
``monte-carlo``
    Sample mean over random torus points (non-rigorous cross-check).
``certified-trop``
    ``N^{-d} trop(f<N>)(u)`` with the a-priori radius ``max(a_N, b_N)``.
"""

import math
from typing import NamedTuple

import numpy as np
from scipy import ndimage, optimize

from .decimate import decimate
from .errors import BudgetError, DimensionError, NumericError
from .poly import LaurentPoly, coeff_stats, log_abs_int, newton_polytope

__all__ = [
    "CertifiedValue", "AmoebaRaster", "MahlerBracket", "ronkin",
    "ronkin_gradient", "mahler_measure", "tropicalization",
    "decimation_limit", "lopsided", "amoeba_scan", "mahler_bracket",
    "certified_radius", "error_terms",
]

_EPS = np.finfo(float).eps


class CertifiedValue(NamedTuple):
    """A value with an error radius.

    ``rigorous`` is True only for the certified tropical route; the other
    routes report an estimated error (a 2-sigma band for Monte Carlo).
    """
    value: float
    radius: float
    method: str
    rigorous: bool = False
    N: int = 0

    @property
    def interval(self):
        return (self.value - self.radius, self.value + self.radius)

    def contains(self, x):
        lo, hi = self.interval
        return lo <= x <= hi


# ---------------------------------------------------------------------------
# tropical bounds

def error_terms(d, B, N):
    """The pair ``(a_N, b_N) = (d B log 2 / N, d log(N^d B) / N^d)``."""
    a = d * B * math.log(2.0) / N
    b = d * math.log(N ** d * B) / N ** d
    return a, b


def certified_radius(d, B, N):
    return max(error_terms(d, B, N))


def _box_side(f):
    bounds = f.degree_bounds()
    return max(hi - lo for lo, hi in bounds) + 1


def tropicalization(g, u):
    """``max_k <u, k> + log|g_k|`` for a point ``u`` or rows of ``u``."""
    if g.is_zero():
        raise ValueError("zero polynomial has no tropicalization")
    E = g.exponent_array().astype(float)
    L = np.array([log_abs_int(g.coeff(tuple(e))) for e in g.support])
    U = np.asarray(u, dtype=float)
    out = (U.reshape(-1, g.dim) @ E.T + L).max(axis=1)
    return float(out[0]) if U.ndim <= 1 else out


# ---------------------------------------------------------------------------
# d = 1

def _univariate_factors(f):
    """Return ``(m_low, lead, [(roots, multiplicity), ...])`` for ``d = 1``.

    The squarefree decomposition is exact (sympy); roots of each squarefree
    factor are companion-matrix eigenvalues.
    """
    import sympy

    (lo, hi), = f.degree_bounds()
    coeffs = [f.coeff((k,)) for k in range(hi, lo - 1, -1)]
    x = sympy.Symbol("x")
    p = sympy.Poly(coeffs, x, domain="ZZ")
    lead, factors = sympy.sqf_list(p)
    out = []
    for q, mult in factors:
        c = [int(a) for a in q.all_coeffs()]
        if len(c) == 1:
            lead = lead * c[0] ** mult
            continue
        lead = lead * c[0] ** mult
        out.append((np.roots(np.array(c, dtype=float)), mult,
                    np.array(c, dtype=float)))
    return lo, int(lead), out


def _ronkin_d1(f, u):
    m_low, lead, factors = _univariate_factors(f)
    val = log_abs_int(lead) + m_low * u
    rad = 0.0
    for roots, mult, c in factors:
        # Newton step as a posteriori root error estimate
        dc = np.polyder(c)
        p = np.polyval(c, roots)
        dp = np.polyval(dc, roots)
        with np.errstate(divide="ignore", invalid="ignore"):
            delta = np.abs(p / dp)
        delta = np.where(np.isfinite(delta), delta, 1e-8)
        logs = np.log(np.abs(roots))
        val += mult * float(np.sum(np.maximum(u, logs)))
        rad += mult * float(np.sum(delta / np.abs(roots)))
    rad += 8 * _EPS * (1 + abs(val))
    return val, rad


def _d1_breakpoints(f):
    _, _, factors = _univariate_factors(f)
    pts = []
    for roots, _, _ in factors:
        pts.extend(np.log(np.abs(roots)).tolist())
    return sorted(pts)


# ---------------------------------------------------------------------------
# d = 2 fiber Jensen

class _Fiber:
    """``f = y^k_lo * sum_j a_j(x) y^j`` prepared for batched evaluation."""

    def __init__(self, f):
        self.f = f
        ys = [e[1] for e in f.support]
        self.k_lo = min(ys)
        self.n = max(ys) - self.k_lo
        xs = sorted({e[0] for e in f.support})
        self.xexp = np.array(xs, dtype=float)
        C = np.zeros((len(xs), self.n + 1))
        for (a, b), c in f.items():
            C[xs.index(a), b - self.k_lo] = float(c)
        self.C = C

    def coeffs(self, s, u):
        s = np.asarray(s, dtype=float)
        X = np.exp(self.xexp * u) * np.exp(2j * np.pi * np.outer(s, self.xexp))
        return X @ self.C  # (S, n+1), column j is a_j

    def _roots(self, A):
        """Roots of monic-normalized polynomials, rows of coefficients low->high."""
        n = A.shape[1] - 1
        if n == 1:
            return (-A[:, 0] / A[:, 1])[:, None]
        S = A.shape[0]
        M = np.zeros((S, n, n), dtype=complex)
        M[:, 1:, :-1] = np.eye(n - 1)
        M[:, :, -1] = -A[:, :-1] / A[:, -1:]
        return np.linalg.eigvals(M)

    def evaluate(self, s, u, v, want_count=False):
        """Jensen integrand over the ``y``-circle for each angle ``s``."""
        A = self.coeffs(s, u)
        n = self.n
        base = self.k_lo * v
        if n == 0:
            with np.errstate(divide="ignore"):
                val = np.log(np.abs(A[:, 0])) + base
            cnt = np.zeros(len(A))
            return (val, cnt) if want_count else val
        top = np.abs(A[:, n]) >= np.abs(A[:, 0])
        val = np.empty(len(A))
        cnt = np.empty(len(A))
        if top.any():
            At = A[top]
            rho = self._roots(At)
            with np.errstate(divide="ignore"):
                lr = np.log(np.abs(rho))
            val[top] = (np.log(np.abs(At[:, n])) +
                        np.sum(np.maximum(v, lr), axis=1))
            cnt[top] = np.sum(lr < v, axis=1)
        bot = ~top
        if bot.any():
            Ab = A[bot][:, ::-1]
            if np.any(Ab[:, -1] == 0):
                Ab = Ab + (Ab[:, -1:] == 0) * 1e-300
            sigma = self._roots(Ab)
            with np.errstate(divide="ignore"):
                ls = np.log(np.abs(sigma))
            val[bot] = (np.log(np.abs(Ab[:, -1])) +
                        np.sum(np.maximum(0.0, v + ls), axis=1))
            cnt[bot] = np.sum(ls > -v, axis=1)
        val += base
        return (val, cnt) if want_count else val

    def count(self, s, u, v):
        return self.evaluate(s, u, v, want_count=True)[1]


def _kinks(fib, u, v, samples=512, iters=55):
    """Angles in [0, 1) where the number of fiber roots inside ``e^v`` jumps."""
    s = np.arange(samples + 1) / samples
    cnt = fib.count(s, u, v)
    idx = np.nonzero(cnt[1:] != cnt[:-1])[0]
    if len(idx) == 0:
        return np.array([])
    lo, hi = s[idx].copy(), s[idx + 1].copy()
    clo = cnt[idx]
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        cm = fib.count(mid, u, v)
        same = cm == clo
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


_GL_CACHE = {}


def _gl(n):
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def _pairwise_sum(x):
    # numpy's add.reduce is pairwise for contiguous arrays
    return float(np.add.reduce(np.ascontiguousarray(x, dtype=float)))


def adaptive_gauss(func, breaks, tol, order=20, max_nodes=2 ** 20):
    """Integrate a vectorized ``func`` over ``[breaks[0], breaks[-1]]``.

    Globally adaptive: each interval carries the estimate
    ``|whole - two halves|``, and every interval whose estimate exceeds
    the fair share ``tol / n_intervals`` is bisected until the estimates
    sum to at most ``tol``. Endpoint log singularities converge since the
    share does not shrink with the interval length.

    Returns
    -------
    value, error_estimate : float
    """
    x, w = _gl(order)
    total = breaks[-1] - breaks[0]
    tiny = 1e-15 * max(total, 1.0)

    def rules(a, b):
        m = 0.5 * (a + b)
        ends = [(a, b), (a, m), (m, b)]
        nodes = np.concatenate([
            (0.5 * (hi - lo))[:, None] * x + (0.5 * (hi + lo))[:, None]
            for lo, hi in ends]).reshape(-1)
        vals = func(nodes).reshape(3, len(a), order)
        ints = [(0.5 * (hi - lo)) * (vals[i] @ w)
                for i, (lo, hi) in enumerate(ends)]
        halves = ints[1] + ints[2]
        return halves, np.abs(ints[0] - halves)

    a = np.array([lo for lo, hi in zip(breaks[:-1], breaks[1:]) if hi > lo])
    b = np.array([hi for lo, hi in zip(breaks[:-1], breaks[1:]) if hi > lo])
    if not len(a):
        return 0.0, 0.0
    val, err = rules(a, b)
    used = 3 * order * len(a)
    while True:
        total_err = _pairwise_sum(err)
        if not total_err > tol:  # also stops on nan
            break
        split = (err > tol / len(err)) & ((b - a) > tiny)
        if not split.any():
            break
        used += 6 * order * int(split.sum())
        if used > max_nodes:
            raise NumericError(
                f"quadrature did not reach tolerance {tol:g} within "
                f"{max_nodes} nodes")
        sa, sb = a[split], b[split]
        sm = 0.5 * (sa + sb)
        ca, cb = np.concatenate([sa, sm]), np.concatenate([sm, sb])
        cv, ce = rules(ca, cb)
        keep = ~split
        a = np.concatenate([a[keep], ca])
        b = np.concatenate([b[keep], cb])
        val = np.concatenate([val[keep], cv])
        err = np.concatenate([err[keep], ce])
    return _pairwise_sum(val), _pairwise_sum(err)


def _ronkin_fiber(f, u, tol):
    fib = _Fiber(f)
    u0, v0 = float(u[0]), float(u[1])
    ks = _kinks(fib, u0, v0)
    breaks = np.concatenate([[0.0], np.sort(ks), [1.0]])
    val, err = adaptive_gauss(lambda s: fib.evaluate(s, u0, v0), breaks,
                              tol)
    if not math.isfinite(val):
        raise NumericError("integrand is not finite on the torus")
    return val, err + 64 * _EPS * (1 + abs(val))


def _fiber_slope(f, u):
    """``dR/dv`` from the exact kink decomposition of the root count."""
    fib = _Fiber(f)
    u0, v0 = float(u[0]), float(u[1])
    ks = np.sort(_kinks(fib, u0, v0))
    breaks = np.concatenate([[0.0], ks, [1.0]])
    mids = 0.5 * (breaks[1:] + breaks[:-1])
    cnt = fib.count(mids, u0, v0)
    return fib.k_lo + float(np.sum(cnt * np.diff(breaks)))


def _swap(f):
    return f.map_exponents(lambda e: (e[1], e[0]))


def ronkin_gradient(f, u):
    """Gradient of ``R_f`` at ``u`` for ``d <= 2`` (one-sided where kinked)."""
    u = np.asarray(u, dtype=float).reshape(-1)
    if f.dim == 1:
        m_low, _, factors = _univariate_factors(f)
        g = m_low
        for roots, mult, _ in factors:
            g += mult * int(np.sum(np.log(np.abs(roots)) < u[0]))
        return np.array([float(g)])
    if f.dim != 2:
        raise DimensionError("gradient is implemented for d <= 2")
    gv = _fiber_slope(f, u)
    gu = _fiber_slope(_swap(f), u[::-1])
    return np.array([gu, gv])


def _monte_carlo(f, u, samples, seed):
    rng = np.random.default_rng(seed)
    s = rng.random((samples, f.dim))
    with np.errstate(divide="ignore"):
        vals = np.log(np.abs(_torus_values(f, u, s)))
    vals = vals[np.isfinite(vals)]
    mean = _pairwise_sum(vals) / len(vals)
    sd = float(np.std(vals))
    return mean, 2 * sd / math.sqrt(len(vals))


def _torus_values(f, u, s):
    E = f.exponent_array().astype(float)
    C = np.array([float(f.coeff(tuple(e))) for e in f.support])
    return np.exp(E @ u + 2j * np.pi * (s @ E.T)) @ C


def _certified(f, u, tol, N, budget):
    d = f.dim
    lo = [a for a, _ in f.degree_bounds()]
    g = f.shift(tuple(-a for a in lo))
    B = _box_side(g)
    if N is None:
        N = 2
        while certified_radius(d, B, N) > tol:
            N *= 2
            if N > 2 ** 20:
                raise BudgetError("tolerance unreachable for certified route")
    fN = decimate(g, N, budget=budget)
    shift = float(np.dot(lo, u))
    val = tropicalization(fN, u) / N ** d + shift
    rad = certified_radius(d, B, N)
    # float slack: log of big integers and the max/sum in double precision
    slack = 16 * _EPS * (1 + abs(val) + float(np.sum(np.abs(u))) * B)
    return CertifiedValue(float(val), float(rad + slack), "certified-trop",
                          True, N)


def ronkin(f, u, method="auto", tol=1e-8, N=None, samples=200_000, seed=0,
           budget=None):
    """Ronkin function ``R_f(u)`` with an error radius.

    Parameters
    ----------
    f : LaurentPoly
    u : array_like
        Log-radii, length ``f.dim``.
    method : {"auto", "d1-roots", "fiber-jensen", "monte-carlo", "certified-trop"}
        ``auto`` picks d1-roots for ``d = 1``, fiber-jensen for ``d = 2``
        and monte-carlo otherwise.
    tol : float
        Target absolute accuracy (quadrature) or radius (certified route).
    N : int, optional
        Force the decimation order of the certified route.
    samples, seed : int
        Monte Carlo controls.

    Returns
    -------
    CertifiedValue
    """
    if f.is_zero():
        raise ValueError("Ronkin function of the zero polynomial")
    u = np.asarray(u, dtype=float).reshape(-1)
    if len(u) != f.dim:
        raise DimensionError("u has the wrong dimension")
    if method == "auto":
        method = {1: "d1-roots", 2: "fiber-jensen"}.get(f.dim, "monte-carlo")
    if len(f) == 1:
        (e, c), = f.items()
        return CertifiedValue(log_abs_int(c) + float(np.dot(e, u)), 0.0,
                              method, True)
    if method == "d1-roots":
        if f.dim != 1:
            raise DimensionError("d1-roots needs d = 1")
        val, rad = _ronkin_d1(f, float(u[0]))
        return CertifiedValue(float(val), float(rad), method)
    if method == "fiber-jensen":
        if f.dim != 2:
            raise DimensionError("fiber-jensen needs d = 2")
        val, rad = _ronkin_fiber(f, u, tol)
        return CertifiedValue(float(val), float(rad), method)
    if method == "monte-carlo":
        val, rad = _monte_carlo(f, u, samples, seed)
        return CertifiedValue(float(val), float(rad), method)
    if method == "certified-trop":
        return _certified(f, u, tol, N, budget)
    raise ValueError(f"unknown method {method!r}")


def mahler_measure(f, tol=1e-8, method="auto", **kw):
    """Logarithmic Mahler measure ``m(f) = R_f(0)``."""
    return ronkin(f, np.zeros(f.dim), method=method, tol=tol, **kw)


# ---------------------------------------------------------------------------
# Legendre dual of the Ronkin function

def _face_reduce(f, r):
    """If ``r`` lies on a proper face of ``N_f``, restrict and re-embed.

    Returns ``(g, t)`` with ``g`` univariate and ``t`` the coordinate of
    ``r`` along the edge, ``("vertex", value)`` for a vertex, or ``None``.
    """
    P = newton_polytope(f)
    r = np.asarray(r, dtype=float)
    for v in P.vertices:
        if np.allclose(r, v, atol=1e-12):
            return ("vertex", log_abs_int(f.coeff(v)))
    if f.dim != 2 or not P.facets:
        return None
    for n, b in P.facets:
        if abs(np.dot(n, r) - b) <= 1e-12:
            edge = [e for e in f.support if abs(np.dot(n, e) - b) <= 1e-9]
            base = np.array(min(edge))
            far = np.array(max(edge)) - base
            w = far // math.gcd(int(far[0]), int(far[1]))
            terms = {}
            for e in edge:
                k = int(round(np.dot(np.array(e) - base, w) / np.dot(w, w)))
                terms[(k,)] = f.coeff(e)
            h = LaurentPoly(1, terms)
            t = float(np.dot(r - base, w) / np.dot(w, w))
            return (h, t)
    return None


def decimation_limit(f, r, tol=1e-6, eps=1e-3, umax=30.0):
    """Limit ``D_f(r) = inf_u { R_f(u) - <r, u> }``.

    Vertices of ``N_f`` return ``log|coeff|``; points on an edge (d = 2)
    are evaluated through the edge polynomial; points off ``N_f`` return
    ``-inf``. In the interior the convex objective is minimized over the
    box ``|u_i| <= umax`` with exact gradients.
    """
    r = np.asarray([float(a) for a in np.atleast_1d(r)])
    if len(r) != f.dim:
        raise DimensionError("r has the wrong dimension")
    P = newton_polytope(f)
    if not P.contains(r, tol=1e-12):
        return -math.inf
    red = _face_reduce(f, r)
    if red is not None:
        if red[0] == "vertex":
            return red[1]
        h, t = red
        return decimation_limit(h, [t], tol, eps, umax)
    if f.dim == 1:
        best = math.inf
        for b in _d1_breakpoints(f):
            val, _ = _ronkin_d1(f, b)
            best = min(best, val - r[0] * b)
        return best
    if f.dim != 2:
        raise DimensionError("decimation_limit is implemented for d <= 2")
    rt = tol / 4

    def obj(uu):
        return ronkin(f, uu, tol=rt).value - float(np.dot(r, uu))

    def jac(uu):
        return ronkin_gradient(f, uu) - r

    res = optimize.minimize(obj, np.zeros(2), jac=jac, method="L-BFGS-B",
                            bounds=[(-umax, umax)] * 2,
                            options={"ftol": 1e-15, "gtol": 1e-10,
                                     "maxiter": 500})
    refine = optimize.minimize(obj, res.x, method="Powell",
                               bounds=[(-umax, umax)] * 2,
                               options={"xtol": 1e-7, "ftol": 1e-13})
    best = min(res.fun, refine.fun)
    x = refine.x if refine.fun <= res.fun else res.x
    if np.any(np.abs(x) >= umax - 1e-6):
        raise NumericError(
            "minimizer reached the search box; r is too close to the boundary")
    return float(best)


# ---------------------------------------------------------------------------
# lopsidedness and amoebas

def _log_terms(f):
    E = f.exponent_array().astype(float)
    L = np.array([log_abs_int(f.coeff(tuple(e))) for e in f.support])
    return E, L


def _lopsided_rows(T):
    m = T.max(axis=1, keepdims=True)
    rest = np.sum(np.exp(T - m), axis=1) - 1.0
    return rest < 1.0 - 1e-12


def lopsided(f, u):
    """Does one term of ``e^u . f`` beat the sum of all the others?"""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if len(f) == 1:
        return True
    E, L = _log_terms(f)
    T = (np.asarray(u, dtype=float).reshape(1, -1) @ E.T) + L
    return bool(_lopsided_rows(T)[0])


class AmoebaRaster(NamedTuple):
    """Grid certificate for the amoeba complement.

    ``outside[i, j]`` is True when ``e^u . f<N>`` is lopsided at
    ``u = (us[j], vs[i])`` (rows run over the second coordinate).
    """
    box: tuple
    resolution: int
    N: int
    us: np.ndarray
    vs: np.ndarray
    outside: np.ndarray
    labels: np.ndarray
    n_components: int

    def label_at(self, u):
        j = int(np.argmin(np.abs(self.us - u[0])))
        i = int(np.argmin(np.abs(self.vs - u[1])))
        return int(self.labels[i, j])


def amoeba_scan(f, box=(-2.0, 2.0, -2.0, 2.0), resolution=81, N=8,
                budget=None):
    """Lopsidedness raster of ``f<N>`` over ``box = (u0, u1, v0, v1)``.

    Connected certified regions are labelled with 4-connectivity.
    """
    if f.dim != 2:
        raise DimensionError("amoeba rasters need d = 2")
    fN = decimate(f, N, budget=budget) if N > 1 else f
    E, L = _log_terms(fN)
    us = np.linspace(box[0], box[1], resolution)
    vs = np.linspace(box[2], box[3], resolution)
    UU, VV = np.meshgrid(us, vs)
    pts = np.column_stack([UU.ravel(), VV.ravel()])
    out = np.empty(len(pts), dtype=bool)
    step = 4096
    for i in range(0, len(pts), step):
        T = pts[i:i + step] @ E.T + L
        out[i:i + step] = _lopsided_rows(T)
    outside = out.reshape(resolution, resolution)
    labels, n = ndimage.label(outside)
    return AmoebaRaster(tuple(box), resolution, N, us, vs, outside, labels,
                        int(n))


# ---------------------------------------------------------------------------
# Mahler inequality

class MahlerBracket(NamedTuple):
    lower: float
    upper: float
    M_estimate: float
    C: int
    height: int


def mahler_bracket(g, tol=1e-8):
    """Bounds ``2^{-dC} H <= M(g) <= C^d H`` and a quadrature value of ``M``.

    ``C`` is the side of the smallest box ``[0, C-1]^d`` containing a
    translate of ``supp g``.
    """
    if g.is_zero():
        raise ValueError("zero polynomial")
    d = g.dim
    C = _box_side(g)
    H = coeff_stats(g).height
    M = math.exp(mahler_measure(g, tol=tol).value)
    return MahlerBracket(2.0 ** (-d * C) * H, float(C ** d * H), M, C, H)
