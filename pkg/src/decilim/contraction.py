"""Contractions ``f<N> = g_N^{e_N}``, support lattices and degeneracy.

``e_N`` is found by exact perfect-power extraction from ``f<N>``: a random
univariate restriction proposes a candidate exponent (gcd of squarefree
multiplicities), and an exact ``e``-th root is then built term by term and
verified by re-expansion.
"""

import math
import random
from typing import NamedTuple

import numpy as np
from scipy.optimize import linprog

from .decimate import _bareiss_det, decimate
from .errors import DimensionError
from .poly import (LaurentPoly, adjust, coeff_stats, exact_div, inflate,
                   log_abs_int, rescale_down)

__all__ = [
    "smith_normal_form", "IntegerLattice", "ContractionResult",
    "DegeneracyReport", "support_group", "stabilizer_order",
    "perfect_power_split", "contract", "degenerate_ratios",
    "asymptotic_length", "cyclotomic", "integer_root",
]


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(A):
    """Smith normal form ``U A V = D`` of an integer matrix.

    Parameters
    ----------
    A : sequence of sequences of int, shape (m, n)

    Returns
    -------
    D, U, V : list of lists of int
        ``D`` is diagonal with nonnegative entries, each dividing the next;
        ``U`` and ``V`` are unimodular.
    """
    D = [[int(a) for a in row] for row in A]
    m = len(D)
    n = len(D[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    def add_row(M, src, dst, q):  # row dst -= q * row src
        M[dst] = [a - q * b for a, b in zip(M[dst], M[src])]

    def add_col(M, src, dst, q):  # col dst -= q * col src
        for row in M:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        # pick smallest nonzero entry in the trailing block as pivot
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or
                                    abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return D, U, V
            i, j = best
            swap_rows(D, t, i)
            swap_rows(U, t, i)
            swap_cols(D, t, j)
            swap_cols(V, t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    add_row(D, t, i, q)
                    add_row(U, t, i, q)
                if D[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    add_col(D, t, j, q)
                    add_col(V, t, j, q)
                if D[t][j]:
                    dirty = True
            if dirty:
                continue
            # divisibility of the trailing block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(D, bad, t, -1)
            add_row(U, bad, t, -1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return D, U, V


class IntegerLattice:
    """Subgroup of ``Z^d`` spanned by the columns of ``generators``.

    Attributes
    ----------
    dim : int
    generators : list of tuple
    invariants : list of int
        Nonzero Smith invariants, each dividing the next.
    rank : int
    index : int or float
        ``[Z^d : Gamma]``; ``math.inf`` when the rank is below ``dim``.
    """

    def __init__(self, dim, generators):
        self.dim = int(dim)
        self.generators = [tuple(int(a) for a in g) for g in generators]
        if any(len(g) != self.dim for g in self.generators):
            raise DimensionError("generator has the wrong length")
        if self.generators:
            cols = [[g[i] for g in self.generators] for i in range(self.dim)]
            D, _, _ = smith_normal_form(cols)
            inv = [D[i][i] for i in range(min(len(D), len(D[0])))]
        else:
            inv = []
        self.invariants = [a for a in inv if a]
        self.rank = len(self.invariants)
        self.index = math.prod(self.invariants) if self.rank == self.dim \
            else math.inf

    @property
    def full(self):
        return self.index == 1

    def __repr__(self):
        return (f"IntegerLattice(dim={self.dim}, invariants="
                f"{self.invariants}, index={self.index})")


def support_group(f):
    """Lattice generated by the support of the adjusted ``f``."""
    if f.is_zero():
        raise ValueError("zero polynomial has no support group")
    g = adjust(f).poly
    gens = [e for e in g.support if any(e)]
    return IntegerLattice(f.dim, gens)


def stabilizer_order(gamma, N):
    """``|Z^d / (Gamma + N Z^d)|`` from the Smith form of ``[G | N I]``."""
    N = int(N)
    if N < 1:
        raise ValueError("N must be positive")
    d = gamma.dim
    cols = list(gamma.generators) + [
        tuple(N * int(i == j) for i in range(d)) for j in range(d)]
    M = [[c[i] for c in cols] for i in range(d)]
    D, _, _ = smith_normal_form(M)
    return math.prod(D[i][i] for i in range(d))


# ---------------------------------------------------------------------------
# perfect powers

def integer_root(c, e):
    """Exact integer ``e``-th root of ``c`` or ``None``."""
    from sympy import integer_nthroot

    if c < 0:
        if e % 2 == 0:
            return None
        r = integer_root(-c, e)
        return -r if r is not None else None
    r, exact = integer_nthroot(c, e)
    return int(r) if exact else None


def _restrict_univariate(F, w):
    vals = {}
    for e, c in F.items():
        k = sum(a * b for a, b in zip(w, e))
        if k in vals:
            return None
        vals[k] = c
    lo = min(vals)
    return LaurentPoly(1, {(k - lo,): c for k, c in vals.items()})


def _candidate_exponent(F, rng, tries=5):
    if F.dim == 1:
        Fbar = F
    else:
        Fbar = None
        for _ in range(tries):
            w = [rng.randint(1, 7) for _ in range(F.dim)]
            Fbar = _restrict_univariate(F, w)
            if Fbar is not None:
                break
        if Fbar is None:
            # Kronecker weights are always injective on the support
            span = [hi - lo + 1 for lo, hi in F.degree_bounds()]
            w, acc = [], 1
            for s in span:
                w.append(acc)
                acc *= s
            Fbar = _restrict_univariate(F, w)
    import sympy

    (lo, hi), = Fbar.degree_bounds()
    x = sympy.Symbol("x")
    p = sympy.Poly([Fbar.coeff((k,)) for k in range(hi, lo - 1, -1)], x,
                   domain="ZZ")
    cont, factors = sympy.sqf_list(p)
    g = 0
    for q, mult in factors:
        if q.degree() > 0:
            g = math.gcd(g, mult)
    return g


def _positive_weight(F):
    """Integer ``w`` with ``<w, k> > 0`` for every nonzero ``k`` in ``supp F``."""
    K = [e for e in F.support if any(e)]
    if not K:
        return (1,) * F.dim
    A = -np.array(K, dtype=float)
    res = linprog(np.zeros(F.dim), A_ub=A, b_ub=-np.ones(len(K)),
                  bounds=[(-1e6, 1e6)] * F.dim, method="highs")
    if res.status != 0:
        raise ValueError("0 is not a vertex of the Newton polytope")
    for scale in (1, 2, 4, 8, 16, 64, 256):
        w = tuple(int(round(a * scale)) for a in res.x)
        if all(sum(a * b for a, b in zip(w, k)) > 0 for k in K):
            return w
    w = tuple(math.ceil(a * 1024) for a in res.x)
    return w


def _try_root(F, e):
    """Exact ``e``-th root of ``F`` (constant term > 0) or ``None``."""
    f0 = F.coeff((0,) * F.dim)
    g0 = integer_root(f0, e)
    if g0 is None or g0 == 0:
        return None
    w = _positive_weight(F)
    top = max(sum(a * b for a, b in zip(w, k)) for k in F.support)
    bounds = F.degree_bounds()
    # coordinate box of N_F / e
    ranges = [range(math.ceil(lo / e), math.floor(hi / e) + 1)
              for lo, hi in bounds]
    cand = []
    for m in _product(ranges):
        wm = sum(a * b for a, b in zip(w, m))
        if 0 < wm * e <= top:
            cand.append((wm, m))
    cand.sort()
    fterms = F.terms
    g = {(0,) * F.dim: g0}
    denom_base = e * f0
    for wm, m in cand:
        num = 0
        for a, ga in g.items():
            b = tuple(x - y for x, y in zip(m, a))
            fb = fterms.get(b)
            if fb is not None:
                num += ga * fb * sum(p * q for p, q in zip(w, b))
        for a, fa in fterms.items():
            b = tuple(x - y for x, y in zip(m, a))
            if b == m:
                continue
            gb = g.get(b)
            if gb is not None:
                num -= e * fa * gb * sum(p * q for p, q in zip(w, b))
        den = denom_base * wm
        q, r = divmod(num, den)
        if r:
            return None
        if q:
            g[m] = q
    G = LaurentPoly(F.dim, g)
    return G if G ** e == F else None


def _product(ranges):
    if not ranges:
        yield ()
        return
    for a in ranges[0]:
        for rest in _product(ranges[1:]):
            yield (a,) + rest


def _divisors_desc(n):
    return sorted((k for k in range(1, n + 1) if n % k == 0), reverse=True)


def perfect_power_split(F, seed=0):
    """Largest ``e`` with ``F = G^e``, ``G`` integral.

    ``F`` is adjusted internally (lex-minimal vertex moved to 0, constant
    term made positive); ``G`` is returned in the same normal form.

    Returns
    -------
    G : LaurentPoly
    e : int
    """
    if F.is_zero():
        raise ValueError("zero polynomial")
    F = adjust(F).poly
    if len(F) == 1:
        c = F.coeff((0,) * F.dim)
        for e in range(max(1, c.bit_length()), 1, -1):
            r = integer_root(c, e)
            if r is not None:
                return LaurentPoly.constant(r, F.dim), e
        return F, 1
    rng = random.Random(seed)
    E = _candidate_exponent(F, rng)
    # work in the coarsest coordinate lattice containing supp F
    steps = []
    for i in range(F.dim):
        s = 0
        for k in F.support:
            s = math.gcd(s, k[i])
        steps.append(max(s, 1))
    R = rescale_down(F, tuple(steps))
    for e in _divisors_desc(E):
        if e == 1:
            break
        G = _try_root(R, e)
        if G is not None:
            return inflate(G, tuple(steps)), e
    return F, 1


class ContractionResult(NamedTuple):
    """``f<N> = sign * x^shift * gN^eN``.

    ``gN`` has 0 as a vertex of its Newton polytope and a positive leading
    (grlex-largest) coefficient.
    """
    gN: LaurentPoly
    eN: int
    shift: tuple
    sign: int
    fN: LaurentPoly
    method_note: str = "power-extraction"


def contract(f, N, seed=0, budget=None):
    """Contraction generator ``g_N`` and multiplicity ``e_N`` of ``f``."""
    fN = decimate(f, N, budget=budget)
    adj = adjust(fN)
    G, e = perfect_power_split(adj.poly, seed=seed)
    sign = adj.sign
    if G.coeff(G.support[-1]) < 0:
        G = G.scale(-1)
        sign = sign * (-1) ** e
    return ContractionResult(G, e, adj.shift, sign, fN)


# ---------------------------------------------------------------------------
# degeneracy

def cyclotomic(k):
    """The ``k``-th cyclotomic polynomial as a univariate LaurentPoly."""
    k = int(k)
    if k < 1:
        raise ValueError("k must be positive")
    p = LaurentPoly(1, {(k,): 1, (0,): -1})
    for d in range(1, k):
        if k % d == 0:
            p = exact_div(p, cyclotomic(d))
    return p


def _totient(n):
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


class DegeneracyReport(NamedTuple):
    resultant: LaurentPoly
    has_nontrivial_cyclotomic: bool
    witnesses: list
    multiplicities: dict


def _multiplicity(g, p):
    k = 0
    while True:
        try:
            g = exact_div(g, p)
        except ValueError:
            return k
        k += 1


def _sylvester(p, q, dim):
    """Sylvester matrix of two lists of coefficients (high degree first)."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    zero = LaurentPoly(dim)
    rows = []
    for i in range(n):
        rows.append([zero] * i + p + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + q + [zero] * (size - n - 1 - i))
    return rows


def degenerate_ratios(f):
    """Resultant ``Res_t(f(tx), f(t))`` and its cyclotomic factors.

    Roots ``a, b`` of ``f`` with ``a / b`` a primitive ``k``-th root of
    unity make ``Phi_k`` divide the resultant; every ``k >= 2`` with
    ``phi(k) <= deg`` is tested.
    """
    if f.dim != 1:
        raise DimensionError("degeneracy test needs d = 1")
    (lo, hi), = f.degree_bounds()
    n = hi - lo
    if n < 2:
        raise ValueError("degree must be at least 2")
    a = [f.coeff((k + lo,)) for k in range(n + 1)]
    p = [LaurentPoly(1, {(k,): a[k]}) for k in range(n, -1, -1)]
    q = [LaurentPoly.constant(a[k], 1) for k in range(n, -1, -1)]
    g = _bareiss_det(_sylvester(p, q, 1))
    (glo, ghi), = g.degree_bounds()
    deg = ghi - glo
    mult = {1: _multiplicity(g, cyclotomic(1))}
    witnesses = []
    k = 2
    # phi(k) >= sqrt(k / 2), so k <= 2 deg^2 covers every phi(k) <= deg
    while k <= max(2 * deg * deg, 2):
        if _totient(k) <= deg:
            mk = _multiplicity(g, cyclotomic(k))
            if mk:
                witnesses.append(k)
                mult[k] = mk
        k += 1
    return DegeneracyReport(g, bool(witnesses), witnesses, mult)


# ---------------------------------------------------------------------------
# asymptotic length

class LengthRow(NamedTuple):
    N: int
    length: int
    normalized_log: float
    eN: int


def asymptotic_length(f, Ns, seed=0, budget=None):
    """Lengths of ``g_N`` and ``N^{-d} log L(g_N)`` for each ``N``."""
    rows = []
    for N in sorted(int(n) for n in Ns):
        res = contract(f, N, seed=seed, budget=budget)
        L = coeff_stats(res.gN).length
        rows.append(LengthRow(N, L, log_abs_int(L) / N ** f.dim, res.eN))
    return rows
