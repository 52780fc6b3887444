"""Exact Laurent polynomials with integer coefficients.

A :class:`LaurentPoly` stores a map from exponent tuples in ``Z^d`` to
nonzero Python integers. Everything here is exact except
:func:`eval_torus`, which evaluates in double precision for quadrature.
"""

import heapq
import math
import re
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from .errors import DimensionError, PolySyntaxError

__all__ = [
    "LaurentPoly", "NewtonPolytope", "CoeffStats", "Adjustment",
    "parse_poly", "mul", "adjust", "newton_polytope", "extreme_points",
    "coeff_stats", "eval_torus", "rescale_down", "inflate",
    "restrict_to_face", "exact_div", "log_abs_int",
]

_LOG2 = math.log(2.0)


def log_abs_int(c):
    """Natural log of ``|c|`` for an arbitrarily large nonzero integer.

    Uses ``(bits - 64) log 2 + log(top 64 bits)``; the truncation of the
    low bits gives a relative error below ``2**-50``.
    """
    c = abs(int(c))
    if c == 0:
        return -math.inf
    bits = c.bit_length()
    if bits <= 64:
        return math.log(c)
    shift = bits - 64
    return math.log(c >> shift) + shift * _LOG2


def _grlex_key(e):
    return (sum(e), e)


class LaurentPoly:
    """Laurent polynomial in ``dim`` variables with integer coefficients.

    Parameters
    ----------
    dim : int
        Number of variables, at least 1.
    terms : mapping, optional
        Exponent tuple -> integer coefficient. Zero coefficients are dropped.

    Notes
    -----
    Instances are immutable and hashable. Equality is exact term-by-term
    equality (the dimension must agree as well).
    """

    __slots__ = ("_dim", "_terms", "_hash")

    def __init__(self, dim, terms=None):
        dim = int(dim)
        if dim < 1:
            raise DimensionError("dimension must be at least 1")
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(k) for k in e)
                if len(e) != dim:
                    raise DimensionError(
                        f"exponent {e} does not have length {dim}")
                c = int(c)
                if c:
                    clean[e] = c
        self._dim = dim
        self._terms = clean
        self._hash = None

    # -- construction helpers -------------------------------------------

    @classmethod
    def _raw(cls, dim, terms):
        # Trusted constructor: terms already clean.
        obj = cls.__new__(cls)
        obj._dim = dim
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c, dim=1):
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, exponent, coeff=1):
        exponent = tuple(exponent)
        return cls(len(exponent), {exponent: coeff})

    @classmethod
    def variable(cls, i, dim):
        e = [0] * dim
        e[i] = 1
        return cls(dim, {tuple(e): 1})

    # -- basic accessors ------------------------------------------------

    @property
    def dim(self):
        return self._dim

    @property
    def terms(self):
        """Copy of the exponent -> coefficient dictionary."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exponent):
        return self._terms.get(tuple(exponent), 0)

    @property
    def support(self):
        """Exponents with nonzero coefficient, in ascending grlex order."""
        return sorted(self._terms, key=_grlex_key)

    def is_zero(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def exponent_array(self):
        """``(n_terms, dim)`` integer array in ascending grlex order."""
        sup = self.support
        return np.array(sup, dtype=np.int64).reshape(len(sup), self._dim)

    def content(self):
        """gcd of all coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    def is_primitive(self):
        return self.content() == 1

    def degree_bounds(self):
        """Per-coordinate ``(min, max)`` exponents."""
        if not self._terms:
            raise ValueError("zero polynomial has no degree bounds")
        ex = self.exponent_array()
        return [(int(lo), int(hi)) for lo, hi in zip(ex.min(0), ex.max(0))]

    # -- arithmetic -----------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            return LaurentPoly.constant(other, self._dim)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other._dim != self._dim:
            raise DimensionError(
                f"dimension mismatch: {self._dim} vs {other._dim}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self._dim, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(
            self._dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have negative powers")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have negative powers")
            return LaurentPoly._raw(
                self._dim, {tuple(k * a for a in e): c ** (-k)})
        result = LaurentPoly.constant(1, self._dim)
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def scale(self, c):
        """Multiply every coefficient by the integer ``c``."""
        if c == 0:
            return LaurentPoly._raw(self._dim, {})
        return LaurentPoly._raw(
            self._dim, {e: c * v for e, v in self._terms.items()})

    def shift(self, m):
        """Multiply by the monomial ``x^m``."""
        m = tuple(m)
        return LaurentPoly._raw(
            self._dim,
            {tuple(a + b for a, b in zip(e, m)): c
             for e, c in self._terms.items()})

    def rotate_signs(self, signs):
        """Substitute ``x_i -> signs[i] * x_i`` with ``signs[i]`` in {1, -1}."""
        out = {}
        for e, c in self._terms.items():
            s = 1
            for a, sg in zip(e, signs):
                if sg < 0 and a % 2:
                    s = -s
            out[e] = s * c
        return LaurentPoly._raw(self._dim, out)

    def map_exponents(self, fn, dim=None):
        """Apply ``fn`` to every exponent; colliding terms are summed."""
        dim = self._dim if dim is None else dim
        out = {}
        for e, c in self._terms.items():
            k = tuple(fn(e))
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly._raw(dim, out)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self._dim)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._dim == other._dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._dim, frozenset(self._terms.items())))
        return self._hash

    # -- serialization --------------------------------------------------

    def to_json(self):
        """Dictionary in the ``{"d": .., "terms": [{"e": .., "c": ..}]}`` form."""
        order = sorted(self._terms, key=_grlex_key, reverse=True)
        return {
            "d": self._dim,
            "terms": [{"e": list(e), "c": str(self._terms[e])} for e in order],
        }

    @classmethod
    def from_json(cls, obj):
        dim = int(obj["d"])
        terms = {}
        for t in obj["terms"]:
            e = tuple(int(a) for a in t["e"])
            terms[e] = terms.get(e, 0) + int(t["c"])
        return cls(dim, terms)

    def variable_names(self):
        return _variable_names(self._dim)

    def __str__(self):
        if not self._terms:
            return "0"
        names = _variable_names(self._dim)
        pieces = []
        for e in sorted(self._terms, key=_grlex_key, reverse=True):
            c = self._terms[e]
            factors = []
            for name, a in zip(names, e):
                if a == 1:
                    factors.append(name)
                elif a != 0:
                    factors.append(f"{name}^{a}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"LaurentPoly({self._dim}, {str(self)!r})"


def _variable_names(dim):
    if dim <= 3:
        return ["x", "y", "z"][:dim]
    return [f"x{i + 1}" for i in range(dim)]


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+|[xyz])|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.start()
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    # trailing whitespace only
    tokens.append(("end", None, len(text)))
    return tokens


def _var_index(name):
    if name in ("x", "y", "z"):
        return "xyz".index(name)
    idx = int(name[1:])
    if idx < 1:
        raise ValueError(name)
    return idx - 1


class _Parser:
    """Recursive-descent parser over a dense exponent map.

    Polynomials are built as dicts keyed by exponent tuples of a provisional
    width that is fixed once all variables have been seen.
    """

    def __init__(self, text, dim):
        self.tokens = _tokenize(text)
        self.i = 0
        self.dim = dim

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolySyntaxError(f"unexpected {val!r}", pos)
        return p

    def expr(self):
        kind, val, pos = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term().scale(sign)
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "op" and val == "/":
                self.take()
                den = self.power()
                if len(den) != 1:
                    raise PolySyntaxError("division only by monomials", pos)
                (e, c), = den.items()
                if abs(c) != 1:
                    raise PolySyntaxError(
                        "division only by unit monomials", pos)
                acc = acc * den ** -1
            elif kind in ("int", "var") or (kind == "op" and val == "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                kind, val, pos = self.peek()
            if kind == "op" and val == "(":
                # allow x^(-2)
                self.take()
                k2, v2, p2 = self.peek()
                inner_sign = 1
                if k2 == "op" and v2 in "+-":
                    self.take()
                    inner_sign = -1 if v2 == "-" else 1
                    k2, v2, p2 = self.peek()
                if k2 != "int":
                    raise PolySyntaxError("expected integer exponent", p2)
                self.take()
                k3, v3, p3 = self.take()
                if not (k3 == "op" and v3 == ")"):
                    raise PolySyntaxError("expected ')'", p3)
                k = sign * inner_sign * v2
            elif kind == "int":
                self.take()
                k = sign * val
            else:
                raise PolySyntaxError("expected integer exponent", pos)
            try:
                return base ** k
            except ValueError:
                raise PolySyntaxError(
                    "negative exponent on a non-monomial", pos) from None
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return LaurentPoly.constant(val, self.dim)
        if kind == "var":
            idx = _var_index(val)
            if idx >= self.dim:
                raise PolySyntaxError(
                    f"variable {val} exceeds dimension {self.dim}", pos)
            return LaurentPoly.variable(idx, self.dim)
        if kind == "op" and val == "(":
            inner = self.expr()
            k, v, p = self.take()
            if not (k == "op" and v == ")"):
                raise PolySyntaxError("expected ')'", p)
            return inner
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", pos)
        raise PolySyntaxError(f"unexpected {val!r}", pos)


def parse_poly(text, dim_hint=None):
    """Parse polynomial text such as ``"-605*x^15*y^5 + 1"``.

    Variables are ``x, y, z`` (i.e. ``x1, x2, x3``) or ``x1 .. xd``; the
    multiplication sign is optional, exponents may be negative, and
    ``1/x`` is accepted for monomial denominators.

    Parameters
    ----------
    text : str
    dim_hint : int, optional
        Dimension to use. Without it, the dimension is the largest variable
        index mentioned (1 for constants).

    Raises
    ------
    PolySyntaxError
        On malformed input, with the offending character offset.
    DimensionError
        If the text uses a variable beyond ``dim_hint``.
    """
    used = 0
    for m in re.finditer(r"x\d+|[xyz]", text):
        try:
            used = max(used, _var_index(m.group(0)) + 1)
        except ValueError:
            raise PolySyntaxError(
                f"bad variable {m.group(0)!r}", m.start()) from None
    if dim_hint is not None:
        if used > dim_hint:
            raise DimensionError(
                f"text uses {used} variables but dimension hint is {dim_hint}")
        dim = int(dim_hint)
    else:
        dim = max(used, 1)
    return _Parser(text, dim).parse()


# ---------------------------------------------------------------------------
# ring operations

def mul(a, b):
    """Exact product of two Laurent polynomials of the same dimension."""
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")
    ta, tb = a._terms, b._terms
    if len(ta) < len(tb):
        ta, tb = tb, ta
    out = {}
    if a.dim == 1:
        for (ea,), ca in ta.items():
            for (eb,), cb in tb.items():
                k = (ea + eb,)
                out[k] = out.get(k, 0) + ca * cb
    else:
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                k = tuple(x + y for x, y in zip(ea, eb))
                out[k] = out.get(k, 0) + ca * cb
    return LaurentPoly._raw(a.dim, {k: v for k, v in out.items() if v})


def exact_div(a, b):
    """Quotient ``a / b`` when ``b`` divides ``a`` exactly in ``Z[Z^d]``.

    Long division on leading terms in lexicographic order, which is a group
    order on ``Z^d`` and therefore valid for Laurent polynomials.

    Raises
    ------
    ZeroDivisionError
        If ``b`` is zero.
    ValueError
        If the division is not exact.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.is_zero():
        return a
    if len(b) == 1:
        (eb, cb), = b.items()
        out = {}
        for e, c in a.items():
            q, r = divmod(c, cb)
            if r:
                raise ValueError("division is not exact")
            out[tuple(x - y for x, y in zip(e, eb))] = q
        return LaurentPoly._raw(a.dim, out)
    lead_b = max(b._terms)
    cb = b._terms[lead_b]
    rest_b = [(e, c) for e, c in b._terms.items() if e != lead_b]
    rem = dict(a._terms)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    # Newton polytopes add under products, so the quotient support lies in
    # the coordinate box [lo_a - lo_b, hi_a - hi_b].
    ba, bb = a.degree_bounds(), b.degree_bounds()
    box = [(la - lb, ha - hb) for (la, ha), (lb, hb) in zip(ba, bb)]
    if any(lo > hi for lo, hi in box):
        raise ValueError("division is not exact")
    while heap:
        neg = heapq.heappop(heap)
        e = tuple(-x for x in neg)
        c = rem.get(e, 0)
        if c == 0:
            continue
        qe = tuple(x - y for x, y in zip(e, lead_b))
        if any(q < lo or q > hi for q, (lo, hi) in zip(qe, box)):
            raise ValueError("division is not exact")
        q, r = divmod(c, cb)
        if r:
            raise ValueError("division is not exact")
        quot[qe] = q
        del rem[e]
        for eb, c2 in rest_b:
            k = tuple(x + y for x, y in zip(qe, eb))
            v = rem.get(k, 0) - q * c2
            if v:
                if k not in rem:
                    heapq.heappush(heap, tuple(-x for x in k))
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentPoly._raw(a.dim, quot)


def rescale_down(f, N):
    """Substitute ``x_i^N -> x_i`` (divide every exponent by ``N``).

    ``N`` may be an integer or a per-coordinate tuple.
    """
    Ns = _as_tuple(N, f.dim)
    out = {}
    for e, c in f.items():
        k = []
        for a, n in zip(e, Ns):
            if a % n:
                raise ValueError(
                    f"exponent {e} is not divisible by {Ns}")
            k.append(a // n)
        out[tuple(k)] = c
    return LaurentPoly._raw(f.dim, out)


def inflate(f, N):
    """Substitute ``x_i -> x_i^N``; inverse of :func:`rescale_down`."""
    Ns = _as_tuple(N, f.dim)
    return LaurentPoly._raw(
        f.dim, {tuple(a * n for a, n in zip(e, Ns)): c for e, c in f.items()})


def _as_tuple(N, dim):
    if isinstance(N, (tuple, list)):
        if len(N) != dim:
            raise DimensionError("lattice tuple length does not match dim")
        Ns = tuple(int(n) for n in N)
    else:
        Ns = (int(N),) * dim
    if any(n < 1 for n in Ns):
        raise ValueError("scaling factors must be positive")
    return Ns


# ---------------------------------------------------------------------------
# geometry

class NewtonPolytope(NamedTuple):
    """Convex hull of a polynomial's support.

    ``facets`` holds ``(normal, offset)`` pairs with ``normal . x <= offset``
    and is only populated when the polytope is full-dimensional and
    ``dim <= 3``.
    """
    dim: int
    vertices: tuple
    facets: tuple
    affine_dim: int

    def contains(self, r, tol=1e-9):
        """Membership test for a real point (uses an LP below full dimension)."""
        r = np.asarray(r, dtype=float)
        if self.facets:
            return all(np.dot(n, r) <= b + tol for n, b in self.facets)
        V = np.asarray(self.vertices, dtype=float)
        return _in_hull_lp(r, V, tol)


def _affine_rank(P):
    if len(P) <= 1:
        return 0
    D = P[1:] - P[0]
    return int(np.linalg.matrix_rank(D.astype(float)))


def _in_hull_lp(p, Q, tol=1e-9):
    n = len(Q)
    if n == 0:
        return False
    A_eq = np.vstack([Q.T, np.ones(n)])
    b_eq = np.concatenate([p, [1.0]])
    res = linprog(np.zeros(n), A_eq=A_eq, b_eq=b_eq, bounds=(0, None),
                  method="highs")
    if res.status != 0:
        return False
    return np.max(np.abs(A_eq @ res.x - b_eq)) <= max(tol, 1e-7)


def extreme_points(points):
    """Extreme points of a finite integer point set.

    Lines are handled exactly; dimensions 2 and 3 use Qhull on the affinely
    reduced coordinates; higher dimensions fall back to an LP membership
    test of each point against the others.

    Returns
    -------
    list of tuple
        Sorted lexicographically.
    """
    pts = sorted(set(tuple(int(a) for a in p) for p in points))
    if not pts:
        return []
    P = np.array(pts, dtype=np.int64)
    k = _affine_rank(P)
    if k == 0:
        return [pts[0]]
    if k == 1:
        direction = P[-1] - P[0]
        proj = (P - P[0]) @ direction
        return sorted({pts[int(np.argmin(proj))], pts[int(np.argmax(proj))]})
    if k <= 3:
        X = P.astype(float) - P[0]
        if k < P.shape[1]:
            # orthonormal basis of the affine span
            _, _, vt = np.linalg.svd(X, full_matrices=False)
            X = X @ vt[:k].T
        hull = ConvexHull(X)
        return sorted(pts[i] for i in hull.vertices)
    out = []
    for i, p in enumerate(pts):
        others = np.delete(P, i, axis=0).astype(float)
        if not _in_hull_lp(P[i].astype(float), others):
            out.append(p)
    return out


def newton_polytope(f, facets=True):
    """Newton polytope of ``f``: vertex list and, when possible, facets.

    Raises
    ------
    ValueError
        For the zero polynomial.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no Newton polytope")
    verts = extreme_points(f.support)
    V = np.array(verts, dtype=np.int64)
    k = _affine_rank(V)
    fac = ()
    if facets and k == f.dim and f.dim <= 3:
        if f.dim == 1:
            fac = (((1.0,), float(V.max())), ((-1.0,), float(-V.min())))
        else:
            hull = ConvexHull(V.astype(float))
            seen = {}
            for eq in hull.equations:
                n, c = eq[:-1], -eq[-1]
                key = tuple(np.round(np.concatenate([n, [c]]), 9))
                seen.setdefault(key, (tuple(float(a) for a in n), float(c)))
            fac = tuple(seen.values())
    return NewtonPolytope(f.dim, tuple(verts), fac, k)


class Adjustment(NamedTuple):
    """Result of :func:`adjust`: ``x^shift * poly == sign * f``."""
    poly: LaurentPoly
    shift: tuple
    sign: int


def adjust(f):
    """Move the lexicographically smallest vertex of ``N_f`` to the origin.

    The result has 0 as an extreme point of its Newton polytope and a
    positive constant term; the sign flip needed for that is recorded.
    """
    if f.is_zero():
        raise ValueError("cannot adjust the zero polynomial")
    m = min(extreme_points(f.support))
    sign = 1 if f.coeff(m) > 0 else -1
    g = f.shift(tuple(-a for a in m)).scale(sign)
    return Adjustment(g, m, sign)


class CoeffStats(NamedTuple):
    height: int
    length: int
    log_height: float
    term_count: int


def coeff_stats(f):
    """Height ``max |c|``, length ``sum |c|`` and term count of ``f``."""
    if f.is_zero():
        raise ValueError("zero polynomial has no height")
    mags = [abs(c) for c in f._terms.values()]
    H = max(mags)
    return CoeffStats(H, sum(mags), log_abs_int(H), len(mags))


def eval_torus(f, u, s):
    """Evaluate ``f(e^{u_1} e^{2 pi i s_1}, ...)`` in double precision.

    ``s`` may carry leading batch axes: shape ``(..., d)``.
    """
    u = np.asarray(u, dtype=float).reshape(-1)
    s = np.asarray(s, dtype=float)
    if u.shape[0] != f.dim or s.shape[-1] != f.dim:
        raise DimensionError("evaluation point has wrong dimension")
    E = f.exponent_array().astype(float)
    C = np.array([float(f.coeff(tuple(e))) for e in f.support])
    with np.errstate(over="ignore", invalid="ignore"):
        phase = 2j * np.pi * (s @ E.T)
        logmag = E @ u
        return np.sum(C * np.exp(logmag + phase), axis=-1)


def restrict_to_face(f, face_normal):
    """Sub-polynomial of ``f`` on the face of ``N_f`` maximizing ``<normal, .>``.

    The normal may have rational entries (``Fraction`` or ``int``); float
    entries are converted exactly.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no faces")
    w = [Fraction(a) for a in face_normal]
    if len(w) != f.dim:
        raise DimensionError("normal has wrong dimension")
    vals = {e: sum(a * b for a, b in zip(w, e)) for e in f._terms}
    top = max(vals.values())
    return LaurentPoly._raw(
        f.dim, {e: c for e, c in f._terms.items() if vals[e] == top})
