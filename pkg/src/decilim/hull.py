"""Finitely generated concave functions.

A :class:`PolyhedralConcaveFn` is the least concave function lying above a
finite set of points ``(r_i, v_i)`` in ``R^d x R``. It is finite exactly on
``conv{r_i}`` and ``-inf`` elsewhere.

Facets come from the upper convex hull of the lifted points. Generators
whose positions span a ``k``-dimensional affine subspace are handled in
``k`` reduced coordinates: ``k = 1`` uses a monotone chain, ``k >= 2`` uses
Qhull on the lifted set together with a copy pushed below the minimum value
(so that the lower hull is a flat floor and only upper facets carry
information).
"""

import itertools
import math
from fractions import Fraction

import numpy as np
from scipy.spatial import ConvexHull, Delaunay

from .errors import DimensionError

__all__ = [
    "PolyhedralConcaveFn", "concave_hull", "tropical_convolution",
    "sup_distance", "sup_distance_to", "hull_equal", "domain_grid",
]

_TOL = 1e-9


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _upper_chain(t, v):
    """Indices of the upper hull of 1D lifted points, left to right."""
    order = sorted(range(len(t)), key=lambda i: (t[i], -v[i]))
    chain = []
    for i in order:
        if chain and t[chain[-1]] == t[i]:
            continue  # same abscissa, lower value
        while len(chain) >= 2 and _cross(
                (t[chain[-2]], v[chain[-2]]), (t[chain[-1]], v[chain[-1]]),
                (t[i], v[i])) >= -1e-12 * (1 + abs(v[i])):
            chain.pop()
        chain.append(i)
    return chain


class PolyhedralConcaveFn:
    """Concave hull of finitely many lifted points.

    Parameters
    ----------
    positions : array_like, shape (n, d)
        Generator positions ``r_i``. Entries may be ``Fraction``.
    values : array_like, shape (n,)
        Generator values ``v_i``.

    Attributes
    ----------
    dim : int
        Ambient dimension ``d``.
    affine_dim : int
        Dimension of ``conv{r_i}``.
    positions, values : ndarray
        Deduplicated generators (largest value kept per position).
    forms : ndarray, shape (m, d + 1)
        Upper facet affine forms ``r -> a . r + c`` stored as ``[a, c]`` in
        ambient coordinates; the function is their minimum on the domain.
    faces : list of tuple
        Generator indices spanning each upper facet.
    """

    def __init__(self, positions, values):
        pos = [tuple(p) for p in positions]
        vals = [float(v) for v in values]
        if not pos:
            raise ValueError("concave hull of an empty point set")
        dim = len(pos[0])
        if dim > 3:
            raise DimensionError("concave hulls are supported for d <= 3")
        best = {}
        for p, v in zip(pos, vals):
            if not math.isfinite(v):
                continue
            key = tuple(Fraction(a) if isinstance(a, (int, Fraction))
                        else round(float(a), 12) for a in p)
            if key not in best or v > best[key][1]:
                best[key] = (p, v)
        if not best:
            raise ValueError("no finite generator values")
        items = sorted(best.values(), key=lambda pv: tuple(float(a) for a in pv[0]))
        self.exact_positions = [pv[0] for pv in items]
        self.dim = dim
        self.positions = np.array(
            [[float(a) for a in p] for p, _ in items]).reshape(len(items), dim)
        self.values = np.array([v for _, v in items])
        self._build()

    # -- construction ---------------------------------------------------

    def _build(self):
        P, V = self.positions, self.values
        n = len(P)
        self.origin = P[0].copy()
        X = P - self.origin
        if n == 1:
            k = 0
            basis = np.zeros((0, self.dim))
        else:
            _, sv, vt = np.linalg.svd(X, full_matrices=False)
            k = int(np.sum(sv > 1e-10 * max(1.0, sv[0])))
            basis = vt[:k]
        self.affine_dim = k
        self.basis = basis
        Y = X @ basis.T  # reduced coordinates, shape (n, k)
        self._Y = Y
        if k == 0:
            self._reduced_forms = np.array([[V.max()]])
            self.faces = [(int(np.argmax(V)),)]
            self._domain_eq = np.zeros((0, 1))
            self._domain_lo = self._domain_hi = None
        elif k == 1:
            t = Y[:, 0]
            chain = _upper_chain(list(t), list(V))
            forms, faces = [], []
            for i, j in zip(chain, chain[1:]):
                slope = (V[j] - V[i]) / (t[j] - t[i])
                forms.append([slope, V[i] - slope * t[i]])
                faces.append((i, j))
            if not forms:
                forms = [[0.0, V[chain[0]]]]
                faces = [(chain[0],)]
            self._reduced_forms = np.array(forms)
            self.faces = faces
            self._domain_lo, self._domain_hi = t.min(), t.max()
            self._domain_eq = np.array([[-1.0, self._domain_lo],
                                        [1.0, -self._domain_hi]])
        else:
            floor = V.min() - 1.0
            lifted = np.vstack([np.column_stack([Y, V]),
                                np.column_stack([Y, np.full(n, floor)])])
            hull = ConvexHull(lifted)
            forms, faces = [], []
            for simplex, eq in zip(hull.simplices, hull.equations):
                nz = eq[k]
                if nz > 1e-10:
                    a = -eq[:k] / nz
                    c = -eq[k + 1] / nz
                    forms.append(np.concatenate([a, [c]]))
                    faces.append(tuple(int(i) for i in simplex))
            self._reduced_forms = np.array(forms)
            self.faces = faces
            dom = ConvexHull(Y)
            # rows [n, off] with n . y + off <= 0 inside
            self._domain_eq = dom.equations
            self._domain_vertices_idx = dom.vertices
        # ambient forms: value = a . (basis (r - origin)) + c
        A = self._reduced_forms[:, :k] @ basis if k else np.zeros(
            (len(self._reduced_forms), self.dim))
        c = self._reduced_forms[:, k] - A @ self.origin
        self.forms = np.column_stack([A, c])
        self._vertex_mask = self._touching()

    def _touching(self):
        vals = self._eval_reduced(self._Y)
        return np.abs(vals - self.values) <= _TOL * (1 + np.abs(self.values))

    # -- evaluation -----------------------------------------------------

    def _reduce(self, R):
        R = np.asarray(R, dtype=float).reshape(-1, self.dim)
        X = R - self.origin
        Y = X @ self.basis.T
        resid = X - Y @ self.basis
        off_span = np.linalg.norm(resid, axis=1) > _TOL * (1 + np.linalg.norm(X, axis=1))
        return Y, off_span

    def _inside_reduced(self, Y):
        k = self.affine_dim
        if k == 0:
            return np.ones(len(Y), dtype=bool)
        eq = self._domain_eq
        lhs = Y @ eq[:, :k].T + eq[:, k]
        return np.all(lhs <= _TOL, axis=1)

    def _eval_reduced(self, Y):
        F = self._reduced_forms
        k = self.affine_dim
        vals = Y @ F[:, :k].T + F[:, k] if k else np.tile(F[:, 0], (len(Y), 1))
        return vals.min(axis=1)

    def eval(self, r):
        """Value at ``r`` (scalar for one point, array for shape (m, d))."""
        R = np.asarray(r, dtype=float)
        single = R.ndim <= 1
        Y, off = self._reduce(R)
        inside = self._inside_reduced(Y) & ~off
        out = np.full(len(Y), -np.inf)
        if inside.any():
            out[inside] = self._eval_reduced(Y[inside])
        return float(out[0]) if single else out

    __call__ = eval

    def in_domain(self, r):
        Y, off = self._reduce(r)
        return bool(self._inside_reduced(Y)[0] and not off[0])

    def dual(self, u):
        """Concave dual ``min_i (<r_i, u> - v_i)`` at ``u`` (or rows of ``u``)."""
        U = np.asarray(u, dtype=float)
        vals = U.reshape(-1, self.dim) @ self.positions.T - self.values
        out = vals.min(axis=1)
        return float(out[0]) if U.ndim <= 1 else out

    def maximum(self):
        """Largest value; attained at a generator."""
        return float(self.values.max())

    # -- structure ------------------------------------------------------

    @property
    def hull_generators(self):
        """Generators lying on the hull surface, as (positions, values)."""
        m = self._vertex_mask
        return [p for p, keep in zip(self.exact_positions, m) if keep], \
            self.values[m]

    def domain_vertices(self):
        """Vertices of the domain polytope in ambient coordinates."""
        k = self.affine_dim
        if k == 0:
            return self.positions[:1].copy()
        if k == 1:
            t = self._Y[:, 0]
            return self.positions[[int(np.argmin(t)), int(np.argmax(t))]]
        return self.positions[np.sort(self._domain_vertices_idx)]

    def mesh(self):
        """Vertices ``(r, v)`` and polygon faces of the hull surface."""
        verts = np.column_stack([self.positions, self.values])
        return verts, list(self.faces)

    def __repr__(self):
        return (f"PolyhedralConcaveFn(dim={self.dim}, generators="
                f"{len(self.values)}, facets={len(self.forms)})")


def concave_hull(points, values=None):
    """Concave hull of ``L_N f`` points or of explicit (positions, values).

    Parameters
    ----------
    points : ScaledLogCoeffs or sequence of (r, v) or array of positions
    values : array_like, optional
        Required when ``points`` is a plain position array.
    """
    if values is None:
        pts = getattr(points, "points", points)
        pts = list(pts)
        if not pts:
            raise ValueError("concave hull of an empty point set")
        return PolyhedralConcaveFn([r for r, _ in pts], [v for _, v in pts])
    return PolyhedralConcaveFn(points, values)


def tropical_convolution(a, b):
    """Sup-plus convolution ``(a * b)(r) = sup_s a(s) + b(r - s)``.

    Only hull generators can contribute, so pairs are formed from those.
    """
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")
    pa, va = a.hull_generators
    pb, vb = b.hull_generators
    pos, vals = [], []
    for (p, x), (q, y) in itertools.product(zip(pa, va), zip(pb, vb)):
        pos.append(tuple(s + t for s, t in zip(p, q)))
        vals.append(x + y)
    return PolyhedralConcaveFn(pos, vals)


def _same_domain(a, b, tol=1e-9):
    if a.dim != b.dim or a.affine_dim != b.affine_dim:
        return False
    va, vb = a.domain_vertices(), b.domain_vertices()
    if len(va) != len(vb):
        return False
    va = va[np.lexsort(va.T[::-1])]
    vb = vb[np.lexsort(vb.T[::-1])]
    return bool(np.all(np.abs(va - vb) <= tol))


def domain_grid(fn, grid_per_axis=64):
    """Barycentric grid over a triangulation of ``fn``'s domain.

    The domain vertices and all generator positions are triangulated;
    every simplex contributes the points with barycentric coordinates in
    ``(1/grid) Z``.
    """
    k = fn.affine_dim
    g = int(grid_per_axis)
    if k == 0:
        return fn.positions[:1].copy()
    Y = fn._Y
    if k == 1:
        t = np.linspace(Y[:, 0].min(), Y[:, 0].max(), g + 1)
        return t[:, None] @ fn.basis + fn.origin
    tri = Delaunay(Y)
    combos = [c for c in itertools.product(range(g + 1), repeat=k)
              if sum(c) <= g]
    B = np.array([[g - sum(c), *c] for c in combos], dtype=float) / g
    pts = []
    for simplex in tri.simplices:
        pts.append(B @ Y[simplex])
    Yall = np.unique(np.round(np.vstack(pts), 12), axis=0)
    return Yall @ fn.basis + fn.origin


def sup_distance(a, b, grid_per_axis=64):
    """Max of ``|a - b|`` over both generator sets and a domain grid.

    Raises
    ------
    ValueError
        If the domains differ (vertex sets compared within 1e-9).
    """
    if not _same_domain(a, b):
        raise ValueError("functions have different domains")
    pts = np.vstack([a.positions, b.positions, domain_grid(a, grid_per_axis)])
    diff = np.abs(a.eval(pts) - b.eval(pts))
    return float(np.max(diff))


def sup_distance_to(fn, ref, points):
    """Max of ``|fn(r) - ref(r)|`` over the given points.

    ``ref`` is any callable taking a position vector; points where both
    values are infinite are skipped.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, fn.dim)
    mine = fn.eval(pts)
    worst = 0.0
    for p, x in zip(pts, mine):
        y = ref(p)
        if math.isinf(x) and math.isinf(y) and (x > 0) == (y > 0):
            continue
        worst = max(worst, abs(x - y))
    return worst


def hull_equal(a, b, tol=1e-12):
    """Do ``a`` and ``b`` agree as functions?

    Compared on the union of their generator positions, which suffices for
    piecewise-linear concave functions with equal domains.
    """
    if not _same_domain(a, b, tol=max(tol, 1e-12)):
        return False
    pts = np.vstack([a.positions, b.positions])
    return bool(np.all(np.abs(a.eval(pts) - b.eval(pts)) <= tol * (
        1 + np.abs(a.eval(pts)))))
