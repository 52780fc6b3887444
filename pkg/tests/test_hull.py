import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from decilim import (DimensionError, concave_hull, decimate, log_rescale,
                     parse_poly, sup_distance, tropical_convolution)
from decilim.hull import PolyhedralConcaveFn, hull_equal
from decilim.reference import GOLDEN


def lp_hull_value(P, V, r):
    """Concave envelope at ``r`` as a linear program over convex weights."""
    n = len(P)
    A_eq = np.vstack([np.asarray(P, float).T, np.ones(n)])
    b_eq = np.concatenate([np.asarray(r, float), [1.0]])
    res = linprog(-np.asarray(V, float), A_eq=A_eq, b_eq=b_eq,
                  bounds=(0, None), method="highs")
    return -res.fun if res.status == 0 else -math.inf


point_sets_2d = st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=3, max_size=9,
    unique=True).filter(
    lambda ps: np.linalg.matrix_rank(np.array(ps[1:]) - ps[0]) == 2)
values = st.floats(-3, 3, allow_nan=False)


def limit_fn(text, N):
    f = parse_poly(text)
    return concave_hull(log_rescale(decimate(f, N), N ** f.dim, N))


class TestFixtures:
    def test_golden_tent_peak(self):
        D = limit_fn("x^2-x-1", 2)
        assert D.eval([1.0]) == pytest.approx(math.log(3) / 2)
        assert D.eval([0.0]) == 0.0 and D.eval([2.0]) == 0.0
        assert D.eval([2.5]) == -math.inf

    def test_ledrappier_d5_max(self):
        D = limit_fn("1+x+y", 5)
        assert D.maximum() == pytest.approx(math.log(1905) / 25)
        assert D.affine_dim == 2
        assert D.eval([0.6, 0.6]) == -math.inf

    def test_convergence_monotone(self):
        d2, d4, d8 = (limit_fn("1+x+y", N) for N in (2, 4, 8))
        assert sup_distance(d4, d8) < sup_distance(d2, d4)

    def test_wedge_convolution(self):
        lam = math.log(GOLDEN)
        a = concave_hull([(0,), (1,)], [lam, 0.0])
        b = concave_hull([(0,), (1,)], [-lam, 0.0])
        c = tropical_convolution(a, b)
        assert [c.eval([r]) for r in (0, 1, 2)] == pytest.approx([0, lam, 0])

    def test_lower_dimensional_domain(self):
        f = concave_hull([(0, 0), (1, 1), (2, 2)], [0.0, 1.0, 0.0])
        assert f.affine_dim == 1
        assert f.eval([0.5, 0.5]) == pytest.approx(0.5)
        assert f.eval([1.0, 0.0]) == -math.inf

    def test_dimension_limit(self):
        with pytest.raises(DimensionError):
            PolyhedralConcaveFn([(0, 0, 0, 0)], [0.0])

    def test_different_domains(self):
        with pytest.raises(ValueError):
            sup_distance(limit_fn("1+x+y", 2), limit_fn("1+x+y^2", 2))

    def test_mesh(self):
        verts, faces = limit_fn("1+x+y", 3).mesh()
        assert verts.shape[1] == 3 and faces
        assert all(max(f) < len(verts) for f in faces)


class TestProperties:
    @given(point_sets_2d, st.data())
    @settings(max_examples=40, deadline=None)
    def test_matches_lp_envelope(self, pts, data):
        vals = data.draw(st.lists(values, min_size=len(pts),
                                  max_size=len(pts)))
        fn = concave_hull(pts, vals)
        rng = np.random.default_rng(len(pts))
        probes = rng.uniform(-0.5, 4.5, size=(15, 2))
        for r in np.vstack([probes, pts]):
            want = lp_hull_value(pts, vals, r)
            got = fn.eval(r)
            if math.isinf(want):
                assert got == -math.inf
            else:
                assert got == pytest.approx(want, abs=1e-7)

    @given(point_sets_2d, st.data())
    @settings(max_examples=30, deadline=None)
    def test_concave_and_above_points(self, pts, data):
        vals = data.draw(st.lists(values, min_size=len(pts),
                                  max_size=len(pts)))
        fn = concave_hull(pts, vals)
        assert np.all(fn.eval(np.array(pts, float)) >= np.array(vals) - 1e-9)
        rng = np.random.default_rng(0)
        for _ in range(10):
            i, j = rng.integers(len(pts), size=2)
            t = rng.uniform()
            mid = t * np.array(pts[i], float) + (1 - t) * np.array(pts[j], float)
            assert fn.eval(mid) >= t * fn.eval(pts[i]) + \
                (1 - t) * fn.eval(pts[j]) - 1e-9

    @given(point_sets_2d, st.data())
    @settings(max_examples=30, deadline=None)
    def test_dual_brute_force(self, pts, data):
        vals = data.draw(st.lists(values, min_size=len(pts),
                                  max_size=len(pts)))
        fn = concave_hull(pts, vals)
        u = np.array(data.draw(st.tuples(values, values)))
        want = min(np.dot(p, u) - v for p, v in zip(pts, vals))
        assert fn.dual(u) == pytest.approx(want, abs=1e-12)

    @given(st.lists(st.tuples(st.integers(0, 5), values), min_size=2,
                    max_size=6, unique_by=lambda t: t[0]),
           st.lists(st.tuples(st.integers(0, 5), values), min_size=2,
                    max_size=6, unique_by=lambda t: t[0]))
    @settings(max_examples=40, deadline=None)
    def test_convolution_commutes_and_duals_add(self, a, b):
        A = concave_hull([(p,) for p, _ in a], [v for _, v in a])
        B = concave_hull([(p,) for p, _ in b], [v for _, v in b])
        AB, BA = tropical_convolution(A, B), tropical_convolution(B, A)
        assert hull_equal(AB, BA, tol=1e-9)
        for u in (-1.3, 0.0, 0.7, 2.1):
            assert AB.dual([u]) == pytest.approx(A.dual([u]) + B.dual([u]),
                                                 abs=1e-9)
