import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decilim import (BudgetError, DecimationSpec, LaurentPoly, decimate,
                     decimate_lattice, log_rescale, mahler_measure,
                     parse_poly)
from decilim.decimate import doubling_step, predicted_bits
from decilim.poly import inflate, rescale_down

from strategies import adjusted_polys, polys


def rotate_product(f, lattice, x):
    """Direct complex product of ``f(omega x)`` over the dual group."""
    total = 1.0 + 0j
    for ks in itertools.product(*[range(a) for a in lattice]):
        z = [xi * cmath.exp(2j * math.pi * k / a)
             for xi, k, a in zip(x, ks, lattice)]
        val = 0j
        for e, c in f.items():
            term = complex(c)
            for zi, ei in zip(z, e):
                term *= zi ** ei
            val += term
        total *= val
    return total


def evaluate(f, x):
    return sum(c * np.prod([xi ** ei for xi, ei in zip(x, e)])
               for e, c in f.items())


class TestFixtures:
    def test_golden(self):
        f = parse_poly("x^2-x-1")
        assert decimate(f, 2) == parse_poly("x^4-3x^2+1")
        assert decimate(f, 3) == parse_poly("x^6-4x^3-1")

    def test_ledrappier_shape(self):
        g = decimate(parse_poly("1+x+y"), 5)
        assert len(g) == 21
        assert g.coeff((10, 10)) == 1905
        assert g.coeff((15, 5)) == -605

    def test_rectangular_lattice(self):
        g = decimate_lattice(parse_poly("1+x+y"), DecimationSpec((2, 1)))
        assert g == parse_poly("-x^2+y^2+2y+1")

    def test_n_equals_one(self):
        f = parse_poly("3-x+y^2")
        assert decimate(f, 1) == f

    def test_doubling_step(self):
        assert doubling_step(parse_poly("1+x")) == parse_poly("1-x")

    def test_large_n(self):
        g = decimate(parse_poly("1+x+y"), 64)
        assert all(a % 64 == 0 for e in g.support for a in e)
        assert g.coeff((0, 0)) == 1 and g.coeff((64 ** 2, 0)) == 1


class TestErrors:
    def test_bad_n(self):
        with pytest.raises(ValueError):
            decimate(parse_poly("1+x"), 0)

    def test_doubling_needs_power_of_two(self):
        with pytest.raises(ValueError):
            decimate(parse_poly("1+x"), 3, method="doubling")

    def test_budget(self):
        f = parse_poly("1+x+y")
        assert predicted_bits(f, (64, 64)) > 1000
        with pytest.raises(BudgetError):
            decimate(f, 64, budget=1000)

    def test_budget_env(self, monkeypatch):
        monkeypatch.setenv("DECILIM_BUDGET_BITS", "500")
        with pytest.raises(BudgetError):
            decimate(parse_poly("1+x+y"), 16)


class TestOracle:
    @given(polys(dim=2, max_terms=4, exp_range=(-1, 2)),
           st.sampled_from([2, 3, 4]))
    @settings(max_examples=30, deadline=None)
    def test_matches_direct_product(self, f, N):
        g = decimate(f, N)
        x = (0.7 + 0.2j, -0.4 + 0.9j)
        want = rotate_product(f, (N, N), x)
        got = evaluate(g, x)
        assert abs(got - want) <= 1e-8 * max(1.0, abs(want))

    @given(polys(dim=1, max_terms=4), st.sampled_from([2, 3, 5]))
    @settings(max_examples=30, deadline=None)
    def test_univariate_direct_product(self, f, N):
        x = (0.8 - 0.3j,)
        want = rotate_product(f, (N,), x)
        assert abs(evaluate(decimate(f, N), x) - want) <= \
            1e-8 * max(1.0, abs(want))


class TestProperties:
    @given(polys(dim=2, max_terms=4), st.sampled_from([2, 4, 8]))
    @settings(max_examples=25, deadline=None)
    def test_methods_agree(self, f, N):
        assert decimate(f, N, method="doubling") == \
            decimate(f, N, method="norm")

    @given(polys(dim=2, max_terms=3), polys(dim=2, max_terms=3),
           st.sampled_from([2, 3]))
    @settings(max_examples=25, deadline=None)
    def test_multiplicative(self, f, g, N):
        assert decimate(f * g, N) == decimate(f, N) * decimate(g, N)

    @given(polys(dim=2, max_terms=4), st.sampled_from([2, 3, 4]))
    @settings(max_examples=25, deadline=None)
    def test_supported_on_sublattice(self, f, N):
        g = decimate(f, N)
        assert all(a % N == 0 for e in g.support for a in e)

    @given(polys(dim=2, max_terms=4), st.sampled_from([2, 4]))
    @settings(max_examples=25, deadline=None)
    def test_rotation_invariance(self, f, N):
        # x -> -x is a rotation by an N-th root of unity for even N
        assert decimate(f.rotate_signs((-1, 1)), N) == decimate(f, N)

    @given(st.sampled_from([2, 3]), st.sampled_from([2, 3]))
    @settings(max_examples=6, deadline=None)
    def test_composition(self, M, N):
        f = parse_poly("2+x-y+x*y")
        g = rescale_down(decimate(f, M), M)
        assert inflate(decimate(g, N), M) == decimate(f, M * N)

    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_mahler_scales(self, N):
        f = parse_poly("1+x+y")
        m = mahler_measure(f, tol=1e-10).value
        mN = mahler_measure(decimate(f, N), tol=1e-9).value
        assert mN == pytest.approx(N ** 2 * m, abs=1e-6)


class TestLogRescale:
    def test_points(self):
        fN = decimate(parse_poly("x^2-x-1"), 2)
        L = log_rescale(fN, 2, 2)
        pos = L.positions().ravel()
        assert list(pos) == [0.0, 1.0, 2.0]
        assert L.values()[1] == pytest.approx(math.log(3) / 2)

    def test_bad_index(self):
        with pytest.raises(ValueError):
            log_rescale(parse_poly("1+x"), 0)
