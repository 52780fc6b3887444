"""Small worked examples for every module, one assertion group each."""

import math

import numpy as np
import pytest

from decilim import (adjust, amoeba_scan, coeff_stats, concave_hull, decimate,
                     decimate_lattice, decimation_limit, degenerate_ratios,
                     eval_torus, log_rescale, lopsided, mahler_measure, mul,
                     newton_polytope, parse_poly, rescale_down,
                     restrict_to_face, sup_distance, tropical_convolution,
                     tropicalization)
from decilim.contraction import (IntegerLattice, asymptotic_length, contract,
                                 perfect_power_split, stabilizer_order,
                                 support_group)
from decilim.reference import (GOLDEN, angle_gradient, b_of,
                               decimation_limit_1xy, golden_limit,
                               smyth_constant)
from decilim.ronkin import ronkin

P = parse_poly
LOG3 = math.log(3)
LOGLAM = math.log(GOLDEN)


def tent(N):
    return concave_hull(log_rescale(decimate(P("x^2-x-1"), N), N, N))


class TestPolyCore:
    def test_parse(self):
        f = P("1+x+y")
        assert len(f) == 3 and f.dim == 2 and set(f.terms.values()) == {1}
        assert len(P("5+x+x^-1+y+y^-1")) == 5

    def test_products(self):
        assert mul(P("x^2-x-1"), P("x^2+x-1")) == P("x^4-3x^2+1")
        assert mul(P("(1+x)"), P("1", dim_hint=1)) == P("1+x")
        assert mul(P("1+x", dim_hint=2), P("1+y")) == P("1+x+y+xy")

    def test_adjust(self):
        assert adjust(P("1+x+y")).shift == (0, 0)
        adj = adjust(P("5+x+1/x+y+1/y"))
        assert adj.poly.coeff((0, 0)) == 1
        adj = adjust(P("-x^3+x^2"))
        assert adj.poly == P("1-x") and adj.shift == (2,)

    def test_polytopes(self):
        assert len(newton_polytope(P("1+x+y")).vertices) == 3
        assert newton_polytope(P("x^2-x-1")).vertices == ((0,), (2,))
        assert newton_polytope(P("7")).affine_dim == 0

    def test_stats(self):
        s = coeff_stats(P("1+x+y"))
        assert (s.height, s.length) == (1, 3)
        assert coeff_stats(decimate(P("1+x+y"), 5)).height == 1905
        assert coeff_stats(P("x^4-3x^2+1")).length == 5

    def test_eval_torus(self):
        f = P("1+x+y")
        assert eval_torus(f, (0, 0), np.zeros((1, 2)))[0] == pytest.approx(3)
        z = eval_torus(f, (0, 0), np.array([[1 / 3, 2 / 3]]))[0]
        assert abs(z) < 1e-12
        assert eval_torus(P("x-2"), (0,), np.array([[0.5]]))[0] == \
            pytest.approx(-3)

    def test_rescale(self):
        assert rescale_down(P("x^4-3x^2+1"), 2) == P("x^2-3x+1")
        assert rescale_down(P("x^4-4x^2+4"), 2) == P("x^2-4x+4")

    def test_restrict(self):
        f = P("1+x+y")
        assert restrict_to_face(f, (1, 0)) == P("x", dim_hint=2)
        assert restrict_to_face(f, (-1, -1)) == P("1", dim_hint=2)
        assert restrict_to_face(f, (0, 0)) == f


class TestDecimate:
    def test_examples(self):
        assert decimate(P("x^2-2"), 2) == P("x^4-4x^2+4")
        assert decimate_lattice(P("1+x+y"), (2, 1)) == \
            mul(P("1+x+y"), P("1-x+y"))
        assert decimate_lattice(P("1+x+y"), (1, 1)) == P("1+x+y")
        assert decimate_lattice(P("x^2-x-1"), (3,)) == decimate(P("x^2-x-1"), 3)

    def test_log_rescale(self):
        L = log_rescale(decimate(P("x^2-x-1"), 2), 2)
        assert [float(r[0]) for r, _ in L.points] == [0, 1, 2]
        assert L.points[1][1] == pytest.approx(LOG3 / 2)
        L3 = log_rescale(decimate(P("x^2-x-1"), 3), 3)
        assert L3.points[1][1] == pytest.approx(math.log(4) / 3)
        one = log_rescale(P("1"), 1)
        assert one.points == [((0,), 0.0)]


class TestHull:
    def test_golden_tent(self):
        D = tent(2)
        assert D.maximum() == pytest.approx(0.5493, abs=1e-4)
        assert D.eval([0.5]) == pytest.approx(LOG3 / 4)
        assert D.eval([3.0]) == -math.inf
        assert D.dual([0.0]) == pytest.approx(-LOG3 / 2)

    def test_point(self):
        D = concave_hull([(0,)], [0.0])
        assert D.eval([0.0]) == 0.0 and D.dual([1.7]) == 0.0

    def test_identity_convolution(self):
        D = tent(2)
        E = tropical_convolution(D, concave_hull([(0,)], [0.0]))
        assert sup_distance(D, E) == 0.0

    def test_distance(self):
        D = tent(2)
        assert sup_distance(D, D) == 0.0
        lim = concave_hull([(0,), (1,), (2,)], [0.0, LOGLAM, 0.0])
        assert sup_distance(D, lim) == pytest.approx(
            abs(LOG3 / 2 - LOGLAM), abs=1e-12)


class TestRonkin:
    def test_values(self):
        assert ronkin(P("x-2"), [0.0]).value == pytest.approx(math.log(2))
        assert mahler_measure(P("1+x")).value == pytest.approx(0, abs=1e-12)
        assert ronkin(P("x^2-x-1"), [0.0]).value == pytest.approx(LOGLAM)

    def test_tropicalization(self):
        assert tropicalization(P("1+x"), [0.0]) == 0.0
        assert tropicalization(P("x^4-3x^2+1"), [0.0]) == pytest.approx(LOG3)
        f2 = decimate(P("1+x+y"), 2)
        H = coeff_stats(f2).height
        assert tropicalization(f2, (0, 0)) / 4 == pytest.approx(
            math.log(H) / 4)

    def test_limits(self):
        assert decimation_limit(P("1+x+y"), (1 / 3, 1 / 3)) == \
            pytest.approx(0.3230659, abs=1e-6)
        assert decimation_limit(P("x^2-x-1"), [1.0]) == pytest.approx(LOGLAM)
        assert decimation_limit(P("x^2-x-1"), [0.0]) == 0.0

    def test_lopsided(self):
        assert lopsided(P("5+x+1/x+y+1/y"), (0, 0))
        assert not lopsided(P("1+x+y"), (0, 0))
        assert lopsided(P("1+x+y"), (5, 0))

    def test_amoeba_components(self):
        scan = amoeba_scan(P("1+x+y"), N=8)
        assert scan.n_components >= 3
        assert scan.label_at((0.0, 0.0)) == 0
        hole = amoeba_scan(P("5+x+1/x+y+1/y"), N=8)
        assert hole.label_at((0.0, 0.0)) > 0


class TestContraction:
    def test_lattices(self):
        assert support_group(P("1+x+y")).index == 1
        G = support_group(P("1+x+y^2"))
        assert G.index == 2
        assert IntegerLattice(2, []).rank == 0
        assert IntegerLattice(2, []).index == math.inf

    def test_stabilizers(self):
        G = support_group(P("1+x+y^2"))
        assert stabilizer_order(G, 2) == 2 and stabilizer_order(G, 3) == 1
        assert stabilizer_order(support_group(P("1+x+y")), 6) == 1
        K = IntegerLattice(2, [(3, 0), (0, 1)])
        assert all(stabilizer_order(K, N) == 1 for N in (2, 4, 5, 7))

    def test_powers(self):
        G, e = perfect_power_split(P("(x^2-2)^2"))
        assert e == 2 and G in (P("x^2-2"), P("2-x^2"))
        assert perfect_power_split(P("x^4-3x^2+1"))[1] == 1

    def test_contractions(self):
        assert contract(P("x^2-2"), 4).gN == P("x^4-4")
        assert contract(P("x^2-2"), 4).eN == 2
        assert contract(P("1-2x^2"), 3).eN == 1
        r = contract(P("1-x-y-xy+x^2+y^2"), 3)
        assert r.gN.coeff((3, 3)) == -21 and r.gN.coeff((0, 0)) == 1
        for N in (2, 3, 4, 7):
            assert contract(P("1-2x+4x^2-3x^3+x^4"), N).eN == 1

    def test_degeneracy(self):
        assert 5 in degenerate_ratios(P("1-2x+4x^2-3x^3+x^4")).witnesses
        assert degenerate_ratios(P("x^2-x-1")).witnesses == []
        assert degenerate_ratios(P("1-2x^2")).witnesses == [2]

    def test_lengths(self):
        rows = asymptotic_length(P("x^2-2"), [11, 12])
        assert rows[0].normalized_log == pytest.approx(math.log(2), abs=0.02)
        assert rows[1].normalized_log == pytest.approx(math.log(2) / 2,
                                                       abs=0.02)
        # a constant has positive measure but lengths that vanish
        const = asymptotic_length(P("2"), [2, 4, 8, 16])
        assert [r.normalized_log for r in const] == sorted(
            (r.normalized_log for r in const), reverse=True)
        assert const[-1].normalized_log < 0.05


class TestReference:
    def test_b(self):
        assert b_of(1 / 3, 1 / 3) == pytest.approx(1)
        assert b_of(0.5, 0.25) == pytest.approx(1)
        assert b_of(0.5, 1e-12) == pytest.approx(0, abs=1e-10)

    def test_series(self):
        assert decimation_limit_1xy(1 / 3, 1 / 3) == pytest.approx(0.3230659,
                                                                   abs=1e-7)
        assert decimation_limit_1xy(0.2, 0.5) == \
            decimation_limit_1xy(0.5, 0.2)

    def test_golden(self):
        assert golden_limit(1) == pytest.approx(0.481212, abs=1e-6)
        assert golden_limit(0) == 0 and golden_limit(2.5) == -math.inf

    def test_angles(self):
        assert angle_gradient(0, 0) == pytest.approx((1 / 3, 1 / 3))
        r, s = angle_gradient(math.log(2), math.log(2))
        assert r == pytest.approx(math.acos(0.25) / math.pi)
        assert s == pytest.approx(r)
        with pytest.raises(ValueError):
            angle_gradient(3, 0)

    def test_smyth(self):
        assert smyth_constant(10 ** 6) == pytest.approx(0.3230659472,
                                                        abs=1e-9)
        assert smyth_constant(1) == pytest.approx(0.41350, abs=1e-5)
