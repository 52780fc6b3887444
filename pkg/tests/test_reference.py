import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decilim.reference import (GOLDEN, angle_gradient, b_of, classify,
                               decimation_limit_1xy, golden_limit,
                               golden_ronkin, series_tail_bound,
                               smyth_constant, smyth_tail_bound)

# L(2, chi_{-3}) to 16 digits
L2_CHI3 = 0.7813024128964862
SMYTH = 3 * math.sqrt(3) / (4 * math.pi) * L2_CHI3

interior = st.tuples(st.floats(0.02, 0.96), st.floats(0.02, 0.96)).filter(
    lambda p: p[0] + p[1] < 0.98)


def test_smyth_value():
    assert SMYTH == pytest.approx(0.3230659472194505, abs=1e-15)
    assert smyth_constant(10 ** 6) == pytest.approx(SMYTH, abs=1e-12)


@pytest.mark.parametrize("T", [1, 10, 100, 1000])
def test_smyth_tail_bound(T):
    assert abs(smyth_constant(T) - SMYTH) <= smyth_tail_bound(T)


def test_centroid():
    assert decimation_limit_1xy(1 / 3, 1 / 3) == pytest.approx(SMYTH,
                                                               abs=1e-9)


def test_classify():
    assert classify(0.2, 0.5).r == 0.5
    assert classify(0.0, 0.5).region == "boundary"
    assert classify(0.6, 0.1).region == "delta1"
    assert classify(0.35, 0.4).region == "delta2"


def test_boundary_raises():
    with pytest.raises(ValueError):
        decimation_limit_1xy(0.5, 0.5)
    with pytest.raises(ValueError):
        b_of(0.7, 0.4)


@pytest.mark.parametrize("r", [0.4, 0.6, 0.8])
def test_seam_series_agree(r):
    s = (1 - r) / 2
    a = decimation_limit_1xy(r, s, region="delta1")
    b = decimation_limit_1xy(r, s, region="delta2")
    assert a == pytest.approx(b, abs=1e-6)


def test_forced_divergent_series():
    with pytest.raises(ValueError):
        decimation_limit_1xy(0.6, 0.1, region="delta2")


def test_continuous_across_seam():
    r = 0.5
    s = (1 - r) / 2
    left = decimation_limit_1xy(r, s - 1e-4)
    right = decimation_limit_1xy(r, s + 1e-4)
    assert left == pytest.approx(right, abs=1e-3)


@given(interior)
@settings(max_examples=30, deadline=None)
def test_symmetric(p):
    r, s = p
    assert decimation_limit_1xy(r, s, terms=2000) == \
        decimation_limit_1xy(s, r, terms=2000)


@given(interior)
@settings(max_examples=20, deadline=None)
def test_tail_bound_controls_truncation(p):
    r, s = p
    near = decimation_limit_1xy(r, s, terms=200)
    ref = decimation_limit_1xy(r, s, terms=200_000)
    assert abs(near - ref) <= series_tail_bound(r, s, 200) + 1e-12


@given(interior, interior)
@settings(max_examples=30, deadline=None)
def test_concave_midpoint(p, q):
    a = decimation_limit_1xy(*p, terms=20_000)
    b = decimation_limit_1xy(*q, terms=20_000)
    mid = decimation_limit_1xy((p[0] + q[0]) / 2, (p[1] + q[1]) / 2,
                               terms=20_000)
    assert mid >= (a + b) / 2 - 1e-4


def test_golden_forms_are_dual():
    kinks = [math.log(GOLDEN), -math.log(GOLDEN)]
    us = np.concatenate([np.linspace(-3, 3, 6001), kinks])
    R = np.array([golden_ronkin(u) for u in us])
    for r in (0.25, 1.0, 1.6):
        assert np.min(R - r * us) == pytest.approx(golden_limit(r), abs=1e-6)
    assert golden_limit(-0.1) == -math.inf
    assert golden_limit(1.0) == pytest.approx(math.log(GOLDEN))


def test_angle_gradient():
    r, s = angle_gradient(0.0, 0.0)
    assert (r, s) == pytest.approx((1 / 3, 1 / 3))
    r, s = angle_gradient(math.log(2), math.log(2))
    assert r == pytest.approx(s)
    # law of sines: e^u / sin(pi r) = e^v / sin(pi s)
    u, v = 0.3, -0.1
    r, s = angle_gradient(u, v)
    assert math.exp(u) / math.sin(math.pi * r) == pytest.approx(
        math.exp(v) / math.sin(math.pi * s))
    with pytest.raises(ValueError):
        angle_gradient(2.0, 0.0)


def _grid15():
    return [(i / 7, j / 7) for i in range(1, 7) for j in range(1, 7)
            if i + j <= 6]


def test_series_matches_numerical_limit():
    from decilim import decimation_limit, parse_poly
    f = parse_poly("1+x+y")
    for r, s in _grid15():
        assert abs(decimation_limit_1xy(r, s) -
                   decimation_limit(f, (r, s), tol=1e-8)) < 1e-3


def test_maximum_at_centroid():
    vals = {p: decimation_limit_1xy(*p) for p in _grid15() + [(1 / 3, 1 / 3)]}
    assert max(vals, key=vals.get) == (1 / 3, 1 / 3)


@pytest.mark.parametrize("u,v", [(0.0, 0.0), (0.3, -0.1), (-0.5, 0.2),
                                 (0.6, 0.55)])
def test_change_of_variables_round_trip(u, v):
    r, s = angle_gradient(u, v)
    den = math.sin(math.pi * (r + s))
    assert math.log(math.sin(math.pi * r) / den) == pytest.approx(u, abs=1e-8)
    assert math.log(b_of(r, s)) == pytest.approx(v, abs=1e-8)
