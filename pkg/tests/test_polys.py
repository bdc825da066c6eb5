from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import lagrange
from ridercount import polys

fracs = st.builds(Fraction, st.integers(-48, 48), st.integers(1, 20))
poly_st = st.lists(fracs, max_size=6)


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=7, unique=True), st.data())
def test_interpolate_matches_lagrange(xs, data):
    ys = data.draw(st.lists(fracs, min_size=len(xs), max_size=len(xs)))
    p = polys.interpolate(xs, ys)
    assert polys.degree(p) < len(xs)
    for x in list(xs) + [31, -31, 0]:
        assert polys.evaluate(p, x) == lagrange(xs, ys, x)


@given(poly_st, poly_st)
def test_divmod_identity(a, b):
    if not polys.trim(b):
        return
    q, r = polys.divmod_poly(a, b)
    assert polys.add(polys.mul(q, b), r) == polys.trim(a)
    assert polys.degree(r) < polys.degree(b)


@given(poly_st, poly_st, poly_st)
def test_gcd_divides_and_recovers_common_factor(a, b, f):
    f = polys.trim(f)
    if not f or not polys.trim(a) or not polys.trim(b):
        return
    g = polys.gcd(polys.mul(a, f), polys.mul(b, f))
    assert g[-1] == 1
    assert polys.divmod_poly(polys.mul(a, f), g)[1] == []
    assert polys.divmod_poly(g, polys.monic(f))[1] == [] or polys.degree(f) == 0


def test_gcd_example():
    # (x-1)^2 (x+2) and (x-1)(x+3)
    a = polys.mul(polys.power([-1, 1], 2), [2, 1])
    b = polys.mul([-1, 1], [3, 1])
    assert polys.gcd(a, b) == [-1, 1]


def test_series_divide_geometric():
    assert polys.series_divide([1], [1, -1], 5) == [1, 1, 1, 1, 1]
    assert polys.series_divide([0, 1], [1, -2, 1], 5) == [0, 1, 2, 3, 4]
    with pytest.raises(ZeroDivisionError):
        polys.series_divide([1], [0, 1], 3)


def test_primitive_integer():
    ints, factor = polys.primitive_integer([Fraction(1, 2), Fraction(-3, 4)])
    assert ints == [2, -3] and factor == Fraction(1, 4)
    assert polys.primitive_integer([]) == ([], 0)


def test_interpolate_rejects_bad_nodes():
    with pytest.raises(ValueError):
        polys.interpolate([1, 1], [2, 3])
    with pytest.raises(ValueError):
        polys.interpolate([1, 2], [2])
