"""Base scalars, h-polynomial rings, and coefficient algebras."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qexterior.coeffs import FourierCoeff, PolyCoeff
from qexterior.hpoly import HLaurent, HPoly, poly_gcd, hpoly_from_json, hpoly_to_json
from qexterior.scalars import GRat, I, scalar_from_json, scalar_to_json

fractions_st = st.builds(Fraction,
                         st.integers(min_value=-30, max_value=30),
                         st.integers(min_value=1, max_value=12))
grats_st = st.builds(GRat, fractions_st, fractions_st)


def hpoly_st(laurent=False):
    lo = -3 if laurent else 0
    cls = HLaurent if laurent else HPoly
    return st.dictionaries(st.integers(min_value=lo, max_value=4),
                           fractions_st, max_size=4).map(cls)


def polycoeff_st(dim=2):
    keys = st.tuples(*[st.integers(min_value=0, max_value=3)] * dim)
    return st.dictionaries(keys, fractions_st, max_size=3).map(
        lambda d: PolyCoeff(dim, d))


def fouriercoeff_st(dim=2):
    keys = st.tuples(*[st.integers(min_value=-2, max_value=2)] * dim)
    return st.dictionaries(keys, grats_st, max_size=3).map(
        lambda d: FourierCoeff(dim, d))


class TestGRat:
    def test_basics(self):
        z = GRat(Fraction(1, 2), Fraction(-3))
        assert z.conjugate().conjugate() == z
        assert I * I == -1
        assert (z * z.conjugate()).is_real()
        assert GRat(2) / GRat(0, 1) == GRat(0, -2)

    def test_division_inverse(self):
        z = GRat(Fraction(3, 7), Fraction(2, 5))
        assert z * (GRat(1) / z) == 1

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            GRat(1) / GRat(0)

    @given(grats_st, grats_st, grats_st)
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a

    def test_serialization_roundtrip(self):
        z = GRat(Fraction(-2, 3), Fraction(5, 7))
        assert scalar_from_json(scalar_to_json(z)) == z
        q = Fraction(9, 4)
        assert scalar_from_json(scalar_to_json(q)) == q


class TestHPoly:
    def test_grading_and_basics(self):
        p = HPoly({0: 1, 2: Fraction(3, 2)})
        assert p.degree() == 2
        assert (p - p).is_zero()
        assert HPoly.h() * HPoly.h() == HPoly({2: 1})

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            HPoly({-1: 1})
        HLaurent({-1: 1})  # fine

    @given(hpoly_st(), hpoly_st(), hpoly_st())
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a

    @given(hpoly_st(laurent=True), hpoly_st(laurent=True), hpoly_st(laurent=True))
    @settings(max_examples=60, deadline=None)
    def test_laurent_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(hpoly_st(), hpoly_st())
    @settings(max_examples=60, deadline=None)
    def test_divmod(self, a, b):
        if b.is_zero():
            return
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree() < b.degree()

    @given(hpoly_st(laurent=True), hpoly_st(laurent=True))
    @settings(max_examples=60, deadline=None)
    def test_laurent_divmod(self, a, b):
        if b.is_zero():
            return
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.euclid_size() < b.euclid_size()

    def test_laurent_units(self):
        u = HLaurent({-3: Fraction(2)})
        assert u.is_unit()
        assert u * u.inv_unit() == HLaurent.one()
        assert not HLaurent({0: 1, 1: 1}).is_unit()

    def test_normalized_forms(self):
        p = HPoly({2: Fraction(2), 0: Fraction(4)})
        assert p.normalized().leading() == 1
        q = HLaurent({-2: Fraction(3), 1: Fraction(6)})
        nq = q.normalized()
        assert nq.valuation() == 0 and nq.leading() == 1
        assert q.unit_part() * nq == q

    def test_gcd(self):
        a = HPoly({2: 1, 1: -2, 0: 1})        # (h-1)^2
        b = HPoly({1: 1, 0: -1})              # h-1
        assert poly_gcd(a, b) == b

    def test_json_roundtrip(self):
        p = HLaurent({-1: GRat(0, Fraction(1, 2)), 2: Fraction(3)})
        assert hpoly_from_json(hpoly_to_json(p), laurent=True) == p


class TestCoefficients:
    def test_poly_partial(self):
        x1 = PolyCoeff.variable(2, 1)
        x2 = PolyCoeff.variable(2, 2)
        f = x1 * x1 * x2
        assert f.partial(1) == x1 * x2 * 2
        assert PolyCoeff.const(2, 5).partial(2).is_zero()

    def test_fourier_partial(self):
        c = FourierCoeff.character(2, (1, 0))
        assert c.partial(1) == c * GRat(0, 1)
        assert c.partial(2).is_zero()

    def test_partial_out_of_range(self):
        with pytest.raises(IndexError):
            PolyCoeff.one(2).partial(3)
        with pytest.raises(IndexError):
            FourierCoeff.one(2).partial(0)

    def test_total_integral(self):
        assert FourierCoeff.character(2, (1, 0)).total_integral() == 0
        assert FourierCoeff.const(2, Fraction(3, 4)).total_integral() == Fraction(3, 4)
        c = FourierCoeff.const(2, 2) + FourierCoeff.character(2, (1, 1))
        assert c.total_integral() == 2

    def test_real_valued_criterion(self):
        c = FourierCoeff(2, {(1, 0): GRat(Fraction(1, 2), Fraction(1, 3)),
                             (-1, 0): GRat(Fraction(1, 2), Fraction(-1, 3))})
        assert c.is_real_valued()
        assert not FourierCoeff.character(2, (1, 0)).is_real_valued()

    @given(polycoeff_st(), polycoeff_st(), polycoeff_st())
    @settings(max_examples=40, deadline=None)
    def test_poly_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a

    @given(fouriercoeff_st())
    @settings(max_examples=40, deadline=None)
    def test_partials_commute(self, c):
        assert c.partial(1).partial(2) == c.partial(2).partial(1)

    @given(polycoeff_st())
    @settings(max_examples=40, deadline=None)
    def test_poly_partials_commute(self, c):
        assert c.partial(1).partial(2) == c.partial(2).partial(1)
