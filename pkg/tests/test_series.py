from fractions import Fraction

import pytest

from mubar.series import (ConwayPoly, LaurentPoly, MultiSeries, NCSeries, SeriesError, USeries,
                          ZSeries, abelianize, binomial_series, collapse, conway_from_laurent,
                          dumps, laurent_monomial_multi, magnus_expand, reverse, u_of_z, z_of_u)
from mubar.words import Word


def test_magnus_of_generators():
    s = magnus_expand(Word.gen(1), 2, 3)
    assert s[()] == 1 and s[(1,)] == 1 and s[(1, 1)] == 0
    inv = magnus_expand(Word.gen(1, -1), 2, 3)
    assert [inv[(1,) * k] for k in range(4)] == [1, -1, 1, -1]


def test_magnus_commutator():
    # [x1, x2] = 1 + u1 u2 - u2 u1 + higher terms
    w = Word.parse("X1 X2 X1^-1 X2^-1")
    s = magnus_expand(w, 2, 2)
    assert s[(1, 2)] == 1 and s[(2, 1)] == -1
    assert s[(1,)] == 0 and s[(1, 1)] == 0


def test_ncseries_inverse():
    s = magnus_expand(Word.parse("X1 X2^2"), 2, 4)
    assert s * s.inverse() == NCSeries.one(2, 4)


def test_collapse_and_abelianize():
    s = magnus_expand(Word.parse("X1 X2"), 2, 3)
    c = collapse(s)
    assert isinstance(c, USeries) and list(c.coeffs) == [1, 2, 1, 0]
    a = abelianize(s)
    assert a.specialize() == c


def test_truncation_mismatch_is_an_error():
    with pytest.raises(SeriesError):
        USeries((1, 2), 3) + USeries((1,), 4)
    with pytest.raises(SeriesError):
        USeries((1,), 3) + ZSeries((1,), 3)


def test_series_arithmetic():
    u = USeries.gen(5)
    one = USeries.one(5)
    geo = (one + u).inverse()
    assert list(geo.coeffs) == [1, -1, 1, -1, 1, -1]
    assert (one + u) ** 3 == USeries((1, 3, 3, 1), 5)
    assert (u.shift(2))[3] == 1
    assert (u * u).valuation() == 2
    assert not USeries((Fraction(1, 2),), 2).is_integral()


def test_binomial_and_reversion():
    assert binomial_series(Fraction(1, 2), 3).coeffs == (1, Fraction(1, 2), Fraction(-1, 8),
                                                          Fraction(1, 16))
    f = z_of_u(8)
    g = reverse(f)
    assert f.compose(g) == USeries.gen(8)


def test_u_of_z_low_terms():
    u = u_of_z(4)
    assert u.coeffs[:4] == (0, 1, Fraction(1, 2), Fraction(1, 8))


def test_multiseries():
    v1 = MultiSeries.var(1, 2, 3)
    v2 = MultiSeries.var(2, 2, 3)
    p = (v1 + v2) * v1
    assert p.lowest_degree() == 2
    assert p.homogeneous_part(2) == {(2, 0): 1, (1, 1): 1}
    assert p.specialize() == USeries((0, 0, 2), 3)
    t1 = laurent_monomial_multi((1, 0), 3)
    assert t1 == MultiSeries.one(2, 3) + v1
    assert laurent_monomial_multi((-1, 0), 3) * t1 == MultiSeries.one(2, 3)


def test_laurent_and_conway():
    t = LaurentPoly.t(1)
    z = t - LaurentPoly.t(-1)
    assert conway_from_laurent(z * z + 1) == ConwayPoly([1, 0, 1])
    with pytest.raises(SeriesError):
        conway_from_laurent(t)
    p = ConwayPoly([1, -2, 0, 3])
    assert p.mirror() == ConwayPoly([1, 2, 0, -3])
    assert p.shift(2)[5] == 3
    assert p.to_zseries(2) == ZSeries((1, -2, 0), 2)
    assert str(ConwayPoly([0, -1])) == "-z"
    assert ConwayPoly([1]) == 1


def test_laurent_to_useries():
    # t^-1 = 1/(1+u)
    s = LaurentPoly.t(-1).to_useries(4)
    assert list(s.coeffs) == [1, -1, 1, -1, 1]


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
