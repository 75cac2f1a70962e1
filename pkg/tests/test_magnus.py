import random

import pytest

from borcherds_group.algebra import NcPolynomial, Q
from borcherds_group.freelie import LieSeries, NotLieError
from borcherds_group.magnus import MagnusElement, from_series, m_exp, m_id, m_inv, m_mul, to_series
from borcherds_group.sampling import random_lie
from conftest import poly


def test_inverse_pairs(xy):
    x = LieSeries.gen(xy, 0, 4)
    assert m_mul(m_exp(x), m_exp(-x)).is_identity()
    assert m_inv(m_exp(x)) == m_exp(-x)


def test_product_degree_two(xy):
    x, y = LieSeries.gen(xy, 0, 2), LieSeries.gen(xy, 1, 2)
    assert m_mul(m_exp(x), m_exp(y)).log == x + y + x.bracket(y).scale(Q(1, 2))


def test_series_conversions(xy):
    assert to_series(m_id(xy, 3)) == NcPolynomial.one(xy, 3)
    u = poly(xy, {"": 1, "x": 1, "xx": Q(1, 2), "xxx": Q(1, 6)}, 3)
    assert from_series(u) == m_exp(LieSeries.gen(xy, 0, 3))


def test_from_series_rejects_non_group(xy):
    with pytest.raises(NotLieError) as err:
        from_series(poly(xy, {"": 1, "xy": 1}, 3))
    assert err.value.degree == 2


def test_json(xyz):
    g = MagnusElement(random_lie(random.Random(1), xyz, 4))
    assert MagnusElement.from_json(xyz, g.to_json()) == g
