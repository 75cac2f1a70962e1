import random

import pytest

from borcherds_group.algebra import Alphabet, NcPolynomial, Q
from borcherds_group.freelie import (
    LieSeries, NotLieError, bch, bch_series, bracketing, dsw_project, exp, is_lie, is_lyndon, log,
    lyndon_coordinates, lyndon_words, mobius, standard_factorization, witt_dimension,
)
from borcherds_group.sampling import random_lie
from conftest import poly


def witt(k, n):
    # necklace count, written independently of the library helper
    return sum(mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


@pytest.mark.parametrize("k,n", [(2, 1), (2, 2), (2, 5), (3, 4), (3, 6)])
def test_lyndon_counts_match_witt(k, n):
    words = [w for w in lyndon_words(k, n) if len(w) == n]
    assert len(words) == witt(k, n) == witt_dimension(k, n)
    assert all(is_lyndon(w) for w in words)


def test_small_lyndon_lists(xy):
    assert [w for w in lyndon_words(xy, 1)] == [(0,), (1,)]
    assert [w for w in lyndon_words(xy, 2) if len(w) == 2] == [(0, 1)]


def test_standard_factorization():
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))


def test_bracketing(xy):
    assert bracketing(xy, (0,), 4) == poly(xy, {"x": 1}, 4)
    assert bracketing(xy, (0, 1), 4) == poly(xy, {"xy": 1, "yx": -1}, 4)
    assert bracketing(xy, (0, 0, 1), 4) == poly(xy, {"xxy": 1, "xyx": -2, "yxx": 1}, 4)


def test_dsw(xy):
    assert dsw_project(poly(xy, {"x": 1})) == poly(xy, {"x": 1})
    c = poly(xy, {"xy": 1, "yx": -1})
    assert dsw_project(c) == c.scale(2)
    assert dsw_project(poly(xy, {"xy": 1, "yx": 1})).is_zero()


def test_is_lie(xy):
    assert is_lie(poly(xy, {"xy": 1, "yx": -1}))
    assert not is_lie(poly(xy, {"xy": 1}))
    for w in lyndon_words(xy, 5):
        assert is_lie(bracketing(xy, w, 5))


def test_lyndon_coordinates_inverts_bracketing(xyz):
    rng = random.Random(3)
    L = random_lie(rng, xyz, 5, terms=3)
    assert LieSeries.from_poly(L.to_poly()) == L


def test_lyndon_coordinates_rejects_non_lie(xy):
    with pytest.raises(NotLieError):
        lyndon_coordinates(poly(xy, {"xy": 1}))


def test_exp_single_variable(xy):
    assert exp(LieSeries.zero(xy, 3)) == NcPolynomial.one(xy, 3)
    x = LieSeries.gen(xy, 0, 3)
    assert exp(x) == poly(xy, {"": 1, "x": 1, "xx": Q(1, 2), "xxx": Q(1, 6)}, 3)


def test_log_exp_roundtrip(xyz):
    rng = random.Random(5)
    for _ in range(5):
        L = random_lie(rng, xyz, 5)
        assert log(exp(L)) == L


def test_bch_low_degrees(xy):
    x, y = LieSeries.gen(xy, 0, 3), LieSeries.gen(xy, 1, 3)
    xy_ = x.bracket(y)
    want = x + y + xy_.scale(Q(1, 2)) + x.bracket(xy_).scale(Q(1, 12)) + y.bracket(y.bracket(x)).scale(Q(1, 12))
    assert bch(x, y) == want


def test_bch_identities(xyz):
    rng = random.Random(9)
    L = random_lie(rng, xyz, 4)
    assert bch(L, -L).is_zero()
    assert bch(L, LieSeries.zero(xyz, 4)) == L


def test_bch_template_matches_series(xyz):
    rng = random.Random(11)
    for _ in range(5):
        a, b = random_lie(rng, xyz, 5), random_lie(rng, xyz, 5)
        assert bch(a, b) == bch_series(a, b)


def test_lie_series_json(xyz):
    L = random_lie(random.Random(2), xyz, 4)
    assert LieSeries.from_json(xyz, L.to_json()) == L
