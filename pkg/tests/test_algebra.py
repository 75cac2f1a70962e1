import json
from fractions import Fraction

import pytest

from borcherds_group.algebra import (
    AlgebraError, Alphabet, AlphabetMismatch, BorcherdsCartanMatrix, NcPolynomial, Q, RootVector,
    as_scalar, pairing, poly_mul, validate_bcm, word_degree,
)
from conftest import poly

H3_B = [[2, -3, -1], [-3, 2, -1], [-1, -1, -2]]


def test_scalars_are_exact():
    assert as_scalar("3/6") == Q(1, 2)
    assert as_scalar(Fraction(2, 4)) == Q(1, 2)
    assert hash(Q(1, 2)) == hash(Fraction(1, 2))
    with pytest.raises(TypeError):
        as_scalar(0.5)


def test_addition(xy):
    x = poly(xy, {"x": 1})
    assert (x + (-x)).is_zero()
    assert poly(xy, {"": 1, "xy": 1}) + poly(xy, {"xy": 1}) == poly(xy, {"": 1, "xy": 2})
    assert x + NcPolynomial.zero(xy, 6) == x


def test_multiplication_and_truncation(xy):
    a, b = poly(xy, {"": 1, "x": 1}, 2), poly(xy, {"": 1, "y": 1}, 2)
    assert poly_mul(a, b, 2) == poly(xy, {"": 1, "x": 1, "y": 1, "xy": 1}, 2)
    assert poly_mul(a, b, 1) == poly(xy, {"": 1, "x": 1, "y": 1}, 1)
    x, y = poly(xy, {"x": 1}), poly(xy, {"y": 1})
    assert poly_mul(x, y, 6) != poly_mul(y, x, 6)


def test_alphabet_mismatch(xy, xyz):
    with pytest.raises(AlphabetMismatch):
        poly(xy, {"x": 1}) + poly(xyz, {"x": 1})


def test_word_degree():
    a = Alphabet.from_labels(["s", "t"], degrees=[RootVector({"3": -1}), RootVector({"1": -1, "3": -1})])
    assert word_degree(a, ()) == RootVector()
    assert word_degree(a, (0,)) == RootVector({"3": -1})
    assert word_degree(a, (0, 1)) == RootVector({"1": -1, "3": -2})


def test_polynomial_json_roundtrip(xy):
    p = poly(xy, {"": 1, "xy": Q(-3, 2), "yx": 5})
    d = json.loads(json.dumps(p.to_json()))
    assert NcPolynomial.from_json(xy, d) == p


def test_bcm_h3_passes():
    assert validate_bcm(BorcherdsCartanMatrix(["1", "2", "3"], H3_B)).ok


def test_bcm_positive_off_diagonal_fails_b2():
    rep = validate_bcm(BorcherdsCartanMatrix(["1", "2"], [[2, 1], [1, 2]]))
    assert not rep.ok and any(v[0] == "B2" for v in rep.violations)


def test_bcm_b3_and_symmetry():
    rep = validate_bcm(BorcherdsCartanMatrix(["1", "2"], [[2, -1], [-2, 2]]))
    assert any(v[0] == "B1" for v in rep.violations)
    rep = validate_bcm(BorcherdsCartanMatrix(["1", "2"], [[4, -1], [-1, 2]]))
    assert any(v[0] == "B3" for v in rep.violations)


def test_bcm_orthogonal_imaginary_fails():
    rep = validate_bcm(BorcherdsCartanMatrix(["a", "b"], [[-2, 0], [0, -2]]))
    assert any(v[0] == "imaginary-orthogonal" for v in rep.violations)


def test_pairing_h3():
    B = BorcherdsCartanMatrix(["1", "2", "3"], H3_B)
    a1, a2 = RootVector({"1": 1}), RootVector({"2": 1})
    assert pairing(B, a1, a1) == 2
    assert pairing(B, a1 + a2, a1 + a2) == -2
    assert pairing(B, a1, RootVector()) == 0


def test_bcm_json_roundtrip():
    B = BorcherdsCartanMatrix(["1", "2", "3"], H3_B)
    assert BorcherdsCartanMatrix.from_json(json.loads(json.dumps(B.to_json()))).rows() == B.rows()


def test_bcm_outside_window():
    B = BorcherdsCartanMatrix(["1"], [[2]])
    with pytest.raises(AlgebraError):
        B["1", "9"]
