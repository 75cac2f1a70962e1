import random

import pytest

from borcherds_group.action import ExpGen, KMGroupWord, Torus, ad_group, e_label, f_label, h_label
from borcherds_group.algebra import AlgebraError, Q
from borcherds_group.freelie import LieSeries
from borcherds_group.magnus import MagnusElement, m_exp
from borcherds_group.models import build_gnome, build_monster
from borcherds_group.sampling import random_element
from borcherds_group.semidirect import (
    BasisChange, EquivarianceError, GroupElement, ModelMismatch, conjugate, from_magnus, from_word,
    g_inv, g_mul, identity, quotient,
)


@pytest.fixture(scope="module")
def monster():
    return build_monster(3, 2, 4)


def test_identity_laws(monster):
    x = random_element(random.Random(0), monster)
    e = identity(monster)
    assert g_mul(e, x).equals(x) and g_mul(x, e).equals(x)
    assert g_inv(e).is_identity()


def test_word_times_magnus(monster):
    g = KMGroupWord([ExpGen(f_label("-1"), Q(2)), Torus(h_label("-1"), Q(3))])
    n = MagnusElement(LieSeries.gen(monster.alphabet, "f[l=0,j=3,k=1]", 4))
    got = g_mul(from_word(monster, g), from_magnus(monster, n))
    assert got.n == MagnusElement(ad_group(monster.table, g, n.log)) and got.g == g


def test_inverses(monster):
    n = MagnusElement(LieSeries.gen(monster.alphabet, 0, 4, 3))
    assert g_inv(from_magnus(monster, n)).n == n.inverse()
    g = KMGroupWord([ExpGen(e_label("-1"), Q(1)), ExpGen(f_label("-1"), Q(2))])
    assert g_inv(from_word(monster, g)).g == KMGroupWord(
        [ExpGen(f_label("-1"), Q(-2)), ExpGen(e_label("-1"), Q(-1))])


def test_conjugation_by_torus(monster):
    s, v = Q(2), Q(5)
    gid = monster.generator("f[l=0,j=3,k=1]").id
    a = from_word(monster, KMGroupWord([Torus(h_label("-1"), s)]))
    m = m_exp(LieSeries.gen(monster.alphabet, gid, 4, v))
    assert conjugate(a, m) == m_exp(LieSeries.gen(monster.alphabet, gid, 4, v * s ** 2))
    assert conjugate(identity(monster), m) == m


def test_quotient(monster):
    x = random_element(random.Random(4), monster)
    assert quotient(x) == x.g


def test_model_mismatch(monster):
    other = build_gnome()
    with pytest.raises(ModelMismatch):
        g_mul(identity(monster), identity(other))
    with pytest.raises(ModelMismatch):
        g_mul(identity(monster), identity(monster, 3))


def test_element_json(monster):
    x = random_element(random.Random(8), monster)
    y = GroupElement.from_json(monster, x.to_json())
    assert y.equals(x) and y.to_json() == x.to_json()
    d = x.to_json()
    del d["g"]
    with pytest.raises(AlgebraError):
        GroupElement.from_json(monster, d)


def test_basis_change_identity_and_errors(monster):
    psi = BasisChange(monster, {})
    x = random_element(random.Random(1), monster)
    assert psi(x).equals(x)
    a = monster.generator("f[l=0,j=3,k=1]").id
    b = monster.generator("f[l=0,j=2,k=1]").id
    with pytest.raises(EquivarianceError) as err:
        BasisChange(monster, {a: {b: 1}, b: {a: 1}})
    assert err.value.generator is not None
    with pytest.raises(AlgebraError):
        BasisChange(monster, {a: {}})


def test_k_swap_is_homomorphism(monster):
    n = len(monster.alphabet)
    rho = {s: {s: 1} for s in range(n)}
    for l in range(3):
        a = monster.generator(f"f[l={l},j=3,k=1]").id
        b = monster.generator(f"f[l={l},j=3,k=2]").id
        rho[a], rho[b] = {b: 1}, {a: 1}
    psi = BasisChange(monster, rho)
    rng = random.Random(2)
    for _ in range(5):
        x, y = random_element(rng, monster), random_element(rng, monster)
        assert psi(g_mul(x, y)).equals(g_mul(psi(x), psi(y)))
