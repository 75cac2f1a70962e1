import pytest

from borcherds_group.action import (
    ActionError, ActionRow, ExpGen, GeneratorActionTable, KMGroupWord, LadderOverflow, Torus,
    act_enveloping, ad_group, derive, e_label, exp_derivation, f_label, h_label, support_roots,
    torus_apply, word_matrix,
)
from borcherds_group.algebra import Alphabet, NcPolynomial, Q, RootVector
from borcherds_group.freelie import LieSeries
from borcherds_group.models import CoefficientTable, build_fricke, build_monster


@pytest.fixture(scope="module")
def monster():
    return build_monster(3, 2, 4)


def gen(m, label, N=4):
    return NcPolynomial.gen(m.alphabet, label, N)


def test_e_kills_top_vector(monster):
    b1 = gen(monster, "f[l=0,j=3,k=1]")
    assert derive(monster.table, e_label("-1"), b1).is_zero()
    assert exp_derivation(monster.table, e_label("-1"), Q(5), b1) == b1


def test_h_acts_by_weight(monster):
    w = gen(monster, "f[l=0,j=3,k=1]") * gen(monster, "f[l=1,j=2,k=1]")
    assert derive(monster.table, h_label("-1"), w) == w.scale(2 - 1)


def test_exp_f_on_two_dim_block(monster):
    u = Q(3, 2)
    got = exp_derivation(monster.table, f_label("-1"), u, gen(monster, "f[l=0,j=2,k=1]"))
    assert got == gen(monster, "f[l=0,j=2,k=1]") + gen(monster, "f[l=1,j=2,k=1]").scale(u)


def test_exp_zero_is_identity(monster):
    p = gen(monster, "f[l=1,j=3,k=2]")
    assert exp_derivation(monster.table, f_label("-1"), 0, p) == p


def test_torus_weights_monster(monster):
    s = Q(2)
    for g in monster.alphabet:
        l, j = (int(x.split("=")[1]) for x in g.label[2:-1].split(",")[:2])
        p = gen(monster, g.label)
        assert torus_apply(monster.table, h_label("-1"), s, p) == p.scale(s ** ((j - 1) - 2 * l))
    assert torus_apply(monster.table, h_label("-1"), 1, p) == p


def test_torus_weights_fricke():
    m = build_fricke(1, CoefficientTable.identity(3), 2, 1, 3)
    for g in m.alphabet:
        l, j = (int(x.split("=")[1]) for x in g.label[2:-1].split(",")[:2])
        p = NcPolynomial.gen(m.alphabet, g.id, 3)
        assert torus_apply(m.table, h_label("-1"), Q(3), p) == p.scale(Q(3) ** (j - 2 * l))


def test_cartan_exponential_is_refused(monster):
    with pytest.raises(ActionError):
        exp_derivation(monster.table, h_label("-1"), 1, gen(monster, "f[l=0,j=1,k=1]"))


def test_non_nilpotent_row_is_rejected():
    a = Alphabet.from_labels(["p", "q"], degrees=[RootVector(), RootVector()])
    rows = [ActionRow("e_{1}", "e", "1", {0: {1: 1}, 1: {0: 1}})]
    with pytest.raises(ActionError):
        GeneratorActionTable(a, ["1"], {("1", "1"): 2}, rows)


def test_wrong_degree_row_is_rejected():
    a = Alphabet.from_labels(["p", "q"])
    rows = [ActionRow("e_{1}", "e", "1", {0: {1: 1}})]
    with pytest.raises(ActionError):
        GeneratorActionTable(a, ["1"], {("1", "1"): 2}, rows)


def test_worked_example(monster):
    x = [(1, [f_label("-1"), f_label("-1")]), (1, [f_label("-1"), e_label("-1")]),
         (-1, [f_label("-1"), h_label("-1")])]
    got = act_enveloping(monster.table, x, gen(monster, "f[l=0,j=3,k=1]"))
    assert got == gen(monster, "f[l=2,j=3,k=1]") - gen(monster, "f[l=1,j=3,k=1]").scale(2)


def test_words(monster):
    g = KMGroupWord([ExpGen(e_label("-1"), Q(2)), Torus(h_label("-1"), Q(3))])
    assert g.inverse() == KMGroupWord([Torus(h_label("-1"), Q(1, 3)), ExpGen(e_label("-1"), Q(-2))])
    assert KMGroupWord.from_json(g.to_json()) == g
    m = word_matrix(monster.table, g * g.inverse())
    assert all(m[s] == {s: 1} for s in range(len(monster.alphabet)))


def test_ad_group(monster):
    L = LieSeries.gen(monster.alphabet, "f[l=0,j=2,k=1]", 4)
    assert ad_group(monster.table, KMGroupWord(), L) == L
    g = KMGroupWord([ExpGen(f_label("-1"), Q(1))])
    a = LieSeries.gen(monster.alphabet, "f[l=0,j=3,k=1]", 4)
    lhs = ad_group(monster.table, g, L.bracket(a))
    assert lhs == ad_group(monster.table, g, L).bracket(ad_group(monster.table, g, a))


def test_support_roots(monster):
    f0 = LieSeries.gen(monster.alphabet, "f[l=0,j=2,k=1]", 4)
    f1 = LieSeries.gen(monster.alphabet, "f[l=1,j=3,k=2]", 4)
    assert support_roots(f1) == {RootVector({"-1": -1, "3,2": -1})}
    assert support_roots(LieSeries.zero(monster.alphabet, 4)) == set()
    g = LieSeries.gen(monster.alphabet, "f[l=0,j=3,k=1]", 4)
    assert support_roots(f0.bracket(g)) == {RootVector({"2,1": -1, "3,1": -1})}


def test_ladder_overflow_guard(monster):
    t = monster.table
    saved = dict(t.ladder)
    try:
        for k in t.ladder:
            t.ladder[k] = 0
        with pytest.raises(LadderOverflow):
            exp_derivation(t, f_label("-1"), 1, gen(monster, "f[l=0,j=3,k=1]"))
    finally:
        t.ladder.update(saved)
