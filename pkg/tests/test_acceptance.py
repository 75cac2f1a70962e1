"""Acceptance suite: one test per criterion, exact unless a runtime bound is stated."""

import json
import random
import time
from itertools import product

import pytest

from borcherds_group.action import KMGroupWord, check_commutation
from borcherds_group.algebra import Alphabet, NcPolynomial, Q
from borcherds_group.cli import main
from borcherds_group.freelie import LieSeries, bch, bch_series, exp, log
from borcherds_group.kacmoody import GCM, build_irreducible, peterson_mult
from borcherds_group.magnus import MagnusElement, m_id, m_inv, m_mul, to_series
from borcherds_group.models import (
    CoefficientTable, ModelSpec, build_e10, build_fricke, build_gnome, build_h3, build_monster,
    e10_gcm,
)
from borcherds_group.qseries import (
    free_lie_root_mult, gnome_simple_multiplicities, j_coefficients, j_coefficients_e6,
    j_coefficients_eta, partition_p, two_one,
)
from borcherds_group.sampling import random_element, random_lie
from borcherds_group.semidirect import GroupElement
from borcherds_group.verify import (
    KM_CASES, km_crosscheck, run_suite, sl2_printed_forms, worked_example,
)

SEED = 7
FRICKE_TABLE = CoefficientTable(2, {-1: 1, 1: 2, 2: 1, 3: 2})

# everything produced by criteria 1-12, round-tripped by criterion 13
PRODUCED: list = []


def models():
    return {
        "monster": build_monster(3, 2, 4),
        "fricke": build_fricke(2, FRICKE_TABLE, 3, 2, 4),
        "h3": build_h3(3, 4),
        "e10": build_e10(1, 2, 4),
        "gnome": build_gnome(2, 3, 1, 4),
    }


@pytest.fixture(scope="module")
def built():
    ms = models()
    PRODUCED.extend(("model", m) for m in ms.values())
    PRODUCED.append(("table", FRICKE_TABLE))
    return ms


def passed(rep):
    PRODUCED.append(("report", rep))
    bad = [c["name"] for c in rep.checks if not c["passed"]]
    assert not bad, f"{rep.suite} on {rep.model.model_id}: {bad}"
    assert not rep.skipped, f"{rep.suite}: unverified {[s['check'] for s in rep.skipped]}"
    assert rep.checks


def test_c01_j_coefficients(capsys):
    t = time.perf_counter()
    assert main(["coeffs", "j", "3"]) == 0
    assert capsys.readouterr().out.strip() == "1, 0, 196884, 21493760, 864299970"
    a = j_coefficients(10)
    assert a == j_coefficients_eta(10) == j_coefficients_e6(10)
    assert time.perf_counter() - t < 1.0


def test_c02_magnus_group_laws():
    t = time.perf_counter()
    xyz = Alphabet.from_labels("xyz")
    N = 5
    rng = random.Random(SEED)
    e = m_id(xyz, N)
    for _ in range(100):
        a, b, c = (MagnusElement(random_lie(rng, xyz, N, terms=2)) for _ in range(3))
        assert m_mul(m_mul(a, b), c) == m_mul(a, m_mul(b, c))
        assert m_mul(e, a) == a == m_mul(a, e)
        assert m_mul(a, m_inv(a)).is_identity() and m_mul(m_inv(a), a).is_identity()
        # the product agrees with the product of the series themselves
        assert to_series(m_mul(a, b)) == (to_series(a) * to_series(b)).truncate(N)
        assert log(exp(a.log)) == a.log
    assert time.perf_counter() - t < 60


def _dynkin_bch4(x: LieSeries, y: LieSeries) -> LieSeries:
    xy = x.bracket(y)
    return (x + y + xy.scale(Q(1, 2)) + x.bracket(xy).scale(Q(1, 12))
            - y.bracket(xy).scale(Q(1, 12)) - y.bracket(x.bracket(xy)).scale(Q(1, 24)))


def test_c03_bch_through_degree_4():
    ab = Alphabet.from_labels("xy")
    x, y = LieSeries.gen(ab, 0, 4), LieSeries.gen(ab, 1, 4)
    assert bch(x, y) == bch_series(x, y) == _dynkin_bch4(x, y)
    xyz = Alphabet.from_labels("xyz")
    rng = random.Random(SEED)
    for _ in range(20):
        a, b = random_lie(rng, xyz, 4), random_lie(rng, xyz, 4)
        assert bch(a, b) == bch_series(a, b)
        assert exp(bch(a, b)) == (exp(a) * exp(b)).truncate(4)


def test_c04_derivation_transfer(built):
    m = built["monster"]
    for block in ("3,1", "3,2"):
        got, want = worked_example(m, block)
        assert got == want
        PRODUCED.append(("poly", got))
    assert check_commutation(m.table) == []
    passed(run_suite(m, "derivation-transfer", SEED))


def test_c05_automorphism(built):
    m = built["monster"]
    assert m.truncation == 4
    rep = run_suite(m, "automorphism", SEED, samples=100)
    passed(rep)


def test_c06_semidirect_product(built):
    t = time.perf_counter()
    for name, m in built.items():
        assert m.truncation == 4
        passed(run_suite(m, "group-axioms", SEED, samples=100))
        passed(run_suite(m, "normality", SEED, samples=50))
        PRODUCED.append(("element", random_element(random.Random(SEED), m)))
    assert time.perf_counter() - t < 300


def test_c07_basis_independence():
    variants = {
        "monster": build_monster(3, 2, 4),
        "fricke": build_fricke(2, FRICKE_TABLE, 3, 2, 4),
        "h3": build_h3(2, 4, copies=2),
        "e10": build_e10(1, 1, 3, copies=2),
        "gnome": build_gnome(2, 3, 2, 4),
    }
    for m in variants.values():
        rep = run_suite(m, "basis-change", SEED, samples=50)
        assert sum(c["name"].startswith("Ψ") for c in rep.checks) >= 3
        passed(rep)


def test_c08_sl2_and_tits_relations(built):
    m = built["monster"]
    passed(run_suite(m, "sl2-relations", SEED))
    # the printed forms of relations 4-6 are recorded as failing
    from borcherds_group.action import words_equal
    assert not all(words_equal(m.table, a, b) for _, a, b in sl2_printed_forms(Q(2), Q(3), Q(5)))
    h3 = build_h3(4, 4)
    PRODUCED.append(("model", h3))
    passed(run_suite(h3, "tits-relations", SEED))


def test_c09_root_sets(built):
    rep = run_suite(built["monster"], "root-sets", SEED)
    names = " ".join(c["name"] for c in rep.checks)
    assert "0 in N" in names and "0 not in N" in names
    passed(rep)


def test_c10_km_cross_validation():
    t = time.perf_counter()
    cases = dict(KM_CASES)
    cases["E10"] = (e10_gcm(), 3)
    assert cases["A1(1)"][1] >= 6 and cases["H(3)"][1] >= 5
    for name, (A, H) in cases.items():
        assert km_crosscheck(A, H) == [], name
        PRODUCED.append(("gcm", A))
    assert peterson_mult(KM_CASES["H(3)"][0], 2).mult((1, 1)) == 1
    assert peterson_mult(KM_CASES["A1(1)"][0], 2).mult((1, 1)) == 1
    assert time.perf_counter() - t < 600


def _weyl_kac_depth2(A: GCM, lam) -> dict:
    """Character of L(λ) through depth 2 from the Weyl–Kac formula.

    Only w = 1 and the simple reflections reach depth <= 2; the positive
    roots of height <= 2 are the α_i and α_i + α_j with a_ij < 0, each of
    multiplicity one.
    """
    n = len(A)
    unit = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    num = {(0,) * n: 1}
    for i in range(n):
        shift = lam[i] + 1  # <λ+ρ, α_i^∨>
        if shift <= 2:
            c = tuple(shift * x for x in unit[i])
            num[c] = num.get(c, 0) - 1
    roots = list(unit) + [tuple(a + b for a, b in zip(unit[i], unit[j]))
                          for i in range(n) for j in range(i + 1, n) if A.rows[i][j] < 0]
    out = num
    for r in roots:  # multiply by 1/(1 - e^{-r}) = sum_k e^{-kr}
        nxt: dict = {}
        for c, x in out.items():
            k = 0
            while sum(c) + k * sum(r) <= 2:
                d = tuple(a + k * b for a, b in zip(c, r))
                nxt[d] = nxt.get(d, 0) + x
                k += 1
        out = nxt
    return {c: x for c, x in out.items() if sum(c) <= 2}


def test_c11_integrable_modules():
    sl2 = GCM(["1"], [[2]])
    for m in range(6):
        T = build_irreducible(sl2, [m], m + 2)
        assert T.dims_by_depth() == [1] * (m + 1) + [0, 0]
        assert T.module.ladder_violations(m + 1) == []
    H3 = GCM(["1", "2"], [[2, -3], [-3, 2]])
    T = build_irreducible(H3, [1, 1], 2)
    PRODUCED.append(("module", T))
    oracle = _weyl_kac_depth2(H3, [1, 1])
    for c in product(range(3), repeat=2):
        if sum(c) <= 2:
            assert T.module.dim(c) == oracle.get(c, 0), c
    assert T.module.ladder_violations(4) == []


def test_c12_gnome_multiplicities():
    assert [partition_p(n) for n in range(6)] == [1, 1, 2, 3, 5, 7]
    assert partition_p(10) == 42
    T = 12
    recovered = free_lie_root_mult(gnome_simple_multiplicities(T), T)
    checked = 0
    for l in range(1, 12):
        for n in range(l, 12):
            if 1 + l * n <= 12:
                assert recovered[(l, n)] == two_one(1 + l * n), (l, n)
                checked += 1
    assert checked >= 10


def _reload(kind, obj):
    if kind == "model":
        return ModelSpec.from_json
    if kind == "table":
        return CoefficientTable.from_json
    if kind == "gcm":
        return GCM.from_json
    if kind == "element":
        return lambda d: GroupElement.from_json(obj.model, d)
    if kind == "poly":
        return lambda d: NcPolynomial.from_json(obj.alphabet, d)
    return None


def test_c13_serialization():
    assert PRODUCED, "run with the rest of the acceptance suite"
    for kind, obj in PRODUCED:
        s1 = json.dumps(obj.to_json(), sort_keys=True)
        load = _reload(kind, obj)
        if load is None:
            # reports and module truncations are write-only: JSON must be stable
            assert json.dumps(json.loads(s1), sort_keys=True) == s1
            continue
        again = load(json.loads(s1))
        assert json.dumps(again.to_json(), sort_keys=True) == s1, kind
        if kind == "element":
            x = again
            assert json.dumps(MagnusElement.from_json(x.model.alphabet, x.n.to_json()).to_json()) \
                == json.dumps(x.n.to_json())
            assert json.dumps(KMGroupWord.from_json(x.g.to_json()).to_json()) == json.dumps(x.g.to_json())
            assert LieSeries.from_json(x.model.alphabet, x.n.log.to_json()) == x.n.log
    for m in models().values():
        passed(run_suite(m, "serialization", SEED))
