import json

import pytest

from borcherds_group.action import words_equal
from borcherds_group.algebra import Q
from borcherds_group.models import build_gnome, build_h3, build_monster
from borcherds_group.verify import (
    SUITES, UnknownSuite, isotypic_blocks, run_suite, sl2_printed_forms, sl2_relations,
    standard_basis_changes,
)


@pytest.fixture(scope="module")
def monster():
    return build_monster(3, 2, 4)


def test_sl2_relations_hold(monster):
    for name, a, b in sl2_relations(Q(2), Q(-1, 3), Q(3), Q(5, 2)):
        assert words_equal(monster.table, a, b), name


def test_printed_forms_fail_on_big_blocks(monster):
    results = [words_equal(monster.table, a, b) for _, a, b in sl2_printed_forms(Q(2), Q(3), Q(5))]
    assert results.count(False) >= 1


def test_report_json(monster):
    rep = run_suite(monster, "bcm", 3)
    d = json.loads(rep.dumps())
    assert d["suite"] == "bcm" and d["seed"] == 3 and d["passed"]
    assert set(d) >= {"schema_version", "model", "caps", "truncation", "checks", "counterexamples", "skipped"}


def test_unknown_suite(monster):
    with pytest.raises(UnknownSuite):
        run_suite(monster, "nope")
    with pytest.raises(UnknownSuite):
        run_suite(build_h3(2, 3), "sl2-relations")
    with pytest.raises(UnknownSuite):
        run_suite(build_gnome(), "root-sets")


def test_isotypic_blocks(monster):
    iso = isotypic_blocks(monster)
    assert [len(f) for f in iso["3"]] == [3, 3]
    assert len(standard_basis_changes(monster, __import__("random").Random(0))) >= 3


def test_fast_suites_pass(monster):
    for name in ("bcm", "serialization", "derivation-transfer"):
        assert run_suite(monster, name, 1).passed, name
    assert set(SUITES) >= {"group-axioms", "tits-relations", "km-crosscheck"}


def test_small_tits_run_reports_skips():
    rep = run_suite(build_h3(2, 3), "tits-relations", 1, trials=1)
    assert all(c["passed"] for c in rep.checks)
    assert all("depth" in s["reason"] for s in rep.skipped)
