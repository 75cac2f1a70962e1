import pytest

from borcherds_group.qseries import (
    free_lie_root_mult, gnome_convention_evidence, gnome_mult, gnome_simple_multiplicities,
    j_coefficients, j_coefficients_e6, j_coefficients_eta, partition_p, partitions_upto,
)


def test_j_leading_coefficients():
    assert j_coefficients(3) == [1, 0, 196884, 21493760, 864299970]


def test_j_three_routes_agree():
    a = j_coefficients(10)
    assert a == j_coefficients_eta(10) == j_coefficients_e6(10)


def test_partitions():
    assert partitions_upto(5) == [1, 1, 2, 3, 5, 7]
    assert partition_p(-1) == 0
    assert partition_p(100) == 190569292


def brute_partitions(n, k=None):
    k = n if k is None else k
    if n == 0:
        return 1
    return sum(brute_partitions(n - i, i) for i in range(1, min(n, k) + 1))


@pytest.mark.parametrize("n", range(15))
def test_partition_recurrence_vs_enumeration(n):
    assert partition_p(n) == brute_partitions(n)


def test_gnome_mult():
    assert gnome_mult(1, 2) == partition_p(3) - partition_p(2) == 1
    with pytest.raises(ValueError):
        gnome_mult(0, 1)


def test_gnome_convention_evidence():
    ev = gnome_convention_evidence(10)
    assert ev["light-cone"]["weyl_symmetric"] and not ev["light-cone"]["free_lie_mismatches"]
    assert ev["light-cone"]["negative_simple_multiplicities"] == []
    assert ev["light-cone"]["m11"] == 1
    alt = ev["alpha-delta"]
    assert not alt["weyl_symmetric"] or alt["free_lie_mismatches"]


def test_gnome_free_part_roundtrip():
    T = 12
    m = gnome_simple_multiplicities(T)
    rec = free_lie_root_mult(m, T)
    for (l, n), v in rec.items():
        if l >= 1 and n >= 1 and l + n <= T:
            assert v == gnome_mult(l, n)
