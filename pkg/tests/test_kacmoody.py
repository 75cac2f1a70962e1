import pytest

from borcherds_group.algebra import RootVector
from borcherds_group.kacmoody import (
    GCM, KMError, WindowOverflow, HighestWeightModule, build_irreducible, is_prenilpotent,
    is_real_root, pair_real_roots, peterson_mult, real_roots, serre_quotient_nminus,
)

SL2 = GCM(["1"], [[2]])
A11 = GCM(["0", "1"], [[2, -2], [-2, 2]])
H3 = GCM(["1", "2"], [[2, -3], [-3, 2]])


def R(**kw):
    return RootVector({k[1:]: v for k, v in kw.items()})


def test_gcm_validation():
    with pytest.raises(KMError):
        GCM(["1", "2"], [[2, -1], [-2, 2]])
    with pytest.raises(KMError):
        GCM(["1"], [[3]])


def test_real_roots_h3():
    got = {tuple(H3.to_tuple(r)) for r in real_roots(H3, 12)}
    assert got == {(1, 0), (0, 1), (3, 1), (1, 3), (3, 8), (8, 3)}
    for c in got:
        assert H3.form(c, c) == 2


def test_real_roots_have_multiplicity_one():
    P = peterson_mult(H3, 12)
    for r in real_roots(H3, 12):
        assert P.mult(r) == 1


def test_imaginary_multiplicities():
    assert peterson_mult(A11, 6).mult((1, 1)) == 1
    assert peterson_mult(A11, 6).mult((2, 2)) == 1
    assert peterson_mult(H3, 5).mult((1, 1)) == 1
    assert serre_quotient_nminus(H3, 5).dim((1, 1)) == 1


@pytest.mark.parametrize("A,H", [(SL2, 4), (A11, 6), (H3, 5)])
def test_peterson_equals_serre(A, H):
    P, S = peterson_mult(A, H), serre_quotient_nminus(A, H)
    assert set(P.roots()) == set(S.roots())
    assert all(P.mult(c) == S.dim(c) for c in P.roots())


def test_window_guard():
    with pytest.raises(KMError):
        peterson_mult(H3, 3).mult((2, 2))


@pytest.mark.parametrize("m", range(6))
def test_sl2_module(m):
    T = build_irreducible(SL2, [m], m + 2)
    assert T.dims_by_depth() == [1] * (m + 1) + [0, 0][: m + 3 - (m + 1)]


def test_sl2_radical():
    M = HighestWeightModule(SL2, [1])
    assert M.dim((2,)) == 0
    assert M.gram((1,)) == [[1]]


def test_h3_module_dims():
    M = HighestWeightModule(H3, [1, 1])
    dims = {c: M.dim(c) for c in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2)]}
    assert dims == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 2, (2, 0): 0, (0, 2): 0,
                    (2, 1): 2, (1, 2): 2}
    assert M.ladder_violations(4) == []


def test_gram_is_symmetric_and_full_rank():
    from borcherds_group.linalg import matrix_rank
    M = HighestWeightModule(H3, [1, 1])
    G = M.gram((1, 1))
    assert G == [list(r) for r in zip(*G)]
    assert matrix_rank(G) == M.dim((1, 1))


def test_max_depth_guard():
    M = HighestWeightModule(H3, [1, 1], max_depth=3)
    with pytest.raises(WindowOverflow):
        M.basis((2, 2))


def test_prenilpotent_pairs():
    a1, a2 = R(_1=1), R(_2=1)
    assert is_prenilpotent(H3, a1, -a2)
    assert not is_prenilpotent(H3, a1, a2)
    # the two pairs disagree exactly as the branch picture says
    assert pair_real_roots(H3, a1, a2, 8) != []
    assert pair_real_roots(H3, a1, -a2, 8) == []
    s = RootVector({"1": 1})
    assert not is_prenilpotent(SL2, s, -s)
    assert is_real_root(H3, RootVector({"1": 3, "2": 1}))
    assert not is_real_root(H3, RootVector({"1": 1, "2": 1}))
