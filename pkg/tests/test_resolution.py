import pytest

from conftest import built

from preproj.resolution import build_complex_slice, selfduality_check, verify_resolution


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_exact_type_a(rank):
    alg, _, _, res = built("A", rank)
    rep = verify_resolution(res, 2 * alg.h)
    assert rep.ok, rep.failures[:3]


@pytest.mark.slow
def test_exact_d4():
    alg, _, _, res = built("D", 4)
    assert verify_resolution(res, 2 * alg.h).ok


def test_slice_dimensions(a2):
    res = a2[3]
    # C_0 = A (x)_R A: e_k A(i) e_j (x) e_j A(2-i) e_l over all splittings
    assert len(build_complex_slice(res, 0, 2)) == 6
    assert res.modules[3].dim(4) == 2
    assert res.modules[4].min_degree() == 2 * a2[0].h


def test_selfduality(a2):
    alg, tr, db, res = a2
    assert all(selfduality_check(res, tr, db).values())


def test_bound_above_cap(a2):
    with pytest.raises(ValueError):
        verify_resolution(a2[3], a2[0].degree_cap + 1)
