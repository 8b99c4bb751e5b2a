import pytest

from conftest import built

from preproj.hochschild import (COHOMOLOGY, HOMOLOGY, HochschildComplex, d4_star_injective,
                                hochschild, pairing_check, shifted)

ORACLE = {
    ("A", 2, COHOMOLOGY): [{0: 1, 2: 2}, {0: 1}, {-2: 1}, {-2: 1}, {-6: 1}],
    ("A", 2, HOMOLOGY): [{0: 2, 2: 1}, {2: 1}, {4: 1}, {4: 1}, {8: 1}],
    ("A", 3, COHOMOLOGY): [{0: 1, 2: 2, 4: 3}, {0: 1, 2: 2}, {-2: 2, 0: 1}, {-2: 2, 0: 1},
                           {-8: 1, -6: 2}],
    ("A", 3, HOMOLOGY): [{0: 3, 2: 2, 4: 1}, {2: 2, 4: 1}, {4: 1, 6: 2}, {4: 1, 6: 2},
                         {10: 2, 12: 1}],
}


@pytest.mark.parametrize("key", sorted(ORACLE))
def test_against_oracle(key):
    t, r, side = key
    _, _, db, res = built(t, r)
    rep = hochschild(res, db, side)
    assert rep.ok
    assert [rep.series(n) for n in range(5)] == ORACLE[key]


def test_a1_trivial():
    _, _, db, res = built("A", 1)
    rep = hochschild(res, db, COHOMOLOGY)
    assert rep.ok and rep.series(0) == {0: 1}


def test_complex_squares_to_zero(a2):
    _, _, db, res = a2
    cx = HochschildComplex(res, db, HOMOLOGY, explicit=False)
    assert all(cx.compose_zero(k) for k in cx.degree_range())


def test_shift_convention():
    assert shifted({0: 1, 2: 3}, -2) == {-2: 1, 0: 3}


@pytest.mark.slow
def test_d4():
    _, tr, db, res = built("D", 4)
    assert d4_star_injective(res, db)
    assert pairing_check(res.alg, tr)["ok"]
    assert hochschild(res, db, COHOMOLOGY, cross_check=False).ok
