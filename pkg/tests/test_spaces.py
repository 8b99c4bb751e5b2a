import pytest

from preproj.spaces import Quotient, commutators_all_pairs, structural_subspace


@pytest.mark.parametrize("fixture", ["a2", "a3"])
def test_commutators_match_all_pairs(fixture, request):
    alg = request.getfixturevalue(fixture)[0]
    assert structural_subspace(alg, "commutators") == commutators_all_pairs(alg)


def test_a3_structural_series(a3):
    alg = a3[0]
    S = lambda label: structural_subspace(alg, label)
    assert S("Z").hilbert() == {0: 1, 2: 2, 4: 3}
    assert S("commutators").hilbert() == {1: 4, 2: 4, 3: 4, 4: 2}
    assert S("A_top").issubspace(S("Z"))
    assert S("zZ") == S("Z&mu_inv_commutators")
    assert Quotient(S("A"), S("commutators+muZ")).hilbert() == {0: 2, 2: 1}
    assert Quotient(S("A_plus"), S("commutators")).hilbert() == {2: 2, 4: 1}


def test_unknown_label(a2):
    with pytest.raises(KeyError):
        structural_subspace(a2[0], "nonsense")
