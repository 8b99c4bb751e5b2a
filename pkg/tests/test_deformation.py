from fractions import Fraction as F

import pytest

from conftest import built

from preproj.algebra import Monomial, relation_elements
from preproj.deformation import (DeformationParams, deformation_space_and_theta, deformed_relations,
                                 filtered_dimension, flatness_check, random_params, zero_params)
from preproj.quiver import build_quiver


def test_zero_params_give_homogeneous_relation():
    q = build_quiver("A", 3)
    mu = (1, 1, 1)
    homog = relation_elements(q, mu)
    deformed = deformed_relations(q, mu, zero_params(q))
    assert [{m: c for (_, m), c in rel.items()} for rel in deformed] == homog


@pytest.mark.parametrize("t,r", [("A", 1), ("A", 2), ("A", 3)])
def test_zero_params_dimension(t, r):
    alg = built(t, r)[0]
    rep = filtered_dimension(alg.quiver, alg.mu, zero_params(alg.quiver))
    assert rep.stable and rep.total_dim == alg.dim
    levels = [rep.levels[d] for d in sorted(rep.levels)]
    assert levels == sorted(levels)


def test_a1_scalar_solution():
    q = build_quiver("A", 1)
    rep = filtered_dimension(q, (1,), DeformationParams((F(-3),), {}, None, 1), expected_dim=1)
    assert rep.flat
    z = {(0, Monomial(1, (), 0)): 1}
    assert rep.normal_form(z) == {(0, Monomial(0, (), 0)): 3}


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_lambda_only_is_flat_numerically(seed):
    alg = built("A", 2)[0]
    q = alg.quiver
    lam = random_params(q, seed).lam
    c1 = {(i, 1): F(seed, 5) for i in q.vertices}
    rep = filtered_dimension(q, alg.mu, DeformationParams(lam, c1, seed, 1), expected_dim=6)
    assert rep.flat


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_formal_c_is_flat(seed):
    alg = built("A", 2)[0]
    out = flatness_check(alg.quiver, alg.mu, random_params(alg.quiver, seed, 2), alg.dim)
    assert out["flat"] and not out["inconclusive"]
    assert out["report"]["coefficient_rank"] == 6 and out["zero_params_dim"] == 6


def test_formal_order_three():
    alg = built("A", 2)[0]
    rep = filtered_dimension(alg.quiver, alg.mu, random_params(alg.quiver, 4, 3), expected_dim=18)
    assert rep.flat and rep.coefficient_rank == 6


def test_numeric_higher_c_is_not_flat():
    # e_0 A e_0 becomes Q[z]/(f_0 (f_0 + f_1)) with deg f_i = 2
    alg = built("A", 2)[0]
    rep = filtered_dimension(alg.quiver, alg.mu, random_params(alg.quiver, 1, 1))
    assert rep.stable and rep.total_dim == 12


@pytest.mark.parametrize("t,r,e_dim,s", [("A", 1, 1, 0), ("A", 2, 4, 1), ("A", 3, 9, 3), ("D", 4, 20, 8)])
def test_theta(t, r, e_dim, s):
    th = deformation_space_and_theta(built(t, r)[0])
    assert (th["E_dim"], th["s"]) == (e_dim, s)
    assert th["ok"] and th["surjective"]


def test_level_cap_validation():
    q = build_quiver("A", 2)
    with pytest.raises(ValueError):
        filtered_dimension(q, (1, 1), zero_params(q), level_cap=2)
    with pytest.raises(ValueError):
        deformed_relations(q, (1, 0), zero_params(q))
