import random

import pytest

from preproj.algebra import (AlgebraError, build_algebra, free_slice, hilbert_at_one,
                             relation_elements)
from preproj.quiver import build_quiver

DIMS = {("A", 1): 1, ("A", 2): 6, ("A", 3): 20, ("A", 4): 50, ("D", 4): 84, ("D", 5): 240,
        ("E", 6): 936}


@pytest.mark.parametrize("key", sorted(DIMS))
def test_dimension(key):
    alg = build_algebra(build_quiver(*key))
    assert alg.dim == DIMS[key]
    assert alg.top_degree == 2 * alg.h - 4
    assert hilbert_at_one(alg)["ok"]
    mons = [b.monomial() for b in alg.basis]
    assert len(set(mons)) == len(mons)


def test_a2_hilbert_matrix():
    alg = build_algebra(build_quiver("A", 2))
    assert alg.hilbert_matrix() == [[[1, 0, 1], [0, 1, 0]], [[0, 1, 0], [1, 0, 1]]]


@pytest.mark.parametrize("key", [("A", 3), ("D", 4)])
def test_associative_and_central(key):
    q = build_quiver(*key)
    alg = build_algebra(q)
    assert all(not alg.reduce(rel) for rel in relation_elements(q, alg.mu))
    rng = random.Random(1)
    z = alg.z()
    for _ in range(200):
        x, y, w = ({rng.randrange(alg.dim): 1} for _ in range(3))
        assert alg.multiply(alg.multiply(x, y), w) == alg.multiply(x, alg.multiply(y, w))
        assert alg.commutator(x, z) == {}


def test_top_degree_palindromic():
    alg = build_algebra(build_quiver("D", 5))
    d = alg.dims()[: alg.top_degree + 1]
    assert d == d[::-1]


def test_free_slice_counts():
    q = build_quiver("A", 2)
    assert sum(len(v) for v in free_slice(q, 2).values()) == 4  # a a*, a* a, z e_0, z e_1
    with pytest.raises(ValueError):
        free_slice(q, -1)


def test_bad_inputs():
    q = build_quiver("A", 3)
    with pytest.raises(ValueError):
        build_algebra(q, (1, -1, 1))
    with pytest.raises((ValueError, AlgebraError)):
        build_algebra(q, None, degree_cap=3)
