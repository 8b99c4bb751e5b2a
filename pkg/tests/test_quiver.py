import random
from fractions import Fraction

import pytest

from preproj.quiver import (UnsupportedQuiver, build_quiver, enumerate_roots, is_regular,
                            parse_weight, random_regular_weight, rho)

CASES = [("A", 1, 2, (1,)), ("A", 4, 5, (1, 2, 3, 4)), ("D", 4, 6, (1, 3, 3, 5)),
         ("D", 5, 8, (1, 3, 4, 5, 7)), ("E", 6, 12, (1, 4, 5, 7, 8, 11)),
         ("E", 7, 18, (1, 5, 7, 9, 11, 13, 17)), ("E", 8, 30, (1, 7, 11, 13, 17, 19, 23, 29))]


@pytest.mark.parametrize("t,r,h,m", CASES)
def test_coxeter_data(t, r, h, m):
    q = build_quiver(t, r)
    assert q.coxeter_number() == h
    assert tuple(q.exponents()) == m
    rd = enumerate_roots(q)
    assert len(rd.roots) == r * h
    assert len(rd.positive_roots) == r * h // 2


@pytest.mark.parametrize("t,r", [("A", 0), ("D", 3), ("E", 9), ("B", 3)])
def test_unsupported(t, r):
    with pytest.raises(UnsupportedQuiver):
        build_quiver(t, r)


def test_double_quiver_signs():
    q = build_quiver("D", 4)
    for a in q.arrows:
        b = q.arrows[a.star]
        assert (b.tail, b.head) == (a.head, a.tail)
        assert b.star == a.id and a.sign == -b.sign


def test_weights():
    q = build_quiver("A", 2)
    rd = enumerate_roots(q)
    assert is_regular(rho(q), rd)
    assert not is_regular((Fraction(1), Fraction(-1)), rd)
    mu = random_regular_weight(q, rd, random.Random(5))
    assert parse_weight(q, rd, "random:5") == mu
    assert parse_weight(q, rd, "1,2") == (1, 2)
    with pytest.raises(ValueError):
        parse_weight(q, rd, "1,-1")
    with pytest.raises(ValueError):
        parse_weight(q, rd, "1")
