from fractions import Fraction as F

from preproj.linalg import Echelon, dense_det, dense_inverse, intersect, kernel, rank, span_basis


def test_echelon_rank_and_reduce():
    e = Echelon()
    assert e.add({0: 1, 1: 2})
    assert e.add({1: 1, 2: F(1, 3)})
    assert not e.add({0: 2, 1: 5, 2: F(1, 3)})
    assert e.rank == 2
    assert e.contains({0: 1, 1: 3, 2: F(1, 3)})
    assert e.reduce({2: 1}) == {2: 1}


def test_tracked_relations():
    e = Echelon(track=True)
    for tag, v in enumerate([{0: 1}, {1: 1}, {0: 1, 1: 1}]):
        e.add(v, tag)
    assert len(e.relations) == 1
    rel = e.relations[0]
    assert rel[0] == rel[1] == -rel[2]


def test_kernel_and_spans():
    assert len(kernel([{0: 1}, {0: 1}, {1: 1}])) == 1
    assert rank([{0: 1}, {0: 2}]) == 1
    assert len(span_basis([{0: 1}, {1: 1}, {0: 1, 1: 1}])) == 2
    assert len(intersect([{0: 1}, {1: 1}], [{0: 1, 1: 1}, {2: 1}])) == 1


def test_dense():
    m = [[F(2), F(1)], [F(1), F(1)]]
    assert dense_det(m) == 1
    assert dense_inverse(m) == [[1, -1], [-1, 2]]
    assert dense_inverse([[1, 2], [2, 4]]) is None
