import random
from fractions import Fraction as F

from conftest import built

from preproj.frobenius import build_trace, casimir, casimir_check, dual_basis, symmetry_defect
from preproj.linalg import add_into, dense_inverse


def test_trace_symmetric_and_supported_on_top(a2):
    alg, tr, _, _ = a2
    assert symmetry_defect(tr) == []
    assert all(alg.basis[i].degree == alg.top_degree for i in tr.coeffs)


def test_trace_unique_up_to_scalar(a3):
    alg, tr, _, _ = a3
    other = build_trace(alg, seed=5)
    ratios = {other.coeffs[i] / c for i, c in tr.coeffs.items()}
    assert len(ratios) == 1


def test_dual_basis_identity(a3):
    alg, tr, db, _ = a3
    e0 = alg.e(0)
    total = sum(tr(alg.multiply(alg.multiply(e0, x), alg.multiply(e0, xd)))
                for x, xd in zip(db.xs, db.duals))
    assert total == len([b for b in alg.basis if b.tail == b.head == 0])
    for x, xd in zip(db.xs, db.duals):
        assert tr.pair(x, xd) == 1


def test_casimir_central_and_basis_free():
    alg, tr, db, _ = built("D", 4)
    ok, cert = casimir_check(alg, db)
    assert ok, cert
    rng = random.Random(3)
    bases = {}
    for key in {b for b in db.blocks}:
        d, k, j = key
        ids = alg.block(d, k, j)
        while True:
            m = [[F(rng.randint(-3, 3)) for _ in ids] for _ in ids]
            if dense_inverse(m) is not None:
                break
        bases[key] = [add_into({}, {i: c for i, c in zip(ids, row) if c}) for row in m]
    other = dual_basis(alg, tr, bases)
    assert casimir(alg, other) == casimir(alg, db)
