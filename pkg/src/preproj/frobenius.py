"""Trace form on A, dual bases and the Casimir element sum x_i (x) x_i*."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import GradedAlgebra
from .linalg import add_into, dense_inverse, dense_rank, kernel
from .spaces import structural_subspace

MAX_RETRIES = 16


class DegenerateTrace(RuntimeError):
    pass


@dataclass
class TraceForm:
    alg: GradedAlgebra
    seed: int
    coeffs: dict[int, Fraction]  # on basis indices of A_top
    gram: dict[tuple[int, int, int], list[list[Fraction]]] = field(default_factory=dict, repr=False)

    def __call__(self, v: dict) -> Fraction:
        return sum((c * self.coeffs[i] for i, c in v.items() if i in self.coeffs), Fraction(0))

    def pair(self, x: dict, y: dict) -> Fraction:
        return self(self.alg.multiply(x, y))

    def gram_ranks(self) -> dict[str, int]:
        return {f"{d}:{k}->{j}": dense_rank(g) for (d, k, j), g in sorted(self.gram.items())}

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "top_degree": self.alg.top_degree,
            "functional": {self.alg.name(i): str(c) for i, c in sorted(self.coeffs.items())},
            "gram_ranks": self.gram_ranks(),
        }


def _gram_blocks(alg: GradedAlgebra, tr: TraceForm) -> None:
    top = alg.top_degree
    r = alg.quiver.rank
    for d in range(top + 1):
        for k in range(r):
            for j in range(r):
                xs = alg.block(d, k, j)
                if not xs:
                    continue
                ys = alg.block(top - d, j, k)
                tr.gram[(d, k, j)] = [[tr.pair({x: 1}, {y: 1}) for y in ys] for x in xs]


def _nondegenerate(tr: TraceForm) -> bool:
    return all(len(g) == len(g[0]) and dense_inverse(g) is not None for g in tr.gram.values())


def build_trace(alg: GradedAlgebra, seed: int = 0) -> TraceForm:
    """Random functional on A_top killing [A,A] there; Gram blocks checked invertible.

    A_top/[A,A] is one-dimensional, so draws differ only by a scalar; the
    retry loop is a guard rather than a search.
    """
    top_ids = alg.by_degree.get(alg.top_degree, [])
    comm = structural_subspace(alg, "commutators").basis(alg.top_degree)
    # functionals f with f(w) = 0 for every w in [A,A] ∩ A_top
    images = [{n: w.get(i, 0) for n, w in enumerate(comm) if w.get(i)} for i in top_ids]
    annihilator = kernel(images)
    if not annihilator:
        raise DegenerateTrace("A_top is spanned by commutators")
    rng = random.Random(seed)
    for attempt in range(MAX_RETRIES):
        f: dict = {}
        for ann in annihilator:
            c = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
            add_into(f, ann, c)
        coeffs = {top_ids[p]: c for p, c in f.items()}
        tr = TraceForm(alg, seed + attempt, coeffs)
        _gram_blocks(alg, tr)
        if coeffs and _nondegenerate(tr):
            return tr
    raise DegenerateTrace(f"no nondegenerate trace after {MAX_RETRIES} draws")


@dataclass
class DualBasisPair:
    xs: list[dict]
    duals: list[dict]
    blocks: list[tuple[int, int, int]]  # (degree, tail, head) of x_i

    def __len__(self) -> int:
        return len(self.xs)


def dual_basis(alg: GradedAlgebra, tr: TraceForm, bases: dict | None = None) -> DualBasisPair:
    """Dual basis with respect to Tr.

    ``bases`` optionally maps (degree, tail, head) to a list of elements
    spanning that block; by default the normal-form basis is used.
    """
    top = alg.top_degree
    xs, duals, blocks = [], [], []
    for (d, k, j) in sorted(tr.gram):
        block = bases[(d, k, j)] if bases else [{x: Fraction(1)} for x in alg.block(d, k, j)]
        ys = [{y: Fraction(1)} for y in alg.block(top - d, j, k)]
        g = [[tr.pair(x, y) for y in ys] for x in block]
        ginv = dense_inverse(g)
        if ginv is None:
            raise DegenerateTrace(f"singular Gram block at degree {d}, {k}->{j}")
        for m, x in enumerate(block):
            dual: dict = {}
            for l, y in enumerate(ys):
                add_into(dual, y, ginv[l][m])
            xs.append(x)
            duals.append(dual)
            blocks.append((d, k, j))
    return DualBasisPair(xs, duals, blocks)


def tensor(alg: GradedAlgebra, u: dict, v: dict) -> dict:
    """u (x)_R v in basis-pair coordinates."""
    out: dict = {}
    for i, a in u.items():
        for j, b in v.items():
            if alg.basis[i].head == alg.basis[j].tail:
                add_into(out, {(i, j): a * b})
    return out


def casimir(alg: GradedAlgebra, db: DualBasisPair, tail: int | None = None) -> dict:
    """sum x_i (x) x_i*, optionally only over x_i starting at ``tail``."""
    out: dict = {}
    for x, xd, (_, k, _) in zip(db.xs, db.duals, db.blocks):
        if tail is None or k == tail:
            add_into(out, tensor(alg, x, xd))
    return out


def casimir_check(alg: GradedAlgebra, db: DualBasisPair) -> tuple[bool, dict | None]:
    """a·C = C·a and x_i a (x) x_i* = x_i (x) a x_i* for every generator a.

    Returns ``(ok, certificate)``; the certificate names the first failing
    generator and the nonzero difference tensor.
    """
    mul = alg.multiply
    pairs = list(zip(db.xs, db.duals))
    for g, a in enumerate(alg.generators()):
        left, right = {}, {}
        mid_l, mid_r = {}, {}
        for x, xd in pairs:
            add_into(left, tensor(alg, mul(a, x), xd))
            add_into(right, tensor(alg, x, mul(xd, a)))
            add_into(mid_l, tensor(alg, mul(x, a), xd))
            add_into(mid_r, tensor(alg, x, mul(a, xd)))
        for kind, lhs, rhs in (("outer", left, right), ("inner", mid_l, mid_r)):
            diff = add_into(dict(lhs), rhs, -1)
            if diff:
                return False, {"generator": g, "identity": kind,
                               "difference": {f"{i},{j}": str(c) for (i, j), c in diff.items()}}
    return True, None


def symmetry_defect(tr: TraceForm, limit: int | None = None) -> list[tuple[int, int]]:
    """Basis pairs with Tr(xy) != Tr(yx) (first ``limit`` indices only)."""
    n = tr.alg.dim if limit is None else min(limit, tr.alg.dim)
    bad = []
    for i in range(n):
        for j in range(n):
            if tr.pair({i: 1}, {j: 1}) != tr.pair({j: 1}, {i: 1}):
                bad.append((i, j))
    return bad
