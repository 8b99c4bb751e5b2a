"""The centrally extended preprojective algebra A = P[z]/(sum [a,a*] - z mu).

A is built one degree at a time.  Write W for the generators (double-quiver
arrows of degree 1 and the central z of degree 2).  Since the relations
generate the ideal, the sequence

    A (x) relations  ->  A (x)_R W  ->  A_+  ->  0

is exact, so A(d) is the cokernel of the relation map into

    S_d = (+)_a A(d-1) e_{t(a)} (x) a   (+)   A(d-2) (x) z.

The relations used are ``x rho_i`` (x in A(d-2) ending at i) and the
commutators ``x (a z - z a)``.  Columns of S_d are pairs (basis element,
generator); pivot columns of the reduced relation matrix are rewritten in
terms of the remaining columns, which become the basis of A(d).  The ideal
is homogeneous, so each degree slice needs no saturation.

Paths compose left to right: ``xy`` is "x, then y", and ``e_k A e_j`` is
spanned by paths from k to j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import Echelon, add_into, clean, dense_inverse
from .quiver import Quiver, enumerate_roots, is_regular, rho

Z = -1  # the letter for the central generator


class AlgebraError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class Monomial:
    """``z^zpow`` times a path of the double quiver starting at ``base``."""

    zpow: int
    path: tuple[int, ...]
    base: int

    def degree(self) -> int:
        return 2 * self.zpow + len(self.path)

    def tail(self) -> int:
        return self.base

    def head(self, q: Quiver) -> int:
        return q.arrows[self.path[-1]].head if self.path else self.base

    def name(self, q: Quiver) -> str:
        parts = []
        if self.zpow:
            parts.append("z" if self.zpow == 1 else f"z^{self.zpow}")
        if self.path:
            parts.append(" ".join(q.arrows[a].name for a in self.path))
        else:
            parts.append(f"e{self.base}")
        return " ".join(parts)


@dataclass(frozen=True)
class BasisElement:
    index: int
    degree: int
    tail: int
    head: int
    word: tuple[int, ...]  # letters right-multiplied onto e_tail

    def monomial(self) -> Monomial:
        return Monomial(self.word.count(Z), tuple(x for x in self.word if x != Z), self.tail)


def free_slice(q: Quiver, d: int) -> dict[tuple[int, int], list[Monomial]]:
    """All monomials z^k * path of degree d, grouped by (tail, head)."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    out: dict[tuple[int, int], list[Monomial]] = {}
    for k in range(d // 2 + 1):
        length = d - 2 * k
        for base in q.vertices:
            for path in _paths(q, base, length):
                m = Monomial(k, path, base)
                out.setdefault((base, m.head(q)), []).append(m)
    for key in out:
        out[key].sort()
    return dict(sorted(out.items()))


def _paths(q: Quiver, start: int, length: int):
    if length == 0:
        yield ()
        return
    for a in q.out_arrows(start):
        for rest in _paths(q, a.head, length - 1):
            yield (a.id,) + rest


def relation_elements(q: Quiver, mu: Sequence) -> list[dict[Monomial, Fraction]]:
    """rho_i = e_i (sum_a eps_a a a*) e_i - mu_i z e_i, one per vertex."""
    rd = enumerate_roots(q)
    if not is_regular(mu, rd) or any(m == 0 for m in mu):
        raise ValueError("weight must be regular with all entries nonzero")
    out = []
    for i in q.vertices:
        rel: dict[Monomial, Fraction] = {}
        for a in q.out_arrows(i):
            m = Monomial(0, (a.id, a.star), i)
            rel[m] = rel.get(m, 0) + a.sign
        rel[Monomial(1, (), i)] = -Fraction(mu[i])
        out.append(clean(rel))
    return out


@dataclass
class GradedAlgebra:
    quiver: Quiver
    mu: tuple[Fraction, ...]
    top_degree: int
    degree_cap: int
    basis: list[BasisElement] = field(default_factory=list)
    by_degree: dict[int, list[int]] = field(default_factory=dict)
    rmul: dict[tuple[int, int], dict[int, Fraction]] = field(default_factory=dict, repr=False)
    _prod: dict[tuple[int, int], dict] = field(default_factory=dict, repr=False)

    # -- bookkeeping -----------------------------------------------------------

    @property
    def h(self) -> int:
        return self.quiver.coxeter_number()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def dims(self) -> list[int]:
        return [len(self.by_degree.get(d, [])) for d in range(self.degree_cap + 1)]

    def degree_of(self, v: dict) -> int:
        degs = {self.basis[i].degree for i in v}
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else 0

    def block(self, d: int, tail: int, head: int) -> list[int]:
        return [i for i in self.by_degree.get(d, [])
                if self.basis[i].tail == tail and self.basis[i].head == head]

    def name(self, i: int) -> str:
        return self.basis[i].monomial().name(self.quiver)

    # -- distinguished elements ----------------------------------------------------

    def e(self, i: int) -> dict:
        return {self.by_degree[0][i]: Fraction(1)}

    def one(self) -> dict:
        return {i: Fraction(1) for i in self.by_degree[0]}

    def arrow(self, a: int) -> dict:
        return dict(self.rmul[(self.by_degree[0][self.quiver.arrows[a].tail], a)])

    def z(self) -> dict:
        out: dict = {}
        for i in self.by_degree[0]:
            add_into(out, self.rmul[(i, Z)])
        return out

    def mu_element(self) -> dict:
        return {self.by_degree[0][i]: Fraction(m) for i, m in enumerate(self.mu)}

    def generators(self) -> list[dict]:
        """Algebra generators: idempotents, arrows, z."""
        gens = [self.e(i) for i in self.quiver.vertices]
        gens += [self.arrow(a.id) for a in self.quiver.arrows]
        gens.append(self.z())
        return gens

    # -- products ---------------------------------------------------------------

    def right_letter(self, v: dict, letter: int) -> dict:
        out: dict = {}
        for i, c in v.items():
            img = self.rmul.get((i, letter))
            if img:
                add_into(out, img, c)
        return out

    def basis_product(self, i: int, j: int) -> dict:
        key = (i, j)
        hit = self._prod.get(key)
        if hit is not None:
            return hit
        bi, bj = self.basis[i], self.basis[j]
        if bi.head != bj.tail:
            res: dict = {}
        else:
            res = {i: Fraction(1)}
            for letter in bj.word:
                res = self.right_letter(res, letter)
                if not res:
                    break
        self._prod[key] = res
        return res

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                p = self.basis_product(i, j)
                if p:
                    add_into(out, p, a * b)
        return out

    def commutator(self, x: dict, y: dict) -> dict:
        return add_into(self.multiply(x, y), self.multiply(y, x), -1)

    def left_mu(self, v: dict, inverse: bool = False) -> dict:
        """Left multiplication by mu = sum mu_i e_i (or by its inverse)."""
        out = {}
        for i, c in v.items():
            m = Fraction(self.mu[self.basis[i].tail])
            out[i] = c / m if inverse else c * m
        return out

    # -- free monomials -------------------------------------------------------------

    def evaluate(self, m: Monomial) -> dict:
        v = self.e(m.base)
        for _ in range(m.zpow):
            v = self.right_letter(v, Z)
        for a in m.path:
            v = self.right_letter(v, a)
        return v

    def reduce(self, free_vec: dict[Monomial, Fraction]) -> dict:
        """Image in A of a combination of free monomials."""
        out: dict = {}
        for m, c in free_vec.items():
            add_into(out, self.evaluate(m), c)
        return out

    def embed(self, v: dict) -> dict[Monomial, Fraction]:
        """Normal-form element as a combination of free monomials."""
        out: dict = {}
        for i, c in v.items():
            m = self.basis[i].monomial()
            out[m] = out.get(m, 0) + c
        return clean(out)

    # -- Hilbert series -------------------------------------------------------------

    def hilbert_matrix(self) -> list[list[list[int]]]:
        """H[k][j][d] = dim e_k A(d) e_j."""
        r = self.quiver.rank
        n = self.top_degree + 1
        hm = [[[0] * n for _ in range(r)] for _ in range(r)]
        for b in self.basis:
            hm[b.tail][b.head][b.degree] += 1
        return hm

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.label,
            "mu": [str(m) for m in self.mu],
            "top_degree": self.top_degree,
            "degree_cap": self.degree_cap,
            "dims": self.dims(),
            "total_dim": self.dim,
            "basis": [
                {"index": b.index, "degree": b.degree, "tail": b.tail, "head": b.head,
                 "name": self.name(b.index)}
                for b in self.basis
            ],
            "hilbert_matrix": self.hilbert_matrix(),
        }


def hilbert_at_one(alg: GradedAlgebra) -> dict:
    """H_A(1) = h (2 - C)^{-1}, entrywise."""
    q = alg.quiver
    r = q.rank
    got = [[sum(row) for row in hk] for hk in alg.hilbert_matrix()]
    inv = dense_inverse([[2 * (i == j) - q.adjacency[i][j] for j in range(r)] for i in range(r)])
    want = [[alg.h * x for x in row] for row in inv]
    return {"computed": got, "expected": [[str(x) for x in row] for row in want],
            "ok": got == want}


def _column_key(alg: GradedAlgebra, b: BasisElement, letter: int):
    # preferred pivots first: more z, then path order; pivots leave the basis
    zp = b.word.count(Z) + (letter == Z)
    path = tuple(x for x in b.word if x != Z) + ((letter,) if letter != Z else ())
    return (-zp, path, letter != Z, b.index)


def build_algebra(q: Quiver, mu: Sequence | None = None, degree_cap: int | None = None) -> GradedAlgebra:
    h = q.coxeter_number()
    top = 2 * h - 4
    cap = 2 * h if degree_cap is None else degree_cap
    if cap < 2 * h - 2:
        raise ValueError(f"degree_cap must be at least 2h-2 = {2 * h - 2}")
    mu = rho(q) if mu is None else tuple(Fraction(m) for m in mu)
    rd = enumerate_roots(q)
    if len(mu) != q.rank or not is_regular(mu, rd) or any(m == 0 for m in mu):
        raise ValueError("weight must be regular with all entries nonzero")

    alg = GradedAlgebra(q, mu, top, cap)
    for i in q.vertices:
        alg.basis.append(BasisElement(i, 0, i, i, ()))
    alg.by_degree[0] = list(q.vertices)

    for d in range(1, cap + 1):
        # columns of S_d grouped by (tail, head) block
        blocks: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for i in alg.by_degree.get(d - 1, []):
            b = alg.basis[i]
            for a in q.out_arrows(b.head):
                blocks.setdefault((b.tail, a.head), []).append((i, a.id))
        for i in alg.by_degree.get(d - 2, []):
            b = alg.basis[i]
            blocks.setdefault((b.tail, b.head), []).append((i, Z))
        colidx: dict[tuple[int, int], int] = {}
        for key, cols in blocks.items():
            cols.sort(key=lambda c: _column_key(alg, alg.basis[c[0]], c[1]))
            for n, c in enumerate(cols):
                colidx[c] = n

        ech = {key: Echelon() for key in blocks}
        for i in alg.by_degree.get(d - 2, []):
            x = alg.basis[i]
            row: dict = {}
            for a in q.out_arrows(x.head):
                for y, c in alg.rmul[(i, a.id)].items():
                    add_into(row, {colidx[(y, a.star)]: c}, a.sign)
            add_into(row, {colidx[(i, Z)]: 1}, -mu[x.head])
            ech[(x.tail, x.head)].add(row)
        for i in alg.by_degree.get(d - 3, []):
            x = alg.basis[i]
            for a in q.out_arrows(x.head):
                row = {}
                for y, c in alg.rmul[(i, a.id)].items():
                    add_into(row, {colidx[(y, Z)]: c})
                for y, c in alg.rmul[(i, Z)].items():
                    add_into(row, {colidx[(y, a.id)]: c}, -1)
                if row:
                    ech[(x.tail, a.head)].add(row)

        new: list[int] = []
        for key in sorted(blocks):
            cols = blocks[key]
            e = ech[key]
            e.rref()
            local: dict[int, int] = {}
            for n, (i, letter) in enumerate(cols):
                if n in e.rows:
                    continue
                b = alg.basis[i]
                idx = len(alg.basis)
                alg.basis.append(BasisElement(idx, d, b.tail, key[1], b.word + (letter,)))
                local[n] = idx
                new.append(idx)
                alg.rmul[(i, letter)] = {idx: Fraction(1)}
            for piv in e.rows:
                i, letter = cols[piv]
                alg.rmul[(i, letter)] = clean(
                    {local[n]: c for n, c in e.pivot_expression(piv).items()})
        if new:
            alg.by_degree[d] = new
        if d > top and new:
            raise AlgebraError(
                f"{q.label}: A({d}) has dimension {len(new)} above the top degree {top}")
    return alg
