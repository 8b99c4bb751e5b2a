"""ADE quivers, their doubles, the Ringel form, roots and exponents."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

ROOT_BOX = 6

# h and the exponents m_1 <= ... <= m_r for every supported Dynkin type.
def exponent_table(type_tag: str, rank: int) -> tuple[int, tuple[int, ...]]:
    _check_type(type_tag, rank)
    if type_tag == "A":
        return rank + 1, tuple(range(1, rank + 1))
    if type_tag == "D":
        n = rank - 1
        return 2 * n, tuple(sorted([*range(1, 2 * n, 2), n]))
    return {
        6: (12, (1, 4, 5, 7, 8, 11)),
        7: (18, (1, 5, 7, 9, 11, 13, 17)),
        8: (30, (1, 7, 11, 13, 17, 19, 23, 29)),
    }[rank]


class UnsupportedQuiver(ValueError):
    pass


def _check_type(type_tag: str, rank: int) -> None:
    ok = (
        (type_tag == "A" and rank >= 1)
        or (type_tag == "D" and rank >= 4)
        or (type_tag == "E" and rank in (6, 7, 8))
    )
    if not ok:
        raise UnsupportedQuiver(f"unsupported Dynkin type {type_tag}{rank}")


@dataclass(frozen=True)
class Arrow:
    id: int
    tail: int
    head: int
    star: int
    sign: int

    @property
    def name(self) -> str:
        base = self.id if self.sign > 0 else self.star
        return f"a{base}" + ("" if self.sign > 0 else "*")


@dataclass(frozen=True)
class Quiver:
    """An oriented ADE tree together with its double.

    ``arrows`` lists the double quiver: ids ``0..m-1`` are the arrows of Q
    (sign +1), id ``k + m`` is the reversed arrow ``(a_k)*`` (sign -1).
    """

    type_tag: str
    rank: int
    edges: tuple[tuple[int, int], ...]
    arrows: tuple[Arrow, ...] = field(repr=False)

    @property
    def r(self) -> int:
        return self.rank

    @property
    def vertices(self) -> range:
        return range(self.rank)

    @property
    def q_arrows(self) -> tuple[Arrow, ...]:
        return self.arrows[: len(self.edges)]

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        c = [[0] * self.rank for _ in range(self.rank)]
        for i, j in self.edges:
            c[i][j] += 1
            c[j][i] += 1
        return tuple(map(tuple, c))

    @property
    def label(self) -> str:
        return f"{self.type_tag}{self.rank}"

    def out_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.tail == v]

    def coxeter_number(self) -> int:
        return exponent_table(self.type_tag, self.rank)[0]

    def exponents(self) -> tuple[int, ...]:
        return exponent_table(self.type_tag, self.rank)[1]

    def to_json(self) -> dict:
        return {
            "type": self.type_tag,
            "rank": self.rank,
            "vertices": list(self.vertices),
            "arrows": [
                {"id": a.id, "name": a.name, "tail": a.tail, "head": a.head,
                 "star_id": a.star, "sign": a.sign}
                for a in self.arrows
            ],
            "adjacency": [list(row) for row in self.adjacency],
        }


def _tree_edges(type_tag: str, rank: int) -> list[tuple[int, int]]:
    if type_tag == "A":
        return [(i, i + 1) for i in range(rank - 1)]
    if type_tag == "D":
        chain = [(i, i + 1) for i in range(rank - 2)]
        return chain + [(rank - 3, rank - 1)]
    chain = [(i, i + 1) for i in range(rank - 2)]
    return chain + [(2, rank - 1)]


def build_quiver(type_tag: str, rank: int) -> Quiver:
    """ADE quiver with every edge oriented towards the larger vertex index."""
    type_tag = type_tag.upper()
    _check_type(type_tag, rank)
    edges = _tree_edges(type_tag, rank)
    m = len(edges)
    arrows = [Arrow(k, i, j, k + m, 1) for k, (i, j) in enumerate(edges)]
    arrows += [Arrow(k + m, j, i, k, -1) for k, (i, j) in enumerate(edges)]
    return Quiver(type_tag, rank, tuple(edges), tuple(arrows))


def branch_lengths(q: Quiver) -> tuple[int, ...]:
    """Sorted lengths of the arms hanging off the branch vertex (if any)."""
    nbrs = {v: set() for v in q.vertices}
    for i, j in q.edges:
        nbrs[i].add(j)
        nbrs[j].add(i)
    hubs = [v for v in q.vertices if len(nbrs[v]) >= 3]
    if not hubs:
        return (q.rank,)
    hub = hubs[0]
    out = []
    for start in nbrs[hub]:
        seen, cur, n = {hub}, start, 0
        while cur is not None:
            n += 1
            seen.add(cur)
            nxt = [w for w in nbrs[cur] if w not in seen]
            cur = nxt[0] if nxt else None
        out.append(n)
    return tuple(sorted(out))


# -- forms -------------------------------------------------------------------

def ringel_form(q: Quiver, alpha: Sequence, beta: Sequence):
    if len(alpha) != q.rank or len(beta) != q.rank:
        raise ValueError("vectors must have one entry per vertex")
    s = sum(a * b for a, b in zip(alpha, beta))
    return s - sum(alpha[i] * beta[j] for i, j in q.edges)


def quadratic_form(q: Quiver, alpha: Sequence):
    return ringel_form(q, alpha, alpha)


def symmetric_form(q: Quiver, alpha: Sequence, beta: Sequence):
    return ringel_form(q, alpha, beta) + ringel_form(q, beta, alpha)


# -- roots -------------------------------------------------------------------

@dataclass(frozen=True)
class RootData:
    roots: frozenset[tuple[int, ...]]
    coxeter_number: int
    exponents: tuple[int, ...]

    @property
    def positive_roots(self) -> list[tuple[int, ...]]:
        return sorted(a for a in self.roots if sum(a) > 0)


def _gram(q: Quiver) -> list[list[Fraction]]:
    # q(alpha) = alpha^T G alpha
    g = [[Fraction(int(i == j)) for j in q.vertices] for i in q.vertices]
    for i, j in q.edges:
        g[i][j] -= Fraction(1, 2)
        g[j][i] -= Fraction(1, 2)
    return g


def roots_in_box(q: Quiver, box: int = ROOT_BOX) -> set[tuple[int, ...]]:
    """All integer alpha with |alpha_i| <= box and q(alpha) = 1.

    Exhaustive over the box, pruned with the LDL^T decomposition of the
    positive definite form (Fincke-Pohst style).  Pruning bounds are widened
    slightly, then every candidate is checked exactly.
    """
    r = q.rank
    g = _gram(q)
    # q(x) = sum_i d_i (x_i + sum_{j>i} l[i][j] x_j)^2
    d = [Fraction(0)] * r
    l = [[Fraction(0)] * r for _ in range(r)]
    a = [row[:] for row in g]
    for i in range(r):
        d[i] = a[i][i]
        for j in range(i + 1, r):
            l[i][j] = a[i][j] / d[i]
        for j in range(i + 1, r):
            for k in range(i + 1, r):
                a[j][k] -= d[i] * l[i][j] * l[i][k]
    dfl = [float(x) for x in d]
    lfl = [[float(x) for x in row] for row in l]
    found: set[tuple[int, ...]] = set()
    x = [0] * r

    def rec(i: int, budget: float) -> None:
        if i < 0:
            cand = tuple(x)
            if quadratic_form(q, cand) == 1:
                found.add(cand)
            return
        centre = -sum(lfl[i][j] * x[j] for j in range(i + 1, r))
        rad = math.sqrt(max(budget, 0.0) / dfl[i]) + 1e-9
        lo = max(-box, math.ceil(centre - rad))
        hi = min(box, math.floor(centre + rad))
        for v in range(lo, hi + 1):
            x[i] = v
            rest = budget - dfl[i] * (v - centre) ** 2
            if rest >= -1e-9:
                rec(i - 1, rest)
        x[i] = 0

    rec(r - 1, 1.0 + 1e-9)
    return found


def enumerate_roots(q: Quiver, box: int = ROOT_BOX) -> RootData:
    roots = roots_in_box(q, box)
    h, exps = exponent_table(q.type_tag, q.rank)
    if len(roots) != q.rank * h:
        raise AssertionError(f"{q.label}: |roots| = {len(roots)}, expected r*h = {q.rank * h}")
    if any(exps[q.rank - 1 - i] != h - exps[i] for i in range(q.rank)):
        raise AssertionError(f"{q.label}: exponent duality broken")
    return RootData(frozenset(roots), len(roots) // q.rank, exps)


# -- weights -----------------------------------------------------------------

def rho(q: Quiver) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) for _ in q.vertices)


def weight_pairing(mu: Sequence, alpha: Sequence):
    """sum_i mu_i alpha_i: the trace of mu on a representation of dimension alpha."""
    return sum(m * a for m, a in zip(mu, alpha))


def is_regular(mu: Sequence, rd: RootData) -> bool:
    return all(weight_pairing(mu, a) != 0 for a in rd.roots)


def random_regular_weight(q: Quiver, rd: RootData, rng, bound: int = 7,
                          attempts: int = 1000) -> tuple[Fraction, ...]:
    """Seeded small-height rational weight; non-regular draws are rejected."""
    for _ in range(attempts):
        mu = tuple(
            Fraction(rng.choice([-1, 1]) * rng.randint(1, bound), rng.randint(1, bound))
            for _ in q.vertices
        )
        if is_regular(mu, rd):
            return mu
    raise RuntimeError("no regular weight found")


def parse_weight(q: Quiver, rd: RootData, text: str) -> tuple[Fraction, ...]:
    """``rho``, ``random:SEED`` or a comma separated list of rationals."""
    if text == "rho":
        mu = rho(q)
    elif text.startswith("random:"):
        mu = random_regular_weight(q, rd, random.Random(int(text.split(":", 1)[1])))
    else:
        mu = tuple(Fraction(x) for x in text.split(","))
        if len(mu) != q.rank:
            raise ValueError("weight needs one entry per vertex")
    if not is_regular(mu, rd) or any(m == 0 for m in mu):
        raise ValueError(f"weight {text} is not regular for {q.label}")
    return mu
