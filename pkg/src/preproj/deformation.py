"""The deformation A(lambda)_c and its flatness.

Relations: at every vertex i

    sum_a eps_a a a*  =  mu_i z e_i + lambda_i e_i + sum_{j=1}^{h-1} c_i^j z^j e_i.

The c_i^j are formal.  Specialising them to numbers is not flat once some
c_i^j with j >= 2 is nonzero: z^j then outranks the quadratic part and the
quotient grows (for A_2 it has dimension 12 instead of 6).  So the c's are
kept formal to a finite order: c_i^j = eps * chat_i^j over Q[eps]/(eps^K),
with chat numeric.  Flatness over that ring means dim_Q = K * dim A.

Dimensions are computed with the ideal-intersection method.  Monomials are
eps^k z^m p with filtered degree 2m + |p| - k*w; eps gets the negative
weight w = 2h - 3 so every eps-term of a relation sits strictly below its
quadratic part.  For a target level d the ideal is spanned by products
eps^k z^m p rho_i q of filtered degree <= D, and D grows until the part of
the span inside level d stops changing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import GradedAlgebra, Monomial, Z, _paths, build_algebra
from .linalg import Echelon, add_into
from .quiver import Quiver
from .spaces import Quotient, structural_subspace


@dataclass(frozen=True)
class DeformationParams:
    lam: tuple[Fraction, ...]
    c: dict  # (vertex, j) -> Fraction, 1 <= j <= h-1
    seed: int | None = None
    formal_order: int = 2  # K: eps^K = 0; K = 1 means c is used as a plain number

    def is_zero(self) -> bool:
        return not any(self.lam) and not any(self.c.values())

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "lambda": [str(x) for x in self.lam],
            "c": {f"{i},{j}": str(v) for (i, j), v in sorted(self.c.items())},
            "formal_order": self.formal_order,
        }


def zero_params(q: Quiver, formal_order: int = 1) -> DeformationParams:
    return DeformationParams(tuple(Fraction(0) for _ in q.vertices), {}, None, formal_order)


def random_params(q: Quiver, seed: int, formal_order: int = 2, bound: int = 7) -> DeformationParams:
    """Seeded small rationals for every lambda_i and c_i^j."""
    rng = random.Random(seed)

    def draw() -> Fraction:
        return Fraction(rng.choice([-1, 1]) * rng.randint(1, bound), rng.randint(1, bound))

    h = q.coxeter_number()
    lam = tuple(draw() for _ in q.vertices)
    c = {(i, j): draw() for i in q.vertices for j in range(1, h)}
    return DeformationParams(lam, c, seed, formal_order)


# A deformed monomial: (eps power, Monomial)
DMon = tuple[int, Monomial]


def deformed_relations(q: Quiver, mu: Sequence, params: DeformationParams) -> list[dict[DMon, Fraction]]:
    """rho~_i = e_i(sum eps_a a a*)e_i - mu_i z e_i - lambda_i e_i - sum_j c_i^j z^j e_i."""
    if any(m == 0 for m in mu):
        raise ValueError("all mu_i must be nonzero")
    formal = params.formal_order > 1
    out = []
    for i in q.vertices:
        rel: dict = {}
        for a in q.out_arrows(i):
            add_into(rel, {(0, Monomial(0, (a.id, a.star), i)): Fraction(a.sign)})
        add_into(rel, {(0, Monomial(1, (), i)): -Fraction(mu[i])})
        add_into(rel, {(0, Monomial(0, (), i)): -Fraction(params.lam[i])})
        for (v, j), c in params.c.items():
            if v == i and c:
                add_into(rel, {(1 if formal else 0, Monomial(j, (), i)): -Fraction(c)})
        out.append(rel)
    return out


@dataclass
class FilteredReport:
    quiver: str
    params: DeformationParams
    weight: int
    levels: dict[int, int]          # level d -> dim F_d / (J ∩ F_d)
    stabilized_at: int | None        # last D used
    stable: bool
    total_dim: int | None
    expected_dim: int
    history: list[dict] = field(default_factory=list)
    _echelon: Echelon | None = field(default=None, repr=False)
    _keyer: object = field(default=None, repr=False)

    def normal_form(self, vec: dict) -> dict:
        """Remainder of a {(eps power, Monomial): coeff} vector modulo the ideal."""
        keyed = {self._keyer.key(k, m): Fraction(c) for (k, m), c in vec.items()}
        rest = self._echelon.reduce(keyed)
        return {(key[2], Monomial(-key[1], key[3], key[4])): c for key, c in rest.items()}

    @property
    def coefficient_rank(self) -> int | None:
        """Dimension over Q[eps]/(eps^K); equals total_dim when K = 1."""
        K = self.params.formal_order
        if self.total_dim is None or self.total_dim % K:
            return None
        return self.total_dim // K

    @property
    def flat(self) -> bool:
        return self.stable and self.total_dim == self.expected_dim

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver,
            "seed": self.params.seed,
            "mode": "formal" if self.params.formal_order > 1 else "numeric",
            "params": self.params.to_json(),
            "eps_weight": self.weight,
            "levels": self.levels,
            "stabilized_at": self.stabilized_at,
            "stable": self.stable,
            "total_dim": self.total_dim,
            "expected_dim": self.expected_dim,
            "coefficient_rank": self.coefficient_rank,
            "flat": self.flat,
        }


class _Filtered:
    """Monomials and ideal rows graded by filtered degree."""

    def __init__(self, q: Quiver, rels: list[dict], K: int, w: int):
        self.q, self.rels, self.K, self.w = q, rels, K, w
        self._paths: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        self._ends: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        self._counts: dict[int, int] = {}

    def fdeg(self, k: int, m: Monomial) -> int:
        return m.degree() - k * self.w

    def paths_from(self, v: int, length: int) -> list[tuple[int, ...]]:
        key = (v, length)
        if key not in self._paths:
            self._paths[key] = list(_paths(self.q, v, length))
        return self._paths[key]

    def paths_to(self, v: int, length: int) -> list[tuple[int, ...]]:
        key = (v, length)
        if key not in self._ends:
            self._ends[key] = [p for u in self.q.vertices for p in self.paths_from(u, length)
                               if (self.q.arrows[p[-1]].head if p else u) == v]
        return self._ends[key]

    def count_monomials(self, d: int) -> int:
        """Monomials of filtered degree <= d."""
        if d in self._counts:
            return self._counts[d]
        n = 0
        for k in range(self.K):
            top = d + k * self.w
            for base in range(0, top + 1):
                for m in range(base // 2 + 1):
                    n += sum(len(self.paths_from(v, base - 2 * m)) for v in self.q.vertices)
        self._counts[d] = n
        return n

    def rows(self, lo: int, hi: int):
        """Ideal rows eps^k z^m p rho_i q with lo < filtered degree <= hi."""
        K, w = self.K, self.w
        lead = [max(self.fdeg(k, mono) for (k, mono) in rel) for rel in self.rels]
        for i, rel in enumerate(self.rels):
            for k in range(K):
                for extra in range(max(0, lo + 1 - lead[i] + k * w), hi - lead[i] + k * w + 1):
                    # extra = 2m + |p| + |q|
                    for m in range(extra // 2 + 1):
                        rest = extra - 2 * m
                        for lp in range(rest + 1):
                            lefts = self.paths_to(i, lp)
                            rights = self.paths_from(i, rest - lp)
                            for p in lefts:
                                for qq in rights:
                                    row = {}
                                    for (kk, mono), c in rel.items():
                                        if k + kk >= K:
                                            continue
                                        base = self.q.arrows[p[0]].tail if p else i
                                        key_m = Monomial(mono.zpow + m, p + mono.path + qq, base)
                                        row[self.key(k + kk, key_m)] = c
                                    if row:
                                        yield row

    def key(self, k: int, mono: Monomial):
        # smallest key = highest filtered degree, so pivots are leading terms
        return (-self.fdeg(k, mono), -mono.zpow, k, mono.path, mono.base)


def filtered_dimension(q: Quiver, mu: Sequence, params: DeformationParams,
                       level_cap: int | None = None, margin: int = 2,
                       expected_dim: int | None = None) -> FilteredReport:
    """Filtered dimensions of the deformed quotient up to ``level_cap``.

    With numeric c the quotient may live above degree 2h-4, so the default
    cap is doubled in that case.
    """
    h = q.coxeter_number()
    top = 2 * h - 4
    K = params.formal_order
    if level_cap is None:
        numeric_c = K == 1 and any(c for (_, j), c in params.c.items() if j >= 2)
        level_cap = (2 * top if numeric_c else top) + margin
    if level_cap < top + margin or margin < 2:
        raise ValueError("need level_cap >= 2h-4 + margin and margin >= 2")
    w = 2 * h - 3 if K > 1 else 0
    rels = deformed_relations(q, mu, params)
    fx = _Filtered(q, rels, K, w)
    ech = Echelon()
    low = -(K - 1) * w
    D = level_cap + 2
    D_max = level_cap + 4 * margin
    prev = None
    history = []
    done = -10 ** 9
    while D <= D_max:
        for row in fx.rows(done, D):
            ech.add(row)
        done = D
        piv_levels: dict[int, int] = {}
        for key in ech.rows:
            piv_levels[-key[0]] = piv_levels.get(-key[0], 0) + 1
        dims = {}
        acc = 0
        for d in range(low, level_cap + 1):
            acc += piv_levels.get(d, 0)
            dims[d] = fx.count_monomials(d) - acc
        history.append({"D": D, "levels": dims})
        if dims == prev:
            break
        prev = dims
        D += 2
    stable = len(history) >= 2 and history[-1]["levels"] == history[-2]["levels"]
    levels = history[-1]["levels"]
    tail = [levels[d] for d in range(level_cap - margin, level_cap + 1)]
    exhausted = len(set(tail)) == 1
    dim_a = expected_dim
    if dim_a is None:
        dim_a = build_algebra(q, mu).dim * K
    return FilteredReport(
        quiver=q.label, params=params, weight=w, levels=levels,
        stabilized_at=history[-1]["D"], stable=stable and exhausted,
        total_dim=levels[level_cap] if stable and exhausted else None,
        expected_dim=dim_a, history=history, _echelon=ech, _keyer=fx)


def flatness_check(q: Quiver, mu: Sequence, params: DeformationParams,
                   homogeneous_dim: int | None = None) -> dict:
    """Deformed dimension equals K * dim A, and zero parameters give dim A."""
    if homogeneous_dim is None:
        homogeneous_dim = build_algebra(q, mu).dim
    rep = filtered_dimension(q, mu, params, expected_dim=homogeneous_dim * params.formal_order)
    zero = filtered_dimension(q, mu, zero_params(q), expected_dim=homogeneous_dim)
    return {
        "report": rep.to_json(),
        "zero_params_dim": zero.total_dim,
        "flat": rep.flat and zero.flat,
        "inconclusive": not (rep.stable and zero.stable),
    }


def deformation_space_and_theta(alg: GradedAlgebra) -> dict:
    """E = span{z^j e_i : 0 <= j <= h-2} and theta : E -> A/([A,A] + mu Z)."""
    h = alg.h
    quot = Quotient(structural_subspace(alg, "A"), structural_subspace(alg, "commutators+muZ"))
    elements = []
    labels = []
    for i in alg.quiver.vertices:
        v = alg.e(i)
        for j in range(h - 1):
            elements.append(v)
            labels.append(f"z^{j} e{i}")
            v = alg.right_letter(v, Z)
    columns = []
    for v in elements:
        d = alg.degree_of(v) if v else 0
        coords = {}
        if v:
            for n, c in enumerate(quot.coordinates(v, d)):
                if c:
                    coords[(d, n)] = c
        columns.append(coords)
    ech = Echelon()
    chosen = [labels[n] for n, col in enumerate(columns) if ech.add(col)]
    s = ech.rank
    expected = sum(m - 1 for m in alg.quiver.exponents())
    return {
        "E_dim": len(elements),
        "s": s,
        "HH2_dim": quot.dim(),
        "expected_s": expected,
        "surjective": s == quot.dim(),
        "complement": chosen,
        "ok": s == expected and s == quot.dim(),
    }
