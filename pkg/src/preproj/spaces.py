"""Graded subspaces of A: centre, commutators, their mu-twists, and combinations."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .algebra import GradedAlgebra
from .linalg import Echelon, intersect, kernel


class GradedSubspace:
    """A subspace of A given degree by degree by a reduced basis."""

    def __init__(self, alg: GradedAlgebra, label: str, parts: dict[int, list[dict]]):
        self.alg = alg
        self.label = label
        self._ech: dict[int, Echelon] = {}
        for d, vecs in parts.items():
            e = Echelon()
            e.extend(vecs)
            if e.rank:
                self._ech[d] = e

    @classmethod
    def from_vectors(cls, alg, label, vecs: Iterable[dict]) -> "GradedSubspace":
        parts: dict[int, list[dict]] = {}
        for v in vecs:
            if v:
                for d, piece in _split(alg, v).items():
                    parts.setdefault(d, []).append(piece)
        return cls(alg, label, parts)

    def degrees(self) -> list[int]:
        return sorted(self._ech)

    def dim(self, d: int | None = None) -> int:
        if d is None:
            return sum(e.rank for e in self._ech.values())
        e = self._ech.get(d)
        return e.rank if e else 0

    def hilbert(self) -> dict[int, int]:
        return {d: e.rank for d, e in sorted(self._ech.items())}

    def basis(self, d: int) -> list[dict]:
        e = self._ech.get(d)
        return e.basis() if e else []

    def all_basis(self) -> list[dict]:
        return [v for d in self.degrees() for v in self.basis(d)]

    def contains(self, v: dict) -> bool:
        for d, piece in _split(self.alg, v).items():
            e = self._ech.get(d)
            if e is None or not e.contains(piece):
                return False
        return True

    def reduce(self, v: dict) -> dict:
        out: dict = {}
        for d, piece in _split(self.alg, v).items():
            e = self._ech.get(d)
            out.update(e.reduce(piece) if e else piece)
        return out

    def issubspace(self, other: "GradedSubspace") -> bool:
        return all(other.contains(v) for v in self.all_basis())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSubspace):
            return NotImplemented
        return self.hilbert() == other.hilbert() and self.issubspace(other)

    def __add__(self, other: "GradedSubspace") -> "GradedSubspace":
        ds = set(self._ech) | set(other._ech)
        return GradedSubspace(self.alg, f"({self.label}+{other.label})",
                              {d: self.basis(d) + other.basis(d) for d in ds})

    def __and__(self, other: "GradedSubspace") -> "GradedSubspace":
        ds = set(self._ech) & set(other._ech)
        return GradedSubspace(self.alg, f"({self.label}&{other.label})",
                              {d: intersect(self.basis(d), other.basis(d)) for d in ds})

    def map(self, f: Callable[[dict], dict], label: str) -> "GradedSubspace":
        return GradedSubspace.from_vectors(self.alg, label, (f(v) for v in self.all_basis()))

    def __repr__(self) -> str:
        return f"GradedSubspace({self.label}, {self.hilbert()})"


class Quotient:
    """U / W for W inside U, with chosen complement representatives."""

    def __init__(self, num: GradedSubspace, den: GradedSubspace, label: str | None = None):
        self.num, self.den = num, den
        self.label = label or f"{num.label}/{den.label}"
        self.reps: dict[int, list[dict]] = {}
        for d in num.degrees():
            e = Echelon()
            e.extend(den.basis(d))
            if e.rank != den.dim(d):
                raise ValueError("denominator has a degree the numerator lacks")
            chosen = [v for v in num.basis(d) if e.add(v)]
            if e.rank != num.dim(d) or den.dim(d) + len(chosen) != num.dim(d):
                raise ValueError(f"{den.label} is not contained in {num.label}")
            if chosen:
                self.reps[d] = chosen
        for d in den.degrees():
            if num.dim(d) < den.dim(d):
                raise ValueError(f"{den.label} is not contained in {num.label}")

    def hilbert(self) -> dict[int, int]:
        return {d: len(v) for d, v in sorted(self.reps.items())}

    def dim(self, d: int | None = None) -> int:
        if d is None:
            return sum(len(v) for v in self.reps.values())
        return len(self.reps.get(d, []))

    def projection(self, d: int) -> list[list[Fraction]]:
        """Projection U(d) -> (U/W)(d): column n is the class of ``num.basis(d)[n]``."""
        rows = [self.coordinates(v, d) for v in self.num.basis(d)]
        return [list(col) for col in zip(*rows)] if rows else []

    @property
    def alg(self):
        return self.num.alg

    def coordinates(self, v: dict, d: int) -> list[Fraction]:
        """Coefficients of the class of ``v`` (in U(d)) on the representatives."""
        reps = self.reps.get(d, [])
        images = self.den.basis(d) + reps + [v]
        rels = kernel(images)
        last = len(images) - 1
        for rel in rels:
            if last in rel:
                s = -1 / rel[last]
                off = len(images) - 1 - len(reps)
                return [s * rel.get(off + k, 0) for k in range(len(reps))]
        return [Fraction(0)] * len(reps)


def _split(alg: GradedAlgebra, v: dict) -> dict[int, dict]:
    out: dict[int, dict] = {}
    for i, c in v.items():
        out.setdefault(alg.basis[i].degree, {})[i] = c
    return out


# -- the named subspaces -------------------------------------------------------

def whole(alg: GradedAlgebra) -> GradedSubspace:
    return GradedSubspace(alg, "A", {d: [{i: Fraction(1)} for i in ids]
                                     for d, ids in alg.by_degree.items()})


def positive_part(alg: GradedAlgebra) -> GradedSubspace:
    return GradedSubspace(alg, "A_plus", {d: [{i: Fraction(1)} for i in ids]
                                       for d, ids in alg.by_degree.items() if d > 0})


def top_part(alg: GradedAlgebra) -> GradedSubspace:
    d = alg.top_degree
    return GradedSubspace(alg, "A_top", {d: [{i: Fraction(1)} for i in alg.by_degree.get(d, [])]})


def _small_generators(alg: GradedAlgebra) -> list[dict]:
    # z is central by construction, so idempotents and arrows suffice
    q = alg.quiver
    return [alg.e(i) for i in q.vertices] + [alg.arrow(a.id) for a in q.arrows]


def center(alg: GradedAlgebra) -> GradedSubspace:
    gens = _small_generators(alg)
    parts = {}
    for d, ids in alg.by_degree.items():
        images = []
        for i in ids:
            img = {}
            for g, gv in enumerate(gens):
                for k, c in alg.commutator({i: Fraction(1)}, gv).items():
                    img[(g, k)] = c
            images.append(img)
        parts[d] = [{ids[n]: c for n, c in rel.items()} for rel in kernel(images)]
    return GradedSubspace(alg, "Z", parts)


def commutators(alg: GradedAlgebra) -> GradedSubspace:
    """[A, A], spanned by [b, g] over basis elements b and generators g."""
    gens = _small_generators(alg)
    vecs = (alg.commutator({i: Fraction(1)}, g) for i in range(alg.dim) for g in gens)
    return GradedSubspace.from_vectors(alg, "[A,A]", vecs)


def commutators_all_pairs(alg: GradedAlgebra) -> GradedSubspace:
    """[A, A] from every pair of basis elements; the slow oracle."""
    n = alg.dim
    vecs = (alg.commutator({i: Fraction(1)}, {j: Fraction(1)})
            for i in range(n) for j in range(i + 1, n))
    return GradedSubspace.from_vectors(alg, "[A,A]", vecs)


def mu_twist(sub: GradedSubspace, inverse: bool = False) -> GradedSubspace:
    label = ("mu^-1" if inverse else "mu") + sub.label
    return sub.map(lambda v: sub.alg.left_mu(v, inverse), label)


def z_times(sub: GradedSubspace) -> GradedSubspace:
    z = sub.alg.z()
    return sub.map(lambda v: sub.alg.multiply(z, v), "z" + sub.label)


_NAMED = {
    "A": whole,
    "A_plus": positive_part,
    "A_top": top_part,
    "Z": center,
    "commutators": commutators,
    "muZ": lambda alg: mu_twist(center(alg)),
    "mu_inv_commutators": lambda alg: mu_twist(commutators(alg), inverse=True),
    "zZ": lambda alg: z_times(center(alg)),
}


def structural_subspace(alg: GradedAlgebra, label: str) -> GradedSubspace:
    """Named subspace, or ``+`` / ``&`` combinations such as ``Z&mu_inv_commutators``.

    ``+`` binds tighter than ``&``; no parentheses.
    """
    cache: dict[str, GradedSubspace] = alg.__dict__.setdefault("_subspaces", {})

    def named(name: str) -> GradedSubspace:
        name = name.strip()
        if name not in _NAMED:
            raise KeyError(f"unknown subspace {name!r}; known: {sorted(_NAMED)}")
        if name not in cache:
            cache[name] = _NAMED[name](alg)
        return cache[name]

    out = None
    for conj in label.split("&"):
        summ = None
        for term in conj.split("+"):
            s = named(term)
            summ = s if summ is None else summ + s
        out = summ if out is None else out & summ
    return out
