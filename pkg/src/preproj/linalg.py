"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts mapping a column index to a nonzero ``Fraction``
(or ``int``).  Elimination keeps integer rows and divides out the content
after every step, so coefficients stay small without any floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

Vec = dict


def clean(v: Mapping) -> dict:
    return {k: c for k, c in v.items() if c}


def add_into(acc: dict, v: Mapping, scale=1) -> dict:
    """acc += scale * v, in place; zero entries are dropped."""
    if not scale:
        return acc
    for k, c in v.items():
        n = acc.get(k, 0) + scale * c
        if n:
            acc[k] = n
        else:
            acc.pop(k, None)
    return acc


def scaled(v: Mapping, s) -> dict:
    if not s:
        return {}
    return {k: s * c for k, c in v.items()}


def lincomb(terms: Iterable) -> dict:
    """Sum of ``coef * vec`` over ``(coef, vec)`` pairs."""
    acc: dict = {}
    for s, v in terms:
        add_into(acc, v, s)
    return acc


def integerize(v: Mapping) -> tuple[dict, Fraction]:
    """Return ``(row, s)`` with ``row`` integral, primitive and ``row == s * v``."""
    den = 1
    for c in v.values():
        if isinstance(c, Fraction) and c.denominator != 1:
            den = lcm(den, c.denominator)
    row = {k: int(c * den) for k, c in v.items() if c}
    g = 0
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        row = {k: c // g for k, c in row.items()}
        return row, Fraction(den, g)
    return row, Fraction(den)


class Echelon:
    """Incrementally maintained echelon form of a span of sparse vectors.

    The pivot of a row is its smallest column index, so callers steer pivot
    choice through their column numbering.  With ``track=True`` every stored
    row remembers which input vectors it came from, and inputs that reduce to
    zero leave a kernel relation in :attr:`relations`.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[int, dict[int, int]] = {}
        self.track = track
        self.combos: dict[int, dict] = {}
        self.relations: list[dict] = []
        self._reduced = True

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> set[int]:
        return set(self.rows)

    def _eliminate(self, row: dict, combo: dict | None):
        rows = self.rows
        while True:
            hit = None
            for c in row:
                if c in rows and (hit is None or c < hit):
                    hit = c
            if hit is None:
                return row, combo
            prow = rows[hit]
            p, a = prow[hit], row[hit]
            g = gcd(p, a)
            mp, ma = p // g, a // g
            if mp != 1:
                row = {k: v * mp for k, v in row.items()}
            for k, v in prow.items():
                nv = row.get(k, 0) - ma * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            if combo is not None:
                combo = {k: v * mp for k, v in combo.items()}
                add_into(combo, self.combos[hit], -ma)
            g = 0
            for v in row.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                row = {k: v // g for k, v in row.items()}
                if combo is not None:
                    combo = {k: Fraction(v, g) for k, v in combo.items()}

    def add(self, v: Mapping, tag=None) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        row, s = integerize(v)
        combo = {tag: s} if self.track else None
        if not row:
            if self.track and tag is not None:
                self.relations.append(combo)
            return False
        row, combo = self._eliminate(row, combo)
        if not row:
            if self.track:
                self.relations.append(clean(combo))
            return False
        piv = min(row)
        if row[piv] < 0:
            row = {k: -c for k, c in row.items()}
            if combo is not None:
                combo = {k: -c for k, c in combo.items()}
        self.rows[piv] = row
        if combo is not None:
            self.combos[piv] = combo
        self._reduced = False
        return True

    def extend(self, vecs: Iterable[Mapping]) -> int:
        n = 0
        for v in vecs:
            n += self.add(v)
        return n

    def reduce(self, v: Mapping) -> dict:
        """Exact remainder of ``v`` modulo the span (no pivot columns left)."""
        out = {k: Fraction(c) for k, c in v.items() if c}
        rows = self.rows
        while True:
            hit = None
            for c in out:
                if c in rows and (hit is None or c < hit):
                    hit = c
            if hit is None:
                return out
            prow = rows[hit]
            f = out[hit] / prow[hit]
            for k, c in prow.items():
                nv = out.get(k, 0) - f * c
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def rref(self) -> None:
        """Clear every pivot column from all other rows."""
        if self._reduced:
            return
        rows = self.rows
        for piv in sorted(rows, reverse=True):
            row = rows[piv]
            combo = self.combos.get(piv) if self.track else None
            while True:
                hit = None
                for c in row:
                    if c != piv and c in rows and (hit is None or c < hit):
                        hit = c
                if hit is None:
                    break
                prow = rows[hit]
                p, a = prow[hit], row[hit]
                g = gcd(p, a)
                mp, ma = p // g, a // g
                if mp != 1:
                    row = {k: v * mp for k, v in row.items()}
                for k, v in prow.items():
                    nv = row.get(k, 0) - ma * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                if combo is not None:
                    combo = {k: v * mp for k, v in combo.items()}
                    add_into(combo, self.combos[hit], -ma)
            rows[piv] = row
            if combo is not None:
                self.combos[piv] = combo
        self._reduced = True

    def pivot_expression(self, piv: int) -> dict:
        """Express column ``piv`` through non-pivot columns (needs RREF).

        Returns ``{col: coef}`` with ``e_piv == sum coef * e_col`` modulo the
        span.
        """
        self.rref()
        row = self.rows[piv]
        p = row[piv]
        return {k: Fraction(-c, p) for k, c in row.items() if k != piv}

    def basis(self) -> list[dict]:
        """Fully reduced basis, pivot entries normalised to 1."""
        self.rref()
        out = []
        for piv in sorted(self.rows):
            row = self.rows[piv]
            p = row[piv]
            out.append({k: Fraction(c, p) for k, c in row.items()})
        return out


def rank(vecs: Iterable[Mapping]) -> int:
    e = Echelon()
    e.extend(vecs)
    return e.rank


def kernel(images: list[Mapping]) -> list[dict]:
    """Basis of ``{x : sum_i x_i * images[i] == 0}`` as dicts over positions."""
    e = Echelon(track=True)
    for i, v in enumerate(images):
        e.add(v, tag=i)
    return [clean(r) for r in e.relations]


def span_basis(vecs: Iterable[Mapping]) -> list[dict]:
    e = Echelon()
    e.extend(vecs)
    return e.basis()


def intersect(u: list[Mapping], w: list[Mapping]) -> list[dict]:
    """Basis of span(u) ∩ span(w)."""
    if not u or not w:
        return []
    images = list(u) + [scaled(x, -1) for x in w]
    out = []
    for rel in kernel(images):
        out.append(lincomb((c, u[i]) for i, c in rel.items() if i < len(u)))
    return span_basis(out)


# -- small dense matrices -------------------------------------------------

def dense_inverse(m: list[list]) -> list[list[Fraction]] | None:
    """Gauss-Jordan inverse over Q; None when singular."""
    n = len(m)
    if any(len(r) != n for r in m):
        return None
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [r[n:] for r in a]


def dense_det(m: list[list]) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in r] for r in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def dense_rank(m: list[list]) -> int:
    return rank({j: x for j, x in enumerate(r) if x} for r in m)
