"""The period-4 free bimodule resolution C_4 -> C_3 -> C_2 -> C_1 -> C_0 -> A.

Every C_i is a free A-bimodule on finitely many generators ``A e_t (x) e_h A``.
A generator carries an internal degree (the shift of its summand):

    C_0 : 1_j                          degree 0
    C_1 : V_a (arrow a),  Z_j          degrees 1, 2
    C_2 : V_a,            Z_j          degrees 3, 2
    C_3 : 1_j                          degree 4
    C_4 : 1_j                          degree 2h
    C_5 : the generators of C_1 shifted by 2h (for the wraparound d_4 d_5 = 0)

A differential is stored by its value on generators, as terms
``(coef, left, target generator, right)``; it extends to basis tensors
``b1 (x) g (x) b2`` bimodule-linearly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import GradedAlgebra, Z
from .frobenius import DualBasisPair, TraceForm
from .linalg import add_into, rank


@dataclass(frozen=True)
class Gen:
    kind: str  # "e", "V" or "Z"
    key: int   # vertex, or arrow id for "V"
    tail: int
    head: int
    degree: int

    def label(self, alg: GradedAlgebra) -> str:
        if self.kind == "V":
            return f"V[{alg.quiver.arrows[self.key].name}]"
        return f"{'1' if self.kind == 'e' else 'Z'}[{self.key}]"


Term = tuple[Fraction, dict, int, dict]
Key = tuple[int, int, int]  # (b1, generator index, b2)


class FreeBimodule:
    def __init__(self, alg: GradedAlgebra, name: str, gens: list[Gen]):
        self.alg = alg
        self.name = name
        self.gens = gens
        self._slices: dict[int, list[Key]] = {}
        self._index: dict[int, dict[Key, int]] = {}
        by_dh: dict[tuple[int, int], list[int]] = {}
        by_dt: dict[tuple[int, int], list[int]] = {}
        for b in alg.basis:
            by_dh.setdefault((b.degree, b.head), []).append(b.index)
            by_dt.setdefault((b.degree, b.tail), []).append(b.index)
        self._by_dh, self._by_dt = by_dh, by_dt

    def gen_index(self, kind: str, key: int) -> int:
        for n, g in enumerate(self.gens):
            if g.kind == kind and g.key == key:
                return n
        raise KeyError((kind, key))

    def slice(self, d: int) -> list[Key]:
        hit = self._slices.get(d)
        if hit is not None:
            return hit
        out = []
        top = self.alg.top_degree
        for n, g in enumerate(self.gens):
            rest = d - g.degree
            for d1 in range(max(0, rest - top), min(rest, top) + 1):
                lefts = self._by_dh.get((d1, g.tail), [])
                rights = self._by_dt.get((rest - d1, g.head), [])
                out.extend((b1, n, b2) for b1 in lefts for b2 in rights)
        self._slices[d] = out
        self._index[d] = {k: i for i, k in enumerate(out)}
        return out

    def dim(self, d: int) -> int:
        return len(self.slice(d))

    def index(self, d: int) -> dict[Key, int]:
        self.slice(d)
        return self._index[d]

    def degree_of(self, key: Key) -> int:
        b1, n, b2 = key
        basis = self.alg.basis
        return basis[b1].degree + self.gens[n].degree + basis[b2].degree

    def max_degree(self) -> int:
        return max(g.degree for g in self.gens) + 2 * self.alg.top_degree

    def min_degree(self) -> int:
        return min(g.degree for g in self.gens)


class BimoduleMap:
    """A bimodule map out of a free bimodule, given on generators.

    ``target`` is another FreeBimodule, or None for the multiplication
    map onto A.
    """

    def __init__(self, name: str, source: FreeBimodule, target: FreeBimodule | None,
                 images: list[list[Term]] | None = None):
        self.name = name
        self.source = source
        self.target = target
        self.images = images
        self.alg = source.alg

    def image(self, key: Key) -> dict:
        alg = self.alg
        b1, n, b2 = key
        if self.target is None:
            return dict(alg.basis_product(b1, b2))
        out: dict = {}
        for c, left, g, right in self.images[n]:
            lv = alg.multiply({b1: Fraction(1)}, left)
            if not lv:
                continue
            rv = alg.multiply(right, {b2: Fraction(1)})
            for p, cp in lv.items():
                for s, cs in rv.items():
                    add_into(out, {(p, g, s): c * cp * cs})
        return out

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for key, c in v.items():
            add_into(out, self.image(key), c)
        return out

    def columns(self, d: int) -> list[dict]:
        """Images of the degree-d basis, in target slice coordinates."""
        if self.target is None:
            return [self.image(k) for k in self.source.slice(d)]
        idx = self.target.index(d)
        return [{idx[k]: c for k, c in self.image(key).items()} for key in self.source.slice(d)]

    def rank(self, d: int) -> int:
        return rank(self.columns(d))


@dataclass
class Resolution:
    alg: GradedAlgebra
    modules: list[FreeBimodule]  # C_0 .. C_5
    maps: list[BimoduleMap]      # d_0 .. d_5, d_i : C_i -> C_{i-1}

    def target_dim(self, i: int, d: int) -> int:
        if i == 0:
            return len(self.alg.by_degree.get(d, []))
        return self.modules[i - 1].dim(d)


def _gens(alg: GradedAlgebra, which: int) -> list[Gen]:
    q, h = alg.quiver, alg.h
    verts = [Gen("e", j, j, j, 0) for j in q.vertices]
    if which == 0:
        return verts
    if which in (1, 2, 5):
        vdeg = {1: 1, 2: 3, 5: 1 + 2 * h}[which]
        zdeg = {1: 2, 2: 2, 5: 2 + 2 * h}[which]
        return ([Gen("V", a.id, a.tail, a.head, vdeg) for a in q.arrows]
                + [Gen("Z", j, j, j, zdeg) for j in q.vertices])
    return [Gen("e", j, j, j, 4 if which == 3 else 2 * h) for j in q.vertices]


def build_resolution(alg: GradedAlgebra, db: DualBasisPair) -> Resolution:
    q = alg.quiver
    one = Fraction(1)
    mods = [FreeBimodule(alg, f"C{i}", _gens(alg, i)) for i in range(6)]
    e = [alg.e(j) for j in q.vertices]
    ze = [alg.right_letter(alg.e(j), Z) for j in q.vertices]
    arr = [alg.arrow(a.id) for a in q.arrows]

    def d1_images(src: FreeBimodule, tgt: FreeBimodule) -> list[list[Term]]:
        out = []
        for g in src.gens:
            if g.kind == "V":
                a = q.arrows[g.key]
                out.append([(one, arr[a.id], tgt.gen_index("e", a.head), e[a.head]),
                            (-one, e[a.tail], tgt.gen_index("e", a.tail), arr[a.id])])
            else:
                j = g.key
                out.append([(one, ze[j], tgt.gen_index("e", j), e[j]),
                            (-one, e[j], tgt.gen_index("e", j), ze[j])])
        return out

    def star_terms(tgt: FreeBimodule, j: int) -> list[Term]:
        terms = []
        for a in q.out_arrows(j):
            s = Fraction(a.sign)
            terms.append((s, arr[a.id], tgt.gen_index("V", a.star), e[j]))
            terms.append((s, e[j], tgt.gen_index("V", a.id), arr[a.star]))
        return terms

    c0, c1, c2, c3, c4, c5 = mods
    d2 = []
    for g in c2.gens:
        if g.kind == "V":
            a = q.arrows[g.key]
            t, hd = a.tail, a.head
            v = c1.gen_index("V", a.id)
            d2.append([(-one, ze[t], v, e[hd]), (one, e[t], v, ze[hd]),
                       (one, arr[a.id], c1.gen_index("Z", hd), e[hd]),
                       (-one, e[t], c1.gen_index("Z", t), arr[a.id])])
        else:
            j = g.key
            d2.append(star_terms(c1, j) + [(-alg.mu[j], e[j], c1.gen_index("Z", j), e[j])])
    d3 = []
    for g in c3.gens:
        j = g.key
        d3.append(star_terms(c2, j) + [(one, ze[j], c2.gen_index("Z", j), e[j]),
                                       (-one, e[j], c2.gen_index("Z", j), ze[j])])
    d4 = []
    for g in c4.gens:
        j = g.key
        d4.append([(one, x, c3.gen_index("e", k), xd)
                   for x, xd, (_, t, k) in zip(db.xs, db.duals, db.blocks) if t == j])
    maps = [
        BimoduleMap("d0", c0, None),
        BimoduleMap("d1", c1, c0, d1_images(c1, c0)),
        BimoduleMap("d2", c2, c1, d2),
        BimoduleMap("d3", c3, c2, d3),
        BimoduleMap("d4", c4, c3, d4),
        BimoduleMap("d5", c5, c4, d1_images(c5, c4)),
    ]
    return Resolution(alg, mods, maps)


def build_complex_slice(res: Resolution, i: int, d: int) -> list[str]:
    """Readable basis of C_i(d); i = -1 is A itself."""
    alg = res.alg
    if i == -1:
        return [alg.name(b) for b in alg.by_degree.get(d, [])]
    mod = res.modules[i]
    return [f"{alg.name(b1)} (x) {mod.gens[n].label(alg)} (x) {alg.name(b2)}"
            for b1, n, b2 in mod.slice(d)]


@dataclass
class ResolutionReport:
    label: str
    degree_bound: int
    rows: list[dict]
    failures: list[dict]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"quiver": self.label, "degree_bound": self.degree_bound,
                "ok": self.ok, "degrees": self.rows, "failures": self.failures}


def verify_resolution(res: Resolution, degree_bound: int) -> ResolutionReport:
    """Zero compositions (including d_4 d_5) and rank-nullity exactness at C_0..C_3."""
    alg = res.alg
    if degree_bound > alg.degree_cap:
        raise ValueError("degree bound exceeds the built degree cap")
    rows, failures = [], []
    for d in range(degree_bound + 1):
        dims = [res.modules[i].dim(d) for i in range(6)]
        ranks = [res.maps[i].rank(d) for i in range(6)]
        for i in range(5):
            lower, upper = res.maps[i], res.maps[i + 1]
            for key in res.modules[i + 1].slice(d):
                img = lower.apply(upper.image(key))
                if img:
                    failures.append({"check": f"d{i} d{i + 1} = 0", "degree": d,
                                     "source": str(key), "image": {str(k): str(c) for k, c in img.items()}})
                    break
        a_dim = len(alg.by_degree.get(d, []))
        if ranks[0] != a_dim:
            failures.append({"check": "d0 onto A", "degree": d, "rank": ranks[0], "dim": a_dim})
        for i in range(4):
            nullity = dims[i] - ranks[i]
            if ranks[i + 1] != nullity:
                failures.append({"check": f"exact at C{i}", "degree": d,
                                 "rank_in": ranks[i + 1], "nullity": nullity})
        rows.append({"degree": d, "dims": dims, "ranks": ranks})
    return ResolutionReport(alg.quiver.label, degree_bound, rows, failures)


# -- self-duality -------------------------------------------------------------

class _Forms:
    """(x (x) y, a (x) b) = Tr(xb) Tr(ya), times (alpha, beta) on V-summands."""

    def __init__(self, alg: GradedAlgebra, tr: TraceForm):
        self.alg = alg
        self.tr = tr
        self._t: dict[tuple[int, int], Fraction] = {}

    def t(self, i: int, j: int) -> Fraction:
        key = (i, j)
        hit = self._t.get(key)
        if hit is None:
            hit = self.tr(self.alg.basis_product(i, j))
            self._t[key] = hit
        return hit

    def gen_pair(self, g: Gen, h: Gen) -> int:
        if g.kind == "V" and h.kind == "V":
            b = self.alg.quiver.arrows[h.key]
            return b.sign if b.star == g.key else 0
        return int(g.kind == h.kind)

    def pair(self, mx: FreeBimodule, x: dict, my: FreeBimodule, y: dict) -> Fraction:
        total = Fraction(0)
        for (x1, gx, x2), cx in x.items():
            for (y1, gy, y2), cy in y.items():
                gp = self.gen_pair(mx.gens[gx], my.gens[gy])
                if gp:
                    t = self.t(x1, y2)
                    if t:
                        total += cx * cy * gp * t * self.t(x2, y1)
        return total

    def pair_aa(self, x: dict, y: dict) -> Fraction:
        total = Fraction(0)
        for (x1, _, x2), cx in x.items():
            for (y1, _, y2), cy in y.items():
                t = self.t(x1, y2)
                if t:
                    total += cx * cy * t * self.t(x2, y1)
        return total


def _all_keys(mod: FreeBimodule) -> list[Key]:
    return [k for d in range(mod.min_degree(), mod.max_degree() + 1) for k in mod.slice(d)]


def selfduality_check(res: Resolution, tr: TraceForm, db: DualBasisPair) -> dict:
    """Adjointness of the truncated complex under the trace pairings.

    Checks, on all basis pairs,
      (d4bar x, b)        = Tr(x d0 b)          (x in A, b in C_0)
      (-d3 u, c)          = (u, d1 c)           (u in C_3, c in C_1)
      (d2 u, v)           = (u, d2 iota v)      (u, v in C_2; iota negates V-parts)
    where d4bar(x) = sum x x_i (x) x_i* lands in C_3.
    """
    alg = res.alg
    forms = _Forms(alg, tr)
    c0, c1, c2, c3 = res.modules[:4]
    d1, d2, d3 = res.maps[1:4]
    out = {}

    def d4bar(x: int) -> dict:
        v: dict = {}
        for xi, xd, (_, _, k) in zip(db.xs, db.duals, db.blocks):
            left = alg.multiply({x: Fraction(1)}, xi)
            if not left:
                continue
            g = c3.gen_index("e", k)
            for p, cp in left.items():
                for s, cs in xd.items():
                    add_into(v, {(p, g, s): cp * cs})
        return v

    bad = 0
    c0_keys = _all_keys(c0)
    for x in range(alg.dim):
        img = d4bar(x)
        for b in c0_keys:
            lhs = forms.pair_aa(img, {b: 1})
            rhs = tr(alg.multiply({x: Fraction(1)}, alg.basis_product(b[0], b[2])))
            bad += lhs != rhs
    out["d0* = d4"] = bad == 0

    bad = 0
    c1_keys = _all_keys(c1)
    d1_imgs = {c: d1.image(c) for c in c1_keys}
    for u in _all_keys(c3):
        du = d3.image(u)
        for c in c1_keys:
            lhs = -forms.pair(c2, du, c1, {c: 1})
            rhs = forms.pair_aa({u: 1}, d1_imgs[c])
            bad += lhs != rhs
    out["d1* = -d3"] = bad == 0

    bad = 0
    c2_keys = _all_keys(c2)
    d2_imgs = {u: d2.image(u) for u in c2_keys}

    def iota_sign(key: Key) -> int:
        return -1 if c2.gens[key[1]].kind == "V" else 1

    for u in c2_keys:
        for v in c2_keys:
            lhs = forms.pair(c1, d2_imgs[u], c2, {v: 1})
            rhs = iota_sign(v) * forms.pair(c2, {u: 1}, c1, d2_imgs[v])
            bad += lhs != rhs
    out["d2* iota = d2"] = bad == 0
    return out
