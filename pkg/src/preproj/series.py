"""Truncated power series and the Hilbert-series identities built on them.

Coefficients are Python ints or Fractions.  Products over s of factors of
the form 1 + O(t^{2s}) are cut at s = N // 2: later factors are 1 modulo
t^{N+1}.  The factors used here all have that form because tr C = 0
(no loops), so det(1 - C t^s + t^{2s}) and det H_A(t^s) start 1 + O(t^{2s}).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .quiver import Quiver, build_quiver, exponent_table

DEFAULT_ORDER_BUILT = 40
DEFAULT_ORDER_PROFILE = 60


class TruncatedSeries:
    """c_0 + c_1 t + ... + c_N t^N, everything above t^N discarded."""

    __slots__ = ("c", "N")

    def __init__(self, coeffs: Sequence, N: int):
        c = list(coeffs[: N + 1])
        c += [0] * (N + 1 - len(c))
        self.c = c
        self.N = N

    @classmethod
    def one(cls, N: int) -> "TruncatedSeries":
        return cls([1], N)

    @classmethod
    def monomial(cls, k: int, N: int, coef=1) -> "TruncatedSeries":
        c = [0] * (N + 1)
        if k <= N:
            c[k] = coef
        return cls(c, N)

    @classmethod
    def from_dict(cls, d: dict[int, int], N: int) -> "TruncatedSeries":
        c = [0] * (N + 1)
        for k, v in d.items():
            if 0 <= k <= N:
                c[k] += v
        return cls(c, N)

    def __getitem__(self, k: int):
        return self.c[k] if 0 <= k <= self.N else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncatedSeries) and self.N == other.N and self.c == other.c

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return TruncatedSeries([a + b for a, b in zip(self.c, other.c)], min(self.N, other.N))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-a for a in self.c], self.N)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([a * other for a in self.c], self.N)
        N = min(self.N, other.N)
        out = [0] * (N + 1)
        a, b = self.c, other.c
        for i in range(N + 1):
            ai = a[i]
            if ai:
                for j in range(N + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return TruncatedSeries(out, N)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        c0 = self.c[0]
        if not c0:
            raise ZeroDivisionError("constant term is zero")
        inv0 = Fraction(1, 1) / c0
        if inv0.denominator == 1:
            inv0 = int(inv0)
        out = [0] * (self.N + 1)
        out[0] = inv0
        for n in range(1, self.N + 1):
            acc = sum(self.c[k] * out[n - k] for k in range(1, n + 1))
            v = -acc * inv0
            out[n] = int(v) if isinstance(v, Fraction) and v.denominator == 1 else v
        return TruncatedSeries(out, self.N)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self * other.inverse()

    def __pow__(self, e: int) -> "TruncatedSeries":
        base = self if e >= 0 else self.inverse()
        out = TruncatedSeries.one(self.N)
        for _ in range(abs(e)):
            out = out * base
        return out

    def subs_power(self, s: int) -> "TruncatedSeries":
        """t -> t^s."""
        out = [0] * (self.N + 1)
        for k, v in enumerate(self.c):
            if v and k * s <= self.N:
                out[k * s] = v
        return TruncatedSeries(out, self.N)

    def to_dict(self) -> dict[int, int]:
        return {k: v for k, v in enumerate(self.c) if v}

    def __repr__(self) -> str:
        terms = [f"{v}t^{k}" for k, v in enumerate(self.c) if v]
        return " + ".join(terms) + f" + O(t^{self.N + 1})" if terms else f"O(t^{self.N + 1})"


def one_minus(k: int, N: int) -> TruncatedSeries:
    """1 - t^k."""
    c = [0] * (N + 1)
    c[0] = 1
    if k <= N:
        c[k] -= 1
    return TruncatedSeries(c, N)


def series_det(m: list[list[TruncatedSeries]]) -> TruncatedSeries:
    """Determinant of a square matrix of series whose constant term is invertible.

    Gaussian elimination over the power series ring; a pivot is any entry
    with nonzero constant term in the current column.
    """
    n = len(m)
    a = [row[:] for row in m]
    det = TruncatedSeries.one(a[0][0].N if n else 0)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col][0]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is not invertible at t = 0")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        pinv = p.inverse()
        for r in range(col + 1, n):
            f = a[r][col] * pinv
            if any(f.c):
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


# -- exponent profiles --------------------------------------------------------

@dataclass(frozen=True)
class ExponentProfile:
    type_tag: str
    rank: int
    h: int
    exponents: tuple[int, ...]

    @property
    def r(self) -> int:
        return self.rank

    @classmethod
    def of(cls, type_tag: str, rank: int) -> "ExponentProfile":
        h, m = exponent_table(type_tag.upper(), rank)
        return cls(type_tag.upper(), rank, h, m)

    def __post_init__(self):
        m, r, h = self.exponents, self.rank, self.h
        if any(m[r - 1 - i] != h - m[i] for i in range(r)):
            raise ValueError("exponents violate m_{r+1-i} = h - m_i")

    def quiver(self) -> Quiver:
        return build_quiver(self.type_tag, self.rank)


def p_series(pr: ExponentProfile, N: int | None = None) -> TruncatedSeries:
    """p(t) = sum_i (1 + t^2 + ... + t^{2(m_i - 1)})."""
    N = N if N is not None else 2 * pr.h
    d: dict[int, int] = {}
    for m in pr.exponents:
        for j in range(m):
            d[2 * j] = d.get(2 * j, 0) + 1
    return TruncatedSeries.from_dict(d, N)


def q_and_qstar(pr: ExponentProfile, N: int | None = None) -> tuple[TruncatedSeries, TruncatedSeries]:
    """q = sum_i (t^{2m_i} + ... + t^{2h-4});  q_* = p - sum_i t^{2(m_i-1)}."""
    N = N if N is not None else 2 * pr.h
    q: dict[int, int] = {}
    for m in pr.exponents:
        for e in range(2 * m, 2 * pr.h - 4 + 1, 2):
            q[e] = q.get(e, 0) + 1
    qs = p_series(pr, N) - TruncatedSeries.from_dict(
        _count(2 * (m - 1) for m in pr.exponents), N)
    return TruncatedSeries.from_dict(q, N), qs


def _count(keys) -> dict[int, int]:
    out: dict[int, int] = {}
    for k in keys:
        out[k] = out.get(k, 0) + 1
    return out


def palindrome(s: TruncatedSeries, top: int) -> TruncatedSeries:
    """t^top s(1/t) for a polynomial of degree <= top."""
    return TruncatedSeries.from_dict({top - k: v for k, v in s.to_dict().items()}, s.N)


def b_closed_form(pr: ExponentProfile, N: int) -> list[int]:
    """b_k = 0 for odd k; b_{2k} = 0 if h | k, else r - #{i : m_i = k mod h}."""
    b = [0] * (N + 1)
    for k in range(1, N // 2 + 1):
        if k % pr.h:
            b[2 * k] = pr.r - sum(1 for m in pr.exponents if m % pr.h == k % pr.h)
    return b


def n_closed_form(pr: ExponentProfile, K: int) -> list[int]:
    """n_k = 0 if h | k, else -#{i : m_i = k mod h}; index 0 unused."""
    n = [0] * (K + 1)
    for k in range(1, K + 1):
        if k % pr.h:
            n[k] = -sum(1 for m in pr.exponents if m % pr.h == k % pr.h)
    return n


def _div(k: int, q: int) -> int:
    return int(k % q == 0)


def n_case_formula(pr: ExponentProfile, k: int) -> int:
    """The per-type divisibility formulas for n_k."""
    t, h = pr.type_tag, pr.h
    if t == "A":
        return _div(k, h) - 1
    if t == "D":
        n = h // 2
        return _div(k, 2 * n) - _div(k, n) + _div(k, 2) - 1
    d = lambda q: _div(k, q)
    if pr.rank == 6:
        return d(12) + d(2) + d(3) - d(6) - d(4) - 1
    if pr.rank == 7:
        return d(18) + d(3) + d(2) - d(9) - d(6) - 1
    return d(30) + d(5) + d(3) + d(2) - d(15) - d(10) - d(6) - 1


# det(1 - Ct + t^2) as prod (1 - t^a) / prod (1 - t^b)
def case_det_exponents(pr: ExponentProfile) -> tuple[list[int], list[int]]:
    t, h = pr.type_tag, pr.h
    if t == "A":
        return [2 * h], [2]
    if t == "D":
        n = h // 2
        return [4, 4 * n], [2, 2 * n]
    return {
        6: ([24, 4, 6], [12, 8, 2]),
        7: ([36, 6, 4], [18, 12, 2]),
        8: ([60, 10, 6, 4], [30, 20, 12, 2]),
    }[pr.rank]


def _ratio(num: list[int], den: list[int], N: int, s: int = 1) -> TruncatedSeries:
    out = TruncatedSeries.one(N)
    for a in num:
        out = out * one_minus(a * s, N)
    for b in den:
        out = out * one_minus(b * s, N).inverse()
    return out


def coxeter_det(q: Quiver, N: int, s: int = 1) -> TruncatedSeries:
    """det(1 - C t^s + t^{2s}) as a truncated series."""
    r = q.rank
    C = q.adjacency
    m = []
    for i in range(r):
        row = []
        for j in range(r):
            d = {0: 1, 2 * s: 1} if i == j else {}
            if C[i][j]:
                d[s] = d.get(s, 0) - C[i][j]
            row.append(TruncatedSeries.from_dict(d, N))
        m.append(row)
    return series_det(m)


def hilbert_det(hm: list[list[list[int]]], N: int, s: int = 1) -> TruncatedSeries:
    """det H_A(t^s) from the computed Hilbert matrix."""
    m = [[TruncatedSeries.from_dict({d * s: v for d, v in enumerate(entry) if v}, N)
          for entry in row] for row in hm]
    return series_det(m)


def _b_product(b: list[int], N: int) -> TruncatedSeries:
    out = TruncatedSeries.one(N)
    for k in range(1, N + 1):
        if b[k]:
            out = out * one_minus(k, N) ** b[k]
    return out


def euler_rhs(q: Quiver, h: int, N: int) -> TruncatedSeries:
    """prod_s ((1 - t^{2s})/(1 - t^{2hs}))^r det(1 - C t^s + t^{2s})."""
    out = TruncatedSeries.one(N)
    for s in range(1, N // 2 + 1):
        out = out * _ratio([2 * s], [2 * h * s], N) ** q.rank * coxeter_det(q, N, s)
    return out


def b_from_series(pr: ExponentProfile, aplus_mod_comm: dict[int, int],
                  z_mod_top: dict[int, int], N: int) -> list[int]:
    """Coefficients of (h_{A+/[A,A]} + t^4 h_{Z/A_top}) / (1 - t^{2h})."""
    num = TruncatedSeries.from_dict(aplus_mod_comm, N) + TruncatedSeries.from_dict(
        {k + 4: v for k, v in z_mod_top.items()}, N)
    return list((num * one_minus(2 * pr.h, N).inverse()).c)


def hc_series(pr: ExponentProfile, N: int | None = None) -> dict:
    """Reduced cyclic homology data from the exponents alone."""
    N = N if N is not None else 4 * pr.h
    h, r = pr.h, pr.r
    aplus = p_series(pr, N) - TruncatedSeries.from_dict({0: r}, N)
    ztop_t4 = TruncatedSeries.from_dict(
        _count(e for m in pr.exponents for e in range(2 * m + 2, 2 * h + 1, 2) if e < 2 * h), N)
    # h_{Z/A_top} t^4 = sum_i (t^{2m_i+2} - t^{2h}) / (1 - t^2)
    b = list(((aplus + ztop_t4) * one_minus(2 * h, N).inverse()).c)
    return {
        "A_plus_mod_commutators": aplus.to_dict(),
        "Z_mod_top_times_t4": ztop_t4.to_dict(),
        "b": b,
        "b_closed_form": b_closed_form(pr, N),
        "classes": {
            "4n": "A_+/[A,A] shifted by 2nh",
            "4n+1": "0",
            "4n+2": "Z/A_top shifted by 2nh+4",
            "4n+3": "0",
        },
    }


@dataclass
class IdentityResult:
    identity: str
    label: str
    order: int
    ok: bool
    detail: str = ""

    def tsv(self) -> str:
        return "\t".join([self.identity, self.label, str(self.order),
                          "pass" if self.ok else "FAIL", self.detail])


def euler_identity_check(pr: ExponentProfile, N: int = DEFAULT_ORDER_BUILT,
                         hilbert_matrix: list | None = None,
                         b: list[int] | None = None) -> IdentityResult:
    """prod (1 - t^k)^{b_k} against the determinant side, to order N.

    With a computed Hilbert matrix the determinant side is additionally
    taken as prod_s 1/det H_A(t^s), and det H_A(t) itself is compared with
    ((1 - t^{2h})/(1 - t^2))^r / det(1 - Ct + t^2).
    """
    q = pr.quiver()
    label = f"{pr.type_tag}{pr.rank}"
    detail = "b from closed form" if b is None else "b supplied"
    b = b if b is not None else b_closed_form(pr, N)
    lhs = _b_product(b, N)
    rhs = euler_rhs(q, pr.h, N)
    ok = lhs == rhs
    if hilbert_matrix is not None:
        dh = hilbert_det(hilbert_matrix, N)
        formula = _ratio([2 * pr.h], [2], N) ** pr.r * coxeter_det(q, N).inverse()
        prod = TruncatedSeries.one(N)
        for s in range(1, N // 2 + 1):
            prod = prod * hilbert_det(hilbert_matrix, N, s).inverse()
        ok = ok and dh == formula and prod == rhs
        detail += "; det H_A(t) computed"
    return IdentityResult("euler_product", label, N, ok, detail)


def nk_closed_form_check(type_tag: str, rank: int, N: int = DEFAULT_ORDER_PROFILE) -> IdentityResult:
    """prod_s det(1 - C t^s + t^{2s}) = prod_k (1 - q^k)^{n_k}, q = t^2.

    Also checks that the exponent-count n_k agrees with the per-type
    divisibility formula, and that det(1 - Ct + t^2) has the per-type
    product form.
    """
    pr = ExponentProfile.of(type_tag, rank)
    q = pr.quiver()
    K = N // 2
    n = n_closed_form(pr, K)
    formula_ok = all(n[k] == n_case_formula(pr, k) for k in range(1, K + 1))
    lhs = TruncatedSeries.one(N)
    for s in range(1, K + 1):
        lhs = lhs * coxeter_det(q, N, s)
    rhs = TruncatedSeries.one(N)
    for k in range(1, K + 1):
        if n[k]:
            rhs = rhs * one_minus(2 * k, N) ** n[k]
    num, den = case_det_exponents(pr)
    det_ok = coxeter_det(q, N) == _ratio(num, den, N)
    ok = formula_ok and det_ok and lhs == rhs
    return IdentityResult("nk_product", f"{pr.type_tag}{pr.rank}", N, ok,
                          f"div-formula={formula_ok} det-form={det_ok} product={lhs == rhs}")


def rs_factorization_check(pr: ExponentProfile, tol: float = 1e-9, points: int = 32,
                           seed: int = 0) -> IdentityResult:
    """det(1 - Ct + t^2) = prod_j (t^2 - exp(2 pi i m_j / h)) at sample points |t| <= 1."""
    C = np.array(pr.quiver().adjacency, dtype=complex)
    eye = np.eye(pr.rank, dtype=complex)
    rng = np.random.default_rng(seed)
    ts = [0j, 1 + 0j]
    while len(ts) < points:
        ts.append(cmath.rect(rng.uniform(0, 1), rng.uniform(0, 2 * cmath.pi)))
    worst = 0.0
    roots = [cmath.exp(2j * cmath.pi * m / pr.h) for m in pr.exponents]
    for t in ts:
        lhs = np.linalg.det(eye - C * t + eye * t * t)
        rhs = complex(np.prod([t * t - w for w in roots]))
        worst = max(worst, abs(lhs - rhs))
    return IdentityResult("rs_factorization", f"{pr.type_tag}{pr.rank}", points, bool(worst < tol),
                          f"max deviation {worst:.3e}")
