"""``preproj verify``: run the verification suites and report verdicts.

Exit status is 0 only when every verdict passes; an inconclusive or timed
out check counts as a failure.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .algebra import AlgebraError, build_algebra, hilbert_at_one
from .deformation import (deformation_space_and_theta, filtered_dimension, random_params,
                          zero_params)
from .frobenius import build_trace, casimir_check, dual_basis
from .hochschild import COHOMOLOGY, HOMOLOGY, d4_star_injective, hochschild, pairing_check
from .quiver import UnsupportedQuiver, build_quiver, enumerate_roots, parse_weight
from .resolution import build_resolution, selfduality_check, verify_resolution
from .series import (DEFAULT_ORDER_BUILT, DEFAULT_ORDER_PROFILE, ExponentProfile, b_closed_form,
                     b_from_series, euler_identity_check, nk_closed_form_check, p_series,
                     q_and_qstar, rs_factorization_check)
from .spaces import Quotient, structural_subspace

SUITES = ("resolution", "hochschild", "cyclic", "deformation")
MAX_COXETER = 8
DEFORMATION_SEEDS = 3


@dataclass
class RunConfig:
    type_tag: str
    rank: int
    weight: str = "rho"
    suites: tuple[str, ...] = SUITES
    degree_cap: int | None = None
    order: int | None = None
    seed: int = 0
    out: Path | None = None
    fmt: str = "json"
    timeout: float = 1800.0
    max_coxeter: int = MAX_COXETER
    formal_order: int = 2

    def validate(self) -> None:
        q = build_quiver(self.type_tag, self.rank)
        h = q.coxeter_number()
        if set(self.suites) - {"cyclic"} and h > self.max_coxeter:
            raise ValueError(f"{q.label} has h = {h} > {self.max_coxeter}; "
                             "raise --max-coxeter or run only the cyclic suite")
        if self.degree_cap is not None and self.degree_cap < 2 * h - 2:
            raise ValueError(f"--degree-cap must be at least 2h-2 = {2 * h - 2}")
        if self.order is not None and self.order < 1:
            raise ValueError("--order must be positive")
        if self.formal_order < 2:
            raise ValueError("--formal-order must be at least 2")
        parse_weight(q, enumerate_roots(q), self.weight)


@dataclass
class Verdict:
    suite: str
    check: str
    label: str
    ok: bool | None  # None: inconclusive
    detail: str = ""

    @property
    def status(self) -> str:
        return {True: "pass", False: "FAIL", None: "INCONCLUSIVE"}[self.ok]


@dataclass
class Run:
    config: RunConfig
    verdicts: list[Verdict] = field(default_factory=list)
    reports: dict[str, dict] = field(default_factory=dict)
    identities: list = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    _cache: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.verdicts) and all(v.ok is True for v in self.verdicts)

    def add(self, suite: str, check: str, ok, detail: str = "") -> None:
        self.verdicts.append(Verdict(suite, check, self.quiver.label, ok, detail))

    # -- lazily built objects shared between suites

    @property
    def quiver(self):
        if "q" not in self._cache:
            self._cache["q"] = build_quiver(self.config.type_tag, self.config.rank)
        return self._cache["q"]

    @property
    def mu(self):
        if "mu" not in self._cache:
            self._cache["mu"] = parse_weight(self.quiver, enumerate_roots(self.quiver), self.config.weight)
        return self._cache["mu"]

    @property
    def alg(self):
        if "alg" not in self._cache:
            self._cache["alg"] = build_algebra(self.quiver, self.mu, self.config.degree_cap)
        return self._cache["alg"]

    @property
    def trace(self):
        if "tr" not in self._cache:
            self._cache["tr"] = build_trace(self.alg, self.config.seed)
            self._cache["db"] = dual_basis(self.alg, self._cache["tr"])
        return self._cache["tr"], self._cache["db"]

    @property
    def resolution(self):
        if "res" not in self._cache:
            self._cache["res"] = build_resolution(self.alg, self.trace[1])
        return self._cache["res"]

    def hh(self, side: str):
        key = "hh_" + side
        if key not in self._cache:
            self._cache[key] = hochschild(self.resolution, self.trace[1], side)
        return self._cache[key]


class SuiteTimeout(Exception):
    pass


@contextmanager
def _deadline(seconds: float):
    if not seconds or not hasattr(signal, "SIGALRM"):
        yield
        return

    def fire(signum, frame):
        raise SuiteTimeout(f"timed out after {seconds:g}s")

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


# -- suites -------------------------------------------------------------------

def suite_resolution(run: Run) -> None:
    alg = run.alg
    run.add("resolution", "algebra build", True, f"dims {alg.dims()} total {alg.dim}")
    h1 = hilbert_at_one(alg)
    run.add("resolution", "H_A(1) = h(2-C)^-1", h1["ok"])
    tr, db = run.trace
    ok, cert = casimir_check(alg, db)
    run.add("resolution", "Casimir element is central", ok, "" if ok else json.dumps(cert)[:200])
    res = run.resolution
    bound = min(alg.degree_cap, 2 * alg.h)
    rep = verify_resolution(res, bound)
    first = rep.failures[0] if rep.failures else None
    run.add("resolution", f"exact through degree {bound}", rep.ok,
            "" if rep.ok else f"{first['check']} at degree {first['degree']}")
    sd = selfduality_check(res, tr, db)
    for name, value in sd.items():
        run.add("resolution", f"self-duality {name}", value)
    inj = d4_star_injective(res, db)
    run.add("resolution", "d4* injects R into A_top", inj)
    run.reports["resolution"] = {
        "algebra": {k: v for k, v in alg.to_json().items() if k != "basis"},
        "trace": tr.to_json(),
        "hilbert_at_one": h1,
        "exactness": rep.to_json(),
        "selfduality": sd,
        "d4_star_injective": inj,
    }


def suite_hochschild(run: Run) -> None:
    alg = run.alg
    tr, _ = run.trace
    pr = ExponentProfile.of(alg.quiver.type_tag, alg.quiver.rank)
    out = {}
    for side, mark in ((COHOMOLOGY, "HH^"), (HOMOLOGY, "HH_")):
        rep = run.hh(side)
        out[side] = rep.to_json()
        for g in rep.groups:
            got = {k: v for k, v, _, _ in g["series"] if v}
            run.add("hochschild", f"{mark}{g['n']} = {g['space']}", g["match"], _fmt_series(got))
        run.add("hochschild", f"{side}: closed formulas match functor", rep.explicit_matches_generic)
        run.add("hochschild", f"{side}: differentials square to zero", rep.compositions_zero)
    p = p_series(pr).to_dict()
    hh0 = run.hh(HOMOLOGY).series(0)
    run.add("hochschild", "HH_0 series = p(t)", hh0 == p, _fmt_series(hh0))

    pc = pairing_check(alg, tr)
    run.add("hochschild", "pairing Gram invertible", pc["gram_invertible"], f"size {pc['gram_size']}")
    run.add("hochschild", "q(t) = t^(2h-4) q_*(1/t)", pc["palindrome"])
    q_pred, qs_pred = q_and_qstar(pr)
    run.add("hochschild", "q_* = p - sum t^(2(m_i-1))", pc["q_star"] == qs_pred.to_dict()
            and pc["q"] == q_pred.to_dict(), _fmt_series(pc["q_star"]))
    zz = structural_subspace(alg, "zZ") == structural_subspace(alg, "Z&mu_inv_commutators")
    run.add("hochschild", "zZ = Z & mu^-1[A,A]", zz)
    out["pairing"] = pc

    if run.config.weight != "rho":
        ref = Run(RunConfig(run.config.type_tag, run.config.rank, "rho", seed=run.config.seed,
                            degree_cap=run.config.degree_cap))
        same_h = ref.alg.hilbert_matrix() == alg.hilbert_matrix()
        same_hh = all(ref.hh(s).groups[n]["series"] == run.hh(s).groups[n]["series"]
                      and ref.hh(s).ok == run.hh(s).ok for s in (COHOMOLOGY, HOMOLOGY) for n in range(5))
        run.add("hochschild", "Hilbert-series verdicts match mu = rho", same_h and same_hh,
                f"weight {[str(m) for m in run.mu]}")
        out["weight_independence"] = {"hilbert_matrix": same_h, "hh_series": same_hh}
    run.reports["hochschild"] = out


def suite_cyclic(run: Run) -> None:
    q = run.quiver
    pr = ExponentProfile.of(q.type_tag, q.rank)
    built = "alg" in run._cache
    N = run.config.order or (DEFAULT_ORDER_BUILT if built else DEFAULT_ORDER_PROFILE)
    results = [euler_identity_check(pr, N, run.alg.hilbert_matrix() if built else None),
               nk_closed_form_check(q.type_tag, q.rank, N),
               rs_factorization_check(pr)]
    if built:
        alg = run.alg
        S = lambda label: structural_subspace(alg, label)
        aplus = Quotient(S("A_plus"), S("commutators")).hilbert()
        ztop = Quotient(S("Z"), S("A_top")).hilbert()
        b = b_from_series(pr, aplus, ztop, N)
        closed = b_closed_form(pr, N)
        results.append(euler_identity_check(pr, N, b=b))
        run.add("cyclic", "b_k from built spaces = closed form", b == closed)
    for r in results:
        run.add("cyclic", r.identity, r.ok, r.detail)
    run.identities.extend(results)
    run.reports["cyclic"] = {"order": N, "identities": [asdict(r) for r in results]}


def suite_deformation(run: Run) -> None:
    alg = run.alg
    q, mu = alg.quiver, alg.mu
    th = deformation_space_and_theta(alg)
    run.add("deformation", "theta: E -> A/([A,A]+muZ) onto, s = sum(m_i-1)", th["ok"],
            f"dim E {th['E_dim']} s {th['s']}")
    if "hh_" + COHOMOLOGY in run._cache:
        hh2 = sum(run.hh(COHOMOLOGY).series(2).values())
        run.add("deformation", "s = dim HH^2 from the complex", th["s"] == hh2, f"HH^2 {hh2}")
    zero = filtered_dimension(q, mu, zero_params(q), expected_dim=alg.dim)
    run.add("deformation", "zero parameters give dim A", zero.flat if zero.stable else None,
            f"{zero.total_dim} vs {alg.dim}")
    runs = []
    K = run.config.formal_order
    for s in range(run.config.seed, run.config.seed + DEFORMATION_SEEDS):
        for order in (1, K):
            params = random_params(q, s, order)
            rep = filtered_dimension(q, mu, params, expected_dim=alg.dim * order)
            if order == 1:
                check = f"flat at numeric parameters (seed {s})"
            else:
                check = f"flat over Q[eps]/eps^{order} (seed {s})"
            detail = f"dim {rep.total_dim} expected {rep.expected_dim}"
            if order > 1:
                detail += f" (rank {rep.coefficient_rank} over the coefficients)"
            run.add("deformation", check, rep.flat if rep.stable else None, detail)
            runs.append({**rep.to_json(), "s": th["s"], "E_dim": th["E_dim"]})
    run.reports["deformation"] = {"theta": th, "zero_params": zero.to_json(), "runs": runs}


SUITE_FUNCS = {
    "resolution": suite_resolution,
    "hochschild": suite_hochschild,
    "cyclic": suite_cyclic,
    "deformation": suite_deformation,
}


def run(config: RunConfig) -> Run:
    config.validate()
    state = Run(config)
    for name in config.suites:
        t0 = time.perf_counter()
        try:
            with _deadline(config.timeout):
                SUITE_FUNCS[name](state)
        except SuiteTimeout as exc:
            state.add(name, "suite finished", False, str(exc))
        except (AlgebraError, ArithmeticError, ValueError, RuntimeError) as exc:
            state.add(name, "suite finished", False, f"{type(exc).__name__}: {exc}")
        state.timings[name] = round(time.perf_counter() - t0, 3)
    return state


# -- output -------------------------------------------------------------------

def _fmt_series(s: dict) -> str:
    if not s:
        return "0"
    terms = []
    for k, v in sorted(s.items()):
        mono = "" if k == 0 else "t" if k == 1 else f"t^{k}"
        terms.append(mono if v == 1 and mono else f"{v}{mono}")
    return " + ".join(terms)


def summary_table(state: Run) -> str:
    rows = [("suite", "check", "quiver", "verdict", "detail")]
    rows += [(v.suite, v.check, v.label, v.status, v.detail) for v in state.verdicts]
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r[:4], widths)) + "  " + r[4] for r in rows]
    passed = sum(v.ok is True for v in state.verdicts)
    lines.append(f"{passed}/{len(state.verdicts)} checks passed")
    return "\n".join(line.rstrip() for line in lines)


def to_json(state: Run) -> dict:
    c = state.config
    return {
        "config": {"type": c.type_tag, "rank": c.rank, "weight": c.weight, "suites": list(c.suites),
                   "degree_cap": c.degree_cap, "order": c.order, "seed": c.seed,
                   "formal_order": c.formal_order},
        "mu": [str(m) for m in state._cache.get("mu", ())],
        "ok": state.ok,
        "verdicts": [{**asdict(v), "status": v.status} for v in state.verdicts],
        "timings": state.timings,
        "reports": state.reports,
    }


def write_outputs(state: Run) -> list[Path]:
    out = state.config.out
    if out is None:
        return []
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if state.config.fmt == "json":
        path = out / "report.json"
        path.write_text(json.dumps(to_json(state), indent=1, default=str) + "\n")
    else:
        path = out / "summary.tsv"
        lines = ["suite\tcheck\tquiver\tverdict\tdetail"]
        lines += [f"{v.suite}\t{v.check}\t{v.label}\t{v.status}\t{v.detail}" for v in state.verdicts]
        path.write_text("\n".join(lines) + "\n")
    written.append(path)
    if state.identities:
        path = out / "identities.tsv"
        lines = ["identity\tquiver\torder\tverdict\tdetail"] + [r.tsv() for r in state.identities]
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
    return written


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="preproj")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run verification suites for one ADE quiver")
    v.add_argument("--type", required=True, choices=list("ADEade"), help="Dynkin type")
    v.add_argument("--rank", required=True, type=int)
    v.add_argument("--weight", default="rho", help="rho | random:SEED | comma separated rationals")
    v.add_argument("--suite", default="all", choices=SUITES + ("all",))
    v.add_argument("--degree-cap", type=int, default=None, help="highest degree built (default 2h)")
    v.add_argument("--order", type=int, default=None,
                   help=f"series truncation order (default {DEFAULT_ORDER_BUILT} with an algebra, "
                        f"{DEFAULT_ORDER_PROFILE} without)")
    v.add_argument("--seed", type=int, default=0, help="seed for the trace and deformation parameters")
    v.add_argument("--out", type=Path, default=None, help="directory for report files")
    v.add_argument("--format", dest="fmt", choices=("json", "tsv"), default="json")
    v.add_argument("--timeout", type=float, default=1800.0, help="seconds per suite (0 disables)")
    v.add_argument("--max-coxeter", type=int, default=MAX_COXETER,
                   help="refuse algebra builds above this Coxeter number")
    v.add_argument("--formal-order", type=int, default=2,
                   help="K in Q[eps]/eps^K for the formal deformation parameters")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    suites = SUITES if args.suite == "all" else (args.suite,)
    config = RunConfig(args.type.upper(), args.rank, args.weight, suites, args.degree_cap,
                       args.order, args.seed, args.out, args.fmt, args.timeout,
                       args.max_coxeter, args.formal_order)
    try:
        state = run(config)
    except (UnsupportedQuiver, ValueError) as exc:
        parser.error(str(exc))
    print(summary_table(state))
    for path in write_outputs(state):
        print(f"wrote {path}")
    return 0 if state.ok else 1


if __name__ == "__main__":
    sys.exit(main())
