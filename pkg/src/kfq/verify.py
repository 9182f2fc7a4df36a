"""Verification suites: exhaustive scans over desk-scale grids.

Each suite returns a ``SuiteResult``; the catalogue suite yields one
``IdentityReport`` per (identity, parameters) pair instead.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .charring import branch_to_long, freudenthal
from .config import DEFAULT, CatalogueGrid, ScanConfig
from .poly import QPolynomial
from .qanalogue import (broer_condition, dominant_weights, gkf, interval_condition, is_h_dominant,
                        lusztig_q, nonneg_scan, short_q, symmetry_reduce, weight_box, weights_above)
from .qpartition import build_multiset
from .rootsys import RootSystem, Weight, add, build_root_system, sub
from .shorthl import IdentityReport, verify_identity
from .weyl import generate, simple_reflection_matrix


@dataclass
class SuiteResult:
    suite: str
    cartan: str
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, item) -> None:
        self.failures.append(item)

    def as_dict(self, max_failures: int = 20) -> dict:
        return {"suite": self.suite, "cartan": self.cartan, "pass": self.passed,
                "checked": self.checked, "failures": [_plain(f) for f in self.failures[:max_failures]],
                "failure_count": len(self.failures), "details": _plain(self.details),
                "elapsed": round(self.elapsed, 3)}


def _plain(x):
    if isinstance(x, QPolynomial):
        return x.to_list()
    if isinstance(x, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _timed(fn: Callable[..., SuiteResult]):
    def run(*args, **kw) -> SuiteResult:
        t = time.perf_counter()
        res = fn(*args, **kw)
        res.elapsed = time.perf_counter() - t
        return res
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _interval_points(rs: RootSystem, mu: Weight, plus: Weight) -> list[Weight]:
    """Dominant nu with mu <= nu < plus."""
    coords = rs.simple_coords(sub(plus, mu))
    out = []
    for cs in itertools.product(*(range(int(c) + 1) for c in coords)):
        nu = add(mu, rs.from_simple_coords(cs))
        if nu != plus and rs.is_dominant(nu):
            out.append(nu)
    return out


@_timed
def main_theorem(rs: RootSystem, cfg: ScanConfig = DEFAULT) -> SuiteResult:
    """Conditions on H-dominant mu: the pairing bound over short roots, the
    interval condition and non-negativity of every short q-analogue agree."""
    res = SuiteResult("main-theorem", rs.label)
    false_count = 0
    for mu in weight_box(rs.rank, cfg.mu_box):
        if not is_h_dominant(rs, mu):
            continue
        res.checked += 1
        b = broer_condition(rs, mu, "short")
        i = interval_condition(rs, mu, "short")
        scan = nonneg_scan(rs, mu, cfg.lambda_cap, "short")
        if not (b == i == scan.all_nonneg):
            res.fail({"mu": mu, "broer": b, "interval": i, "nonneg": scan.all_nonneg})
        if not b:
            false_count += 1
            if scan.witness is None:
                res.fail({"mu": mu, "missing_witness": True})
        if not i:
            plus, _ = rs.dominant_conjugate(mu)
            for nu in _interval_points(rs, mu, plus):
                p = short_q(rs, nu, mu)
                h = rs.height(sub(nu, mu))
                if p.degree != h or p[h] != 1 or p(1) != 0:
                    res.fail({"mu": mu, "nu": nu, "top_term": p})
    res.details = {"mu_box": cfg.mu_box, "cap": cfg.lambda_cap, "false_cases": false_count}
    return res


def interval_cap(rs: RootSystem, mu: Weight, cap: int) -> int:
    """A scan cap reaching every dominant weight of the interval [mu, mu+]."""
    plus, _ = rs.dominant_conjugate(mu)
    return max(cap, rs.height(sub(plus, mu)))


@_timed
def broer(rs: RootSystem, cfg: ScanConfig = DEFAULT) -> SuiteResult:
    """The same equivalence for Lusztig's q-analogues and all mu in the box.

    Deep weights have no dominant weight within the default cap, so the scan
    cap is raised to height(mu+ - mu) where needed and reported."""
    res = SuiteResult("broer", rs.label)
    raised = 0
    false_count = 0
    for mu in weight_box(rs.rank, cfg.mu_box):
        res.checked += 1
        cap = interval_cap(rs, mu, cfg.lambda_cap)
        raised += cap > cfg.lambda_cap
        b = broer_condition(rs, mu, "positive")
        i = interval_condition(rs, mu, "all")
        scan = nonneg_scan(rs, mu, cap, "positive")
        if not (b == i == scan.all_nonneg):
            res.fail({"mu": mu, "broer": b, "interval": i, "nonneg": scan.all_nonneg, "cap": cap})
        if not b:
            false_count += 1
            if scan.witness is None:
                res.fail({"mu": mu, "missing_witness": True})
    res.details = {"mu_box": cfg.mu_box, "cap": cfg.lambda_cap, "raised_caps": raised,
                   "false_cases": false_count}
    return res


def _subgroup(W, indices) -> set[int]:
    if not indices:
        return {W.identity}
    return set(W._closure([simple_reflection_matrix(W.rs, i) for i in indices]))


@_timed
def symmetry(rs: RootSystem, cfg: ScanConfig = DEFAULT) -> SuiteResult:
    """Shifted-action symmetry of the short q-analogues.

    The literal statement (all of W_l, as polynomials, walls vanish) is
    checked together with the parts that do hold: W_l after q = 1, and the
    subgroup generated by long simple reflections as polynomials.
    """
    res = SuiteResult("symmetry", rs.label)
    W = generate(rs)
    wl = W.long_subgroup.elements
    simple_long = _subgroup(W, rs.long_simple)
    counts = {k: 0 for k in ("shifted_W_l", "walls_zero", "shifted_simple_long",
                             "shifted_W_l_at_1", "walls_zero_at_1", "short_parabolic_at_1")}
    example = {}
    lams = dominant_weights(rs, cfg.symmetry_level)
    wps = W.short_parabolic.elements
    for lam in lams:
        for mu in weight_box(rs.rank, cfg.mu_box):
            m = short_q(rs, lam, mu)
            for k in wl:
                res.checked += 1
                v = short_q(rs, lam, W.shifted_action(k, mu))
                s = int(W.signs[k])
                if v != m * s:
                    counts["shifted_W_l"] += 1
                    example.setdefault("shifted_W_l", {"lambda": lam, "mu": mu, "w": W.word(k),
                                                       "m_mu": m, "m_w_mu": v})
                    if k in simple_long:
                        counts["shifted_simple_long"] += 1
                if v(1) != m(1) * s:
                    counts["shifted_W_l_at_1"] += 1
            if symmetry_reduce(rs, mu) is None:
                if m:
                    counts["walls_zero"] += 1
                    example.setdefault("walls_zero", {"lambda": lam, "mu": mu, "m": m})
                if m(1):
                    counts["walls_zero_at_1"] += 1
            if is_h_dominant(rs, mu):
                for k in wps:
                    if short_q(rs, lam, W.act(k, mu))(1) != m(1):
                        counts["short_parabolic_at_1"] += 1
    for key, n in counts.items():
        if n:
            res.fail({"check": key, "violations": n, "example": example.get(key)})
    res.details = {"lambda_level": cfg.symmetry_level, "mu_box": cfg.mu_box,
                   "violations": counts, "W_l": len(wl), "simple_long_subgroup": len(simple_long)}
    return res


@_timed
def heckman_symmetry(rs: RootSystem, cfg: ScanConfig = DEFAULT, box: int = 2) -> SuiteResult:
    """At q = 1: mbar_{w(lam+rho)-rho}^{v . nu} = eps(w) eps(v) mbar_lam^nu for
    w in W, v in W_l (lambda extended to all weights by the same sum)."""
    res = SuiteResult("heckman-symmetry", rs.label)
    W = generate(rs)
    rho = rs.rho
    for lam in dominant_weights(rs, cfg.symmetry_level):
        for nu in weight_box(rs.rank, box):
            base = short_q(rs, lam, nu)(1)
            for w in range(len(W)):
                lam_w = sub(W.act(w, add(lam, rho)), rho)
                for v in W.long_subgroup.elements:
                    res.checked += 1
                    val = gkf(rs, lam_w, W.shifted_action(v, nu), "short", extended=True)(1)
                    if val != int(W.signs[w]) * int(W.signs[v]) * base:
                        res.fail({"lambda": lam, "nu": nu, "w": W.word(w), "v": W.word(v)})
    res.details = {"lambda_level": cfg.symmetry_level, "nu_box": box}
    return res


@_timed
def structural(rs: RootSystem, cfg: ScanConfig = DEFAULT) -> SuiteResult:
    """Semidirect factorisation, the characterisation of W(Pi_s) by
    stability of the long positive roots, and the facts about w_mu."""
    res = SuiteResult("structural", rs.label)
    W = generate(rs, cfg.weyl_limit)
    wps, wl = W.short_parabolic, W.long_subgroup
    res.details = {"W": len(W), "W(Pi_s)": len(wps), "W_l": len(wl)}
    if len(wps) * len(wl) != len(W):
        res.fail({"orders": (len(W), len(wps), len(wl))})
    products = {W.compose(u, v) for u in wps.elements for v in wl.elements}
    if len(products) != len(W):
        res.fail({"product_map_image": len(products)})
    # W_l is normal
    for i in range(rs.rank):
        s = W.index_of(W.from_word((i,)))
        if {W.compose(W.compose(s, v), s) for v in wl.elements} != set(wl.elements):
            res.fail({"normal": i})
    long_pos = set(rs.long_positive)
    for k in range(len(W)):
        res.checked += 1
        u, v = W.semidirect_decompose(k)
        if W.compose(u, v) != k or W.signs[k] != W.signs[u] * W.signs[v]:
            res.fail({"decompose": W.word(k)})
        stable = all(W.act(k, b) in long_pos for b in rs.long_positive)
        if stable != (k in wps):
            res.fail({"semidirect_ii": W.word(k)})
        if rs.rank <= 4:
            if len(W.inversion_set(k)) != W.lengths[k] or W.determinant(k) != W.signs[k]:
                res.fail({"length_sign": W.word(k)})
    for mu in weight_box(rs.rank, cfg.mu_box):
        plus, w_mu = W.dominant_representative(mu)
        neg = frozenset(g for g in rs.positive_roots if rs.inner(g, mu) < 0)
        if w_mu(mu) != plus or not rs.is_dominant(plus) or W.inversion_set(W.index_of(w_mu)) != neg:
            res.fail({"w_mu": mu})
        if is_h_dominant(rs, mu):
            res.checked += 1
            cs = rs.simple_coords(sub(plus, mu))
            if W.index_of(w_mu) not in wps or any(cs[i] for i in rs.long_simple):
                res.fail({"pro_w_mu": mu})
    return res


@_timed
def rez1(rs: RootSystem, psi_spec: str = "height:2", cfg: ScanConfig = DEFAULT) -> SuiteResult:
    """Non-negativity of gkf for a B-stable Psi and mu with mu - |Psi| + rho dominant."""
    res = SuiteResult("rez1", rs.label)
    psi = build_multiset(rs, psi_spec)
    shift = sub(rs.rho, psi.total)
    lams = dominant_weights(rs, cfg.rez1_level)
    for mu in lams:
        mu_full = sub(add(mu, psi.total), rs.rho)  # mu >= |Psi| - rho in the dominant order
        for lam in lams:
            res.checked += 1
            p = gkf(rs, lam, mu_full, psi)
            if not p.is_nonnegative():
                res.fail({"lambda": lam, "mu": mu_full, "poly": p})
    res.details = {"psi": psi_spec, "|Psi|": psi.total, "level": cfg.rez1_level,
                   "rho_minus_psi": shift}
    return res


@_timed
def rho_l(rs: RootSystem, cfg: ScanConfig = DEFAULT) -> SuiteResult:
    """mu + rho_l dominant implies non-negative short q-analogues."""
    res = SuiteResult("rho-l", rs.label)
    n_mu = 0
    for mu in weight_box(rs.rank, cfg.mu_box):
        if not rs.is_dominant(add(mu, rs.rho_l)):
            continue
        n_mu += 1
        scan = nonneg_scan(rs, mu, cfg.lambda_cap, "short", stop_at_witness=False)
        res.checked += scan.checked
        if not scan.all_nonneg:
            res.fail(scan.as_dict())
    res.details = {"mu_count": n_mu, "cap": cfg.lambda_cap, "mu_box": cfg.mu_box}
    return res


@_timed
def oracle_lusztig(rs: RootSystem, cfg: ScanConfig = DEFAULT) -> SuiteResult:
    """Lusztig's q-analogue at q = 1 against Freudenthal."""
    res = SuiteResult("oracle-lusztig", rs.label)
    for lam in dominant_weights(rs, cfg.oracle_level):
        mult = freudenthal(rs, lam, dominant_only=True)
        for _, up in weights_above(rs, (0,) * rs.rank, cfg.oracle_height):
            mu = sub(lam, up)
            if not rs.is_dominant(mu):
                continue
            res.checked += 1
            if lusztig_q(rs, lam, mu)(1) != mult.get(mu, 0):
                res.fail({"lambda": lam, "mu": mu})
    res.details = {"lambda_level": cfg.oracle_level, "height": cfg.oracle_height}
    return res


@_timed
def oracle_short(rs: RootSystem, cfg: ScanConfig = DEFAULT) -> SuiteResult:
    """Short q-analogue at q = 1 against restriction to H."""
    res = SuiteResult("oracle-short", rs.label)
    for lam in dominant_weights(rs, cfg.oracle_level):
        branch = branch_to_long(rs, lam)
        for _, up in weights_above(rs, (0,) * rs.rank, cfg.oracle_height):
            nu = sub(lam, up)
            if not is_h_dominant(rs, nu):
                continue
            res.checked += 1
            if short_q(rs, lam, nu)(1) != branch.get(nu, 0):
                res.fail({"lambda": lam, "nu": nu})
    res.details = {"lambda_level": cfg.oracle_level, "height": cfg.oracle_height}
    return res


# -- the identity catalogue ------------------------------------------------------

def catalogue_params(rs: RootSystem, cfg: ScanConfig = DEFAULT,
                     grid: CatalogueGrid | None = None) -> Iterator[tuple[str, dict]]:
    grid = grid or CatalogueGrid()
    label = rs.label
    lams = dominant_weights(rs, cfg.lambda_level)
    base = {"cartan": label}
    for a in lams:
        for b in lams:
            yield "orthogonality", {**base, "lambda": list(a), "mu": list(b)}
    for name in ("xi-and-P", "series-short", "series-lusztig", "long-short"):
        key = "pi" if name == "xi-and-P" else "lambda"
        for a in lams:
            yield name, {**base, key: list(a)}
    trunc = grid.f4_truncation if label == "F4" else cfg.truncation
    yield "E-closed-form", {**base, "truncation": trunc}
    yield "nullcone-hilbert", {**base, "truncation": trunc}
    if label in grid.sp2n_types:
        for a in dominant_weights(rs, cfg.sp2n_level):
            yield "sp2n", {**base, "lambda": list(a)}
    if not rs.simply_laced:
        for a in lams:
            yield "hl-at-1", {**base, "lambda": list(a)}
        for a in lams:
            yield "kato", {**base, "pi": list(a), "form": "1"}
    if label in grid.minus_one_types or (label == "F4" and grid.f4):
        for a in dominant_weights(rs, cfg.minus_one_level):
            if rs.is_dominant(sub(a, rs.rho_s)):
                yield "hl-at-minus-1", {**base, "lambda": list(a)}
    if not rs.simply_laced:
        yield "g2-remark", {"cartan": label}


def catalogue(rs: RootSystem, cfg: ScanConfig = DEFAULT,
              grid: CatalogueGrid | None = None) -> Iterator[IdentityReport]:
    for name, params in catalogue_params(rs, cfg, grid):
        yield verify_identity(name, params)


SUITES: dict[str, Callable] = {
    "main-theorem": main_theorem,
    "broer": broer,
    "symmetry": symmetry,
    "heckman-symmetry": heckman_symmetry,
    "structural": structural,
    "rez1": rez1,
    "rho-l": rho_l,
    "oracle-lusztig": oracle_lusztig,
    "oracle-short": oracle_short,
}

# default types for ``verify --suite all`` (one line per suite and type)
DEFAULT_TYPES: dict[str, tuple[str, ...]] = {
    "main-theorem": ("C2", "G2", "B3", "C3"),
    "broer": ("A2", "C2", "B3"),
    "symmetry": ("C2", "G2"),
    "heckman-symmetry": ("C2", "G2"),
    "structural": ("C2", "G2", "B3", "C3", "F4"),
    "rez1": ("A2",),
    "rho-l": ("C2", "G2", "B3"),
    "oracle-lusztig": ("A2", "C2", "G2", "A3", "B3", "C3"),
    "oracle-short": ("C2", "B2", "G2", "B3", "C3"),
    "catalogue": ("C2", "G2", "B3", "C3"),
}


def run_suite(name: str, label: str, cfg: ScanConfig = DEFAULT):
    rs = build_root_system(label)
    if name == "catalogue":
        return list(catalogue(rs, cfg))
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](rs, cfg=cfg)
