"""Generalised Kostka-Foulkes polynomials and the predicates built on them.

    m^mu_{lambda,Psi}(q) = sum_{w in W} eps(w) P_{Psi,q}(w(lambda+rho) - (mu+rho))

With Psi the positive roots this is Lusztig's q-analogue of weight
multiplicity; with Psi the short positive roots it is the short q-analogue
written ``mbar`` below.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .poly import QPolynomial
from .qpartition import PartitionFunction, WeightMultiset, build_multiset
from .rootsys import LongSubsystem, RootSystem, RootSystemError, Weight, add, long_subsystem, sub
from .weyl import WeylGroup, generate


class InconsistencyError(AssertionError):
    """Raised when a structural fact that must hold is violated."""


_PSI: dict[tuple[str, str], WeightMultiset] = {}
_CACHES: dict[int, PartitionFunction] = {}


def standard_multiset(rs: RootSystem, spec: str) -> WeightMultiset:
    key = (rs.label, spec)
    if key not in _PSI:
        _PSI[key] = build_multiset(rs, spec)
    return _PSI[key]


def partition_cache(psi: WeightMultiset) -> PartitionFunction:
    """Shared per-process cache for one multiset."""
    pf = _CACHES.get(id(psi))
    if pf is None or pf.psi is not psi:
        pf = PartitionFunction(psi)
        _CACHES[id(psi)] = pf
    return pf


def _resolve_psi(rs: RootSystem, psi) -> WeightMultiset:
    if isinstance(psi, WeightMultiset):
        return psi
    if isinstance(psi, str) and not psi.startswith("file:"):
        return standard_multiset(rs, psi)
    return build_multiset(rs, psi)


@dataclass(frozen=True)
class GkfQuery:
    lam: Weight
    mu: Weight
    psi: WeightMultiset
    extended: bool = False

    def __post_init__(self):
        rs = self.psi.rs
        if len(self.lam) != rs.rank or len(self.mu) != rs.rank:
            raise RootSystemError("weight rank does not match the root system")
        if not self.extended and not rs.is_dominant(self.lam):
            raise RootSystemError(f"lambda = {self.lam} is not dominant")


def gkf(rs: RootSystem, lam: Weight, mu: Weight, psi="positive", *,
        cache: PartitionFunction | None = None, group: WeylGroup | None = None,
        extended: bool = False) -> QPolynomial:
    """Signed Weyl sum of q-partition values; zero terms are pruned by the
    certificate before any partition lookup.

    ``extended=True`` drops the dominance check on lam and evaluates the same
    sum for any weight (it is then alternating in lam + rho).
    """
    psi = _resolve_psi(rs, psi)
    query = GkfQuery(tuple(lam), tuple(mu), psi, extended)
    W = group or generate(rs)
    cache = cache or partition_cache(psi)
    rho = np.array(rs.rho, dtype=np.int64)
    args = W.orbit_images(np.array(query.lam, dtype=np.int64) + rho) - (np.array(query.mu) + rho)
    keep = np.nonzero(args @ np.array(psi.certificate, dtype=np.int64) >= 0)[0]
    if len(keep) == 0:
        return QPolynomial()
    acc: list[int] = []
    for k, coeffs in zip(keep, cache.eval_many(args[keep])):
        if not coeffs:
            continue
        s = int(W.signs[k])
        if len(acc) < len(coeffs):
            acc.extend([0] * (len(coeffs) - len(acc)))
        for j, c in enumerate(coeffs):
            acc[j] += s * c
    return QPolynomial(acc)


def gkf_many(rs: RootSystem, lam: Weight, mus, psi="positive", *,
             cache: PartitionFunction | None = None, extended: bool = False) -> list[QPolynomial]:
    """``gkf`` for one lam and many mu, with a single batched Weyl sum."""
    psi = _resolve_psi(rs, psi)
    mus = [tuple(m) for m in mus]
    if not mus:
        return []
    GkfQuery(tuple(lam), mus[0], psi, extended)
    W = generate(rs)
    cache = cache or partition_cache(psi)
    rho = np.array(rs.rho, dtype=np.int64)
    cert = np.array(psi.certificate, dtype=np.int64)
    top = W.orbit_images(np.array(lam, dtype=np.int64) + rho)          # (|W|, r)
    order = len(W)
    chunk = max(1, 1_000_000 // (order * rs.rank))
    acc: list[list[int]] = [[] for _ in mus]
    for start in range(0, len(mus), chunk):
        low = np.array(mus[start:start + chunk], dtype=np.int64) + rho  # (M, r)
        flat = (top[None, :, :] - low[:, None, :]).reshape(-1, rs.rank)
        keep = np.nonzero(flat @ cert >= 0)[0]
        for k, coeffs in zip(keep.tolist(), cache.eval_many(flat[keep])):
            if not coeffs:
                continue
            row = acc[start + k // order]
            s = int(W.signs[k % order])
            if len(row) < len(coeffs):
                row.extend([0] * (len(coeffs) - len(row)))
            for j, c in enumerate(coeffs):
                row[j] += s * c
    return [QPolynomial(r) for r in acc]


def lusztig_q(rs: RootSystem, lam: Weight, mu: Weight) -> QPolynomial:
    return gkf(rs, lam, mu, "positive")


def short_q(rs: RootSystem, lam: Weight, mu: Weight) -> QPolynomial:
    return gkf(rs, lam, mu, "short")


# -- weight enumeration -------------------------------------------------------

def weights_above(rs: RootSystem, mu: Weight, max_height: int,
                  simple: tuple[int, ...] | None = None) -> Iterator[tuple[int, Weight]]:
    """(height, mu + sum c_i alpha_i) for c >= 0 with sum c <= max_height, by
    increasing height; ``simple`` restricts the simple roots used."""
    idx = tuple(range(rs.rank)) if simple is None else tuple(simple)
    for h in range(max_height + 1):
        for combo in itertools.combinations_with_replacement(idx, h):
            nu = list(mu)
            for i in combo:
                for t, a in enumerate(rs.simple_roots[i]):
                    nu[t] += a
            yield h, tuple(nu)


def dominant_above(rs: RootSystem, mu: Weight, max_height: int) -> Iterator[tuple[int, Weight]]:
    """Dominant lambda with lambda - mu in Q+ and height(lambda - mu) <= max_height."""
    for h, lam in weights_above(rs, mu, max_height):
        if rs.is_dominant(lam):
            yield h, lam


def dominant_weights(rs: RootSystem, level: int) -> list[Weight]:
    """Dominant weights whose fundamental coordinates sum to at most ``level``."""
    out = []
    for lv in range(level + 1):
        for combo in itertools.combinations_with_replacement(range(rs.rank), lv):
            w = [0] * rs.rank
            for i in combo:
                w[i] += 1
            out.append(tuple(w))
    return out


def weight_box(rank: int, bound: int) -> Iterator[Weight]:
    return itertools.product(range(-bound, bound + 1), repeat=rank)


# -- H-dominance and the shifted symmetry --------------------------------------

def h_subsystem(rs: RootSystem) -> LongSubsystem:
    return long_subsystem(rs)


def is_h_dominant(rs: RootSystem, mu: Weight) -> bool:
    if rs.simply_laced:
        return True
    return long_subsystem(rs).is_dominant(mu)


def symmetry_reduce(rs: RootSystem, mu: Weight, group: str = "long") -> tuple[Weight, int] | None:
    """Move mu into the shifted dominant chamber and report the sign.

    ``group="long"`` uses all of W_l (chamber: H-dominant weights); the result
    is None when mu + rho_l lies on a wall of the long subsystem.
    ``group="simple"`` uses only the reflections in long *simple* roots of the
    ambient system, which fix the short positive roots as a set.

    Only the second reduction is exact for the q-polynomials: the shifted
    symmetry under the whole of W_l holds after q = 1 but fails in general
    (already m-bar_0^{-alpha_1} = q - 1 in C2, a W_l-wall weight).
    """
    mu = tuple(mu)
    shifted = add(mu, rs.rho_l)
    if group == "long":
        ls = long_subsystem(rs)
        dom, word = ls.dominant_conjugate(shifted)
        walls = ls.simple_pairings(dom)
    elif group == "simple":
        word = []
        dom = shifted
        moved = True
        while moved:
            moved = False
            for i in rs.long_simple:
                p = rs.pairing(dom, rs.simple_roots[i])
                if p < 0:
                    dom = tuple(x - p * a for x, a in zip(dom, rs.simple_roots[i]))
                    word.append(i)
                    moved = True
        walls = [rs.pairing(dom, rs.simple_roots[i]) for i in rs.long_simple]
    else:
        raise ValueError(f"unknown group {group!r}")
    if any(p == 0 for p in walls):
        return None
    return sub(dom, rs.rho_l), (-1) ** len(word)


# -- the three predicates of the main equivalence --------------------------------

def _root_set(rs: RootSystem, roots) -> tuple[Weight, ...]:
    if roots in ("short", None):
        return rs.short_positive
    if roots == "positive":
        return rs.positive_roots
    return tuple(roots)


def broer_condition(rs: RootSystem, mu: Weight, roots="short") -> bool:
    """(mu, alpha^vee) >= -1 for every alpha in the chosen root set."""
    return all(rs.pairing(mu, a) >= -1 for a in _root_set(rs, roots))


def interval_condition(rs: RootSystem, mu: Weight, simple="short") -> bool:
    """The only dominant weight nu with mu <= nu <= mu+ is mu+ itself.

    ``simple="short"`` is the H-dominant version: mu+ - mu must then be a
    combination of short simple roots and only that box is scanned.
    ``simple="all"`` scans the full simple-root box and accepts any mu.
    """
    mu = tuple(mu)
    if simple == "short":
        if not rs.simply_laced and not is_h_dominant(rs, mu):
            raise RootSystemError(f"{mu} is not H-dominant")
        allowed = set(rs.short_simple)
    elif simple == "all":
        allowed = set(range(rs.rank))
    else:
        raise ValueError(f"unknown simple-root set {simple!r}")
    plus, _ = rs.dominant_conjugate(mu)
    coords = rs.simple_coords(sub(plus, mu))
    if any(c.denominator != 1 or c < 0 for c in coords):
        raise InconsistencyError(f"mu+ - mu is not in Q+ for mu = {mu}")
    if any(coords[i] for i in range(rs.rank) if i not in allowed):
        raise InconsistencyError(f"mu+ - mu is not a combination of short simple roots for mu = {mu}")
    ranges = [range(int(c) + 1) for c in coords]
    for cs in itertools.product(*ranges):
        nu = add(mu, rs.from_simple_coords(cs))
        if nu != plus and rs.is_dominant(nu):
            return False
    return True


@dataclass
class ScanReport:
    mu: Weight
    psi: str
    cap: int
    checked: int = 0
    all_nonneg: bool = True
    witness: tuple[Weight, QPolynomial] | None = None
    scanned: list[Weight] = field(default_factory=list, repr=False)

    def as_dict(self) -> dict:
        out = {"mu": list(self.mu), "psi": self.psi, "cap": self.cap,
               "checked": self.checked, "all_nonneg": self.all_nonneg}
        if self.witness:
            out["witness"] = {"lambda": list(self.witness[0]),
                              "coeffs": self.witness[1].to_list()}
        return out


def nonneg_scan(rs: RootSystem, mu: Weight, cap: int = 10, psi: str = "short",
                stop_at_witness: bool = True) -> ScanReport:
    """Scan dominant lambda >= mu with height(lambda - mu) <= cap, lowest
    height first, for a negative coefficient."""
    mu = tuple(mu)
    rep = ScanReport(mu, psi, cap)
    for _, lam in dominant_above(rs, mu, cap):
        poly = gkf(rs, lam, mu, psi)
        rep.checked += 1
        if not poly.is_nonnegative():
            if rep.all_nonneg:
                rep.all_nonneg = False
                rep.witness = (lam, poly)
            if stop_at_witness:
                break
    return rep


def w_mu_length(rs: RootSystem, mu: Weight) -> int:
    return len(rs.dominant_conjugate(mu)[1])
