"""Weight multisets and the q-analogue of the vector partition function.

``P_{Psi,q}(nu)`` is the coefficient of e^nu in prod_{a in Psi} 1/(1 - q e^a);
the power of q counts how many elements of Psi were used.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .poly import QPolynomial
from .rootsys import RootSystem, RootSystemError, Weight, sub, weight_sum


class MultisetError(RootSystemError):
    pass


def _dot(f: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(f, v)), Fraction(0))


def height_functional(rs: RootSystem) -> tuple[int, ...]:
    """Integer vector f with f . nu proportional to the height of nu."""
    ones = rs.simple_coords  # nu -> coords
    n = rs.rank
    cols = [sum(ones(tuple(int(i == j) for j in range(n))), Fraction(0)) for i in range(n)]
    den = lcm(*(c.denominator for c in cols))
    return tuple(int(c * den) for c in cols)


def find_certificate(vectors: Sequence[Weight], rank: int) -> tuple[Fraction, ...] | None:
    """A functional f with f . v > 0 for every v, by Fourier-Motzkin.

    Solves f . v >= 1 over the rationals; returns None if infeasible.
    """
    if any(all(x == 0 for x in v) for v in vectors):
        return None
    # constraints: (coeffs, rhs) meaning coeffs . f >= rhs
    system = [([Fraction(x) for x in v], Fraction(1)) for v in vectors]
    stages = []
    for var in range(rank - 1, -1, -1):
        stages.append(system)
        pos = [c for c in system if c[0][var] > 0]
        neg = [c for c in system if c[0][var] < 0]
        rest = [c for c in system if c[0][var] == 0]
        new = list(rest)
        for (a, ra), (b, rb) in itertools.product(pos, neg):
            la, lb = a[var], -b[var]
            coeffs = [x * lb + y * la for x, y in zip(a, b)]
            new.append((coeffs, ra * lb + rb * la))
        system = []
        seen = set()
        for coeffs, rhs in new:
            key = (tuple(coeffs), rhs)
            if key not in seen:
                seen.add(key)
                system.append((coeffs, rhs))
    # all variables eliminated: every remaining constraint reads 0 >= rhs
    if any(rhs > 0 for _, rhs in system):
        return None
    f = [Fraction(0)] * rank
    for var in range(rank):
        cons = stages[rank - 1 - var]
        lo, hi = None, None
        for coeffs, rhs in cons:
            c = coeffs[var]
            if c == 0:
                continue
            other = sum((coeffs[j] * f[j] for j in range(var)), Fraction(0))
            bound = (rhs - other) / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = min(hi, Fraction(0))
        elif hi is None:
            val = lo
        else:
            if lo > hi:
                return None
            val = lo
        f[var] = val
    if all(_dot(f, v) > 0 for v in vectors):
        return tuple(f)
    return None


@dataclass(frozen=True, eq=False)
class WeightMultiset:
    rs: RootSystem
    entries: tuple[tuple[Weight, int], ...]
    certificate: tuple[int, ...]
    name: str = "explicit"
    ordered: tuple[Weight, ...] = field(init=False)

    def __post_init__(self):
        for w, m in self.entries:
            if m < 1:
                raise MultisetError("multiplicities must be positive")
            if len(w) != self.rs.rank:
                raise MultisetError(f"weight {w} has the wrong rank")
            if self.value(w) <= 0:
                raise MultisetError(f"certificate is not positive on {w}")
        flat = [w for w, m in self.entries for _ in range(m)]
        flat.sort(key=lambda w: (self.value(w), w))
        object.__setattr__(self, "ordered", tuple(flat))

    def value(self, nu: Weight) -> int:
        return sum(a * b for a, b in zip(self.certificate, nu))

    def __len__(self) -> int:
        return len(self.ordered)

    def __iter__(self):
        return iter(self.ordered)

    @property
    def total(self) -> Weight:
        """|Psi|, the sum with multiplicities."""
        return weight_sum(self.ordered, self.rs.rank)

    def support(self) -> set[Weight]:
        return {w for w, _ in self.entries}


def _from_list(rs, weights: Iterable[Weight], name, certificate=None) -> WeightMultiset:
    counts: dict[Weight, int] = {}
    for w in weights:
        w = tuple(int(x) for x in w)
        counts[w] = counts.get(w, 0) + 1
    entries = tuple(sorted(counts.items()))
    if certificate is None:
        h = height_functional(rs)
        if all(sum(a * b for a, b in zip(h, w)) > 0 for w in counts):
            certificate = h
        else:
            f = find_certificate(list(counts), rs.rank)
            if f is None:
                raise MultisetError("no half-space certificate: the weights do not lie in an open half-space")
            den = lcm(*(x.denominator for x in f))
            certificate = tuple(int(x * den) for x in f)
    else:
        certificate = tuple(certificate)
        if any(isinstance(x, Fraction) and x.denominator != 1 for x in certificate):
            den = lcm(*(Fraction(x).denominator for x in certificate))
            certificate = tuple(int(Fraction(x) * den) for x in certificate)
        certificate = tuple(int(x) for x in certificate)
    return WeightMultiset(rs, entries, certificate, name)


def upward_closure(rs: RootSystem, generators: Iterable[Weight]) -> list[Weight]:
    """Smallest upper set of positive roots containing the generators."""
    pos = set(rs.positive_roots)
    gens = list(generators)
    for g in gens:
        if g not in pos:
            raise MultisetError(f"{g} is not a positive root")
    out = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for b in frontier:
            for a in rs.simple_roots:
                c = tuple(x + y for x, y in zip(b, a))
                if c in pos and c not in out:
                    out.add(c)
                    nxt.append(c)
        frontier = nxt
    return [b for b in rs.positive_roots if b in out]


def build_multiset(rs: RootSystem, spec, certificate=None) -> WeightMultiset:
    """Build Psi from a spec.

    ``spec`` is one of ``"positive"``, ``"short"``, ``"height:k"`` (roots of
    height >= k), ``"ideal:i+j+..."`` (upward closure of positive roots with
    those indices in ``rs.positive_roots``), ``"file:PATH"``, or an explicit
    sequence of weights.
    """
    if not isinstance(spec, str):
        return _from_list(rs, spec, "explicit", certificate)
    kind, _, arg = spec.partition(":")
    if kind == "positive":
        return _from_list(rs, rs.positive_roots, "positive")
    if kind == "short":
        return _from_list(rs, rs.short_positive, "short")
    if kind == "height":
        k = int(arg)
        roots = [b for b, c in zip(rs.positive_roots, rs.positive_simple_coords) if sum(c) >= k]
        return _from_list(rs, roots, spec)
    if kind == "ideal":
        try:
            idx = [int(t) for t in arg.split("+") if t]
            gens = [rs.positive_roots[i] for i in idx]
        except (ValueError, IndexError) as exc:
            raise MultisetError(f"bad ideal generators {arg!r}") from exc
        return _from_list(rs, upward_closure(rs, gens), spec)
    if kind == "file":
        return read_multiset_file(rs, arg)
    raise MultisetError(f"unknown multiset spec {spec!r}")


def read_multiset_file(rs: RootSystem, path) -> WeightMultiset:
    """One weight per line in fundamental coordinates; a line starting with
    ``;`` gives the certificate.  ``#`` starts a comment."""
    weights, cert = [], None
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith(";"):
            cert = tuple(Fraction(t) for t in line[1:].replace(" ", "").split(","))
            continue
        w = tuple(int(t) for t in line.replace(" ", "").split(","))
        if len(w) != rs.rank:
            raise MultisetError(f"weight {line!r} has the wrong rank")
        weights.append(w)
    return _from_list(rs, weights, f"file:{path}", cert)


def normaliser_levi(psi: WeightMultiset) -> tuple[int, ...]:
    """Simple roots alpha with (alpha, |Psi|) = 0 (the Levi of the normaliser)."""
    rs = psi.rs
    tot = psi.total
    if not rs.is_dominant(tot):
        raise MultisetError(f"|Psi| = {tot} is not dominant; Psi does not span a B-stable subspace")
    return tuple(i for i, a in enumerate(rs.simple_roots) if rs.inner(a, tot) == 0)


class PartitionFunction:
    """Memoised P_{Psi,q} for one multiset.

    The memo is keyed by (prefix length, nu); when every element of Psi is a
    non-negative combination of simple roots the key uses simple-root
    coordinates and prunes on negative coordinates.  Not thread-safe: give
    each thread its own instance.
    """

    def __init__(self, psi: WeightMultiset, max_degree: int | None = None):
        self.psi = psi
        self.max_degree = max_degree
        rs = psi.rs
        self._memo: dict = {}
        coords = [rs.simple_coords(g) for g in psi.ordered]
        self._simple = all(all(c.denominator == 1 and c >= 0 for c in cs) for cs in coords)
        if self._simple:
            self._steps = [tuple(int(c) for c in cs) for cs in coords]
        else:
            self._steps = list(psi.ordered)
        self._cert = psi.certificate
        # with a degree cap, nu needs at most max_degree steps of value <= top
        top = max((psi.value(g) for g in psi.ordered), default=0)
        self._reach = None if max_degree is None else max_degree * top
        if self._simple:
            self._step_cert = [sum(st) for st in self._steps]
            top_h = max(self._step_cert, default=0)
            self._reach = None if max_degree is None else max_degree * top_h
        # integer form of nu -> simple coordinates: (nu @ inv_num) / inv_den
        inv = rs._base_inverse
        den = lcm(*(x.denominator for row in inv for x in row))
        self._inv_num = np.array([[int(x * den) for x in row] for row in inv], dtype=np.int64)
        self._inv_den = den

    def _internal(self, nu: Weight):
        if not self._simple:
            return tuple(nu)
        cs = self.psi.rs.simple_coords(nu)
        if any(c.denominator != 1 or c < 0 for c in cs):
            return None
        return tuple(int(c) for c in cs)

    def __call__(self, nu: Weight) -> QPolynomial:
        key = self._internal(nu)
        if key is None:
            return QPolynomial()
        return QPolynomial._raw(self._eval(len(self._steps), key))

    def from_simple_coords(self, cs: tuple[int, ...]) -> tuple[int, ...]:
        """Raw coefficient tuple for nu given by integer simple-root coords
        (only valid when the multiset lies in the positive root cone)."""
        if any(c < 0 for c in cs):
            return ()
        return self._eval(len(self._steps), cs)

    def eval_many(self, vectors: np.ndarray) -> list[tuple[int, ...]]:
        """Raw coefficient tuples for a stack of weights (one per row)."""
        n = len(self._steps)
        out: list[tuple[int, ...]] = [()] * len(vectors)
        if not len(vectors):
            return out
        if not self._simple:
            ok = vectors @ np.array(self._cert, dtype=np.int64) >= 0
            rows = vectors
        else:
            rows = vectors @ self._inv_num
            ok = (rows >= 0).all(axis=1)
            if self._inv_den != 1:
                ok &= (rows % self._inv_den == 0).all(axis=1)
                rows = rows // self._inv_den
        idx = np.nonzero(ok)[0]
        for k, row in zip(idx.tolist(), rows[idx].tolist()):
            out[k] = self._eval(n, tuple(row))
        return out

    @property
    def uses_simple_coords(self) -> bool:
        return self._simple

    def _eval(self, k: int, nu: tuple[int, ...]) -> tuple[int, ...]:
        if k == 0:
            return (1,) if not any(nu) else ()
        key = (k, nu)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if self._reach is not None:
            size = sum(nu) if self._simple else sum(a * b for a, b in zip(self._cert, nu))
            if size > self._reach:
                self._memo[key] = ()
                return ()
        step = self._steps[k - 1]
        out: list[int] = []
        n = 0
        cur = nu
        simple = self._simple
        cap = self.max_degree
        while cap is None or n <= cap:
            if simple:
                if any(c < 0 for c in cur):
                    break
            elif sum(a * b for a, b in zip(self._cert, cur)) < 0:
                break
            sub_ = self._eval(k - 1, cur)
            if sub_:
                if len(out) < len(sub_) + n:
                    out.extend([0] * (len(sub_) + n - len(out)))
                for j, c in enumerate(sub_):
                    out[j + n] += c
            n += 1
            cur = tuple(a - b for a, b in zip(cur, step))
        if self.max_degree is not None:
            del out[self.max_degree + 1:]
        while out and out[-1] == 0:
            out.pop()
        res = tuple(out)
        self._memo[key] = res
        return res

    def clear(self) -> None:
        self._memo.clear()

    def __len__(self) -> int:
        return len(self._memo)


def partition_q(psi: WeightMultiset, nu: Weight, cache: PartitionFunction | None = None) -> QPolynomial:
    if cache is None:
        cache = PartitionFunction(psi)
    elif cache.psi is not psi:
        raise MultisetError("cache belongs to a different multiset")
    return cache(nu)


def derivative_residual(psi: WeightMultiset, nu: Weight,
                        cache: PartitionFunction | None = None) -> QPolynomial:
    """d/dq P(nu) - sum_{g in Psi} sum_{n>=1} q^(n-1) P(nu - n g); identically 0."""
    cache = cache or PartitionFunction(psi)
    lhs = cache(nu).derivative()
    rhs = QPolynomial()
    for g in psi.ordered:
        n = 1
        cur = sub(nu, g)
        while psi.value(cur) >= 0:
            rhs = rhs + cache(cur).shift(n - 1)
            n += 1
            cur = sub(cur, g)
    return lhs - rhs
