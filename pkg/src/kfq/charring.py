"""Character-ring toolkit: weight multiplicities, the projection j, tensor
products and restriction to the long-root subgroup H.

Everything here works for any object exposing ``positive_roots``,
``simple_roots``, ``inner`` and ``rho_internal`` (a ``RootSystem`` or a
``LongSubsystem``), so reducible H needs no special handling.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Iterable, Mapping

from .poly import QPolynomial
from .rootsys import RootSystemError, Weight, add, long_subsystem, sub

Coeff = QPolynomial | int


class SparseWeights:
    """Finitely supported map Weight -> QPolynomial (zeros dropped)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Weight, Coeff] | Iterable[tuple[Weight, Coeff]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Weight, QPolynomial] = {}
        for w, c in items:
            c = QPolynomial.coerce(c)
            w = tuple(w)
            acc[w] = acc[w] + c if w in acc else c
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def _wrap(cls, terms: dict):
        obj = cls.__new__(cls)
        obj.terms = {w: c for w, c in terms.items() if c}
        return obj

    def __getitem__(self, w: Weight) -> QPolynomial:
        return self.terms.get(tuple(w), QPolynomial())

    def __contains__(self, w) -> bool:
        return tuple(w) in self.terms

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return type(self)._wrap(out)

    def __neg__(self):
        return type(self)._wrap({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Coeff):
        c = QPolynomial.coerce(c)
        return type(self)._wrap({w: c * v for w, v in self.terms.items()})

    def at(self, x: int) -> dict[Weight, int]:
        """Specialise q = x."""
        vals = {w: c(x) for w, c in self.terms.items()}
        return {w: v for w, v in vals.items() if v}

    def truncate(self, degree: int):
        return type(self)._wrap({w: c.truncate(degree) for w, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseWeights):
            return self.terms == other.terms
        return NotImplemented

    def to_json(self) -> dict[str, list[int]]:
        return {",".join(map(str, w)): c.to_list() for w, c in sorted(self.terms.items())}

    def __repr__(self) -> str:
        body = ", ".join(f"{list(w)}: {c}" for w, c in sorted(self.terms.items()))
        return f"{type(self).__name__}({{{body}}})"


class WeightPolynomial(SparseWeights):
    """An element of Z[q][X], sum c_w e^w."""

    __slots__ = ()

    def __mul__(self, other):
        if not isinstance(other, SparseWeights):
            return self.scale(other)
        out: dict[Weight, QPolynomial] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                w = add(a, b)
                p = ca * cb
                out[w] = out[w] + p if w in out else p
        return WeightPolynomial._wrap(out)

    __rmul__ = __mul__

    @classmethod
    def monomial(cls, w: Weight, c: Coeff = 1):
        return cls({tuple(w): c})


class VirtualCharacter(SparseWeights):
    """An element of Lambda[q] in the basis of irreducible characters: a map
    dominant weight -> coefficient."""

    __slots__ = ()

    @classmethod
    def chi(cls, lam: Weight, c: Coeff = 1):
        return cls({tuple(lam): c})


# -- Freudenthal -------------------------------------------------------------

def _dominant_below(system, lam: Weight) -> list[tuple[int, Weight]]:
    """Dominant weights mu <= lam of ``system``, tagged by height(lam - mu)."""
    top = system.simple_coords(lam)
    ranges = [range(floor(c) + 1) for c in top]
    out = []
    for cs in itertools.product(*ranges):
        mu = sub(lam, system.from_simple_coords(cs))
        if system.is_dominant(mu):
            out.append((sum(cs), mu))
    out.sort()
    return out


def orbit(system, mu: Weight) -> list[Weight]:
    seen = {tuple(mu)}
    frontier = [tuple(mu)]
    while frontier:
        nxt = []
        for v in frontier:
            for a in system.simple_roots:
                r = system.reflect(v, a)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return sorted(seen)


@lru_cache(maxsize=4096)
def _freudenthal_dominant(system, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    rho = system.rho_internal
    lr = add(lam, rho)
    norm_top = system.inner(lr, lr)
    pos = system.positive_roots
    mult: dict[Weight, int] = {}

    def lookup(nu):
        return mult.get(system.dominant_conjugate(nu)[0], 0)

    for h, mu in _dominant_below(system, lam):
        if h == 0:
            mult[mu] = 1
            continue
        acc = Fraction(0)
        for a in pos:
            k = 1
            nu = add(mu, a)
            while True:
                m = lookup(nu)
                if not m:
                    break
                acc += m * system.inner(nu, a)
                k += 1
                nu = add(nu, a)
        mr = add(mu, rho)
        den = norm_top - system.inner(mr, mr)
        val = 2 * acc / den
        if val.denominator != 1 or val < 0:
            raise RootSystemError(f"Freudenthal produced {val} at {mu}")
        if val:
            mult[mu] = int(val)
    return tuple(sorted(mult.items()))


def freudenthal(system, lam: Weight, dominant_only: bool = False) -> dict[Weight, int]:
    """Weight multiplicities of the simple module V(lam)."""
    lam = tuple(lam)
    if not system.is_dominant(lam):
        raise RootSystemError(f"{lam} is not dominant")
    dom = dict(_freudenthal_dominant(system, lam))
    if dominant_only:
        return dom
    out = {}
    for mu, m in dom.items():
        for w in orbit(system, mu):
            out[w] = m
    return out


def weyl_dimension(system, lam: Weight) -> int:
    rho = system.rho_internal
    lr = add(lam, rho)
    num, den = Fraction(1), Fraction(1)
    for a in system.positive_roots:
        num *= system.inner(lr, a)
        den *= system.inner(rho, a)
    val = num / den
    if val.denominator != 1:
        raise RootSystemError("non-integral Weyl dimension")
    return int(val)


# -- projection j and products ------------------------------------------------

def straighten(system, nu: Weight) -> tuple[int, Weight] | None:
    """e^nu (nu already rho-shifted) -> (sign, lambda) with j(e^nu) = sign chi_lambda,
    or None on a wall."""
    dom, word = system.dominant_conjugate(nu)
    if any(p == 0 for p in system.simple_pairings(dom)):
        return None
    return (-1) ** len(word), sub(dom, system.rho_internal)


def j_projection(system, f) -> VirtualCharacter:
    """j(sum c_nu e^nu) = sum c_nu eps(w) chi_{w nu - rho}."""
    items = f.items() if hasattr(f, "items") else f
    out: dict[Weight, QPolynomial] = {}
    for nu, c in items:
        st = straighten(system, tuple(nu))
        if st is None:
            continue
        s, lam = st
        c = QPolynomial.coerce(c) * s
        out[lam] = out[lam] + c if lam in out else c
    return VirtualCharacter._wrap(out)


def character(system, lam: Weight) -> WeightPolynomial:
    """chi_lam as an element of Z[X]."""
    return WeightPolynomial(freudenthal(system, lam))


def tensor_decompose(system, lam: Weight, mu: Weight) -> VirtualCharacter:
    """Brauer-Klimyk, iterating over the weights of the smaller factor."""
    lam, mu = tuple(lam), tuple(mu)
    if weyl_dimension(system, mu) > weyl_dimension(system, lam):
        lam, mu = mu, lam
    shift = add(lam, system.rho_internal)
    res = j_projection(system, ((add(shift, nu), m) for nu, m in freudenthal(system, mu).items()))
    for w, c in res.items():
        if not c.is_nonnegative():
            raise RootSystemError("negative tensor multiplicity")
    return res


def character_product(system, a: VirtualCharacter, b: VirtualCharacter) -> VirtualCharacter:
    out = VirtualCharacter()
    for la, ca in a.items():
        for lb, cb in b.items():
            out = out + tensor_decompose(system, la, lb).scale(ca * cb)
    return out


def expand(system, c: VirtualCharacter) -> WeightPolynomial:
    """Write a virtual character as an element of Z[q][X]."""
    out = WeightPolynomial()
    for lam, coeff in c.items():
        out = out + character(system, lam).scale(coeff)
    return out


def decompose(system, f: WeightPolynomial) -> VirtualCharacter:
    """Inverse of ``expand`` for a W-invariant element: peel off highest weights."""
    rest = dict(f.terms)
    rho = system.rho_internal
    out: dict[Weight, QPolynomial] = {}
    while rest:
        top = max(rest, key=lambda w: (system.inner(w, rho), w))
        if not system.is_dominant(top):
            raise RootSystemError("element is not W-invariant")
        c = rest[top]
        out[top] = c
        for nu, m in freudenthal(system, top).items():
            v = rest.get(nu, QPolynomial()) - c * m
            if v:
                rest[nu] = v
            else:
                rest.pop(nu, None)
    return VirtualCharacter._wrap(out)


def pair(c1: SparseWeights, c2: SparseWeights) -> QPolynomial:
    """<c1, c2> with the chi-basis orthonormal."""
    acc = QPolynomial()
    small, big = (c1, c2) if len(c1) <= len(c2) else (c2, c1)
    for lam, c in small.items():
        if lam in big:
            acc = acc + c * big[lam]
    return acc


# -- restriction to H ----------------------------------------------------------

def branch_to_long(rs, lam: Weight) -> dict[Weight, int]:
    """Multiplicities of the simple H-modules in V(lam)|_H, keyed by their
    highest weight in ambient coordinates (see ``long_subsystem().label_coords``
    for the H-label)."""
    ls = long_subsystem(rs)
    rest = dict(freudenthal(rs, lam))
    rho_l = rs.rho_l
    out: dict[Weight, int] = {}
    while rest:
        top = max(rest, key=lambda w: (rs.inner(w, rho_l), w))
        if not ls.is_dominant(top):
            raise RootSystemError(f"restriction is not H-invariant at {top}")
        c = rest[top]
        if c < 0:
            raise RootSystemError(f"negative branching multiplicity at {top}")
        out[top] = c
        for nu, m in freudenthal(ls, top).items():
            v = rest.get(nu, 0) - c * m
            if v:
                rest[nu] = v
            else:
                rest.pop(nu, None)
    return out


def h_labels(rs, branching: Mapping[Weight, int]) -> dict[tuple[int, ...], int]:
    ls = long_subsystem(rs)
    return {ls.label_coords(w): m for w, m in branching.items()}
