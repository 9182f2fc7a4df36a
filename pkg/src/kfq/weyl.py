"""Weyl groups by orbit enumeration, and the subgroups W(Pi_s) and W_l.

Every element is identified by the image of rho, which is regular, so the
rho-orbit is in bijection with W.  Elements are stored as integer matrices
acting on fundamental-weight coordinates (one stacked numpy array per
group), with a breadth-first spanning tree that recovers reduced words.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .poly import QPolynomial
from .rootsys import RootSystem, RootSystemError, Weight, long_subsystem, parse_label

DEFAULT_LIMIT = 10**6


class WeylLimitError(RootSystemError):
    """The group is larger than the configured enumeration limit."""


def default_limit() -> int:
    env = os.environ.get("KFQ_WEYL_LIMIT")
    return int(env) if env else DEFAULT_LIMIT


def classical_order(label: str) -> int:
    letter, n = parse_label(label)
    if letter == "A":
        return math.factorial(n + 1)
    if letter in "BC":
        return 2**n * math.factorial(n)
    if letter == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12}[f"{letter}{n}"]


def _apply(mat, mu) -> Weight:
    return tuple(int(sum(int(mat[i][j]) * mu[j] for j in range(len(mu)))) for i in range(len(mu)))


@dataclass(frozen=True)
class WeylElement:
    """w = s_{word[0]} s_{word[1]} ... (rightmost factor acts first)."""

    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1

    def __call__(self, mu: Weight) -> Weight:
        return _apply(self.matrix, mu)

    def is_identity(self) -> bool:
        return not self.word


def simple_reflection_matrix(rs: RootSystem, i: int) -> np.ndarray:
    n = rs.rank
    m = np.eye(n, dtype=np.int64)
    m[:, i] -= np.array(rs.simple_roots[i], dtype=np.int64)
    return m


def reflection_matrix(rs, beta: Weight) -> np.ndarray:
    """Matrix of s_beta for a root beta of ``rs`` (or of a subsystem)."""
    n = rs.rank
    c = np.array(rs.coroot_vectors[rs._root_index[beta]], dtype=np.int64)
    return np.eye(n, dtype=np.int64) - np.outer(np.array(beta, dtype=np.int64), c)


class WeylGroup:
    def __init__(self, rs: RootSystem, limit: int | None = None):
        limit = default_limit() if limit is None else limit
        order = classical_order(rs.label)
        if order > limit:
            raise WeylLimitError(
                f"W({rs.label}) has order {order}, above the enumeration limit {limit}")
        self.rs = rs
        n = rs.rank
        gens = np.stack([simple_reflection_matrix(rs, i) for i in range(n)])

        keys = [tuple(rs.rho)]
        index = {keys[0]: 0}
        parent = [-1]
        gen = [-1]
        lengths = [0]
        mats = [np.eye(n, dtype=np.int64)]
        layer = [0]
        depth = 0
        while layer:
            depth += 1
            new_parents, new_gens = [], []
            for p in layer:
                wr = keys[p]
                for i in range(n):
                    c = wr[i]
                    if c <= 0:
                        continue  # s_i w is shorter
                    key = tuple(x - c * a for x, a in zip(wr, rs.simple_roots[i]))
                    if key not in index:
                        index[key] = len(keys)
                        keys.append(key)
                        parent.append(p)
                        gen.append(i)
                        lengths.append(depth)
                        new_parents.append(p)
                        new_gens.append(i)
            if new_parents:
                block = np.einsum("kij,kjl->kil", gens[new_gens], np.stack([mats[p] for p in new_parents]))
                mats.extend(block)
            layer = list(range(len(keys) - len(new_parents), len(keys)))
        if len(keys) != order:
            raise RootSystemError(f"orbit of rho has {len(keys)} points, expected {order}")
        self.order = order
        self.matrices = np.stack(mats)
        self.lengths = np.array(lengths, dtype=np.int64)
        self.signs = np.where(self.lengths % 2 == 0, 1, -1)
        self._keys = keys
        self._index = index
        self._parent = parent
        self._gen = gen

    def __len__(self) -> int:
        return self.order

    def word(self, k: int) -> tuple[int, ...]:
        out = []
        while self._parent[k] >= 0:
            out.append(self._gen[k])
            k = self._parent[k]
        return tuple(out)

    def element(self, k: int) -> WeylElement:
        return WeylElement(self.word(k), tuple(tuple(int(x) for x in r) for r in self.matrices[k]))

    def index_of(self, w) -> int:
        """Index of a WeylElement, matrix, or rho-image key."""
        if isinstance(w, WeylElement):
            key = w(self.rs.rho)
        elif isinstance(w, tuple) and w and isinstance(w[0], int):
            key = w
        else:
            key = _apply(w, self.rs.rho)
        return self._index[tuple(key)]

    def from_word(self, word) -> WeylElement:
        m = np.eye(self.rs.rank, dtype=np.int64)
        for i in reversed(word):
            m = simple_reflection_matrix(self.rs, i) @ m
        return self.element(self.index_of(m))

    def compose(self, a: int, b: int) -> int:
        return self.index_of(self.matrices[a] @ self.matrices[b])

    def inverse(self, a: int) -> int:
        return self.index_of(self.from_word(tuple(reversed(self.word(a)))))

    @cached_property
    def identity(self) -> int:
        return 0

    @cached_property
    def longest(self) -> int:
        return int(np.argmax(self.lengths))

    def act(self, k: int, mu: Weight) -> Weight:
        return tuple(int(x) for x in self.matrices[k] @ np.array(mu, dtype=np.int64))

    def orbit_images(self, mu: Weight) -> np.ndarray:
        """w(mu) for every w, as an (|W|, rank) array."""
        return self.matrices @ np.array(mu, dtype=np.int64)

    def inversion_set(self, k: int) -> frozenset[Weight]:
        """N(w) = {alpha > 0 : w(alpha) < 0}."""
        pos = set(self.rs.positive_roots)
        out = []
        for a in self.rs.positive_roots:
            wa = self.act(k, a)
            if wa not in pos:
                out.append(a)
        return frozenset(out)

    def determinant(self, k: int) -> int:
        return int(round(np.linalg.det(self.matrices[k].astype(float))))

    # -- subgroups ---------------------------------------------------------
    def _closure(self, generators: list[np.ndarray]) -> tuple[int, ...]:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for k in frontier:
                for g in generators:
                    j = self.index_of(g @ self.matrices[k])
                    if j not in seen:
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        return tuple(sorted(seen, key=lambda j: (self.lengths[j], j)))

    @cached_property
    def short_parabolic(self) -> "SubgroupHandle":
        """W(Pi_s), generated by the short simple reflections."""
        if len(self.rs.short_simple) == self.rs.rank:
            return SubgroupHandle("W(Pi_s)", self, tuple(range(self.order)))
        gens = [simple_reflection_matrix(self.rs, i) for i in self.rs.short_simple]
        return SubgroupHandle("W(Pi_s)", self, self._closure(gens))

    @cached_property
    def long_subgroup(self) -> "SubgroupHandle":
        """W_l, generated by all reflections in long roots."""
        if self.rs.simply_laced:
            return SubgroupHandle("W_l", self, (0,))
        ls = long_subsystem(self.rs)
        gens = [reflection_matrix(ls, b) for b in ls.base]
        return SubgroupHandle("W_l", self, self._closure(gens))

    def stabilizer_in_short_parabolic(self, lam: Weight) -> "SubgroupHandle":
        lam = tuple(lam)
        els = tuple(k for k in self.short_parabolic.elements if self.act(k, lam) == lam)
        return SubgroupHandle("W(Pi_s)_lambda", self, els)

    # -- derived operations ----------------------------------------------------
    def dominant_representative(self, mu: Weight) -> tuple[Weight, WeylElement]:
        """(mu+, w_mu) with w_mu of minimal length and w_mu(mu) = mu+."""
        plus, applied = self.rs.dominant_conjugate(mu)
        return plus, self.from_word(tuple(reversed(applied)))

    def semidirect_decompose(self, k: int) -> tuple[int, int]:
        """Indices (u, v) with w = u v, u in W(Pi_s), v in W_l."""
        if self.rs.simply_laced:
            raise RootSystemError("semidirect decomposition needs two root lengths")
        wl = set(self.long_subgroup.elements)
        found = []
        for u in self.short_parabolic.elements:
            v = self.compose(self.inverse(u), k)
            if v in wl:
                found.append((u, v))
        if len(found) != 1:
            raise AssertionError(f"semidirect decomposition found {len(found)} factorisations")
        return found[0]

    def shifted_action(self, k: int, gamma: Weight) -> Weight:
        """w . gamma = w(gamma + rho_l) - rho_l for w in W_l."""
        if k not in self.long_subgroup.index_set:
            raise RootSystemError("shifted action is defined for W_l only")
        rl = self.rs.rho_l
        img = self.act(k, tuple(g + r for g, r in zip(gamma, rl)))
        return tuple(a - r for a, r in zip(img, rl))

    def stabilizer_poincare(self, lam: Weight) -> QPolynomial:
        """Sum of q^l(w) over the stabiliser of lam in W(Pi_s)."""
        coeffs = [0] * (int(self.lengths.max()) + 1)
        for k in self.stabilizer_in_short_parabolic(lam).elements:
            coeffs[self.lengths[k]] += 1
        return QPolynomial(coeffs)

    def dual_weight(self, lam: Weight) -> Weight:
        """lam* = -w0(lam)."""
        if not self.rs.is_dominant(lam):
            raise RootSystemError(f"{lam} is not dominant")
        return self.act(self.longest, tuple(-x for x in lam))


@dataclass(frozen=True)
class SubgroupHandle:
    kind: str
    group: WeylGroup
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def index_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, k: int) -> bool:
        return k in self.index_set


_GROUPS: dict[str, WeylGroup] = {}


def generate(rs: RootSystem, limit: int | None = None) -> WeylGroup:
    """Enumerate W(rs), cached per root system."""
    if rs.label not in _GROUPS:
        _GROUPS[rs.label] = WeylGroup(rs, limit)
    elif limit is not None and _GROUPS[rs.label].order > limit:
        raise WeylLimitError(f"W({rs.label}) has order {_GROUPS[rs.label].order}, above {limit}")
    return _GROUPS[rs.label]
