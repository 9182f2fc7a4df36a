"""Finite root systems in fundamental-weight coordinates.

A weight is a tuple of ints, its coordinates in the basis of fundamental
weights.  Roots are weights too: the i-th simple root is the i-th row of the
Cartan matrix ``A[i][j] = <alpha_i, alpha_j^vee>``.  The invariant form is
normalised so that short roots have squared length 2 (simply-laced types
count every root as short).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence

Weight = tuple[int, ...]

_RANK_MIN = {"A": 1, "B": 2, "C": 2, "D": 4, "E": 6, "F": 4, "G": 2}
_RANK_MAX = {"E": 8, "F": 4, "G": 2}


class RootSystemError(ValueError):
    pass


# ---------------------------------------------------------------------------
# small exact linear algebra

def _inverse(mat: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise RootSystemError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def add(u: Weight, v: Weight) -> Weight:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Weight, v: Weight) -> Weight:
    return tuple(a - b for a, b in zip(u, v))


def scale(k: int, u: Weight) -> Weight:
    return tuple(k * a for a in u)


def weight_sum(ws, rank: int) -> Weight:
    acc = [0] * rank
    for w in ws:
        for i, a in enumerate(w):
            acc[i] += a
    return tuple(acc)


def parse_weight(text: str, rank: int | None = None) -> Weight:
    """Parse ``"1,-2,0"`` into a weight, checking the length if asked."""
    try:
        w = tuple(int(t) for t in text.replace(" ", "").split(",") if t != "")
    except ValueError as exc:
        raise RootSystemError(f"malformed weight {text!r}") from exc
    if rank is not None and len(w) != rank:
        raise RootSystemError(f"weight {text!r} has length {len(w)}, expected {rank}")
    return w


def format_weight(w: Weight) -> str:
    return ",".join(str(a) for a in w)


# ---------------------------------------------------------------------------
# Cartan matrices (Bourbaki numbering)

def cartan_matrix(letter: str, n: int) -> tuple[tuple[int, ...], ...]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if letter in "ABCF":
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        if letter == "B":
            a[n - 2][n - 1] = -2
        elif letter == "C":
            a[n - 1][n - 2] = -2
        elif letter == "F":
            a[1][2] = -2
    elif letter == "D":
        for i in range(n - 2):
            a[i][i + 1] = a[i + 1][i] = -1
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif letter == "E":
        # 1-3-4-5-...-n with 2 attached to 4
        chain = [0] + list(range(2, n))
        for i, j in zip(chain, chain[1:]):
            a[i][j] = a[j][i] = -1
        a[1][3] = a[3][1] = -1
    elif letter == "G":
        a[0][1], a[1][0] = -1, -3
    return tuple(tuple(r) for r in a)


def _half_lengths(letter: str, n: int) -> tuple[int, ...]:
    """(alpha_i, alpha_i)/2 for each simple root."""
    if letter == "B":
        return (2,) * (n - 1) + (1,)
    if letter == "C":
        return (1,) * (n - 1) + (2,)
    if letter == "F":
        return (2, 2, 1, 1)
    if letter == "G":
        return (1, 3)
    return (1,) * n


def parse_label(label: str) -> tuple[str, int]:
    label = label.strip()
    if len(label) < 2 or label[0].upper() not in _RANK_MIN or not label[1:].isdigit():
        raise RootSystemError(f"unknown Cartan label {label!r}")
    letter, n = label[0].upper(), int(label[1:])
    if n < _RANK_MIN[letter] or n > _RANK_MAX.get(letter, n) or (letter == "E" and n < 6):
        raise RootSystemError(f"rank {n} out of range for type {letter}")
    return letter, n


def classify_cartan(a: Sequence[Sequence[int]]) -> list[tuple[str, tuple[int, ...]]]:
    """Split a Cartan matrix into irreducible components and name each one.

    Returns ``[(label, indices), ...]`` sorted by smallest index.  Rank-2
    double bonds are reported as ``B2`` (isomorphic to ``C2``); ``D3`` is
    reported as ``A3``.
    """
    n = len(a)
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j != i and a[i][j] != 0 and j not in seen:
                    seen.add(j)
                    stack.append(j)
        comp.sort()
        comps.append((_name_component(a, comp), tuple(comp)))
    return comps


def _name_component(a, comp: list[int]) -> str:
    k = len(comp)
    if k == 1:
        return "A1"
    nbrs = {i: [j for j in comp if j != i and a[i][j] != 0] for i in comp}
    bonds = {(i, j): a[i][j] * a[j][i] for i in comp for j in nbrs[i] if i < j}
    if 3 in bonds.values():
        return "G2"
    doubles = [e for e, m in bonds.items() if m == 2]
    if doubles:
        if k == 2:
            return "B2"
        i, j = doubles[0]
        # |a_ij| = 2 means alpha_j is the shorter root
        short, long_ = (j, i) if abs(a[i][j]) == 2 else (i, j)
        if len(nbrs[short]) == 1:
            return f"B{k}"
        if len(nbrs[long_]) == 1:
            return f"C{k}"
        return "F4"
    branch = [i for i in comp if len(nbrs[i]) == 3]
    if not branch:
        return f"A{k}"
    b = branch[0]
    arms = []
    for start in nbrs[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [x for x in nbrs[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{k}" if k > 3 else "A3"
    return f"E{k}"


def reflection_degrees(label: str) -> tuple[int, ...]:
    """Degrees of the basic invariants of the Weyl group of an irreducible type."""
    letter, n = label[0], int(label[1:])
    if letter == "A":
        return tuple(range(2, n + 2))
    if letter in "BC":
        return tuple(range(2, 2 * n + 1, 2))
    if letter == "D":
        return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
    return {"E6": (2, 5, 6, 8, 9, 12), "E7": (2, 6, 8, 10, 12, 14, 18),
            "E8": (2, 8, 12, 14, 18, 20, 24, 30), "F4": (2, 6, 8, 12),
            "G2": (2, 6)}[label]


# ---------------------------------------------------------------------------

class OrderRelation(NamedTuple):
    leq: bool
    geq: bool

    @property
    def equal(self) -> bool:
        return self.leq and self.geq

    @property
    def incomparable(self) -> bool:
        return not (self.leq or self.geq)


class _RootData:
    """Operations shared by a root system and its long-root subsystem.

    Subclasses provide ``rank``, ``positive_roots``, ``simple_roots`` and
    ``_gram`` (the form on fundamental-weight coordinates of the ambient
    lattice).
    """

    rank: int
    positive_roots: tuple[Weight, ...]
    simple_roots: tuple[Weight, ...]
    _gram: tuple[tuple[Fraction, ...], ...]

    def inner(self, mu: Weight, nu: Weight) -> Fraction:
        g = self._gram
        return sum((mu[i] * g[i][j] * nu[j] for i in range(self.rank)
                    for j in range(self.rank) if mu[i] and nu[j]), Fraction(0))

    @cached_property
    def _root_index(self) -> dict[Weight, int]:
        return {b: k for k, b in enumerate(self.positive_roots)}

    @cached_property
    def coroot_vectors(self) -> tuple[Weight, ...]:
        """Integer vectors c_beta with <mu, beta^vee> = c_beta . mu."""
        out = []
        for b in self.positive_roots:
            bb = self.inner(b, b)
            row = []
            for i in range(self.rank):
                v = 2 * sum((self._gram[i][j] * b[j] for j in range(self.rank)), Fraction(0)) / bb
                if v.denominator != 1:
                    raise RootSystemError("non-integral coroot")
                row.append(int(v))
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def simple_coroot_vectors(self) -> tuple[Weight, ...]:
        return tuple(self.coroot_vectors[self._root_index[a]] for a in self.simple_roots)

    def is_root(self, beta: Weight) -> bool:
        return beta in self._root_index or tuple(-x for x in beta) in self._root_index

    def pairing(self, mu: Weight, beta: Weight) -> int:
        """<mu, beta^vee> for a root beta of this system."""
        k = self._root_index.get(beta)
        sign = 1
        if k is None:
            k = self._root_index.get(tuple(-x for x in beta))
            sign = -1
            if k is None:
                raise RootSystemError(f"{beta} is not a root")
        c = self.coroot_vectors[k]
        return sign * sum(x * y for x, y in zip(c, mu))

    def simple_pairings(self, mu: Weight) -> tuple[int, ...]:
        return tuple(sum(x * y for x, y in zip(c, mu)) for c in self.simple_coroot_vectors)

    def reflect(self, mu: Weight, beta: Weight) -> Weight:
        k = self.pairing(mu, beta)
        return tuple(m - k * b for m, b in zip(mu, beta))

    def is_dominant(self, mu: Weight) -> bool:
        return all(p >= 0 for p in self.simple_pairings(mu))

    def is_regular(self, mu: Weight) -> bool:
        return all(sum(x * y for x, y in zip(c, mu)) != 0 for c in self.coroot_vectors)

    def dominant_conjugate(self, mu: Weight) -> tuple[Weight, tuple[int, ...]]:
        """Ascend to the dominant chamber by simple reflections.

        Returns the dominant conjugate and the indices of the simple
        reflections applied, in order.
        """
        word = []
        mu = tuple(mu)
        coroots = self.simple_coroot_vectors
        while True:
            for i, c in enumerate(coroots):
                p = sum(x * y for x, y in zip(c, mu))
                if p < 0:
                    b = self.simple_roots[i]
                    mu = tuple(m - p * bb for m, bb in zip(mu, b))
                    word.append(i)
                    break
            else:
                return mu, tuple(word)

    @cached_property
    def _base_inverse(self) -> list[list[Fraction]]:
        return _inverse(self.simple_roots)

    def simple_coords(self, nu: Weight) -> tuple[Fraction, ...]:
        """Coefficients of nu over the simple system (rational in general)."""
        inv = self._base_inverse
        return tuple(sum((nu[k] * inv[k][i] for k in range(self.rank)), Fraction(0))
                     for i in range(len(self.simple_roots)))

    def in_root_lattice(self, nu: Weight) -> bool:
        return all(c.denominator == 1 for c in self.simple_coords(nu))

    def height(self, nu: Weight) -> int:
        cs = self.simple_coords(nu)
        if any(c.denominator != 1 for c in cs):
            raise RootSystemError(f"{nu} is not in the root lattice")
        return int(sum(cs))

    def rational_height(self, nu: Weight) -> Fraction:
        return sum(self.simple_coords(nu), Fraction(0))

    def root_leq(self, mu: Weight, nu: Weight) -> bool:
        """mu <= nu in the root order: nu - mu is a non-negative integer
        combination of simple roots."""
        cs = self.simple_coords(sub(nu, mu))
        return all(c.denominator == 1 and c >= 0 for c in cs)

    def dominant_leq(self, mu: Weight, nu: Weight) -> bool:
        return self.is_dominant(sub(nu, mu))

    def order_compare(self, mu: Weight, nu: Weight, mode: str = "root") -> OrderRelation:
        if len(mu) != len(nu):
            raise RootSystemError("rank mismatch")
        test = {"root": self.root_leq, "dominant": self.dominant_leq}.get(mode)
        if test is None:
            raise RootSystemError(f"unknown order {mode!r}")
        return OrderRelation(test(mu, nu), test(nu, mu))

    def from_simple_coords(self, cs: Sequence[int]) -> Weight:
        acc = [0] * self.rank
        for c, a in zip(cs, self.simple_roots):
            if c:
                for i, x in enumerate(a):
                    acc[i] += c * x
        return tuple(acc)

    @cached_property
    def rho_internal(self) -> Weight:
        """Half the sum of this system's positive roots."""
        s = weight_sum(self.positive_roots, self.rank)
        if any(x % 2 for x in s):
            raise RootSystemError("half-sum of positive roots is not integral")
        return tuple(x // 2 for x in s)


@dataclass(frozen=True, eq=False)
class RootSystem(_RootData):
    label: str
    cartan: tuple[tuple[int, ...], ...]
    half_lengths: tuple[int, ...]
    positive_roots: tuple[Weight, ...] = field(init=False)
    positive_simple_coords: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        n = len(self.cartan)
        a = self.cartan
        roots = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        known = set(roots)
        frontier = list(roots)
        while frontier:
            nxt = []
            for c in frontier:
                for i in range(n):
                    if c == roots[i]:
                        continue
                    p = 0
                    down = list(c)
                    while True:
                        down[i] -= 1
                        if tuple(down) in known:
                            p += 1
                        else:
                            break
                    pair = sum(c[j] * a[j][i] for j in range(n))
                    if p - pair > 0:
                        up = tuple(c[j] + (j == i) for j in range(n))
                        if up not in known:
                            known.add(up)
                            nxt.append(up)
            frontier = nxt
        coords = sorted(known, key=lambda c: (sum(c), tuple(-x for x in c)))
        object.__setattr__(self, "positive_simple_coords", tuple(coords))
        object.__setattr__(self, "positive_roots",
                           tuple(tuple(sum(c[j] * a[j][k] for j in range(n)) for k in range(n))
                                 for c in coords))

    # -- basic data --------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        return tuple(tuple(r) for r in self.cartan)

    @cached_property
    def fundamental_weights(self) -> tuple[Weight, ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    @cached_property
    def _gram(self) -> tuple[tuple[Fraction, ...], ...]:
        inv = _inverse(self.cartan)
        n = self.rank
        # (mu, nu) = sum_j c_j(nu) d_j mu_j with c(nu) = nu A^{-1}
        return tuple(tuple(inv[k][j] * self.half_lengths[j] for k in range(n)) for j in range(n))

    @property
    def form(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._gram

    @cached_property
    def simply_laced(self) -> bool:
        return len(set(self.half_lengths)) == 1

    def is_long(self, beta: Weight) -> bool:
        return not self.simply_laced and self.inner(beta, beta) > 2

    @cached_property
    def short_positive(self) -> tuple[Weight, ...]:
        return tuple(b for b in self.positive_roots if not self.is_long(b))

    @cached_property
    def long_positive(self) -> tuple[Weight, ...]:
        return tuple(b for b in self.positive_roots if self.is_long(b))

    @cached_property
    def short_simple(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.simple_roots) if not self.is_long(a))

    @cached_property
    def long_simple(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.simple_roots) if self.is_long(a))

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def rho_s(self) -> Weight:
        s = weight_sum(self.short_positive, self.rank)
        return tuple(x // 2 for x in s)

    @cached_property
    def rho_l(self) -> Weight:
        s = weight_sum(self.long_positive, self.rank)
        return tuple(x // 2 for x in s)

    @cached_property
    def highest_short_root(self) -> Weight:
        """The short dominant root (the highest root when simply laced)."""
        dom = [b for b in self.short_positive if self.is_dominant(b)]
        if len(dom) != 1:
            raise RootSystemError("short dominant root is not unique")
        return dom[0]

    @cached_property
    def highest_root(self) -> Weight:
        return self.positive_roots[-1]

    def coordinate_level(self, mu: Weight) -> int:
        return sum(mu)

    def __repr__(self) -> str:
        return f"RootSystem({self.label!r})"


_CACHE: dict[str, RootSystem] = {}


def build_root_system(label: str) -> RootSystem:
    letter, n = parse_label(label)
    key = f"{letter}{n}"
    if key not in _CACHE:
        rs = RootSystem(key, cartan_matrix(letter, n), _half_lengths(letter, n))
        expected = {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1),
                    "E": {6: 36, 7: 63, 8: 120}.get(n), "F": 24, "G": 6}[letter]
        if len(rs.positive_roots) != expected:
            raise RootSystemError(f"root generation failed for {key}")
        _CACHE[key] = rs
    return _CACHE[key]


@dataclass(frozen=True, eq=False)
class LongSubsystem(_RootData):
    """The long roots of a doubly-laced system, as a root system in the
    ambient weight lattice (same rank, reducible in general)."""

    ambient: RootSystem
    positive_roots: tuple[Weight, ...]
    simple_roots: tuple[Weight, ...]
    components: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def rank(self) -> int:
        return self.ambient.rank

    @property
    def base(self) -> tuple[Weight, ...]:
        return self.simple_roots

    @property
    def _gram(self):
        return self.ambient.form

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.pairing(b, c) for c in self.simple_roots) for b in self.simple_roots)

    @property
    def type_label(self) -> str:
        return "x".join(lbl for lbl, _ in self.components)

    def label_coords(self, nu: Weight) -> tuple[int, ...]:
        """Pairings with the base coroots, in base order."""
        return self.simple_pairings(nu)


@lru_cache(maxsize=None)
def long_subsystem(rs: RootSystem) -> LongSubsystem:
    if rs.simply_laced:
        raise RootSystemError(f"{rs.label} is simply laced; the long subsystem is empty")
    pos = rs.long_positive
    posset = set(pos)
    base = tuple(b for b in pos
                 if not any(sub(b, c) in posset for c in pos if c != b))
    # the base must span: every long positive root is a non-negative combination
    proto = LongSubsystem(rs, pos, base, ())
    for b in pos:
        cs = proto.simple_coords(b)
        if any(c.denominator != 1 or c < 0 for c in cs):
            raise RootSystemError("long base does not generate the long positive roots")
    comps = tuple(classify_cartan(proto.cartan))
    return LongSubsystem(rs, pos, base, comps)
