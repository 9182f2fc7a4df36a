"""Integer polynomials in a single variable ``q``.

Coefficients are plain Python ints, so arithmetic is exact at any size.
Instances are immutable and hashable; the zero polynomial has an empty
coefficient tuple.
"""
from __future__ import annotations

from typing import Iterable, Sequence, Union

Number = Union[int, "QPolynomial"]


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class QPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _trim(tuple(int(c) for c in coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "QPolynomial":
        if degree < 0:
            raise ValueError("negative degree")
        return cls._raw((0,) * degree + (coeff,)) if coeff else ZERO

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> "QPolynomial":
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @staticmethod
    def coerce(x: Number) -> "QPolynomial":
        if isinstance(x, QPolynomial):
            return x
        if isinstance(x, int):
            return QPolynomial._raw((x,)) if x else ZERO
        raise TypeError(f"cannot coerce {type(x).__name__} to QPolynomial")

    # -- queries -----------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, j: int) -> int:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def low_degree(self) -> int:
        for j, c in enumerate(self.coeffs):
            if c:
                return j
        return -1

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "QPolynomial":
        return QPolynomial._raw(_trim([j * c for j, c in enumerate(self.coeffs)][1:]))

    def truncate(self, degree: int) -> "QPolynomial":
        """Drop every term of degree greater than ``degree``."""
        return QPolynomial._raw(_trim(self.coeffs[: degree + 1]))

    def shift(self, k: int) -> "QPolynomial":
        """Multiply by q**k."""
        if not self.coeffs or k == 0:
            return self
        return QPolynomial._raw((0,) * k + self.coeffs)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: Number) -> "QPolynomial":
        other = QPolynomial.coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a:
            return other
        if not b:
            return self
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] += c
        return QPolynomial._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self) -> "QPolynomial":
        return QPolynomial._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Number) -> "QPolynomial":
        return self + (-QPolynomial.coerce(other))

    def __rsub__(self, other: Number) -> "QPolynomial":
        return QPolynomial.coerce(other) + (-self)

    def __mul__(self, other: Number) -> "QPolynomial":
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return QPolynomial._raw(tuple(c * other for c in self.coeffs))
        other = QPolynomial.coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPolynomial._raw(_trim(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPolynomial":
        if n < 0:
            raise ValueError("negative exponent")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: Number) -> tuple["QPolynomial", "QPolynomial"]:
        """Euclidean division; the divisor's leading coefficient must be +-1
        or divide every intermediate leading coefficient."""
        other = QPolynomial.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.coeffs[-1]
        quot = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if c == 0:
                continue
            if c % lead:
                raise ArithmeticError("division leaves the integers")
            f = c // lead
            quot[k] = f
            for j, y in enumerate(other.coeffs):
                rem[k + j] -= f * y
        return QPolynomial(quot), QPolynomial(rem)

    def exact_div(self, other: Number) -> "QPolynomial":
        quot, rem = self.divmod(other)
        if rem:
            raise ArithmeticError(f"{other} does not divide {self}")
        return quot

    # -- comparison / display ------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPolynomial.coerce(other)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if j == 0 else ("q" if j == 1 else f"q^{j}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            terms.append(("-" if c < 0 else "+", body))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {b}" for s, b in terms[1:])

    def to_list(self) -> list[int]:
        """Ascending coefficient list (``[]`` for zero)."""
        return list(self.coeffs)


ZERO = QPolynomial._raw(())
ONE = QPolynomial._raw((1,))
Q = QPolynomial._raw((0, 1))


def q_integer(n: int) -> QPolynomial:
    """1 + q + ... + q**(n-1)."""
    return QPolynomial._raw((1,) * n)
