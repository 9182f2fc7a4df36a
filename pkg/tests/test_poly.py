from hypothesis import given, strategies as st

from kfq.poly import ONE, Q, ZERO, QPolynomial, q_integer

polys = st.lists(st.integers(-50, 50), max_size=6).map(QPolynomial)


def test_trim_and_equality():
    assert QPolynomial([1, 2, 0, 0]) == QPolynomial([1, 2])
    assert QPolynomial([0, 0]) == ZERO
    assert ZERO.degree == -1 and not ZERO
    assert Q * Q == QPolynomial.monomial(2)
    assert QPolynomial([3]) == 3


def test_q_integer_and_division():
    assert q_integer(3) == QPolynomial([1, 1, 1])
    quo, rem = (q_integer(2) * q_integer(3)).divmod(q_integer(3))
    assert quo == q_integer(2) and rem == ZERO
    assert (Q - 1) * (Q + 1) == Q**2 - 1


def test_evaluate_and_derivative():
    p = QPolynomial([1, -2, 3])
    assert p(1) == 2 and p(-1) == 6 and p(0) == 1
    assert p.derivative() == QPolynomial([-2, 6])
    assert p.truncate(1) == QPolynomial([1, -2])
    assert p.shift(2) == QPolynomial([0, 0, 1, -2, 3])


def test_nonnegativity():
    assert QPolynomial([0, 1, 2]).is_nonnegative()
    assert not (Q - 1).is_nonnegative()
    assert ZERO.is_nonnegative()


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO and a * ONE == a


@given(polys, polys, st.integers(-3, 3))
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


@given(polys, st.lists(st.integers(-5, 5), min_size=1, max_size=4).filter(lambda c: c[-1] == 1))
def test_division_by_monic(a, monic):
    d = QPolynomial(monic)
    quo, rem = a.divmod(d)
    assert quo * d + rem == a
    assert rem.degree < d.degree


@given(polys)
def test_hash_consistent(a):
    assert hash(a) == hash(QPolynomial(a.to_list()))
