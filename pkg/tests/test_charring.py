import pytest
from hypothesis import given, strategies as st

from kfq.charring import (VirtualCharacter, branch_to_long, character, decompose, expand,
                          freudenthal, h_labels, pair, tensor_decompose, weyl_dimension)
from kfq.poly import QPolynomial
from kfq.qanalogue import dominant_weights
from kfq.rootsys import build_root_system, long_subsystem

DIMS = {("A2", (1, 1)): 8, ("C2", (0, 1)): 5, ("C2", (1, 0)): 4, ("G2", (1, 0)): 7,
        ("G2", (0, 1)): 14, ("B3", (0, 0, 1)): 8, ("C3", (0, 1, 0)): 14, ("F4", (0, 0, 0, 1)): 26}


@pytest.mark.parametrize("key", list(DIMS))
def test_dimensions(key):
    rs = build_root_system(key[0])
    assert weyl_dimension(rs, key[1]) == DIMS[key]
    assert sum(freudenthal(rs, key[1]).values()) == DIMS[key]


def test_little_adjoint_zero_weight():
    # the zero weight of V(theta-bar) has multiplicity #short simple roots
    for label, k in [("C2", 1), ("G2", 1), ("B3", 1), ("C3", 2), ("F4", 2)]:
        rs = build_root_system(label)
        assert freudenthal(rs, rs.highest_short_root)[(0,) * rs.rank] == k


@given(st.sampled_from(["A2", "C2", "G2"]), st.data())
def test_tensor_dimensions(label, data):
    rs = build_root_system(label)
    lams = dominant_weights(rs, 3)
    a, b = data.draw(st.sampled_from(lams)), data.draw(st.sampled_from(lams))
    prod = tensor_decompose(rs, a, b)
    assert sum(c(1) * weyl_dimension(rs, w) for w, c in prod.items()) == \
        weyl_dimension(rs, a) * weyl_dimension(rs, b)
    assert prod == tensor_decompose(rs, b, a)


@given(st.sampled_from(["C2", "G2", "B3", "C3"]), st.data())
def test_branching_dimensions(label, data):
    rs = build_root_system(label)
    lam = data.draw(st.sampled_from(dominant_weights(rs, 2)))
    ls = long_subsystem(rs)
    b = branch_to_long(rs, lam)
    assert sum(m * sum(freudenthal(ls, top).values()) for top, m in b.items()) == weyl_dimension(rs, lam)
    assert all(min(label) >= 0 for label in h_labels(rs, b))


def test_expand_decompose_round_trip():
    rs = build_root_system("C2")
    c = VirtualCharacter({(0, 1): QPolynomial([1]), (0, 0): QPolynomial([0, -1])})
    assert decompose(rs, expand(rs, c)) == c
    assert expand(rs, VirtualCharacter.chi((1, 0))) == character(rs, (1, 0))


def test_pairing_example():
    # <chi_0 + q chi_{0,1}, chi_{0,1} - q chi_0> = q - q = 0
    a = VirtualCharacter({(0, 0): QPolynomial([1]), (0, 1): QPolynomial([0, 1])})
    b = VirtualCharacter({(0, 1): QPolynomial([1]), (0, 0): QPolynomial([0, -1])})
    assert pair(a, b).is_zero()
