from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kfq.rootsys import (RootSystemError, build_root_system, classify_cartan, long_subsystem,
                         parse_weight, reflection_degrees)

COUNTS = {"A2": 3, "A3": 6, "B2": 4, "C2": 4, "G2": 6, "B3": 9, "C3": 9, "D4": 12, "F4": 24}
SHORT = {"B2": 2, "C2": 2, "G2": 3, "B3": 3, "C3": 6, "F4": 12}


@pytest.mark.parametrize("label", list(COUNTS))
def test_positive_root_counts(label):
    rs = build_root_system(label)
    assert len(rs.positive_roots) == COUNTS[label]
    assert rs.rho == (1,) * rs.rank
    assert tuple(a + b for a, b in zip(rs.rho_s, rs.rho_l)) == rs.rho


@pytest.mark.parametrize("label", list(SHORT))
def test_short_roots(label):
    rs = build_root_system(label)
    assert len(rs.short_positive) == SHORT[label]
    assert set(rs.short_positive) | set(rs.long_positive) == set(rs.positive_roots)
    theta = rs.highest_short_root
    assert rs.is_dominant(theta) and theta in rs.short_positive


def test_c2_conventions():
    rs = build_root_system("C2")
    assert rs.simple_roots == ((2, -1), (-2, 2))
    assert rs.short_simple == (0,) and rs.long_simple == (1,)
    assert rs.rho_l == (0, 1)
    assert rs.height((2, 0)) == 3  # 2 alpha_1 + alpha_2
    assert rs.simple_coords((1, 0)) == (Fraction(1), Fraction(1, 2))
    assert not rs.in_root_lattice((1, 0))


@pytest.mark.parametrize("label,expected", [
    ("C2", ["A1", "A1"]), ("B3", ["A3"]), ("G2", ["A2"]), ("C3", ["A1", "A1", "A1"]), ("F4", ["D4"]),
])
def test_long_subsystem_type(label, expected):
    ls = long_subsystem(build_root_system(label))
    assert sorted(name for name, _ in classify_cartan(ls.cartan)) == sorted(expected)


def test_reflection_degrees():
    assert reflection_degrees("A2") == (2, 3)
    assert reflection_degrees("B3") == (2, 4, 6)
    assert reflection_degrees("G2") == (2, 6)


def test_errors():
    with pytest.raises(RootSystemError):
        build_root_system("Q3")
    with pytest.raises(RootSystemError):
        build_root_system("D2")
    with pytest.raises(RootSystemError):
        parse_weight("1,x")
    with pytest.raises(RootSystemError):
        parse_weight("1,2,3", 2)


weights2 = st.tuples(st.integers(-6, 6), st.integers(-6, 6))


@given(st.sampled_from(["A2", "C2", "G2"]), weights2)
def test_dominant_conjugate(label, mu):
    rs = build_root_system(label)
    dom, word = rs.dominant_conjugate(mu)
    assert rs.is_dominant(dom)
    assert rs.root_leq(mu, dom)
    assert rs.inner(dom, dom) == rs.inner(mu, mu)


@given(st.sampled_from(["C2", "G2", "B3"]), st.data())
def test_pairing_with_coroots_is_integral(label, data):
    rs = build_root_system(label)
    mu = tuple(data.draw(st.integers(-4, 4)) for _ in range(rs.rank))
    for beta in rs.positive_roots:
        p = rs.pairing(mu, beta)
        assert isinstance(p, int)
        assert rs.reflect(rs.reflect(mu, beta), beta) == mu
