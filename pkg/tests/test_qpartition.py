import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from kfq.poly import QPolynomial
from kfq.qpartition import (MultisetError, PartitionFunction, build_multiset, derivative_residual,
                            find_certificate, normaliser_levi, partition_q)
from kfq.rootsys import build_root_system


def brute_partition(psi, nu, rs):
    """Graded count of multisets, one multiplicity per root, each bounded by
    what is left of the target (every root here lies in Q+)."""
    target = rs.simple_coords(nu)
    if any(c < 0 or c.denominator != 1 for c in target):
        return QPolynomial()
    coords = [tuple(int(x) for x in rs.simple_coords(r)) for r in psi.ordered]
    out = Counter()

    def walk(i, rest, size):
        if i == len(coords):
            if not any(rest):
                out[size] += 1
            return
        c = coords[i]
        m = 0
        while all(r - m * x >= 0 for r, x in zip(rest, c)):
            walk(i + 1, tuple(r - m * x for r, x in zip(rest, c)), size + m)
            m += 1

    walk(0, tuple(int(t) for t in target), 0)
    return QPolynomial([out[k] for k in range(max(out, default=-1) + 1)])


def test_kostant_a2():
    rs = build_root_system("A2")
    psi = build_multiset(rs, "positive")
    assert partition_q(psi, (1, 1)) == QPolynomial([0, 1, 1])  # theta or alpha_1 + alpha_2
    assert partition_q(psi, (0, 0)) == QPolynomial([1])
    assert partition_q(psi, (-2, 1)) == QPolynomial()


def test_specs():
    rs = build_root_system("C2")
    assert len(build_multiset(rs, "positive")) == 4
    assert set(build_multiset(rs, "short")) == {(2, -1), (0, 1)}
    assert set(build_multiset(rs, "height:2")) == {(0, 1), (2, 0)}
    # ideal generated by alpha_1 + alpha_2 contains 2 alpha_1 + alpha_2
    i = rs.positive_roots.index((0, 1))
    assert set(build_multiset(rs, f"ideal:{i}")) == {(0, 1), (2, 0)}
    with pytest.raises(MultisetError):
        build_multiset(rs, "nonsense")


def test_file_spec(tmp_path):
    rs = build_root_system("A2")
    f = tmp_path / "psi.txt"
    f.write_text("# theta twice\n1,1\n1,1\n; 1,1\n")
    psi = build_multiset(rs, f"file:{f}")
    assert len(psi) == 2
    assert partition_q(psi, (2, 2)) == QPolynomial([0, 0, 3])


def test_non_pointed_multiset_rejected():
    assert find_certificate([(1, 0), (-1, 0)], 2) is None
    rs = build_root_system("A2")
    with pytest.raises(MultisetError):
        build_multiset(rs, [(2, -1), (-2, 1)])


def test_explicit_multiset_outside_positive_cone():
    rs = build_root_system("A2")
    psi = build_multiset(rs, [(1, 0), (0, 1)])  # fundamental weights, not in Q+
    assert partition_q(psi, (2, 1)) == QPolynomial([0, 0, 0, 1])


def test_normaliser_levi():
    rs = build_root_system("A2")
    assert normaliser_levi(build_multiset(rs, "height:2")) == ()
    rs = build_root_system("C2")
    # |short positive roots| = 2 omega_1, orthogonal to alpha_2
    assert normaliser_levi(build_multiset(rs, "short")) == (1,)


def test_truncated_cache_agrees_mod_degree():
    rs = build_root_system("C2")
    psi = build_multiset(rs, "positive")
    full, trunc = PartitionFunction(psi), PartitionFunction(psi, max_degree=3)
    for nu in itertools.product(range(-2, 6), repeat=2):
        assert trunc(nu) == full(nu).truncate(3)


LABELS = st.sampled_from(["A2", "C2", "G2"])
SPECS = st.sampled_from(["positive", "short", "height:2"])


@given(LABELS, SPECS, st.tuples(st.integers(-2, 5), st.integers(-2, 5)))
def test_matches_brute_force(label, spec, nu):
    rs = build_root_system(label)
    psi = build_multiset(rs, spec)
    assert partition_q(psi, nu) == brute_partition(psi, nu, rs)


@given(LABELS, SPECS, st.tuples(st.integers(-2, 6), st.integers(-2, 6)))
def test_derivative_identity(label, spec, nu):
    rs = build_root_system(label)
    psi = build_multiset(rs, spec)
    assert derivative_residual(psi, nu).is_zero()


@given(LABELS, st.lists(st.tuples(st.integers(-3, 6), st.integers(-3, 6)), min_size=1, max_size=8))
def test_cache_is_transparent(label, nus):
    rs = build_root_system(label)
    psi = build_multiset(rs, "positive")
    shared = PartitionFunction(psi)
    batch = shared.eval_many(nus)
    for nu, coeffs in zip(nus, batch):
        fresh = PartitionFunction(psi)(nu)
        assert shared(nu) == fresh == QPolynomial(coeffs)
