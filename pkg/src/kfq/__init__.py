"""Exact generalised Kostka-Foulkes polynomials, short q-analogues of weight
multiplicity and short Hall-Littlewood polynomials for finite root systems."""
from .poly import ONE, Q, ZERO, QPolynomial, q_integer
from .qanalogue import gkf, gkf_many, lusztig_q, short_q
from .qpartition import PartitionFunction, WeightMultiset, build_multiset, partition_q
from .rootsys import RootSystem, RootSystemError, build_root_system, long_subsystem
from .shorthl import e_series, short_hl, verify_identity
from .weyl import WeylGroup, WeylLimitError, generate

__all__ = [
    "ONE", "Q", "ZERO", "QPolynomial", "q_integer",
    "gkf", "gkf_many", "lusztig_q", "short_q",
    "PartitionFunction", "WeightMultiset", "build_multiset", "partition_q",
    "RootSystem", "RootSystemError", "build_root_system", "long_subsystem",
    "e_series", "short_hl", "verify_identity",
    "WeylGroup", "WeylLimitError", "generate",
]
