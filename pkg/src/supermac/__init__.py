"""Macdonald polynomials in superspace and their generalized (q,t)-Kostka coefficients."""

from .combinat import SuperPartition, compositions, enumerate_superpartitions
from .hecke import nonsym_macdonald
from .kostka import emit_table, expand_in_S, kostka_matrix, modified_S, schur_super
from .macdonald import integral_form, jack_schur, macdonald_super
from .qt import ONE, Q, T, ZERO, RationalQT, parse_qt
from .superpoly import BasisExpansion, SuperPolynomial, to_basis

__all__ = [
    "BasisExpansion",
    "ONE",
    "Q",
    "RationalQT",
    "SuperPartition",
    "SuperPolynomial",
    "T",
    "ZERO",
    "compositions",
    "emit_table",
    "enumerate_superpartitions",
    "expand_in_S",
    "integral_form",
    "jack_schur",
    "kostka_matrix",
    "macdonald_super",
    "modified_S",
    "nonsym_macdonald",
    "parse_qt",
    "schur_super",
    "to_basis",
]
