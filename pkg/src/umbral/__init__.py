"""Exact umbral calculus over the rationals.

Formal power series, partial Bell polynomials, shift-invariant operators,
umbral operators and engines that check their operational identities with
exact arithmetic.
"""
from .classification import (
    Family,
    FamilySpec,
    NotInClass,
    UVPair,
    classify_generator,
    family_generator,
    family_uv_series,
    special_uv_pair,
    verify_functional_equation,
    verify_special,
    verify_uv_unitality,
)
from .core import (
    DeltaOperator,
    UmbralOperator,
    staircase_rhs,
    umbral_from_generator,
    verify_exponential_form,
    verify_qphi,
    verify_recurrence,
    verify_staircase,
    verify_staircase_at_d,
)
from .operators import (
    Polynomial,
    ShiftInvariantOperator,
    StaircaseOperator,
    bell_operator,
    op_compose,
    shift_op,
    staircase_apply,
)
from .report import Report
from .series import (
    Series,
    bell_partial,
    bell_partial_by_partitions,
    bell_triangle,
    binomial_series,
    exp_series,
    log1p_series,
)

__all__ = [
    "DeltaOperator",
    "Family",
    "FamilySpec",
    "NotInClass",
    "Polynomial",
    "Report",
    "Series",
    "ShiftInvariantOperator",
    "StaircaseOperator",
    "UVPair",
    "UmbralOperator",
    "bell_operator",
    "bell_partial",
    "bell_partial_by_partitions",
    "bell_triangle",
    "binomial_series",
    "classify_generator",
    "exp_series",
    "family_generator",
    "family_uv_series",
    "log1p_series",
    "op_compose",
    "shift_op",
    "staircase_apply",
    "staircase_rhs",
    "special_uv_pair",
    "umbral_from_generator",
    "verify_exponential_form",
    "verify_functional_equation",
    "verify_qphi",
    "verify_recurrence",
    "verify_special",
    "verify_staircase",
    "verify_staircase_at_d",
    "verify_uv_unitality",
]
