"""Rank of apparition, period and beta of generalized Fibonacci polynomial sequences over F_q[x]."""

from .algebra import FieldElem, FieldSpec, Poly, field_spec, gcd, pow_mod, valuation, xgcd
from .factorize import Factorization, factor_poly, is_irreducible, quad_roots
from .fibcore import SeqParams, fib_exact, fib_pair_at, fib_stream, oracle
from .polyexpr import parse_poly
from .quotient import ResidueRing, mult_order
from .rankperiod import (
    beta_bound_check,
    classify,
    lift_period,
    lift_rank,
    period_prime,
    period_profile,
    rank_prime,
    rank_profile,
    ratio_order,
    report,
)

__all__ = [
    "FieldElem", "FieldSpec", "Poly", "field_spec", "gcd", "pow_mod", "valuation", "xgcd",
    "Factorization", "factor_poly", "is_irreducible", "quad_roots",
    "SeqParams", "fib_exact", "fib_pair_at", "fib_stream", "oracle",
    "parse_poly", "ResidueRing", "mult_order",
    "beta_bound_check", "classify", "lift_period", "lift_rank", "period_prime", "period_profile",
    "rank_prime", "rank_profile", "ratio_order", "report",
]
