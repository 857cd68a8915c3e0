"""Exact Wigner 3jm, 6-j, 9-j, 12-j, 15-j and 18-j symbols."""
from .coupling import (
    HalfInt,
    SelectionRuleError,
    WignerDomainError,
    delta,
    triangle_ok,
    wigner3jm,
    wigner6j,
    wigner9j,
)
from .exact import (
    BigRational,
    ExactDomainError,
    FactoredPositive,
    Surd,
    SurdVec,
    escalation_count,
    factorial_factored,
    format_exact,
    parse_exact,
    reset_escalation_count,
    sqrt_split,
    surd_add,
    surd_div,
    surd_mul,
    to_decimal,
)
from .highorder import (
    Kind,
    SymbolSpec,
    chain_3nj_first,
    chain_3nj_second,
    evaluate,
    wigner12j_first,
    wigner12j_second,
    wigner15j_fifth,
    wigner15j_fourth,
    wigner15j_third,
)

__version__ = "0.1.0"

__all__ = [
    "BigRational",
    "ExactDomainError",
    "FactoredPositive",
    "HalfInt",
    "Kind",
    "SelectionRuleError",
    "Surd",
    "SurdVec",
    "SymbolSpec",
    "WignerDomainError",
    "chain_3nj_first",
    "chain_3nj_second",
    "delta",
    "escalation_count",
    "evaluate",
    "factorial_factored",
    "format_exact",
    "parse_exact",
    "reset_escalation_count",
    "sqrt_split",
    "surd_add",
    "surd_div",
    "surd_mul",
    "to_decimal",
    "triangle_ok",
    "wigner12j_first",
    "wigner12j_second",
    "wigner15j_fifth",
    "wigner15j_fourth",
    "wigner15j_third",
    "wigner3jm",
    "wigner6j",
    "wigner9j",
]
