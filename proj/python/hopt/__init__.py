"""Exact matrix semantics and property checks for higher-order process theories."""

from ._core import (
    HoptError,
    Interpretation,
    Mode,
    Obj,
    ParseError,
    Signature,
    Term,
    TypeCheckError,
    check_eq,
    curry,
    dualiser,
    eval,
    format_source,
    hat,
    lift,
    list_theorems,
    phi,
    phi_inv,
    random_interpretation,
    run_source,
    run_suite,
    signalling_analysis,
    typecheck,
)

__all__ = [
    "HoptError",
    "Interpretation",
    "Mode",
    "Obj",
    "ParseError",
    "Signature",
    "Term",
    "TypeCheckError",
    "check_eq",
    "curry",
    "dualiser",
    "eval",
    "format_source",
    "hat",
    "lift",
    "list_theorems",
    "phi",
    "phi_inv",
    "random_interpretation",
    "run_source",
    "run_suite",
    "signalling_analysis",
    "typecheck",
]
