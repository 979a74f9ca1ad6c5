"""Solver for the reflected first-order equation u'(t) + a u(-t) + b u(t) = h(t)."""

from ._core import (
    ForcingExpr,
    GreenKernel,
    HomogeneousPair,
    HypothesisError,
    InvalidInputError,
    NonUniqueError,
    ParseError,
    QuadratureError,
    Solution,
    classify,
    closed_form_c31,
    closed_form_c32,
    collocation_solve,
    degenerate_t0,
    eta,
    green_grid,
    integrate,
    parse_forcing,
    shooting_solve,
    sigma,
    sign_report,
    solve,
)

__all__ = [
    "ForcingExpr",
    "GreenKernel",
    "HomogeneousPair",
    "HypothesisError",
    "InvalidInputError",
    "NonUniqueError",
    "ParseError",
    "QuadratureError",
    "Solution",
    "classify",
    "closed_form_c31",
    "closed_form_c32",
    "collocation_solve",
    "degenerate_t0",
    "eta",
    "green_grid",
    "integrate",
    "parse_forcing",
    "shooting_solve",
    "sigma",
    "sign_report",
    "solve",
]
