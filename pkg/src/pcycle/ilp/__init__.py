from .lpformat import export_lp_text
from .model import (
    Constraint,
    IlpModel,
    IntSolution,
    LpResult,
    NumericalInstabilityError,
    Sense,
    SolveStats,
    Status,
    Variable,
)
from .simplex import simplex_solve
from .solve import DEFAULT_TIME_LIMIT, solve_bb, solve_lp_relaxation

__all__ = [
    "Constraint",
    "DEFAULT_TIME_LIMIT",
    "IlpModel",
    "IntSolution",
    "LpResult",
    "NumericalInstabilityError",
    "Sense",
    "SolveStats",
    "Status",
    "Variable",
    "export_lp_text",
    "simplex_solve",
    "solve_bb",
    "solve_lp_relaxation",
]
