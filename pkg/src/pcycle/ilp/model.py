from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import sparse


class Sense(str, enum.Enum):
    GE = ">="
    LE = "<="
    EQ = "="


class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"
    CAP_HIT = "CapHit"


class NumericalInstabilityError(ArithmeticError):
    pass


@dataclass
class Variable:
    name: str
    lb: int = 0
    ub: float = math.inf


@dataclass
class Constraint:
    coefs: dict[int, float]
    sense: Sense
    rhs: Fraction | float
    name: str = ""


@dataclass
class IlpModel:
    """Minimization ILP over non-negative integer variables.

    Coefficients reference variables by index; ``add_var`` returns it.
    """

    name: str = "model"
    variables: list[Variable] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: dict[int, float] = field(default_factory=dict)
    _names: dict[str, int] = field(default_factory=dict, repr=False)

    def add_var(self, name: str, lb: int = 0, ub: float = math.inf) -> int:
        if name in self._names:
            raise ValueError(f"duplicate variable name {name!r}")
        if lb < 0:
            raise ValueError("variable lower bounds must be non-negative")
        self._names[name] = len(self.variables)
        self.variables.append(Variable(name, lb, ub))
        return len(self.variables) - 1

    def add_constraint(self, coefs: dict[int, float], sense: Sense | str, rhs, name: str = "") -> None:
        n = len(self.variables)
        for j in coefs:
            if not 0 <= j < n:
                raise ValueError(f"constraint {name!r} references undeclared variable {j}")
        self.constraints.append(Constraint(dict(coefs), Sense(sense), rhs, name))

    def set_objective(self, coefs: dict[int, float]) -> None:
        for j in coefs:
            if not 0 <= j < len(self.variables):
                raise ValueError(f"objective references undeclared variable {j}")
        self.objective = dict(coefs)

    def index(self, name: str) -> int:
        return self._names[name]

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    @property
    def n_constraints(self) -> int:
        return len(self.constraints)

    def objective_vector(self) -> np.ndarray:
        c = np.zeros(self.n_vars)
        for j, a in self.objective.items():
            c[j] = float(a)
        return c

    def matrix(self) -> tuple[sparse.csr_matrix, list[Sense], np.ndarray]:
        rows, cols, vals = [], [], []
        for r, con in enumerate(self.constraints):
            for j, a in con.coefs.items():
                rows.append(r)
                cols.append(j)
                vals.append(float(a))
        A = sparse.csr_matrix((vals, (rows, cols)), shape=(self.n_constraints, self.n_vars))
        senses = [con.sense for con in self.constraints]
        b = np.array([float(con.rhs) for con in self.constraints])
        return A, senses, b

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        lb = np.array([v.lb for v in self.variables], dtype=float)
        ub = np.array([v.ub for v in self.variables], dtype=float)
        return lb, ub

    def objective_value(self, assignment: dict[str, int]) -> Fraction:
        total = Fraction(0)
        for j, a in self.objective.items():
            total += Fraction(a) * assignment.get(self.variables[j].name, 0)
        return total

    def violations(self, assignment: dict[str, int], tol: float = 1e-6) -> list[str]:
        """Names (or indices) of constraints and bounds the assignment breaks."""
        x = [assignment.get(v.name, 0) for v in self.variables]
        bad = []
        for j, v in enumerate(self.variables):
            if x[j] < v.lb - tol or x[j] > v.ub + tol:
                bad.append(f"bound:{v.name}")
        for r, con in enumerate(self.constraints):
            lhs = sum(float(a) * x[j] for j, a in con.coefs.items())
            rhs = float(con.rhs)
            ok = (
                lhs >= rhs - tol if con.sense is Sense.GE
                else lhs <= rhs + tol if con.sense is Sense.LE
                else abs(lhs - rhs) <= tol
            )
            if not ok:
                bad.append(con.name or f"row{r}")
        return bad


@dataclass
class SolveStats:
    nodes_explored: int = 0
    lp_iterations: int = 0
    wall_time: float = 0.0
    variable_count: int = 0
    constraint_count: int = 0
    engine: str = ""


@dataclass
class LpResult:
    status: Status
    x: np.ndarray | None
    objective: float | None
    iterations: int = 0


@dataclass
class IntSolution:
    status: Status
    assignment: dict[str, int]
    objective_value: Fraction | None
    stats: SolveStats

    @property
    def has_solution(self) -> bool:
        return self.objective_value is not None

    def __getitem__(self, name: str) -> int:
        return self.assignment[name]
