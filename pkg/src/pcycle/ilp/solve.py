"""LP relaxation and branch-and-bound for :class:`IlpModel`."""

from __future__ import annotations

import heapq
import logging
import math
import time

import numpy as np

from .model import (
    IlpModel,
    IntSolution,
    LpResult,
    NumericalInstabilityError,
    SolveStats,
    Status,
)
from .simplex import highs_solve, simplex_solve

log = logging.getLogger(__name__)

INT_TOL = 1e-6
DEFAULT_TIME_LIMIT = 600.0
# above this many variables "auto" hands the model to HiGHS
NATIVE_VAR_LIMIT = 40


def _lp_backend(model: IlpModel, backend: str) -> str:
    if backend == "auto":
        return "simplex" if model.n_vars <= NATIVE_VAR_LIMIT else "highs"
    if backend not in ("simplex", "highs"):
        raise ValueError(f"unknown LP backend {backend!r}")
    return backend


def solve_lp_relaxation(model: IlpModel, backend: str = "auto") -> LpResult:
    A, senses, b = model.matrix()
    lb, ub = model.bounds()
    c = model.objective_vector()
    if _lp_backend(model, backend) == "simplex":
        return simplex_solve(c, A.toarray(), senses, b, lb, ub)
    return highs_solve(c, A, senses, b, lb, ub)


def _assignment(model: IlpModel, x) -> dict[str, int]:
    return {v.name: int(round(float(x[j]))) for j, v in enumerate(model.variables)}


def _finish(model, status, x, stats, t0) -> IntSolution:
    stats.wall_time = time.perf_counter() - t0
    stats.variable_count = model.n_vars
    stats.constraint_count = model.n_constraints
    if x is None:
        return IntSolution(status, {}, None, stats)
    assignment = _assignment(model, x)
    bad = model.violations(assignment)
    if bad:
        raise NumericalInstabilityError(
            f"rounded solution violates {len(bad)} constraints, e.g. {bad[:3]}"
        )
    return IntSolution(status, assignment, model.objective_value(assignment), stats)


def solve_bb(
    model: IlpModel,
    time_limit: float = DEFAULT_TIME_LIMIT,
    engine: str = "auto",
) -> IntSolution:
    """Solve the integer program to proven optimality or until ``time_limit``.

    ``engine`` is "native" (best-bound branch-and-bound over the dense
    simplex), "highs" (scipy's MILP interface) or "auto".
    """
    if engine == "auto":
        engine = "native" if model.n_vars <= NATIVE_VAR_LIMIT else "highs"
    if engine == "native":
        return _native_bb(model, time_limit)
    if engine == "highs":
        return _highs_milp(model, time_limit)
    raise ValueError(f"unknown engine {engine!r}")


def _native_bb(model: IlpModel, time_limit: float) -> IntSolution:
    t0 = time.perf_counter()
    stats = SolveStats(engine="native")
    c = model.objective_vector()
    A, senses, b = model.matrix()
    A = A.toarray()
    lb0, ub0 = model.bounds()
    integral_obj = all(float(a).is_integer() for a in model.objective.values())

    def lp(lb, ub) -> LpResult:
        res = simplex_solve(c, A, senses, b, lb, ub)
        stats.nodes_explored += 1
        stats.lp_iterations += res.iterations
        return res

    def effective(bound: float) -> float:
        return math.ceil(bound - INT_TOL) if integral_obj else bound

    def fractional(x) -> int | None:
        frac = np.abs(x - np.round(x))
        frac[frac <= INT_TOL] = 0.0
        if not frac.any():
            return None
        # most fractional: distance of the fractional part from 1/2; argmax keeps lowest index
        score = np.where(frac > 0, 0.5 - np.abs((x - np.floor(x)) - 0.5), -1.0)
        return int(np.argmax(score))

    incumbent_x = None
    incumbent = math.inf

    root = lp(lb0, ub0)
    if root.status is not Status.OPTIMAL:
        return _finish(model, root.status, None, stats, t0)

    heap: list = []
    seq = 0

    def consider(res: LpResult, lb, ub) -> None:
        nonlocal incumbent, incumbent_x, seq
        if res.status is Status.INFEASIBLE:
            return
        if res.status is Status.UNBOUNDED:
            # a bounded root cannot have an unbounded child
            raise NumericalInstabilityError("unbounded child relaxation")
        if effective(res.objective) >= incumbent - 1e-9:
            return
        j = fractional(res.x)
        if j is None:
            incumbent = res.objective
            incumbent_x = np.round(res.x)
            return
        heapq.heappush(heap, (res.objective, seq, j, lb, ub, res.x))
        seq += 1

    consider(root, lb0, ub0)
    while heap:
        if time.perf_counter() - t0 > time_limit:
            log.info("time limit reached with %d open nodes", len(heap))
            return _finish(model, Status.CAP_HIT, incumbent_x, stats, t0)
        bound, _, j, lb, ub, x = heapq.heappop(heap)
        if effective(bound) >= incumbent - 1e-9:
            break
        down_ub = ub.copy()
        down_ub[j] = math.floor(x[j])
        consider(lp(lb, down_ub), lb, down_ub)
        up_lb = lb.copy()
        up_lb[j] = math.ceil(x[j])
        consider(lp(up_lb, ub), up_lb, ub)

    if incumbent_x is None:
        return _finish(model, Status.INFEASIBLE, None, stats, t0)
    return _finish(model, Status.OPTIMAL, incumbent_x, stats, t0)


def _highs_milp(model: IlpModel, time_limit: float) -> IntSolution:
    from scipy.optimize import Bounds, LinearConstraint, milp

    from .model import Sense

    t0 = time.perf_counter()
    stats = SolveStats(engine="highs")
    c = model.objective_vector()
    A, senses, b = model.matrix()
    lo = np.where([s is Sense.LE for s in senses], -np.inf, b)
    hi = np.where([s is Sense.GE for s in senses], np.inf, b)
    lb, ub = model.bounds()
    constraints = [LinearConstraint(A, lo, hi)] if model.n_constraints else []
    res = milp(
        c,
        constraints=constraints,
        integrality=np.ones(model.n_vars),
        bounds=Bounds(lb, ub),
        options={"time_limit": max(float(time_limit), 1e-3), "disp": False},
    )
    stats.nodes_explored = int(getattr(res, "mip_node_count", 0) or 0)
    if res.status == 0:
        return _finish(model, Status.OPTIMAL, res.x, stats, t0)
    if res.status == 1:
        return _finish(model, Status.CAP_HIT, res.x, stats, t0)
    if res.status == 2:
        return _finish(model, Status.INFEASIBLE, None, stats, t0)
    if res.status == 3:
        return _finish(model, Status.UNBOUNDED, None, stats, t0)
    raise NumericalInstabilityError(f"HiGHS MILP failed: {res.message}")
