"""Dense two-phase primal simplex for small LPs.

Dantzig pricing with a permanent switch to Bland's rule once a run of
degenerate pivots is seen, which rules out cycling.
"""

from __future__ import annotations

import numpy as np

from .model import LpResult, NumericalInstabilityError, Sense, Status

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-6
MAX_ENTRY = 1e12
DEGENERATE_RUN = 50


class _Tableau:
    def __init__(self, T: np.ndarray, basis: list[int], max_iter: int):
        self.T = T
        self.basis = basis
        self.iterations = 0
        self.max_iter = max_iter
        self.bland = False
        self._degenerate = 0

    def pivot(self, r: int, j: int) -> None:
        T = self.T
        piv = T[r, j]
        if abs(piv) < PIVOT_TOL:
            raise NumericalInstabilityError(f"pivot magnitude {piv:.3g} below tolerance")
        T[r] /= piv
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.basis[r] = j
        self.iterations += 1
        if np.abs(T[r]).max() > MAX_ENTRY:
            raise NumericalInstabilityError("tableau entries exceed the configured bound")

    def run(self, allowed: np.ndarray) -> Status:
        """Iterate to optimality over columns where ``allowed`` is True."""
        T = self.T
        m = T.shape[0] - 1
        while True:
            if self.iterations >= self.max_iter:
                raise NumericalInstabilityError("simplex iteration limit reached")
            cost = T[-1, :-1]
            cand = np.flatnonzero((cost < -PIVOT_TOL) & allowed)
            if cand.size == 0:
                return Status.OPTIMAL
            j = int(cand[0]) if self.bland else int(cand[np.argmin(cost[cand])])
            colj = T[:m, j]
            rows = np.flatnonzero(colj > PIVOT_TOL)
            if rows.size == 0:
                return Status.UNBOUNDED
            ratios = T[rows, -1] / colj[rows]
            best = ratios.min()
            ties = rows[ratios <= best + PIVOT_TOL]
            r = int(min(ties, key=lambda k: self.basis[k]))
            if best <= PIVOT_TOL:
                self._degenerate += 1
                if self._degenerate >= DEGENERATE_RUN:
                    self.bland = True
            else:
                self._degenerate = 0
            self.pivot(r, j)


def simplex_solve(c, A, senses, b, lb, ub, max_iter: int = 100_000) -> LpResult:
    """Minimize c@x subject to rows ``A x (sense) b`` and ``lb <= x <= ub``."""
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float).reshape(-1, len(c))
    b = np.asarray(b, dtype=float)
    lb = np.asarray(lb, dtype=float)
    ub = np.asarray(ub, dtype=float)
    n = len(c)
    span = ub - lb
    if np.any(span < -FEAS_TOL):
        return LpResult(Status.INFEASIBLE, None, None)

    # shift x = lb + y and turn finite upper bounds into rows
    rhs = b - A @ lb
    bounded = np.flatnonzero(np.isfinite(span))
    rows = [A] if A.size else []
    row_senses = list(senses)
    row_rhs = list(rhs)
    if bounded.size:
        E = np.zeros((bounded.size, n))
        E[np.arange(bounded.size), bounded] = 1.0
        rows.append(E)
        row_senses += [Sense.LE] * bounded.size
        row_rhs += list(np.maximum(span[bounded], 0.0))
    if not rows:
        # no constraints at all: optimum at lb unless some cost is negative
        if np.any(c < 0):
            return LpResult(Status.UNBOUNDED, None, None)
        return LpResult(Status.OPTIMAL, lb.copy(), float(c @ lb))
    M = np.vstack(rows)
    beta = np.array(row_rhs, dtype=float)
    sns = [Sense(s) for s in row_senses]
    m = M.shape[0]
    for r in range(m):
        if beta[r] < 0:
            M[r] *= -1
            beta[r] *= -1
            if sns[r] is Sense.GE:
                sns[r] = Sense.LE
            elif sns[r] is Sense.LE:
                sns[r] = Sense.GE

    n_slack = sum(1 for s in sns if s is not Sense.EQ)
    n_art = sum(1 for s in sns if s is not Sense.LE)
    N = n + n_slack + n_art
    T = np.zeros((m + 1, N + 1))
    T[:m, :n] = M
    T[:m, -1] = beta
    basis = [0] * m
    k_slack, k_art = n, n + n_slack
    art_cols = []
    for r, s in enumerate(sns):
        if s is Sense.LE:
            T[r, k_slack] = 1.0
            basis[r] = k_slack
            k_slack += 1
        elif s is Sense.GE:
            T[r, k_slack] = -1.0
            k_slack += 1
            T[r, k_art] = 1.0
            basis[r] = k_art
            art_cols.append(k_art)
            k_art += 1
        else:
            T[r, k_art] = 1.0
            basis[r] = k_art
            art_cols.append(k_art)
            k_art += 1

    tab = _Tableau(T, basis, max_iter)
    is_art = np.zeros(N, dtype=bool)
    is_art[art_cols] = True

    if art_cols:
        T[-1, :] = 0.0
        T[-1, art_cols] = 1.0
        for r in range(m):
            if is_art[basis[r]]:
                T[-1] -= T[r]
        tab.run(np.ones(N, dtype=bool))
        if -T[-1, -1] > FEAS_TOL * max(1.0, np.abs(beta).max()):
            return LpResult(Status.INFEASIBLE, None, None, tab.iterations)
        # drive zero-level artificials out of the basis, dropping redundant rows
        keep = []
        for r in range(m):
            if is_art[tab.basis[r]]:
                cand = np.flatnonzero((np.abs(T[r, :N]) > PIVOT_TOL) & ~is_art)
                if cand.size:
                    tab.pivot(r, int(cand[0]))
                    keep.append(r)
            else:
                keep.append(r)
        if len(keep) < m:
            T = np.vstack([T[keep], T[-1:]])
            tab.T = T
            tab.basis = [tab.basis[r] for r in keep]
            m = len(keep)

    T[-1, :] = 0.0
    T[-1, :n] = c
    for r in range(m):
        j = tab.basis[r]
        if T[-1, j] != 0.0:
            T[-1] -= T[-1, j] * T[r]
    status = tab.run(~is_art)
    if status is Status.UNBOUNDED:
        return LpResult(Status.UNBOUNDED, None, None, tab.iterations)
    y = np.zeros(N)
    for r in range(m):
        y[tab.basis[r]] = T[r, -1]
    x = lb + y[:n]
    return LpResult(Status.OPTIMAL, x, float(c @ x), tab.iterations)


def highs_solve(c, A, senses, b, lb, ub) -> LpResult:
    from scipy.optimize import linprog

    A = np.asarray(A.toarray() if hasattr(A, "toarray") else A, dtype=float).reshape(-1, len(c))
    ge = np.array([s is Sense.GE for s in senses], dtype=bool)
    le = np.array([s is Sense.LE for s in senses], dtype=bool)
    eq = ~(ge | le)
    A_ub = np.vstack([A[le], -A[ge]]) if (le.any() or ge.any()) else None
    b_ub = np.concatenate([b[le], -b[ge]]) if A_ub is not None else None
    res = linprog(
        c,
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=A[eq] if eq.any() else None,
        b_eq=b[eq] if eq.any() else None,
        bounds=list(zip(lb, [None if not np.isfinite(u) else u for u in ub])),
        method="highs",
    )
    iters = int(getattr(res, "nit", 0) or 0)
    if res.status == 2:
        return LpResult(Status.INFEASIBLE, None, None, iters)
    if res.status == 3:
        return LpResult(Status.UNBOUNDED, None, None, iters)
    if res.status != 0:
        raise NumericalInstabilityError(f"HiGHS LP failed: {res.message}")
    return LpResult(Status.OPTIMAL, res.x, float(res.fun), iters)
