"""Single p-cycle (SG) dual-failure protection.

Every link is protected only as a straddler. A cycle carrying straddler
allocations holds at least twice the largest allocation, so any two of its
straddlers can fail together and still share the copies, and a straddler
whose cycle loses an on-cycle link keeps one whole intact arc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cycles import CycleSet, Relation
from .errors import InfeasibleError, PlanError
from .ilp import DEFAULT_TIME_LIMIT, IlpModel, SolveStats, Status, solve_bb
from .topology import Network


def min_even_copies(W: int) -> int:
    """Copies a cycle needs when its largest straddler carries W units: W rounded up to even."""
    if W < 0:
        raise ValueError("W must be non-negative")
    return W + (W % 2)


@dataclass
class SgVarMap:
    spare: dict[int, int] = field(default_factory=dict)
    copies: dict[int, int] = field(default_factory=dict)
    alloc: dict[tuple[int, int], int] = field(default_factory=dict)


@dataclass
class SgPlan:
    copies: dict[int, int]
    allocations: dict[tuple[int, int], int]
    spare: dict[int, int]
    total_cost: Fraction | None
    status: Status = Status.OPTIMAL
    stats: SolveStats = field(default_factory=SolveStats)
    network: str = ""
    max_hops: int | None = None

    kind = "sg"

    def max_straddler_load(self, p: int) -> int:
        """Largest allocation on cycle p; n_p must be at least twice this."""
        return max((n for (i, q), n in self.allocations.items() if q == p), default=0)

    def to_text(self) -> str:
        lines = [f"sg-plan {self.network}".rstrip(), f"status {self.status.value}"]
        if self.max_hops is not None:
            lines.append(f"max_hops {self.max_hops}")
        if self.total_cost is not None:
            lines.append(f"cost {self.total_cost}")
        for p in sorted(self.copies):
            if self.copies[p]:
                lines.append(f"cycle {p} copies {self.copies[p]}")
        for (i, p) in sorted(self.allocations):
            if self.allocations[i, p]:
                lines.append(f"alloc {i} {p} {self.allocations[i, p]}")
        for i in sorted(self.spare):
            lines.append(f"spare {i} {self.spare[i]}")
        return "\n".join(lines) + "\n"


def build_sg_model(net: Network, cs: CycleSet, prune: bool = True) -> tuple[IlpModel, SgVarMap]:
    """Spare-cost minimization with straddling-only protection.

    Rows: each link's straddler protection covers its working capacity; each
    cycle holds at least twice every per-link allocation on it; each link's
    spare covers the copies of every cycle passing over it.
    """
    L, P = cs.relation.shape
    if L != net.n_links:
        raise ValueError("cycle set was computed for a different network")
    for l in net.links:
        if l.working_capacity > 0 and not len(cs.straddled_by(l.id)):
            raise InfeasibleError(
                f"link {l.id} ({l.u}-{l.v}) carries {l.working_capacity} units "
                "but straddles no cycle"
            )

    half = [math.ceil(l.working_capacity / 2) for l in net.links]
    model = IlpModel(f"sg_{net.name}")
    vm = SgVarMap()

    pairs = [
        (i, p)
        for p in range(P)
        for i in range(L)
        if not prune or cs.relation[i, p] == Relation.STRADDLING
    ]
    # finite bounds that keep at least one optimum: no allocation beyond half the
    # demand, no cycle beyond twice its largest allocation
    copy_ub = [0] * P
    for i, p in pairs:
        if cs.relation[i, p] == Relation.STRADDLING:
            copy_ub[p] = max(copy_ub[p], 2 * half[i])
    for i in range(L):
        ub = sum(copy_ub[p] for p in range(P) if cs.relation[i, p] == Relation.ON_CYCLE)
        vm.spare[i] = model.add_var(f"s_{i}", 0, ub)
    for p in range(P):
        vm.copies[p] = model.add_var(f"n_{p}", 0, copy_ub[p])
    for i, p in pairs:
        vm.alloc[i, p] = model.add_var(f"n_{i}_{p}", 0, half[i])

    model.set_objective({vm.spare[l.id]: l.unit_cost for l in net.links})

    by_link: dict[int, list[int]] = {i: [] for i in range(L)}
    for i, p in pairs:
        by_link[i].append(p)
    for l in net.links:
        coefs = {
            vm.alloc[l.id, p]: 2
            for p in by_link[l.id]
            if cs.relation[l.id, p] == Relation.STRADDLING
        }
        model.add_constraint(coefs, ">=", l.working_capacity, f"protect_{l.id}")
    for i, p in pairs:
        model.add_constraint({vm.copies[p]: 1, vm.alloc[i, p]: -2}, ">=", 0, f"pair_{i}_{p}")
    for i in range(L):
        coefs = {vm.spare[i]: 1}
        for p in range(P):
            if cs.relation[i, p] == Relation.ON_CYCLE:
                coefs[vm.copies[p]] = -1
        model.add_constraint(coefs, ">=", 0, f"spare_{i}")
    return model, vm


def unpruned_variable_count(net: Network, cs: CycleSet) -> int:
    return net.n_links * len(cs) + len(cs) + net.n_links


def solve_sg(
    net: Network,
    cs: CycleSet,
    time_limit: float = DEFAULT_TIME_LIMIT,
    engine: str = "auto",
    prune: bool = True,
) -> SgPlan:
    model, vm = build_sg_model(net, cs, prune=prune)
    sol = solve_bb(model, time_limit, engine=engine)
    if sol.status in (Status.INFEASIBLE, Status.UNBOUNDED):
        raise InfeasibleError(f"SG model for {net.name} is {sol.status.value}")
    if not sol.has_solution:
        return SgPlan({}, {}, {}, None, sol.status, sol.stats, net.name, cs.max_hops)
    x = [sol.assignment[v.name] for v in model.variables]
    return SgPlan(
        copies={p: x[j] for p, j in vm.copies.items()},
        allocations={k: x[j] for k, j in vm.alloc.items() if x[j]},
        spare={i: x[j] for i, j in vm.spare.items()},
        total_cost=sol.objective_value,
        status=sol.status,
        stats=sol.stats,
        network=net.name,
        max_hops=cs.max_hops,
    )


def check_sg_structure(plan: SgPlan, net: Network, cs: CycleSet) -> None:
    """Reject plans that reference unknown ids, hold negative values, or allocate off-chord."""
    L, P = cs.relation.shape
    for p, n in plan.copies.items():
        if not 0 <= p < P:
            raise PlanError(f"unknown cycle {p}")
        if n < 0:
            raise PlanError(f"negative copies on cycle {p}")
    for (i, p), n in plan.allocations.items():
        if not (0 <= i < L and 0 <= p < P):
            raise PlanError(f"allocation ({i}, {p}) references an unknown id")
        if n < 0:
            raise PlanError(f"negative allocation ({i}, {p})")
        if n and cs.relation[i, p] != Relation.STRADDLING:
            raise PlanError(f"link {i} does not straddle cycle {p} but is allocated on it")
    for i, s in plan.spare.items():
        if not 0 <= i < L:
            raise PlanError(f"unknown link {i}")
        if s < 0:
            raise PlanError(f"negative spare on link {i}")


def sg_constraint_violations(plan: SgPlan, net: Network, cs: CycleSet) -> list[str]:
    """Recheck the SG rows on a plan, independent of any solver."""
    bad = []
    L, P = cs.relation.shape
    for l in net.links:
        got = sum(2 * n for (i, p), n in plan.allocations.items() if i == l.id)
        if got < l.working_capacity:
            bad.append(f"link {l.id} protected {got} < {l.working_capacity}")
    for (i, p), n in plan.allocations.items():
        if plan.copies.get(p, 0) < 2 * n:
            bad.append(f"cycle {p} copies {plan.copies.get(p, 0)} < 2*alloc({i})={2 * n}")
    for i in range(L):
        need = sum(plan.copies.get(p, 0) for p in range(P) if cs.relation[i, p] == Relation.ON_CYCLE)
        if plan.spare.get(i, 0) < need:
            bad.append(f"link {i} spare {plan.spare.get(i, 0)} < {need}")
    return bad
