"""Double-cycle (DB) dual-failure protection with protection-pairs."""

from __future__ import annotations

import enum
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .cycles import CycleSet, Relation, classify_link
from .errors import InfeasibleError, PlanError
from .ilp import DEFAULT_TIME_LIMIT, IlpModel, SolveStats, Status, solve_bb
from .topology import Network

log = logging.getLogger(__name__)

DEFAULT_PAIR_CAP = 10**4


class Sharing(str, enum.Enum):
    LINK_DISJOINT = "LinkDisjoint"
    SHARE_ONLY_I = "ShareOnlyI"


@dataclass(frozen=True, order=True)
class ProtectionPair:
    link: int
    p: int
    q: int
    sharing: Sharing = field(compare=False)


def db_coefficient(i: int, p: int, cs: CycleSet) -> int:
    """Units per copy of p for link i: 1 on-cycle, 2 straddling, 0 otherwise."""
    return int(classify_link(i, p, cs))


def enumerate_protection_pairs(
    i: int, cs: CycleSet, cap: int = DEFAULT_PAIR_CAP
) -> list[ProtectionPair]:
    """Cycle pairs that both cover link i and share no link other than i.

    Sharing i is only allowed when i is on-cycle on both. Pairs come in
    lexicographic (p, q) order; past ``cap`` the rest are dropped.
    """
    covering = [int(p) for p in cs.covering(i)]
    masks = {p: cs.cycles[p].edge_mask for p in covering}
    bit = 1 << i
    on = {p for p in covering if cs.relation[i, p] == Relation.ON_CYCLE}
    out = []
    for a, p in enumerate(covering):
        mp = masks[p]
        for q in covering[a + 1:]:
            common = mp & masks[q]
            if common == 0:
                out.append(ProtectionPair(i, p, q, Sharing.LINK_DISJOINT))
            elif common == bit and p in on and q in on:
                out.append(ProtectionPair(i, p, q, Sharing.SHARE_ONLY_I))
            else:
                continue
            if len(out) >= cap:
                log.warning(
                    "link %d: protection-pair cap %d reached, plan may be suboptimal", i, cap
                )
                return out
    return out


def all_protection_pairs(cs: CycleSet, cap: int = DEFAULT_PAIR_CAP) -> dict[int, list[ProtectionPair]]:
    return {i: enumerate_protection_pairs(i, cs, cap) for i in range(cs.relation.shape[0])}


@dataclass
class DbVarMap:
    spare: dict[int, int] = field(default_factory=dict)
    copies: dict[int, int] = field(default_factory=dict)
    per_cycle: dict[tuple[int, int], int] = field(default_factory=dict)
    pair: dict[tuple[int, int, int], int] = field(default_factory=dict)  # (i, p, q) ordered


@dataclass
class DbPlan:
    copies: dict[int, int]
    pair_allocations: dict[tuple[int, int, int], int]
    per_cycle_allocations: dict[tuple[int, int], int]
    spare: dict[int, int]
    total_cost: Fraction | None
    status: Status = Status.OPTIMAL
    stats: SolveStats = field(default_factory=SolveStats)
    network: str = ""
    max_hops: int | None = None

    kind = "db"

    def to_text(self) -> str:
        lines = [f"db-plan {self.network}".rstrip(), f"status {self.status.value}"]
        if self.max_hops is not None:
            lines.append(f"max_hops {self.max_hops}")
        if self.total_cost is not None:
            lines.append(f"cost {self.total_cost}")
        for p in sorted(self.copies):
            if self.copies[p]:
                lines.append(f"cycle {p} copies {self.copies[p]}")
        for (i, p, q) in sorted(self.pair_allocations):
            if self.pair_allocations[i, p, q]:
                lines.append(f"pairalloc {i} {p} {q} {self.pair_allocations[i, p, q]}")
        for i in sorted(self.spare):
            lines.append(f"spare {i} {self.spare[i]}")
        return "\n".join(lines) + "\n"


def per_cycle_from_pairs(pair_allocations) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = defaultdict(int)
    for (i, p, _q), n in pair_allocations.items():
        if n:
            out[i, p] += n
    return dict(out)


def _pair_bounds(w: int, rp: int, rq: int) -> tuple[int, int]:
    """Largest useful (n_ipq, n_iqp) for one pair: enough on its own to cover 2w."""
    half = math.ceil(w / 2)
    if rp == rq:
        return (w, w) if rp == Relation.ON_CYCLE else (half, half)
    if rp == Relation.ON_CYCLE:
        return 2 * half, half
    return half, 2 * half


def build_db_model(
    net: Network,
    cs: CycleSet,
    pairs: dict[int, list[ProtectionPair]] | None = None,
    pair_cap: int = DEFAULT_PAIR_CAP,
) -> tuple[IlpModel, DbVarMap]:
    """Spare-cost minimization where each link is guarded by protection-pairs.

    For each pair the two cycles carry equal protection units for the link
    (equal copies when the link relates the same way to both, twice the
    copies on the cycle where it is on-cycle otherwise), so either cycle
    alone restores the link when the other is hit. The pair units must
    reach twice the working capacity over all of the link's pairs. Cycle
    copies dominate each per-link total, plus the pair share of every other
    link protected by the identical pair. The ceiling bound for two links
    on one side and straddling the other follows from these rows in
    integers, so it is not emitted separately.
    """
    L, P = cs.relation.shape
    if L != net.n_links:
        raise ValueError("cycle set was computed for a different network")
    if pairs is None:
        pairs = all_protection_pairs(cs, pair_cap)
    rel = cs.relation
    for l in net.links:
        if l.working_capacity > 0 and not pairs.get(l.id):
            raise InfeasibleError(f"link {l.id} ({l.u}-{l.v}) has no protection-pair")

    model = IlpModel(f"db_{net.name}")
    vm = DbVarMap()

    pair_ub: dict[tuple[int, int, int], int] = {}
    cycle_ub: dict[tuple[int, int], int] = defaultdict(int)
    for l in net.links:
        i = l.id
        for pr in pairs.get(i, []):
            a, b = _pair_bounds(l.working_capacity, rel[i, pr.p], rel[i, pr.q])
            pair_ub[i, pr.p, pr.q] = a
            pair_ub[i, pr.q, pr.p] = b
            cycle_ub[i, pr.p] += a
            cycle_ub[i, pr.q] += b

    # which links use each identical pair; drives the shared-pair rows
    sharing: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, prs in pairs.items():
        for pr in prs:
            sharing[pr.p, pr.q].append(i)

    copy_rows: list[tuple[int, int, tuple[int, int, int] | None]] = []
    for (i, p) in cycle_ub:
        copy_rows.append((p, i, None))
    for (p, q), links in sharing.items():
        for i in links:
            for j in links:
                if i != j:
                    copy_rows.append((p, i, (j, p, q)))
                    copy_rows.append((q, i, (j, q, p)))
    copy_ub = [0] * P
    for p, i, jkey in copy_rows:
        need = cycle_ub[i, p] + (pair_ub[jkey] if jkey else 0)
        copy_ub[p] = max(copy_ub[p], need)

    for i in range(L):
        ub = sum(copy_ub[p] for p in range(P) if rel[i, p] == Relation.ON_CYCLE)
        vm.spare[i] = model.add_var(f"s_{i}", 0, ub)
    for p in range(P):
        vm.copies[p] = model.add_var(f"n_{p}", 0, copy_ub[p])
    for (i, p), ub in sorted(cycle_ub.items()):
        vm.per_cycle[i, p] = model.add_var(f"n_{i}_{p}", 0, ub)
    for (i, p, q), ub in sorted(pair_ub.items()):
        vm.pair[i, p, q] = model.add_var(f"n_{i}_{p}_{q}", 0, ub)

    model.set_objective({vm.spare[l.id]: l.unit_cost for l in net.links})

    for l in net.links:
        i = l.id
        coefs: dict[int, int] = {}
        for pr in pairs.get(i, []):
            coefs[vm.pair[i, pr.p, pr.q]] = int(rel[i, pr.p])
            coefs[vm.pair[i, pr.q, pr.p]] = int(rel[i, pr.q])
        model.add_constraint(coefs, ">=", 2 * l.working_capacity, f"protect_{i}")
    for i, prs in pairs.items():
        for pr in prs:
            pq, qp = vm.pair[i, pr.p, pr.q], vm.pair[i, pr.q, pr.p]
            rp, rq = rel[i, pr.p], rel[i, pr.q]
            if rp == rq:
                model.add_constraint({pq: 1, qp: -1}, "=", 0, f"same_{i}_{pr.p}_{pr.q}")
            elif rp == Relation.ON_CYCLE:
                model.add_constraint({pq: 1, qp: -2}, "=", 0, f"mixed_{i}_{pr.p}_{pr.q}")
            else:
                model.add_constraint({qp: 1, pq: -2}, "=", 0, f"mixed_{i}_{pr.q}_{pr.p}")
    terms: dict[tuple[int, int], list[int]] = defaultdict(list)
    for (i, p, q), j in vm.pair.items():
        terms[i, p].append(j)
    for (i, p), j in vm.per_cycle.items():
        coefs = {j: 1}
        for k in terms[i, p]:
            coefs[k] = -1
        model.add_constraint(coefs, "=", 0, f"percycle_{i}_{p}")
    for p, i, jkey in copy_rows:
        coefs = {vm.copies[p]: 1, vm.per_cycle[i, p]: -1}
        name = f"copies_{p}_{i}"
        if jkey:
            coefs[vm.pair[jkey]] = -1
            name += f"_{jkey[0]}"
        model.add_constraint(coefs, ">=", 0, name)
    for i in range(L):
        coefs = {vm.spare[i]: 1}
        for p in range(P):
            if rel[i, p] == Relation.ON_CYCLE:
                coefs[vm.copies[p]] = -1
        model.add_constraint(coefs, ">=", 0, f"spare_{i}")
    return model, vm


def solve_db(
    net: Network,
    cs: CycleSet,
    time_limit: float = DEFAULT_TIME_LIMIT,
    engine: str = "auto",
    pairs: dict[int, list[ProtectionPair]] | None = None,
    pair_cap: int = DEFAULT_PAIR_CAP,
) -> DbPlan:
    model, vm = build_db_model(net, cs, pairs, pair_cap)
    sol = solve_bb(model, time_limit, engine=engine)
    if sol.status in (Status.INFEASIBLE, Status.UNBOUNDED):
        raise InfeasibleError(f"DB model for {net.name} is {sol.status.value}")
    if not sol.has_solution:
        return DbPlan({}, {}, {}, {}, None, sol.status, sol.stats, net.name, cs.max_hops)
    x = [sol.assignment[v.name] for v in model.variables]
    return DbPlan(
        copies={p: x[j] for p, j in vm.copies.items()},
        pair_allocations={k: x[j] for k, j in vm.pair.items() if x[j]},
        per_cycle_allocations={k: x[j] for k, j in vm.per_cycle.items() if x[j]},
        spare={i: x[j] for i, j in vm.spare.items()},
        total_cost=sol.objective_value,
        status=sol.status,
        stats=sol.stats,
        network=net.name,
        max_hops=cs.max_hops,
    )


def check_db_structure(plan: DbPlan, net: Network, cs: CycleSet) -> None:
    L, P = cs.relation.shape
    for p, n in plan.copies.items():
        if not 0 <= p < P:
            raise PlanError(f"unknown cycle {p}")
        if n < 0:
            raise PlanError(f"negative copies on cycle {p}")
    for (i, p, q), n in plan.pair_allocations.items():
        if not (0 <= i < L and 0 <= p < P and 0 <= q < P) or p == q:
            raise PlanError(f"pair allocation ({i}, {p}, {q}) references an unknown id")
        if n < 0:
            raise PlanError(f"negative pair allocation ({i}, {p}, {q})")
        if not n:
            continue
        if cs.relation[i, p] == Relation.UNRELATED or cs.relation[i, q] == Relation.UNRELATED:
            raise PlanError(f"pair ({p}, {q}) does not cover link {i}")
        common = cs.cycles[p].edge_mask & cs.cycles[q].edge_mask
        ok = common == 0 or (
            common == 1 << i
            and cs.relation[i, p] == Relation.ON_CYCLE
            and cs.relation[i, q] == Relation.ON_CYCLE
        )
        if not ok:
            raise PlanError(f"cycles {p} and {q} are not a protection-pair of link {i}")
    for i, s in plan.spare.items():
        if not 0 <= i < L or s < 0:
            raise PlanError(f"bad spare entry for link {i}")


def db_constraint_violations(plan: DbPlan, net: Network, cs: CycleSet) -> list[str]:
    """Recheck the pair-protection and spare rows on a plan, without a solver."""
    bad = []
    rel = cs.relation
    L, P = rel.shape
    for l in net.links:
        got = sum(
            int(rel[l.id, p]) * n for (i, p, q), n in plan.pair_allocations.items() if i == l.id
        )
        if got < 2 * l.working_capacity:
            bad.append(f"link {l.id} pair units {got} < {2 * l.working_capacity}")
    if per_cycle_from_pairs(plan.pair_allocations) != {
        k: v for k, v in plan.per_cycle_allocations.items() if v
    }:
        bad.append("per-cycle allocations differ from pair sums")
    for (i, p), n in plan.per_cycle_allocations.items():
        if plan.copies.get(p, 0) < n:
            bad.append(f"cycle {p} copies {plan.copies.get(p, 0)} < alloc({i})={n}")
    for i in range(L):
        need = sum(plan.copies.get(p, 0) for p in range(P) if rel[i, p] == Relation.ON_CYCLE)
        if plan.spare.get(i, 0) < need:
            bad.append(f"link {i} spare {plan.spare.get(i, 0)} < {need}")
    return bad
