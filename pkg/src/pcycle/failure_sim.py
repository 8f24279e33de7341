"""Exhaustive dual-link-failure verification of protection plans.

Each failed link draws protection from cycle copies. A copy restores one
unit per intact arc between the failed link's endpoints: two for a
straddler on an undamaged cycle, one when the other failure cuts an arc
(or when the failed link itself lies on the cycle). When both failed links
draw on the same cycle its copies are split between them. Every route is
then charged against the spare capacity of the links it crosses.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field

from .cycles import CycleSet, Relation
from .db import DbPlan, check_db_structure
from .sg import SgPlan, check_sg_structure
from .topology import Network


@dataclass(frozen=True)
class FailureScenario:
    failed: tuple[int, int]

    def __post_init__(self):
        a, b = self.failed
        if a == b:
            raise ValueError("a dual failure needs two distinct links")
        object.__setattr__(self, "failed", (min(a, b), max(a, b)))


@dataclass
class Route:
    cycle: int
    links: tuple[int, ...]
    units: int


@dataclass
class LinkRestoration:
    link: int
    demanded: int
    restored: int
    routes: list[Route] = field(default_factory=list)


@dataclass
class RestorationOutcome:
    scenario: FailureScenario | None
    restored: bool
    per_link: list[LinkRestoration]
    reason: str = ""

    def line(self) -> str:
        i, j = self.scenario.failed
        tail = "" if self.restored else f" {self.reason}"
        return f"scenario {i} {j} {'pass' if self.restored else 'fail'}{tail}"


@dataclass
class VerificationReport:
    kind: str
    scenario_count: int
    failures: list[RestorationOutcome]
    outcomes: list[RestorationOutcome] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_text(self) -> str:
        lines = [
            f"verification {self.kind} scenarios {self.scenario_count} "
            f"failures {len(self.failures)} {'PASS' if self.passed else 'FAIL'}"
        ]
        lines += [o.line() for o in self.outcomes]
        return "\n".join(lines) + "\n"


def enumerate_dual_failures(net: Network) -> list[FailureScenario]:
    return [FailureScenario((a, b)) for a, b in itertools.combinations(range(net.n_links), 2)]


@dataclass
class _Option:
    cycle: int
    rate: int  # units per copy
    cap: int  # copies this link may take from the cycle
    mode: str  # "both", "arc", "loop"


def _split_shared(need_e, need_f, shared, opts_e, opts_f, copies):
    """Copies of the shared cycles given to e, or None if no split meets both needs.

    Greedy first (larger need served first), then an exact DP over the
    shared cycles: state = units delivered to e (capped at need), value =
    the most units still available to f.
    """
    def units(opts, p, c):
        return opts[p].rate * c

    for first in sorted(("e", "f"), key=lambda s: -(need_e if s == "e" else need_f)):
        give = {}
        got_e = got_f = 0
        for p in shared:
            n = copies[p]
            oe, of = opts_e[p], opts_f[p]
            if first == "e":
                ce = min(oe.cap, n, math.ceil(max(need_e - got_e, 0) / oe.rate))
                cf = min(of.cap, n - ce)
            else:
                cf = min(of.cap, n, math.ceil(max(need_f - got_f, 0) / of.rate))
                ce = min(oe.cap, n - cf)
            give[p] = ce
            got_e += units(opts_e, p, ce)
            got_f += units(opts_f, p, cf)
        if got_e >= need_e and got_f >= need_f:
            return give

    NEG = -1
    best = [NEG] * (need_e + 1)
    best[0] = 0
    choice: list[dict] = []
    for p in shared:
        n = copies[p]
        oe, of = opts_e[p], opts_f[p]
        nxt = [NEG] * (need_e + 1)
        pick = {}
        for s, val in enumerate(best):
            if val == NEG:
                continue
            for ce in range(0, min(oe.cap, n) + 1):
                cf = min(of.cap, n - ce)
                s2 = min(need_e, s + oe.rate * ce)
                v2 = val + of.rate * cf
                if v2 > nxt[s2]:
                    nxt[s2] = v2
                    pick[s2] = (s, ce)
        best = nxt
        choice.append(pick)
    if best[need_e] < need_f:
        return None
    give = {}
    s = need_e
    for p, pick in zip(reversed(shared), reversed(choice)):
        s, ce = pick[s]
        give[p] = ce
    return give


def _restore(net, cs, spare, copies, failed, options) -> RestorationOutcome:
    """Joint restoration of the failed links given their per-cycle options."""
    links = [g for g in failed if g is not None]
    demand = {g: net.links[g].working_capacity for g in links}
    e = links[0]
    f = links[1] if len(links) > 1 else None
    opts = {g: {o.cycle: o for o in options[g]} for g in links}
    shared = sorted(set(opts[e]) & set(opts[f])) if f is not None else []

    def exclusive_units(g):
        return sum(o.rate * min(o.cap, copies[p]) for p, o in opts[g].items() if p not in shared)

    need = {g: max(0, demand[g] - exclusive_units(g)) for g in links}
    give_e = {}
    if shared:
        give_e = _split_shared(need[e], need[f], shared, opts[e], opts[f], copies)
        if give_e is None:
            return _failure(links, demand, "insufficient split capacity on shared cycles "
                            + ",".join(map(str, shared)))

    # copies actually drawn, exclusive cycles first, in cycle order
    draw: dict[int, dict[int, int]] = {g: {} for g in links}
    for g in links:
        remaining = demand[g]
        for p in sorted(opts[g], key=lambda q: (q in shared, q)):
            o = opts[g][p]
            if p in shared:
                avail = give_e[p] if g == e else min(o.cap, copies[p] - give_e[p])
            else:
                avail = min(o.cap, copies[p])
            c = min(avail, math.ceil(max(remaining, 0) / o.rate))
            if c > 0:
                draw[g][p] = c
                remaining -= o.rate * c
    per_link = []
    usage: dict[int, int] = defaultdict(int)
    ok = True
    reasons = []
    for g in links:
        lr = LinkRestoration(g, demand[g], 0)
        link = net.links[g]
        units = 0
        for p, c in sorted(draw[g].items()):
            cyc = cs.cycles[p]
            o = opts[g][p]
            if o.mode == "loop":
                path = tuple(k for k in cyc.link_sequence if k != g)
                paths = [path]
            else:
                arcs = cyc.arcs(link.u, link.v)
                paths = list(arcs) if o.mode == "both" else [a for a in arcs if not set(a) & set(links)]
            for path in paths:
                lr.routes.append(Route(p, path, c))
                for k in path:
                    usage[k] += c
            units += o.rate * c
        lr.restored = min(demand[g], units)
        if lr.restored < demand[g]:
            ok = False
            reasons.append(f"link {g} restored {lr.restored}/{demand[g]}")
        per_link.append(lr)
    for lr in per_link:
        for r in lr.routes:
            if set(r.links) & set(links):
                ok = False
                reasons.append(f"route on cycle {r.cycle} crosses a failed link")
    for k, u in sorted(usage.items()):
        if u > spare.get(k, 0):
            ok = False
            reasons.append(f"spare exceeded on link {k} ({u} > {spare.get(k, 0)})")
    scenario = FailureScenario(tuple(links)) if f is not None else None
    return RestorationOutcome(scenario, ok, per_link, "; ".join(reasons))


def _failure(links, demand, reason):
    scenario = FailureScenario(tuple(links)) if len(links) == 2 else None
    per_link = [LinkRestoration(g, demand[g], 0) for g in links]
    ok = all(demand[g] == 0 for g in links)
    return RestorationOutcome(scenario, ok, per_link, "" if ok else reason)


def _relation(cs, link, p):
    return Relation.UNRELATED if link is None else Relation(int(cs.relation[link, p]))


def _sg_options(plan: SgPlan, cs: CycleSet, e: int, f: int | None) -> list[_Option]:
    out = []
    for (i, p), n_ep in sorted(plan.allocations.items()):
        if i != e or n_ep <= 0:
            continue
        n_p = plan.copies.get(p, 0)
        rf = _relation(cs, f, p)
        if rf == Relation.ON_CYCLE:
            out.append(_Option(p, 1, n_p, "arc"))
        elif rf == Relation.STRADDLING and plan.allocations.get((f, p), 0) > 0:
            out.append(_Option(p, 2, n_p, "both"))
        else:
            out.append(_Option(p, 2, min(n_p, n_ep), "both"))
    return out


def _db_options(plan: DbPlan, cs: CycleSet, e: int, f: int | None) -> list[_Option]:
    out = []
    for (i, p), n_ep in sorted(plan.per_cycle_allocations.items()):
        if i != e or n_ep <= 0:
            continue
        n_p = plan.copies.get(p, 0)
        re, rf = _relation(cs, e, p), _relation(cs, f, p)
        if re == Relation.ON_CYCLE:
            if rf == Relation.ON_CYCLE:
                continue
            out.append(_Option(p, 1, n_p, "loop"))
        elif rf == Relation.ON_CYCLE:
            out.append(_Option(p, 1, n_p, "arc"))
        else:
            out.append(_Option(p, 2, n_p, "both"))
    return out


def _verify(plan, net, cs, failed, option_fn) -> RestorationOutcome:
    e, f = failed
    copies = defaultdict(int, plan.copies)
    options = {e: option_fn(plan, cs, e, f)}
    if f is not None:
        options[f] = option_fn(plan, cs, f, e)
    return _restore(net, cs, plan.spare, copies, (e, f), options)


def verify_sg(plan: SgPlan, scenario: FailureScenario, net: Network, cs: CycleSet) -> RestorationOutcome:
    check_sg_structure(plan, net, cs)
    return _verify(plan, net, cs, scenario.failed, _sg_options)


def verify_db(plan: DbPlan, scenario: FailureScenario, net: Network, cs: CycleSet) -> RestorationOutcome:
    check_db_structure(plan, net, cs)
    return _verify(plan, net, cs, scenario.failed, _db_options)


def verify_single(plan, link: int, net: Network, cs: CycleSet) -> RestorationOutcome:
    """A single failure: the second failed link is a zero-demand phantom."""
    fn = _sg_options if plan.kind == "sg" else _db_options
    return _verify(plan, net, cs, (link, None), fn)


def verify_plan(plan, net: Network, cs: CycleSet) -> VerificationReport:
    if plan.kind == "sg":
        check_sg_structure(plan, net, cs)
        fn = _sg_options
    else:
        check_db_structure(plan, net, cs)
        fn = _db_options
    outcomes = [_verify(plan, net, cs, sc.failed, fn) for sc in enumerate_dual_failures(net)]
    return VerificationReport(
        plan.kind.upper(), len(outcomes), [o for o in outcomes if not o.restored], outcomes
    )
