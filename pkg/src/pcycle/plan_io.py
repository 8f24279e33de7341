"""Reading the ``sg-plan`` / ``db-plan`` text blocks back into plan objects."""

from __future__ import annotations

from fractions import Fraction

from .db import DbPlan, per_cycle_from_pairs
from .errors import PlanError
from .ilp import Status
from .sg import SgPlan


def parse_plan(text: str) -> SgPlan | DbPlan:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise PlanError("empty plan")
    head = lines[0].split(maxsplit=1)
    kind = head[0]
    if kind not in ("sg-plan", "db-plan"):
        raise PlanError(f"expected 'sg-plan' or 'db-plan', got {head[0]!r}")
    network = head[1] if len(head) > 1 else ""
    copies: dict[int, int] = {}
    alloc: dict = {}
    spare: dict[int, int] = {}
    status = Status.OPTIMAL
    cost = None
    max_hops = None
    for no, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        try:
            match parts:
                case ["status", s]:
                    status = Status(s)
                case ["cost", c]:
                    cost = Fraction(c)
                case ["max_hops", k]:
                    max_hops = int(k)
                case ["cycle", p, "copies", n]:
                    copies[int(p)] = int(n)
                case ["alloc", i, p, n] if kind == "sg-plan":
                    alloc[int(i), int(p)] = int(n)
                case ["pairalloc", i, p, q, n] if kind == "db-plan":
                    alloc[int(i), int(p), int(q)] = int(n)
                case ["spare", i, s]:
                    spare[int(i)] = int(s)
                case _:
                    raise PlanError(f"plan line {no}: cannot parse {ln!r}")
        except ValueError as exc:
            if isinstance(exc, PlanError):
                raise
            raise PlanError(f"plan line {no}: {exc}") from None
    if kind == "sg-plan":
        plan = SgPlan(copies, alloc, spare, cost, status, network=network)
    else:
        plan = DbPlan(copies, alloc, per_cycle_from_pairs(alloc), spare, cost, status, network=network)
    plan.max_hops = max_hops
    return plan
