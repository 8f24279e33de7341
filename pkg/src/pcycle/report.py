"""Spare-capacity efficiency and side-by-side method tables."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .ilp import Status
from .topology import Network, avg_nodal_degree


def compute_se(spare: dict[int, int], net: Network) -> Fraction:
    """Total spare over total working capacity."""
    working = net.total_working
    if working <= 0:
        raise ValueError("SE undefined: total working capacity is zero")
    return Fraction(sum(spare.values()), working)


@dataclass
class MethodResult:
    network: str
    method: str
    avg_degree: Fraction
    total_working: int
    total_spare: int | None
    se: Fraction | None
    status: Status
    ilp_time: float
    variable_count: int
    constraint_count: int

    @property
    def solved(self) -> bool:
        return self.status is Status.OPTIMAL


def method_result(net: Network, plan, variable_count: int | None = None, constraint_count: int | None = None) -> MethodResult:
    has = plan.total_cost is not None and plan.status is Status.OPTIMAL
    spare = sum(plan.spare.values()) if has else None
    se = compute_se(plan.spare, net) if has and net.total_working > 0 else None
    return MethodResult(
        network=net.name,
        method=plan.kind.upper(),
        avg_degree=avg_nodal_degree(net),
        total_working=net.total_working,
        total_spare=spare,
        se=se,
        status=plan.status,
        ilp_time=plan.stats.wall_time,
        variable_count=plan.stats.variable_count if variable_count is None else variable_count,
        constraint_count=plan.stats.constraint_count if constraint_count is None else constraint_count,
    )


HEADER = ("Network", "Avg degree", "Working capacity", "DB SE", "DB ILP time (s)", "SG SE", "SG ILP time (s)")
CAP_SE = "\u2014"  # em dash
CAP_TIME = "cap"


def _se_cell(r: MethodResult | None, full: bool) -> str:
    if r is None:
        return ""
    if r.se is None:
        return CAP_SE
    return repr(float(r.se)) if full else f"{float(r.se):.2f}"


def _time_cell(r: MethodResult | None, full: bool) -> str:
    if r is None:
        return ""
    if r.status is Status.CAP_HIT:
        return CAP_TIME
    if r.status is not Status.OPTIMAL:
        return r.status.value
    return repr(r.ilp_time) if full else f"{r.ilp_time:.2f}"


def _cells(db: MethodResult | None, sg: MethodResult | None, full: bool) -> list[str]:
    ref = db or sg
    deg = repr(float(ref.avg_degree)) if full else f"{float(ref.avg_degree):.1f}"
    return [
        ref.network,
        deg,
        str(ref.total_working),
        _se_cell(db, full),
        _time_cell(db, full),
        _se_cell(sg, full),
        _time_cell(sg, full),
    ]


def render_results_table(
    results: list[tuple[MethodResult | None, MethodResult | None]],
) -> tuple[str, str]:
    """Aligned text table (SE to 2 places) and CSV (full precision), rows sorted by network."""
    rows = sorted(
        (r for r in results if (r[0] or r[1]) is not None),
        key=lambda r: (r[0] or r[1]).network,
    )
    text_rows = [list(HEADER)] + [_cells(db, sg, False) for db, sg in rows]
    widths = [max(len(row[k]) for row in text_rows) for k in range(len(HEADER))]
    lines = []
    for n, row in enumerate(text_rows):
        cells = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
        if n == 0:
            lines.append("-" * len(lines[0]))
    text = "\n".join(lines) + "\n"

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for db, sg in rows:
        writer.writerow(_cells(db, sg, True))
    return text, buf.getvalue()
