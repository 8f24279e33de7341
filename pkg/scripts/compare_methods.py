#!/usr/bin/env python3
"""Solve SG and DB on a set of networks, verify both plans, and print the SE table.

    python scripts/compare_methods.py bundled:k4 bundled:k5 bundled:wheel5
    python scripts/compare_methods.py my.topo --time-limit 120 --csv out.csv
"""

from __future__ import annotations

import argparse
import logging
from dataclasses import dataclass

from pcycle import datasets
from pcycle.cycles import enumerate_simple_cycles
from pcycle.db import solve_db
from pcycle.errors import InfeasibleError
from pcycle.failure_sim import verify_plan
from pcycle.report import method_result, render_results_table
from pcycle.sg import solve_sg
from pcycle.topology import load_network

log = logging.getLogger("compare")


@dataclass
class CompareConfig:
    time_limit: float = 600.0
    max_hops: int | None = None
    verify: bool = True
    engine: str = "auto"


def load(spec):
    if spec.startswith("bundled:"):
        return datasets.load_bundled(spec.split(":", 1)[1])
    return load_network(spec)


def run_one(net, cfg: CompareConfig):
    cs = enumerate_simple_cycles(net, cfg.max_hops)
    log.info("%s: %d cycles", net.name, len(cs))
    out = []
    for solve in (solve_db, solve_sg):
        try:
            plan = solve(net, cs, cfg.time_limit, cfg.engine)
        except InfeasibleError as exc:
            log.warning("%s", exc)
            out.append(None)
            continue
        if cfg.verify and plan.total_cost is not None:
            rep = verify_plan(plan, net, cs)
            log.info("%s %s: %d/%d scenarios restored", net.name, plan.kind,
                     rep.scenario_count - len(rep.failures), rep.scenario_count)
        out.append(method_result(net, plan))
    return tuple(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("networks", nargs="+")
    ap.add_argument("--time-limit", type=float, default=600.0)
    ap.add_argument("--max-hops", type=int)
    ap.add_argument("--engine", default="auto", choices=("auto", "native", "highs"))
    ap.add_argument("--no-verify", action="store_true")
    ap.add_argument("--csv")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    cfg = CompareConfig(args.time_limit, args.max_hops, not args.no_verify, args.engine)
    rows = [run_one(load(spec), cfg) for spec in args.networks]
    text, csv_text = render_results_table(rows)
    print(text, end="")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(csv_text)


if __name__ == "__main__":
    main()
