#!/usr/bin/env python3
"""SE of SG vs DB on random protectable networks, bucketed by average nodal degree.

Networks are a random ring plus chords, grown until 3-edge-connected with every
link straddled, then padded with extra chords to spread the degree range.
Output is one CSV row per network.
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
from dataclasses import dataclass

import networkx as nx

from pcycle.cycles import enumerate_simple_cycles
from pcycle.db import solve_db
from pcycle.errors import InfeasibleError
from pcycle.ilp import Status
from pcycle.report import compute_se
from pcycle.sg import solve_sg
from pcycle.topology import avg_nodal_degree, build_network, validate_protectable


@dataclass
class SweepConfig:
    count: int = 40
    min_nodes: int = 5
    max_nodes: int = 7
    max_demand: int = 3
    time_limit: float = 30.0
    seed: int = 0


def random_network(rng: random.Random, cfg: SweepConfig):
    while True:
        n = rng.randint(cfg.min_nodes, cfg.max_nodes)
        g = nx.cycle_graph(n)
        chords = [(a, b) for a in range(n) for b in range(a + 2, n) if (a, b) != (0, n - 1)]
        rng.shuffle(chords)
        extra = rng.randint(0, len(chords) // 2)
        for k, e in enumerate(chords):
            if nx.edge_connectivity(g) >= 3 and k >= extra:
                break
            g.add_edge(*e)
        edges = [(a, b, rng.randint(1, cfg.max_demand)) for a, b in sorted(g.edges())]
        net = build_network(f"r{n}_{len(edges)}", range(n), edges)
        rep = validate_protectable(net)
        if rep.three_connected and not rep.unstraddled_links:
            return net


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--max-nodes", type=int, default=7)
    ap.add_argument("--time-limit", type=float, default=30.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = SweepConfig(count=args.count, max_nodes=args.max_nodes, time_limit=args.time_limit, seed=args.seed)
    rng = random.Random(cfg.seed)
    w = csv.writer(sys.stdout)
    w.writerow(["network", "avg_degree", "cycles", "sg_se", "sg_status", "db_se", "db_status"])
    for _ in range(cfg.count):
        net = random_network(rng, cfg)
        cs = enumerate_simple_cycles(net)
        row = [net.name, f"{float(avg_nodal_degree(net)):.2f}", len(cs)]
        for solve in (solve_sg, solve_db):
            try:
                plan = solve(net, cs, cfg.time_limit)
            except InfeasibleError:
                row += ["", "Infeasible"]
                continue
            ok = plan.status is Status.OPTIMAL
            row += [f"{float(compute_se(plan.spare, net)):.3f}" if ok else "", plan.status.value]
        w.writerow(row)
        sys.stdout.flush()


if __name__ == "__main__":
    main()
