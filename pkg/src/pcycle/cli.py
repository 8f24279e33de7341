"""Command-line interface.

Usage:
    pcycle topo check FILE [--max-hops K]
    pcycle cycles enum FILE [--max-hops K] [--dump]
    pcycle solve FILE --method sg|db [--time-limit S] [--export-lp PATH] [--plan-out PATH]
    pcycle verify FILE --plan PATH
    pcycle report FILE... [--csv PATH]

FILE may also name a bundled topology as ``bundled:k4`` (see pcycle.datasets).
Exit codes: 0 ok/pass, 1 verification failure, 2 infeasible, 3 time limit, 4 input error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import datasets
from .config import RunConfig
from .cycles import CycleCapError, enumerate_simple_cycles
from .db import build_db_model, solve_db
from .errors import InfeasibleError, PlanError
from .failure_sim import verify_plan
from .ilp import Status, export_lp_text
from .plan_io import parse_plan
from .report import compute_se, method_result, render_results_table
from .sg import build_sg_model, solve_sg
from .topology import TopologyError, load_network, validate_protectable

EXIT_OK, EXIT_VERIFY_FAIL, EXIT_INFEASIBLE, EXIT_CAP, EXIT_INPUT = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _load(spec: str):
    if spec.startswith("bundled:"):
        try:
            return datasets.load_bundled(spec.split(":", 1)[1])
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
    if not os.path.exists(spec):
        raise InputError(f"no such file: {spec}")
    return load_network(spec)


def _config(args) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    if getattr(args, "max_hops", None) is not None:
        cfg.max_hops = args.max_hops
    if getattr(args, "time_limit", None) is not None:
        cfg.time_limit_s = args.time_limit
    if getattr(args, "engine", None) is not None:
        cfg.engine = args.engine
    return cfg


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_topo_check(args, out) -> int:
    net = _load(args.file)
    cfg = _config(args)
    report = validate_protectable(net, cfg.max_hops)
    out.write(report.render(net))
    return EXIT_OK


def cmd_cycles_enum(args, out) -> int:
    net = _load(args.file)
    cfg = _config(args)
    cs = enumerate_simple_cycles(net, cfg.max_hops, cfg.cycle_cap)
    out.write(f"network {net.name}: {len(cs)} cycles (max_hops {cs.max_hops})\n")
    if args.dump:
        out.write(cs.dump(net))
    return EXIT_OK


def cmd_solve(args, out) -> int:
    net = _load(args.file)
    cfg = _config(args)
    cs = enumerate_simple_cycles(net, cfg.max_hops, cfg.cycle_cap)
    if args.method == "sg":
        model, _ = build_sg_model(net, cs)
    else:
        model, _ = build_db_model(net, cs, pair_cap=cfg.pair_cap)
    if args.export_lp:
        _write(args.export_lp, export_lp_text(model))
    if args.method == "sg":
        plan = solve_sg(net, cs, cfg.time_limit_s, cfg.engine)
    else:
        plan = solve_db(net, cs, cfg.time_limit_s, cfg.engine, pair_cap=cfg.pair_cap)
    st = plan.stats
    out.write(
        f"method {args.method} network {net.name} status {plan.status.value}\n"
        f"variables {st.variable_count} constraints {st.constraint_count} "
        f"nodes {st.nodes_explored} time {st.wall_time:.3f}s engine {st.engine}\n"
    )
    if plan.total_cost is not None:
        line = f"total_spare {sum(plan.spare.values())} cost {plan.total_cost}"
        if net.total_working > 0:
            line += f" SE {float(compute_se(plan.spare, net)):.4f}"
        out.write(line + "\n")
    if args.plan_out:
        _write(args.plan_out, plan.to_text())
    elif plan.total_cost is not None:
        out.write(plan.to_text())
    return EXIT_CAP if plan.status is Status.CAP_HIT else EXIT_OK


def cmd_verify(args, out) -> int:
    net = _load(args.file)
    cfg = _config(args)
    with open(args.plan, encoding="utf-8") as fh:
        plan = parse_plan(fh.read())
    hops = plan.max_hops if plan.max_hops is not None else cfg.max_hops
    cs = enumerate_simple_cycles(net, hops, cfg.cycle_cap)
    report = verify_plan(plan, net, cs)
    out.write(report.to_text())
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def _run_method(solve, net, cs, cfg, **kw):
    try:
        plan = solve(net, cs, cfg.time_limit_s, cfg.engine, **kw)
    except InfeasibleError as exc:
        logging.getLogger(__name__).info("%s", exc)
        return None
    return method_result(net, plan)


def cmd_report(args, out) -> int:
    cfg = _config(args)
    rows = []
    details = []
    for spec in args.files:
        net = _load(spec)
        cs = enumerate_simple_cycles(net, cfg.max_hops, cfg.cycle_cap)
        db = _run_method(solve_db, net, cs, cfg, pair_cap=cfg.pair_cap)
        sg = _run_method(solve_sg, net, cs, cfg)
        rows.append((db, sg))
        for r, name in ((db, "DB"), (sg, "SG")):
            if r is None:
                details.append(f"{net.name} {name} Infeasible")
            else:
                details.append(
                    f"{net.name} {name} {r.status.value} variables {r.variable_count} "
                    f"constraints {r.constraint_count} spare {r.total_spare}"
                )
    text, csv_text = render_results_table(rows)
    out.write(text)
    out.write("\n" + "\n".join(sorted(details)) + "\n")
    if args.csv:
        _write(args.csv, csv_text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcycle", description="p-cycle dual-failure protection design")
    parser.add_argument("--config", help="key=value file: max_hops, time_limit_s, pair_cap, cycle_cap, engine")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, time=False):
        p.add_argument("--max-hops", type=int, default=None)
        if time:
            p.add_argument("--time-limit", type=float, default=None, help="seconds (default 600)")
            p.add_argument("--engine", choices=("auto", "native", "highs"), default=None)

    topo = sub.add_parser("topo").add_subparsers(dest="action", required=True)
    p = topo.add_parser("check", help="3-edge-connectivity and straddler coverage")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_topo_check)

    cyc = sub.add_parser("cycles").add_subparsers(dest="action", required=True)
    p = cyc.add_parser("enum", help="enumerate candidate cycles")
    p.add_argument("file")
    p.add_argument("--dump", action="store_true")
    common(p)
    p.set_defaults(func=cmd_cycles_enum)

    p = sub.add_parser("solve", help="optimize an SG or DB protection plan")
    p.add_argument("file")
    p.add_argument("--method", choices=("sg", "db"), required=True)
    p.add_argument("--export-lp")
    p.add_argument("--plan-out")
    common(p, time=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="simulate every dual link failure against a plan")
    p.add_argument("file")
    p.add_argument("--plan", required=True)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="solve both methods and tabulate SE")
    p.add_argument("files", nargs="+")
    p.add_argument("--csv")
    common(p, time=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except (InputError, TopologyError, PlanError, ValueError, OSError, CycleCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
