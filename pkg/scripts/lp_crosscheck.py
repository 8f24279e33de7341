#!/usr/bin/env python3
"""Export LP files for a few small models so an external MILP solver can confirm our optima.

Writes <outdir>/<method>_<network>.lp plus expected.txt with the in-package
optimum. Then, for example:

    highs --model_file out/sg_k4.lp          # or: cbc out/sg_k4.lp solve
    glpsol --lp out/db_wheel5.lp -o /dev/stdout

and compare the reported objective with expected.txt.
"""

import argparse
from pathlib import Path

from pcycle import datasets
from pcycle.cycles import enumerate_simple_cycles
from pcycle.db import build_db_model
from pcycle.ilp import export_lp_text, solve_bb
from pcycle.sg import build_sg_model

MODELS = [
    ("sg", "k4"),
    ("db", "k4"),
    ("sg", "wheel5"),
    ("db", "wheel5"),
    ("db", "ring6_chords"),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", nargs="?", default="lp_out")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    lines = []
    for method, name in MODELS:
        net = datasets.load_bundled(name)
        cs = enumerate_simple_cycles(net)
        build = build_sg_model if method == "sg" else build_db_model
        model, _ = build(net, cs)
        path = out / f"{method}_{name}.lp"
        path.write_text(export_lp_text(model))
        sol = solve_bb(model)
        lines.append(f"{path.name} {sol.status.value} {sol.objective_value}")
        print(lines[-1])
    (out / "expected.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
