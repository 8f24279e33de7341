"""CPLEX LP-format export."""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .model import IlpModel, Sense

_BAD = re.compile(r"[^A-Za-z0-9_]")
_LINE_TERMS = 8


def sanitize(name: str) -> str:
    s = _BAD.sub("_", name)
    if not s or s[0].isdigit():
        s = "v_" + s
    return s


def _num(a) -> str:
    a = Fraction(a).limit_denominator(10**12) if not isinstance(a, int) else a
    if isinstance(a, Fraction) and a.denominator == 1:
        a = a.numerator
    if isinstance(a, int):
        return str(a)
    return repr(float(a))


def _expr(coefs, names) -> list[str]:
    terms = []
    for j in sorted(coefs):
        a = coefs[j]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = _num(abs(Fraction(a)))
        body = names[j] if mag == "1" else f"{mag} {names[j]}"
        terms.append(f"{sign} {body}")
    if not terms:
        terms = [f"0 {names[0]}"] if names else ["0"]
    elif terms[0].startswith("+ "):
        terms[0] = terms[0][2:]
    lines = []
    for k in range(0, len(terms), _LINE_TERMS):
        lines.append(" ".join(terms[k:k + _LINE_TERMS]))
    return lines


def export_lp_text(model: IlpModel) -> str:
    names = [sanitize(v.name) for v in model.variables]
    seen: dict[str, int] = {}
    for j, nm in enumerate(names):
        if nm in seen:
            names[j] = f"{nm}_{j}"
        seen[names[j]] = j

    out = [f"\\ model {sanitize(model.name)}", "Minimize"]
    obj = _expr(model.objective, names)
    out.append(" obj: " + obj[0])
    out += ["   " + ln for ln in obj[1:]]
    out.append("Subject To")
    for r, con in enumerate(model.constraints):
        label = f"{sanitize(con.name)}_{r}" if con.name else f"c{r}"
        body = _expr(con.coefs, names)
        op = {Sense.GE: ">=", Sense.LE: "<=", Sense.EQ: "="}[con.sense]
        body[-1] = f"{body[-1]} {op} {_num(con.rhs)}"
        out.append(f" {label}: " + body[0])
        out += ["   " + ln for ln in body[1:]]
    out.append("Bounds")
    for v, nm in zip(model.variables, names):
        if math.isinf(v.ub):
            out.append(f" {nm} >= {v.lb}")
        else:
            out.append(f" {v.lb} <= {nm} <= {int(v.ub)}")
    out.append("General")
    for k in range(0, len(names), _LINE_TERMS):
        out.append(" " + " ".join(names[k:k + _LINE_TERMS]))
    out.append("End")
    return "\n".join(out) + "\n"
