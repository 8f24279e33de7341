"""Minimal reader for the LP-format subset we export, solved with scipy's milp.

Kept in tests so the cross-check does not reuse the package's own model
objects or solver wrappers.
"""

import re

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

_TERM = re.compile(r"([+-])?\s*([0-9.eE+-]+)?\s*([A-Za-z_][A-Za-z0-9_]*)")


def _parse_expr(text, names):
    coefs = {}
    text = text.strip()
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            break
        sign, num, name = m.groups()
        a = float(num) if num else 1.0
        if sign == "-":
            a = -a
        names.setdefault(name, len(names))
        coefs[name] = coefs.get(name, 0.0) + a
        pos = m.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return coefs


def read_lp(text):
    section = None
    objective = ""
    rows, current = [], None
    bounds = {}
    names: dict[str, int] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        if line in ("Minimize", "Subject To", "Bounds", "General", "End"):
            section = line
            continue
        if section == "Minimize":
            objective += " " + line.split(":", 1)[-1]
        elif section == "Subject To":
            if re.match(r"^[A-Za-z_][A-Za-z0-9_]*:", line):
                current = line.split(":", 1)[1]
                rows.append(current)
            else:
                rows[-1] += " " + line
        elif section == "Bounds":
            parts = line.split()
            if len(parts) == 3:
                bounds[parts[0]] = (float(parts[2]), np.inf)
            else:
                bounds[parts[2]] = (float(parts[0]), float(parts[4]))
        elif section == "General":
            for nm in line.split():
                names.setdefault(nm, len(names))
    obj = _parse_expr(objective, names)
    parsed = []
    for row in rows:
        m = re.match(r"(.*?)(>=|<=|=)\s*(\S+)\s*$", row)
        parsed.append((_parse_expr(m.group(1), names), m.group(2), float(m.group(3))))
    n = len(names)
    c = np.zeros(n)
    for nm, a in obj.items():
        c[names[nm]] = a
    A = np.zeros((len(parsed), n))
    lo, hi = np.full(len(parsed), -np.inf), np.full(len(parsed), np.inf)
    for r, (coefs, op, rhs) in enumerate(parsed):
        for nm, a in coefs.items():
            A[r, names[nm]] = a
        if op in (">=", "="):
            lo[r] = rhs
        if op in ("<=", "="):
            hi[r] = rhs
    lb, ub = np.zeros(n), np.full(n, np.inf)
    for nm, (a, b) in bounds.items():
        lb[names[nm]], ub[names[nm]] = a, b
    return c, A, lo, hi, lb, ub


def solve_lp_text(text):
    c, A, lo, hi, lb, ub = read_lp(text)
    cons = [LinearConstraint(A, lo, hi)] if len(A) else []
    res = milp(c, constraints=cons, bounds=Bounds(lb, ub), integrality=np.ones(len(c)))
    return res.status, (None if res.x is None else float(res.fun))
