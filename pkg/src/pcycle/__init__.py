"""Dual link failure protection with p-cycles: SG and DB designs plus exhaustive verification."""

from .cycles import CycleSet, Relation, classify_link, delta, enumerate_simple_cycles, sg_coefficient
from .db import DbPlan, ProtectionPair, build_db_model, db_coefficient, enumerate_protection_pairs, solve_db
from .failure_sim import (
    FailureScenario,
    VerificationReport,
    enumerate_dual_failures,
    verify_db,
    verify_plan,
    verify_sg,
)
from .report import MethodResult, compute_se, render_results_table
from .sg import SgPlan, build_sg_model, solve_sg, min_even_copies
from .topology import Link, Network, avg_nodal_degree, parse_network, validate_protectable

__all__ = [
    "CycleSet",
    "DbPlan",
    "FailureScenario",
    "Link",
    "MethodResult",
    "Network",
    "ProtectionPair",
    "Relation",
    "SgPlan",
    "VerificationReport",
    "avg_nodal_degree",
    "build_db_model",
    "build_sg_model",
    "classify_link",
    "compute_se",
    "db_coefficient",
    "delta",
    "enumerate_dual_failures",
    "enumerate_protection_pairs",
    "enumerate_simple_cycles",
    "parse_network",
    "render_results_table",
    "sg_coefficient",
    "solve_db",
    "solve_sg",
    "min_even_copies",
    "validate_protectable",
    "verify_db",
    "verify_plan",
    "verify_sg",
]
