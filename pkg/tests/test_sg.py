import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cycles, network, random_protectable_network, sg_plan
from oracles import sg_exhaustive_optimum
from pcycle.cycles import Relation, enumerate_simple_cycles
from pcycle.datasets import complete_graph
from pcycle.errors import InfeasibleError
from pcycle.ilp import Status, solve_bb
from pcycle.report import compute_se
from pcycle.sg import (
    build_sg_model,
    sg_constraint_violations,
    solve_sg,
    min_even_copies,
    unpruned_variable_count,
)
from pcycle.topology import build_network

TRIANGLE = build_network("tri", "abc", [("a", "b"), ("b", "c"), ("c", "a")])


@pytest.mark.parametrize("W, expected", [(3, 4), (4, 4), (0, 0), (1, 2), (7, 8)])
def test_min_copies_rounds_up_to_even(W, expected):
    assert min_even_copies(W) == expected


def test_min_copies_rejects_negative():
    with pytest.raises(ValueError):
        min_even_copies(-1)


def test_k4_pruned_counts():
    model, vm = build_sg_model(network("K4"), cycles("K4"))
    assert len(vm.alloc) == 6 and len(vm.copies) == 7 and len(vm.spare) == 6
    assert model.n_vars == 19


def test_k4_unpruned_count():
    net, cs = network("K4"), cycles("K4")
    assert unpruned_variable_count(net, cs) == 6 * 7 + 7 + 6 == 55
    model, _ = build_sg_model(net, cs, prune=False)
    assert model.n_vars == 55


def test_row_families():
    model, _ = build_sg_model(network("K4"), cycles("K4"))
    names = [c.name for c in model.constraints]
    assert sum(n.startswith("protect_") for n in names) == 6
    assert sum(n.startswith("pair_") for n in names) == 6
    assert sum(n.startswith("spare_") for n in names) == 6


def test_triangle_infeasible():
    with pytest.raises(InfeasibleError, match="straddles no cycle"):
        build_sg_model(TRIANGLE, enumerate_simple_cycles(TRIANGLE))


def test_triangle_zero_demand_is_fine():
    net = TRIANGLE.with_demands(0)
    plan = solve_sg(net, enumerate_simple_cycles(net))
    assert plan.total_cost == 0


@pytest.mark.parametrize("w", [1, 2])
def test_k4_optimum(w):
    net, cs = network("K4", w), cycles("K4", w)
    plan = sg_plan("K4", w)
    assert plan.status is Status.OPTIMAL
    assert sum(plan.spare.values()) == 24
    assert compute_se(plan.spare, net) == Fraction(24, 6 * w)
    # three quads with two copies each
    quads = [c.id for c in cs.cycles if len(c) == 4]
    assert {p: n for p, n in plan.copies.items() if n} == {p: 2 for p in quads}


def test_k4_matches_oracle():
    assert sg_exhaustive_optimum(network("K4"), cycles("K4"), bound=4) == 24


def test_zero_demand():
    net = complete_graph(5, 0)
    plan = solve_sg(net, enumerate_simple_cycles(net))
    assert plan.total_cost == 0 and not any(plan.copies.values())


@pytest.mark.parametrize("name", ["K4", "K5", "wheel5", "ring6_chords"])
def test_plan_properties(name):
    net, cs, plan = network(name), cycles(name), sg_plan(name)
    assert sg_constraint_violations(plan, net, cs) == []
    for (i, p), n in plan.allocations.items():
        assert cs.relation[i, p] == Relation.STRADDLING
        # arc feasibility: the intact arc holds every copy of p
        assert plan.copies[p] >= 2 * n
    by_cycle = {}
    for (i, p), n in plan.allocations.items():
        by_cycle.setdefault(p, []).append(n)
    for p, loads in by_cycle.items():
        loads.sort()
        if len(loads) >= 2:
            # pair-feasibility: the two largest straddler loads fit together
            assert loads[-1] + loads[-2] <= plan.copies[p]
    for i, s in plan.spare.items():
        assert s == sum(plan.copies.get(p, 0) for p in range(len(cs)) if cs.relation[i, p] == Relation.ON_CYCLE)


def test_single_cycle_carrier_gets_even_copies():
    net = build_network("k4w3", "1234", [(a, b, 3) for a, b in ["12", "13", "14", "23", "24", "34"]])
    cs = enumerate_simple_cycles(net)
    plan = solve_sg(net, cs)
    for l in net.links:
        on = [(p, n) for (i, p), n in plan.allocations.items() if i == l.id]
        if len(on) == 1:
            p, n = on[0]
            assert n == -(-l.working_capacity // 2)
            assert plan.copies[p] >= min_even_copies(l.working_capacity)


@pytest.mark.parametrize("name", ["K4", "wheel5"])
def test_pruned_equals_unpruned(name):
    net, cs = network(name), cycles(name)
    a = solve_bb(build_sg_model(net, cs, prune=True)[0], engine="highs")
    b = solve_bb(build_sg_model(net, cs, prune=False)[0], engine="highs")
    assert a.objective_value == b.objective_value


@pytest.mark.parametrize("name", ["K4", "K5"])
@pytest.mark.parametrize("k", [2, 4])
def test_scaling_by_even_factor(name, k):
    base = sg_plan(name).total_cost
    scaled = sg_plan(name, k).total_cost if k == 2 else solve_sg(network(name, k), cycles(name, k)).total_cost
    assert scaled <= k * base


@given(st.integers(0, 10_000))
@settings(max_examples=15, deadline=None)
def test_random_pruned_equals_unpruned(seed):
    net = random_protectable_network(random.Random(seed), max_nodes=5, max_demand=2)
    cs = enumerate_simple_cycles(net)
    a = solve_bb(build_sg_model(net, cs, prune=True)[0], engine="highs")
    b = solve_bb(build_sg_model(net, cs, prune=False)[0], engine="highs")
    assert a.objective_value == b.objective_value


@given(st.integers(0, 10_000))
@settings(max_examples=10, deadline=None)
def test_random_matches_oracle(seed):
    net = random_protectable_network(random.Random(seed), max_nodes=5, max_demand=2)
    cs = enumerate_simple_cycles(net)
    if len(cs) > 12:
        return
    assert solve_sg(net, cs).total_cost == sg_exhaustive_optimum(net, cs)
