import functools
import random
import sys
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pcycle.cycles import enumerate_simple_cycles  # noqa: E402
from pcycle.datasets import complete_graph, load_bundled  # noqa: E402
from pcycle.db import solve_db  # noqa: E402
from pcycle.sg import solve_sg  # noqa: E402
from pcycle.topology import build_network, validate_protectable  # noqa: E402


@functools.lru_cache(maxsize=None)
def network(name: str, working: int = 1):
    if name.startswith("K"):
        return complete_graph(int(name[1:]), working)
    net = load_bundled(name)
    return net if working == 1 else net.with_demands(working)


@functools.lru_cache(maxsize=None)
def cycles(name: str, working: int = 1):
    return enumerate_simple_cycles(network(name, working))


@functools.lru_cache(maxsize=None)
def sg_plan(name: str, working: int = 1):
    return solve_sg(network(name, working), cycles(name, working), time_limit=600)


@functools.lru_cache(maxsize=None)
def db_plan(name: str, working: int = 1):
    return solve_db(network(name, working), cycles(name, working), time_limit=600)


def random_protectable_network(rng: random.Random, max_nodes: int = 7, max_demand: int = 3):
    """Ring on 4..max_nodes nodes plus random chords until 3-edge-connected
    and every link straddles some cycle."""
    while True:
        n = rng.randint(4, max_nodes)
        order = list(range(n))
        rng.shuffle(order)
        edges = {frozenset((order[k], order[(k + 1) % n])) for k in range(n)}
        g = nx.Graph([tuple(e) for e in edges])
        candidates = [frozenset((a, b)) for a in range(n) for b in range(a + 1, n)]
        rng.shuffle(candidates)
        for e in candidates:
            if nx.edge_connectivity(g) >= 3:
                break
            if e not in edges:
                edges.add(e)
                g.add_edge(*e)
        if nx.edge_connectivity(g) < 3:
            continue
        el = sorted(tuple(sorted(e)) for e in edges)
        demands = [(a, b, rng.randint(1, max_demand)) for a, b in el]
        net = build_network(f"rand{n}_{len(el)}", range(n), demands)
        # 3-edge-connectivity alone does not give every link a straddling cycle
        if not validate_protectable(net).unstraddled_links:
            return net


@pytest.fixture
def k4():
    return network("K4")


@pytest.fixture
def k4_cycles():
    return cycles("K4")


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
