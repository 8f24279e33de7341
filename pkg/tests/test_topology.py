import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import network
from oracles import max_link_disjoint_paths
from pcycle.datasets import complete_graph, ring, two_triangles_bridged
from pcycle.topology import (
    Link,
    Network,
    TopologyError,
    avg_nodal_degree,
    build_network,
    format_network,
    parse_network,
    validate_protectable,
)

TRIANGLE = """network tri
nodes: a b c
link a b 1 1
link b c 1 1
link c a 1 1
"""


def test_parse_triangle():
    net = parse_network(TRIANGLE)
    assert (net.n_nodes, net.n_links) == (3, 3)
    assert net.name == "tri"
    assert [l.id for l in net.links] == [0, 1, 2]


def test_parse_k4_file():
    lines = ["nodes: 1 2 3 4"] + [f"link {a} {b} 1 1" for a, b in itertools.combinations("1234", 2)]
    net = parse_network("\n".join(lines))
    assert (net.n_nodes, net.n_links) == (4, 6)


def test_defaults_and_comments():
    net = parse_network("# header\n\nnodes: x y z   # three\nlink x y 2\nlink y z 0 2.5\nlink z x 4 3/4\n")
    assert net.links[0].unit_cost == 1
    assert net.links[1].working_capacity == 0
    assert net.links[1].unit_cost == Fraction(5, 2)
    assert net.links[2].unit_cost == Fraction(3, 4)


@pytest.mark.parametrize(
    "text, message, line",
    [
        ("nodes: a b c\nlink a d 1\n", "unknown node", 2),
        ("nodes: a b c\nlink a b 1\nlink b a 1\n", "duplicate link", 3),
        ("nodes: a b c\nlink a a 1\n", "self-loop", 2),
        ("nodes: a b c\nlink a b x\n", "integer", 2),
        ("nodes: a b c\nlink a b -1\n", "non-negative", 2),
        ("nodes: a b c\nlink a b 1 0\n", "positive", 2),
        ("nodes: a b c\nfrobnicate\n", "unrecognized", 2),
        ("link a b 1\n", "before nodes", 1),
    ],
)
def test_parse_errors(text, message, line):
    with pytest.raises(TopologyError, match=message) as err:
        parse_network(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_too_small():
    with pytest.raises(TopologyError):
        parse_network("nodes: a b\nlink a b 1\n")


def test_network_rejects_parallel_links():
    links = (Link(0, "a", "b", 1), Link(1, "b", "a", 1), Link(2, "b", "c", 1))
    with pytest.raises(TopologyError, match="duplicate"):
        Network(("a", "b", "c"), links)


@pytest.mark.parametrize("n, expected", [(4, Fraction(3)), (5, Fraction(4))])
def test_avg_degree_complete(n, expected):
    assert avg_nodal_degree(complete_graph(n)) == expected


def test_avg_degree_six_nodes_ten_links():
    edges = [(k, k % 6 + 1) for k in range(1, 7)] + [(1, 3), (1, 4), (2, 5), (4, 6)]
    net = build_network("six_ten", range(1, 7), edges)
    assert round(float(avg_nodal_degree(net)), 1) == 3.3


def test_ring_is_not_three_connected():
    rep = validate_protectable(ring(5))
    assert not rep.three_connected
    adjacent = {(str(k), str(k % 5 + 1)) for k in range(1, 6)}
    found = {tuple(sorted(p)) for p in rep.offending_node_pairs}
    assert {tuple(sorted(p)) for p in adjacent} <= found


def test_k4_protectable():
    net = network("K4")
    # independent max-flow oracle: every pair has exactly 3 link-disjoint paths
    for a, b in itertools.combinations(net.nodes, 2):
        assert max_link_disjoint_paths(net, a, b) == 3
    rep = validate_protectable(net)
    assert rep.three_connected and rep.offending_node_pairs == [] and rep.unstraddled_links == []


def test_bridge_is_unstraddled():
    net = two_triangles_bridged()
    rep = validate_protectable(net)
    bridge = net.link_between("a", "x")
    assert bridge in rep.unstraddled_links
    assert not rep.three_connected


@pytest.mark.parametrize("n", [4, 5, 6])
def test_complete_graphs_protectable(n):
    rep = validate_protectable(complete_graph(n))
    assert rep.three_connected and not rep.unstraddled_links


@st.composite
def small_networks(draw):
    n = draw(st.integers(3, 7))
    pairs = list(itertools.combinations(range(n), 2))
    ring_edges = [(k, (k + 1) % n) for k in range(n)]
    extra = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    edges = list(dict.fromkeys(tuple(sorted(e)) for e in ring_edges + extra))
    ws = draw(st.lists(st.integers(0, 9), min_size=len(edges), max_size=len(edges)))
    cs = draw(st.lists(st.fractions(Fraction(1, 4), Fraction(8), max_denominator=8), min_size=len(edges), max_size=len(edges)))
    return build_network("h", [f"v{k}" for k in range(n)], [(f"v{a}", f"v{b}", w, c) for (a, b), w, c in zip(edges, ws, cs)])


@given(small_networks())
@settings(max_examples=60, deadline=None)
def test_roundtrip(net):
    back = parse_network(format_network(net))
    assert back.nodes == net.nodes
    assert [(l.u, l.v, l.working_capacity, l.unit_cost) for l in back.links] == [
        (l.u, l.v, l.working_capacity, l.unit_cost) for l in net.links
    ]


@given(small_networks())
@settings(max_examples=60, deadline=None)
def test_avg_degree_is_mean_incident_count(net):
    mean = Fraction(sum(len(net.incident(v)) for v in net.nodes), net.n_nodes)
    assert avg_nodal_degree(net) == mean
