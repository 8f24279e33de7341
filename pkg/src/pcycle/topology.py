"""Network topologies: parsing, serialization and protectability checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx


class TopologyError(ValueError):
    """Raised for malformed topology input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Link:
    id: int
    u: str
    v: str
    working_capacity: int
    unit_cost: Fraction = Fraction(1)

    @property
    def endpoints(self) -> frozenset[str]:
        return frozenset((self.u, self.v))

    def other(self, node: str) -> str:
        return self.v if node == self.u else self.u


@dataclass(frozen=True)
class Network:
    nodes: tuple[str, ...]
    links: tuple[Link, ...]
    name: str = "unnamed"
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = tuple(self.nodes)
        links = tuple(self.links)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "links", links)
        if len(set(nodes)) != len(nodes):
            raise TopologyError("duplicate node identifier")
        known = set(nodes)
        index = {}
        for k, link in enumerate(links):
            if link.id != k:
                raise TopologyError(f"link ids must be 0..L-1 in order, got {link.id} at {k}")
            if link.u == link.v:
                raise TopologyError(f"self-loop at node {link.u!r}")
            for end in (link.u, link.v):
                if end not in known:
                    raise TopologyError(f"unknown node {end!r}")
            if link.endpoints in index:
                raise TopologyError(f"duplicate link {link.u} {link.v}")
            if link.working_capacity < 0:
                raise TopologyError(f"negative working capacity on link {link.u} {link.v}")
            if link.unit_cost <= 0:
                raise TopologyError(f"non-positive unit cost on link {link.u} {link.v}")
            index[link.endpoints] = k
        if len(nodes) < 3 or len(links) < 3:
            raise TopologyError("a network needs at least 3 nodes and 3 links")
        object.__setattr__(self, "_index", index)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_links(self) -> int:
        return len(self.links)

    def link_between(self, u: str, v: str) -> int | None:
        return self._index.get(frozenset((u, v)))

    def incident(self, node: str) -> list[int]:
        return [l.id for l in self.links if node in (l.u, l.v)]

    @property
    def total_working(self) -> int:
        return sum(l.working_capacity for l in self.links)

    def with_demands(self, working, name: str | None = None) -> "Network":
        """Copy with new working capacities (a scalar or one value per link)."""
        if isinstance(working, int):
            working = [working] * self.n_links
        links = [
            Link(l.id, l.u, l.v, int(w), l.unit_cost)
            for l, w in zip(self.links, working, strict=True)
        ]
        return Network(self.nodes, links, name or self.name)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        for l in self.links:
            g.add_edge(l.u, l.v, id=l.id)
        return g


def build_network(name: str, nodes, edges, working=1, cost=1) -> Network:
    """Convenience constructor from an edge list of ``(u, v)`` or ``(u, v, w[, c])``."""
    links = []
    for k, e in enumerate(edges):
        u, v = str(e[0]), str(e[1])
        w = e[2] if len(e) > 2 else working
        c = e[3] if len(e) > 3 else cost
        links.append(Link(k, u, v, int(w), Fraction(c)))
    return Network(tuple(str(n) for n in nodes), tuple(links), name)


def parse_network(text: str) -> Network:
    name = "unnamed"
    nodes: list[str] | None = None
    links: list[Link] = []
    seen: dict[frozenset, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if line.startswith("nodes:"):
            if nodes is not None:
                raise TopologyError("repeated nodes declaration", lineno)
            nodes = line[len("nodes:"):].split()
            if len(set(nodes)) != len(nodes):
                raise TopologyError("duplicate node identifier", lineno)
        elif head == "network":
            if nodes is not None or links:
                raise TopologyError("'network' must precede nodes and links", lineno)
            name = rest.strip() or name
        elif head == "link":
            if nodes is None:
                raise TopologyError("link before nodes declaration", lineno)
            parts = rest.split()
            if len(parts) not in (3, 4):
                raise TopologyError("expected 'link <u> <v> <w> [<c>]'", lineno)
            u, v = parts[0], parts[1]
            for end in (u, v):
                if end not in nodes:
                    raise TopologyError(f"unknown node {end!r}", lineno)
            if u == v:
                raise TopologyError(f"self-loop at node {u!r}", lineno)
            key = frozenset((u, v))
            if key in seen:
                raise TopologyError(f"duplicate link {u} {v}", lineno)
            try:
                w = int(parts[2])
            except ValueError:
                raise TopologyError(f"working capacity must be an integer, got {parts[2]!r}", lineno) from None
            if w < 0:
                raise TopologyError("working capacity must be non-negative", lineno)
            c = Fraction(1)
            if len(parts) == 4:
                try:
                    c = Fraction(parts[3])
                except ValueError:
                    raise TopologyError(f"bad unit cost {parts[3]!r}", lineno) from None
                if c <= 0:
                    raise TopologyError("unit cost must be positive", lineno)
            seen[key] = len(links)
            links.append(Link(len(links), u, v, w, c))
        else:
            raise TopologyError(f"unrecognized line {line!r}", lineno)
    if nodes is None:
        raise TopologyError("missing nodes declaration")
    return Network(tuple(nodes), tuple(links), name)


def _fmt_cost(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    # exact decimal when possible, otherwise a ratio string Fraction() reads back
    d = c.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d == 1:
        return f"{float(c)!r}"
    return f"{c.numerator}/{c.denominator}"


def format_network(net: Network) -> str:
    lines = [f"network {net.name}", "nodes: " + " ".join(net.nodes)]
    for l in net.links:
        tail = "" if l.unit_cost == 1 else f" {_fmt_cost(l.unit_cost)}"
        lines.append(f"link {l.u} {l.v} {l.working_capacity}{tail}")
    return "\n".join(lines) + "\n"


def load_network(path) -> Network:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())


def avg_nodal_degree(net: Network) -> Fraction:
    return Fraction(2 * net.n_links, net.n_nodes)


@dataclass
class ProtectabilityReport:
    three_connected: bool
    offending_node_pairs: list[tuple[str, str]]
    unstraddled_links: list[int]

    def render(self, net: Network) -> str:
        out = [
            f"network {net.name}: N={net.n_nodes} L={net.n_links} "
            f"avg_degree={float(avg_nodal_degree(net)):.2f}",
            f"three_connected {'yes' if self.three_connected else 'no'}",
        ]
        for a, b in self.offending_node_pairs:
            out.append(f"offending_pair {a} {b}")
        for k in self.unstraddled_links:
            l = net.links[k]
            out.append(f"unstraddled_link {k} {l.u} {l.v}")
        return "\n".join(out) + "\n"


def link_disjoint_paths(net: Network, a: str, b: str) -> int:
    """Maximum number of link-disjoint a-b paths (unit-capacity max-flow)."""
    return nx.edge_connectivity(net.to_networkx(), a, b)


def validate_protectable(net: Network, max_hops: int | None = None) -> ProtectabilityReport:
    from .cycles import enumerate_simple_cycles

    g = net.to_networkx()
    offending = []
    for a, b in itertools.combinations(net.nodes, 2):
        if nx.edge_connectivity(g, a, b) < 3:
            offending.append((a, b))
    cs = enumerate_simple_cycles(net, max_hops)
    straddled = set()
    for cyc in cs.cycles:
        straddled.update(cyc.straddling_links)
    unstraddled = [l.id for l in net.links if l.id not in straddled]
    return ProtectabilityReport(not offending, offending, unstraddled)
