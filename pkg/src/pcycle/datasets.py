"""Bundled and generated topologies."""

from __future__ import annotations

import itertools
from importlib import resources

from .topology import Network, build_network, parse_network

BUNDLED = ("k4", "k5", "k6", "ring6_chords", "wheel5", "cost239")


def load_bundled(name: str) -> Network:
    if name not in BUNDLED:
        raise KeyError(f"no bundled network {name!r}; choose from {', '.join(BUNDLED)}")
    text = resources.files("pcycle.data").joinpath(f"{name}.topo").read_text(encoding="utf-8")
    return parse_network(text)


def complete_graph(n: int, working: int = 1) -> Network:
    nodes = list(range(1, n + 1))
    return build_network(f"K{n}", nodes, itertools.combinations(nodes, 2), working=working)


def ring(n: int, working: int = 1) -> Network:
    return build_network(f"ring{n}", range(1, n + 1), [(k, k % n + 1) for k in range(1, n + 1)], working)


def ring_with_chords(n: int, chords, working: int = 1) -> Network:
    edges = [(k, k % n + 1) for k in range(1, n + 1)] + list(chords)
    return build_network(f"ring{n}+{len(chords)}", range(1, n + 1), edges, working)


def two_triangles_bridged(working: int = 1) -> Network:
    edges = [("a", "b"), ("b", "c"), ("c", "a"), ("x", "y"), ("y", "z"), ("z", "x"), ("a", "x")]
    return build_network("bridged-triangles", ["a", "b", "c", "x", "y", "z"], edges, working)
