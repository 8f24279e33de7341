"""Simple-cycle enumeration and link/cycle relations."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .topology import Network

DEFAULT_CYCLE_CAP = 10**6


class CycleCapError(RuntimeError):
    pass


class Relation(enum.IntEnum):
    UNRELATED = 0
    ON_CYCLE = 1
    STRADDLING = 2


@dataclass(frozen=True)
class Cycle:
    id: int
    node_sequence: tuple[str, ...]
    on_cycle_links: frozenset[int]
    straddling_links: frozenset[int]
    link_sequence: tuple[int, ...]  # link_sequence[k] joins node k and node k+1 (cyclically)

    def __len__(self) -> int:
        return len(self.node_sequence)

    @property
    def edge_mask(self) -> int:
        m = 0
        for k in self.on_cycle_links:
            m |= 1 << k
        return m

    def arcs(self, u: str, v: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The two link paths along the cycle between nodes u and v."""
        seq = self.node_sequence
        n = len(seq)
        a, b = seq.index(u), seq.index(v)
        fwd = tuple(self.link_sequence[(a + k) % n] for k in range((b - a) % n))
        back = tuple(self.link_sequence[(b + k) % n] for k in range((a - b) % n))
        return fwd, back

    def label(self) -> str:
        return "-".join(self.node_sequence)


@dataclass(frozen=True)
class CycleSet:
    cycles: tuple[Cycle, ...]
    max_hops: int
    relation: np.ndarray  # (L, P) int8 of Relation codes

    def __len__(self) -> int:
        return len(self.cycles)

    def _check(self, i: int, p: int) -> None:
        L, P = self.relation.shape
        if not 0 <= i < L:
            raise KeyError(f"unknown link id {i}")
        if not 0 <= p < P:
            raise KeyError(f"unknown cycle id {p}")

    def covering(self, i: int) -> np.ndarray:
        """Cycle ids on which link i is on-cycle or straddling."""
        return np.flatnonzero(self.relation[i] != Relation.UNRELATED)

    def straddled_by(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.relation[i] == Relation.STRADDLING)

    def dump(self, net: Network | None = None) -> str:
        lines = []
        for c in self.cycles:
            lines.append(
                f"cycle {c.id}: {c.label()}  on={len(c.on_cycle_links)} "
                f"straddling={len(c.straddling_links)}"
            )
        return "\n".join(lines) + ("\n" if lines else "")


def enumerate_simple_cycles(
    net: Network, max_hops: int | None = None, cap: int = DEFAULT_CYCLE_CAP
) -> CycleSet:
    """All simple cycles with at most ``max_hops`` links, each stored once.

    Cycles are found by DFS from every start node, visiting only nodes that
    come later in node order, and kept in the orientation whose second node
    precedes the last one. Output is sorted by length, then node order.
    """
    n = net.n_nodes
    if max_hops is None:
        max_hops = n
    if max_hops < 3:
        raise ValueError("max_hops must be at least 3")
    hops = min(max_hops, n)

    order = {v: k for k, v in enumerate(net.nodes)}
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for l in net.links:
        a, b = order[l.u], order[l.v]
        adj[a].append((b, l.id))
        adj[b].append((a, l.id))
    for nbrs in adj:
        nbrs.sort()

    found: list[tuple[int, ...]] = []
    for s in range(n):
        path = [s]
        on_path = [False] * n
        on_path[s] = True
        # iterative DFS; each frame is (node, iterator over neighbours)
        stack = [iter(adj[s])]
        while stack:
            advanced = False
            for nb, _ in stack[-1]:
                if nb == s:
                    if len(path) >= 3 and path[1] < path[-1]:
                        found.append(tuple(path))
                        if len(found) > cap:
                            raise CycleCapError(
                                f"more than {cap} cycles; lower max_hops or raise the cycle cap"
                            )
                    continue
                if nb < s or on_path[nb] or len(path) >= hops:
                    continue
                path.append(nb)
                on_path[nb] = True
                stack.append(iter(adj[nb]))
                advanced = True
                break
            if not advanced:
                stack.pop()
                on_path[path.pop()] = False

    found.sort(key=lambda c: (len(c), c))
    L = net.n_links
    relation = np.zeros((L, len(found)), dtype=np.int8)
    cycles = []
    for cid, seq in enumerate(found):
        names = tuple(net.nodes[k] for k in seq)
        link_seq = tuple(
            net.link_between(names[k], names[(k + 1) % len(names)]) for k in range(len(names))
        )
        on = frozenset(link_seq)
        node_set = set(names)
        chords = frozenset(
            l.id for l in net.links if l.u in node_set and l.v in node_set and l.id not in on
        )
        relation[list(on), cid] = Relation.ON_CYCLE
        if chords:
            relation[list(chords), cid] = Relation.STRADDLING
        cycles.append(Cycle(cid, names, on, chords, link_seq))
    relation.setflags(write=False)
    return CycleSet(tuple(cycles), max_hops, relation)


def classify_link(i: int, p: int, cs: CycleSet) -> Relation:
    cs._check(i, p)
    return Relation(int(cs.relation[i, p]))


def sg_coefficient(i: int, p: int, cs: CycleSet) -> int:
    """Protection units per copy of cycle p for link i under straddling-only protection."""
    return 2 if classify_link(i, p, cs) is Relation.STRADDLING else 0


def delta(i: int, p: int, cs: CycleSet) -> int:
    """1 when link i lies on cycle p (and so carries one spare unit per copy)."""
    return 1 if classify_link(i, p, cs) is Relation.ON_CYCLE else 0
