"""Independent brute-force oracles. None of these touch the LP/B&B code path."""

from __future__ import annotations

import itertools
import math
from collections import defaultdict, deque
from fractions import Fraction


def brute_force_cycles(net) -> set[frozenset[int]]:
    """Every edge subset that forms one simple cycle (connected, all degrees 2)."""
    out = set()
    L = net.n_links
    for k in range(3, min(L, net.n_nodes) + 1):
        for subset in itertools.combinations(range(L), k):
            deg = defaultdict(int)
            adj = defaultdict(list)
            for e in subset:
                l = net.links[e]
                deg[l.u] += 1
                deg[l.v] += 1
                adj[l.u].append(l.v)
                adj[l.v].append(l.u)
            if any(d != 2 for d in deg.values()) or len(deg) != k:
                continue
            start = next(iter(deg))
            seen = {start}
            todo = [start]
            while todo:
                x = todo.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        todo.append(y)
            if len(seen) == k:
                out.add(frozenset(subset))
    return out


def complete_graph_cycle_count(n: int) -> int:
    return sum(math.comb(n, k) * math.factorial(k - 1) // 2 for k in range(3, n + 1))


def max_link_disjoint_paths(net, a, b) -> int:
    """Edmonds-Karp on the unit-capacity bidirected graph."""
    cap = defaultdict(int)
    adj = defaultdict(set)
    for l in net.links:
        cap[l.u, l.v] += 1
        cap[l.v, l.u] += 1
        adj[l.u].add(l.v)
        adj[l.v].add(l.u)
    flow = 0
    while True:
        parent = {a: None}
        q = deque([a])
        while q and b not in parent:
            x = q.popleft()
            for y in adj[x]:
                if y not in parent and cap[x, y] > 0:
                    parent[y] = x
                    q.append(y)
        if b not in parent:
            return flow
        y = b
        while parent[y] is not None:
            x = parent[y]
            cap[x, y] -= 1
            cap[y, x] += 1
            y = x
        flow += 1


def _cycle_cost(net, cyc) -> Fraction:
    return sum((net.links[k].unit_cost for k in cyc.on_cycle_links), Fraction(0))


def sg_exhaustive_optimum(net, cs, bound: int | None = None) -> Fraction:
    """Minimum SG cost by searching copy vectors n_p in 0..bound for every cycle.

    For fixed copies the best per-link allocation on cycle p is floor(n_p/2)
    (twice the allocation may not exceed n_p), so a link is protected iff the
    sum over straddled cycles of 2*floor(n_p/2) reaches its demand. Spare on
    a link is the copies of cycles over it, so cost is sum n_p * cycle cost.
    Depth-first with cost and coverage pruning; still visits every vector
    that could beat the incumbent.
    """
    wmax = max(l.working_capacity for l in net.links)
    if bound is None:
        bound = 2 * wmax + 2
    P = len(cs.cycles)
    cost = [_cycle_cost(net, c) for c in cs.cycles]
    strad = [sorted(c.straddling_links) for c in cs.cycles]
    need = [l.working_capacity for l in net.links]
    # remaining coverage obtainable from cycles k.. for each link
    rest = [[0] * net.n_links for _ in range(P + 1)]
    for k in range(P - 1, -1, -1):
        rest[k] = list(rest[k + 1])
        for i in strad[k]:
            rest[k][i] += 2 * (bound // 2)
    best = [math.inf]
    got = [0] * net.n_links

    def dfs(k, spent):
        if spent >= best[0]:
            return
        if any(got[i] + rest[k][i] < need[i] for i in range(net.n_links)):
            return
        if k == P:
            best[0] = spent
            return
        for n in range(bound + 1):
            add = 2 * (n // 2)
            for i in strad[k]:
                got[i] += add
            dfs(k + 1, spent + n * cost[k])
            for i in strad[k]:
                got[i] -= add

    dfs(0, Fraction(0))
    return best[0]


def _pairs_oracle(cs, i):
    """Protection-pairs by direct edge-set comparison of cycle objects."""
    out = []
    cov = [c for c in cs.cycles if i in c.on_cycle_links or i in c.straddling_links]
    for p, q in itertools.combinations(cov, 2):
        common = p.on_cycle_links & q.on_cycle_links
        if not common or (common == {i} and i in p.on_cycle_links and i in q.on_cycle_links):
            out.append((p.id, q.id))
    return out


def db_exhaustive_optimum(net, cs, bound: int | None = None) -> Fraction:
    """Minimum DB cost by enumerating pair allocations link by link.

    A link's choice is one integer per protection-pair: copies on the side
    where it straddles (or on both sides when the relation matches), with
    the other side fixed by the pair coupling. Values run 0..bound, keeping
    only choices that meet the twice-demand row and cannot lower any single
    pair (raising an allocation never lowers copies or spare). Copies are the
    largest per-cycle total, or total plus the identical-pair share of another
    link; spare follows; cost is accumulated and pruned depth-first.
    """
    wmax = max(l.working_capacity for l in net.links)
    if bound is None:
        bound = 2 * wmax + 2
    rel = {}
    for c in cs.cycles:
        for k in c.on_cycle_links:
            rel[k, c.id] = 1
        for k in c.straddling_links:
            rel[k, c.id] = 2
    links = [l.id for l in net.links]
    pairs = {i: _pairs_oracle(cs, i) for i in links}

    def sides(i, p, q, k):
        """(copies on p, copies on q, units) for free value k."""
        rp, rq = rel[i, p], rel[i, q]
        if rp == rq:
            return k, k, rp * k + rq * k
        if rp == 1:  # on p, straddling q: k copies on q, 2k on p
            return 2 * k, k, 2 * k + 2 * k
        return k, 2 * k, 2 * k + 2 * k

    def choices(i):
        w = net.links[i].working_capacity
        prs = pairs[i]
        out = []
        for ks in itertools.product(range(bound + 1), repeat=len(prs)):
            units = sum(sides(i, p, q, k)[2] for (p, q), k in zip(prs, ks))
            if units < 2 * w:
                continue
            minimal = True
            for t, k in enumerate(ks):
                if k == 0:
                    continue
                p, q = prs[t]
                if units - sides(i, p, q, k)[2] + sides(i, p, q, k - 1)[2] >= 2 * w:
                    minimal = False
                    break
            if minimal:
                out.append(ks)
        if w == 0:
            out = [tuple(0 for _ in prs)]
        return out

    opts = {i: choices(i) for i in links}
    if any(not opts[i] for i in links):
        return math.inf
    cyc_cost = [_cycle_cost(net, c) for c in cs.cycles]
    best = [math.inf]

    def evaluate(assign):
        per_cycle = defaultdict(int)
        pair_side = {}
        users = defaultdict(list)
        for i, ks in assign.items():
            for (p, q), k in zip(pairs[i], ks):
                a, b, _ = sides(i, p, q, k)
                per_cycle[i, p] += a
                per_cycle[i, q] += b
                pair_side[i, p, q] = a
                pair_side[i, q, p] = b
                users[p, q].append(i)
        copies = defaultdict(int)
        for (i, p), v in per_cycle.items():
            copies[p] = max(copies[p], v)
        for (p, q), us in users.items():
            for i in us:
                for j in us:
                    if i != j:
                        copies[p] = max(copies[p], per_cycle[i, p] + pair_side[j, p, q])
                        copies[q] = max(copies[q], per_cycle[i, q] + pair_side[j, q, p])
        return sum(copies[p] * cyc_cost[p] for p in copies)

    def dfs(k, assign):
        partial = evaluate(assign)
        if partial >= best[0]:
            return
        if k == len(links):
            best[0] = partial
            return
        i = links[k]
        for ks in opts[i]:
            assign[i] = ks
            dfs(k + 1, assign)
            del assign[i]

    dfs(0, {})
    return best[0]
