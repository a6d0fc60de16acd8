"""Integer max-flow and bipartite-matching helpers (networkx-backed).

Capacities are integers throughout, so flow values are exact.
"""

from __future__ import annotations

from typing import Hashable, Iterable

import networkx as nx

from .errors import SizeLimitError


def transportation(
    rows: Iterable[Hashable],
    cols: Iterable[Hashable],
    edges: Iterable[tuple[Hashable, Hashable]],
    supply: dict,
    demand: dict,
) -> dict[tuple[Hashable, Hashable], int] | None:
    """Ship integer supplies to integer demands along allowed edges.

    Returns per-edge shipments (only positive ones) or None if infeasible.
    """
    rows = list(rows)
    cols = list(cols)
    total = sum(supply[r] for r in rows)
    if total != sum(demand[c] for c in cols):
        return None
    g = nx.DiGraph()
    for r in rows:
        g.add_edge("s", ("r", r), capacity=supply[r])
    for c in cols:
        g.add_edge(("c", c), "t", capacity=demand[c])
    for r, c in edges:
        g.add_edge(("r", r), ("c", c), capacity=total)
    value, flow = nx.maximum_flow(g, "s", "t")
    if value != total:
        return None
    out = {}
    for r, c in edges:
        amount = flow[("r", r)].get(("c", c), 0)
        if amount:
            out[(r, c)] = amount
    return out


def matching_min_cut_side(
    rows: Iterable[Hashable],
    cols: Iterable[Hashable],
    edges: Iterable[tuple[Hashable, Hashable]],
    supply: dict,
    demand: dict,
) -> tuple[bool, set]:
    """Feasibility of the transportation instance plus a deficient row set.

    When infeasible, returns the rows on the source side of a minimum cut;
    their joint neighborhood certifies the matching-condition violation.
    """
    rows = list(rows)
    cols = list(cols)
    total = sum(supply[r] for r in rows)
    g = nx.DiGraph()
    for r in rows:
        g.add_edge("s", ("r", r), capacity=supply[r])
    for c in cols:
        g.add_edge(("c", c), "t", capacity=demand[c])
    for r, c in edges:
        g.add_edge(("r", r), ("c", c), capacity=total)
    cut_value, (s_side, _) = nx.minimum_cut(g, "s", "t")
    if cut_value == total:
        return True, set()
    witness = {node[1] for node in s_side if isinstance(node, tuple) and node[0] == "r"}
    return False, witness


def _hopcroft_karp(n_left: int, n_right: int, adj: list[list[int]]) -> tuple[list[int], list[int]]:
    """Maximum bipartite matching; returns (pair_left, pair_right) with -1 for free."""
    INF = float("inf")
    pair_l = [-1] * n_left
    pair_r = [-1] * n_right
    dist = [0] * n_left

    def bfs() -> bool:
        from collections import deque

        queue = deque()
        for u in range(n_left):
            if pair_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = pair_r[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = pair_r[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                pair_l[u] = v
                pair_r[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in range(n_left):
            if pair_l[u] == -1:
                dfs(u)
    return pair_l, pair_r


def _split_graph(n: int, strict_pairs: Iterable[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in strict_pairs:
        adj[a].append(b)
    return adj


def _koenig_antichain(n: int, adj: list[list[int]], pair_l: list[int], pair_r: list[int]) -> frozenset[int]:
    """Elements missed by the Koenig vertex cover of the split graph.

    Alternating reachability Z from free left vertices: the cover is
    (L minus Z) plus (R in Z); the antichain takes x with x_L in Z and
    x_R out of Z.
    """
    in_z_left = [False] * n
    in_z_right = [False] * n
    stack = [u for u in range(n) if pair_l[u] == -1]
    for u in stack:
        in_z_left[u] = True
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if pair_l[u] == v:
                continue
            if not in_z_right[v]:
                in_z_right[v] = True
                w = pair_r[v]
                if w != -1 and not in_z_left[w]:
                    in_z_left[w] = True
                    stack.append(w)
    return frozenset(x for x in range(n) if in_z_left[x] and not in_z_right[x])


def maximum_antichain_ids(
    n: int, strict_pairs: Iterable[tuple[int, int]]
) -> frozenset[int]:
    """Maximum antichain of an n-element order given all strict pairs a < b.

    Dilworth via bipartite matching on the split graph: a minimum chain cover
    has n - |matching| chains, and the elements missed by a Koenig vertex
    cover form an antichain of exactly that size.
    """
    adj = _split_graph(n, strict_pairs)
    pair_l, pair_r = _hopcroft_karp(n, n, adj)
    return _koenig_antichain(n, adj, pair_l, pair_r)


def minimum_chain_cover(
    n: int, strict_pairs: Iterable[tuple[int, int]]
) -> list[list[int]]:
    """Partition 0..n-1 into the fewest chains (Dilworth via matching)."""
    adj = _split_graph(n, strict_pairs)
    pair_l, _ = _hopcroft_karp(n, n, adj)
    has_pred = {v for v in pair_l if v != -1}
    chains = []
    for x in range(n):
        if x in has_pred:
            continue
        chain = [x]
        while pair_l[chain[-1]] != -1:
            chain.append(pair_l[chain[-1]])
        chains.append(chain)
    return chains


def enumerate_maximum_antichain_ids(
    n: int, strict_pairs: Iterable[tuple[int, int]], cap: int = 1_000_000
) -> list[frozenset[int]]:
    """All maximum antichains, through the matching structure of the split graph.

    Maximum antichains correspond to minimum vertex covers, which pick one
    endpoint per matched edge subject to implications from the non-matching
    edges.  SCC-condensing the implication digraph and walking its closed
    sets makes the enumeration output-linear, so a unique maximum costs one
    matching, never a search.
    """
    adj = _split_graph(n, strict_pairs)
    pair_l, pair_r = _hopcroft_karp(n, n, adj)
    edges = [u for u in range(n) if pair_l[u] != -1]  # edge id = left endpoint
    edge_index = {u: i for i, u in enumerate(edges)}
    m = len(edges)

    # pick_left[i] == True puts the left endpoint of matched edge i in the cover
    implies: list[set[int]] = [set() for _ in range(m)]  # arc a -> b: a left => b left
    forced_true: set[int] = set()
    forced_false: set[int] = set()
    for u in range(n):
        for v in adj[u]:
            if pair_l[u] == v:
                continue
            eu = edge_index.get(u) if pair_l[u] != -1 else None
            ev = edge_index.get(pair_r[v]) if pair_r[v] != -1 else None
            if eu is None and ev is None:
                raise RuntimeError("matching is not maximum")
            if eu is None:
                forced_false.add(ev)  # free left endpoint: v must be covered
            elif ev is None:
                forced_true.add(eu)  # free right endpoint: u must be covered
            else:
                implies[ev].add(eu)

    dig = nx.DiGraph()
    dig.add_nodes_from(range(m))
    for a in range(m):
        dig.add_edges_from((a, b) for b in implies[a])
    condensation = nx.condensation(dig)
    order = list(nx.topological_sort(condensation))
    members = condensation.graph["mapping"]  # edge id -> scc id
    scc_true = {members[e] for e in forced_true}
    scc_false = {members[e] for e in forced_false}
    preds = {s: set(condensation.predecessors(s)) for s in order}
    # forward-close the trues, backward-close the falses
    for s in order:
        if s in scc_true or preds[s] & scc_true:
            scc_true.add(s)
    for s in reversed(order):
        if s in scc_false or any(t in scc_false for t in condensation.successors(s)):
            scc_false.add(s)
    if scc_true & scc_false:
        raise RuntimeError("inconsistent cover constraints")

    assignments: list[set[int]] = []
    stack: list[tuple[int, set[int]]] = [(0, set(scc_true))]
    while stack:
        idx, true_sccs = stack.pop()
        while idx < len(order):
            s = order[idx]
            if s in true_sccs or preds[s] & true_sccs:
                true_sccs.add(s)
            elif s not in scc_false:
                stack.append((idx + 1, set(true_sccs)))  # branch with s False
                true_sccs.add(s)
            idx += 1
        assignments.append(true_sccs)
        if len(assignments) > cap:
            raise SizeLimitError("more maximum antichains than the enumeration cap")

    antichains = set()
    for true_sccs in assignments:
        pick_left = [members[i] in true_sccs for i in range(m)]
        out = []
        for x in range(n):
            left_free = pair_l[x] == -1 or not pick_left[edge_index[x]]
            if not left_free:
                continue
            u = pair_r[x]
            right_free = u == -1 or pick_left[edge_index[u]]
            if right_free:
                out.append(x)
        antichains.add(frozenset(out))
    return sorted(antichains, key=sorted)
