"""Brute-force reference answers on small instances.

Energies are integers in ``[0, b]``, so the product of an automaton with its
energy values is a finite graph and both questions become plain graph
search.  Nothing here shares code with the main decision procedure beyond
the automaton types and the whole-automaton degeneralization.
"""
from __future__ import annotations

from collections import deque
from typing import Optional

import networkx as nx

from .energy import NEG_INF
from .scc import degeneralize_full
from .wba import EnergyConfig, WeightedBuchiAutomaton, check_valid

DEFAULT_LIMIT = 2_000_000


class OracleLimitError(RuntimeError):
    pass


def _guard(a: WeightedBuchiAutomaton, cfg: EnergyConfig, levels: int, limit: int):
    size = a.num_states * (cfg.bound + 1) * levels
    if size > limit:
        raise OracleLimitError(f"product would have up to {size} nodes (limit {limit})")


def _product(a: WeightedBuchiAutomaton, cfg: EnergyConfig, source: int):
    """Reachable (state, energy) nodes and their labelled edges."""
    b = cfg.bound
    out = a.outgoing()
    start = (source, cfg.start)
    seen = {start}
    edges = []
    todo = deque([start])
    while todo:
        s, e = todo.popleft()
        for i in out[s]:
            t = a.transitions[i]
            e2 = min(b, e + t.weight)
            if e2 < 0:
                continue
            v = (t.dst, e2)
            edges.append(((s, e), v, i))
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return seen, edges


def accepting_cycle_edge(
    a: WeightedBuchiAutomaton, cfg: EnergyConfig, limit: int = DEFAULT_LIMIT
) -> Optional[tuple]:
    """An accepting product edge lying on a reachable cycle, or ``None``.

    Product nodes are ``(state, energy, level)`` of the degeneralized
    automaton; without colors every edge counts as accepting.
    """
    check_valid(a)
    if a.num_colors == 0:
        g, accepting = a, None
    else:
        g, accepting = degeneralize_full(a), 1
    _guard(a, cfg, max(1, a.num_colors), limit)
    nodes, edges = _product(g, cfg, g.initial)
    succ: dict = {v: [] for v in nodes}
    for u, v, _ in edges:
        succ[u].append(v)
    k = max(1, a.num_colors)

    def node(x):
        return (x[0] // k, x[1], x[0] % k + 1)

    for u, v, i in edges:
        if accepting is not None and not g.transitions[i].colors & accepting:
            continue
        todo, seen = [v], {v}
        while todo:
            x = todo.pop()
            if x == u:
                return node(u), node(v)
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
    return None


def brute_force(a: WeightedBuchiAutomaton, cfg: EnergyConfig, limit: int = DEFAULT_LIMIT) -> bool:
    return accepting_cycle_edge(a, cfg, limit) is not None


def brute_force_scc(a: WeightedBuchiAutomaton, cfg: EnergyConfig, limit: int = DEFAULT_LIMIT) -> bool:
    """Second route: some reachable SCC of the (state, energy) product sees every color."""
    check_valid(a)
    _guard(a, cfg, 1, limit)
    nodes, edges = _product(a, cfg, a.initial)
    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from((u, v) for u, v, _ in edges)
    comp = {}
    for ci, members in enumerate(nx.strongly_connected_components(graph)):
        for x in members:
            comp[x] = ci
    seen_colors: dict = {}
    for u, v, i in edges:
        if comp[u] == comp[v]:
            seen_colors[comp[u]] = seen_colors.get(comp[u], 0) | a.transitions[i].colors
    full = a.accepting_mask
    return any(mask & full == full for mask in seen_colors.values())


def brute_force_max_e(
    a: WeightedBuchiAutomaton, source: int, cfg: EnergyConfig, limit: int = DEFAULT_LIMIT
) -> list:
    """Exact maximal energy per state (``NEG_INF`` when unreachable)."""
    check_valid(a)
    _guard(a, cfg, 1, limit)
    nodes, _ = _product(a, cfg, source)
    best: list = [NEG_INF] * a.num_states
    for s, e in nodes:
        if e > best[s]:
            best[s] = e
    return best
