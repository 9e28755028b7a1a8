"""SCCs of the unweighted transition graph and the counting degeneralization."""
from __future__ import annotations

from dataclasses import dataclass

from .wba import ColorSet, Transition, WeightedBuchiAutomaton, all_colors


@dataclass(frozen=True)
class Scc:
    states: tuple[int, ...]
    transitions: tuple[int, ...]
    colors: ColorSet
    trivial: bool


@dataclass(frozen=True)
class LevelState:
    original: int
    level: int


@dataclass(frozen=True)
class DegeneralizedScc:
    """Level graph of one SCC.

    ``graph`` is an ordinary one-color WBA over the level states; its color 0
    marks the back-edges.  ``origin[i]`` is the original transition id of
    level-graph transition ``i``.
    """

    scc: Scc
    levels: int
    graph: WeightedBuchiAutomaton
    states: tuple[LevelState, ...]
    origin: tuple[int, ...]
    back_edges: tuple[int, ...]
    _index: dict

    def index(self, original: int, level: int) -> int:
        return self._index[(original, level)]

    def root(self, original: int) -> int:
        """Level-1 copy of an original state."""
        return self._index[(original, 1)]


def find_sccs(a: WeightedBuchiAutomaton) -> list[Scc]:
    """Maximal SCCs, ordered by their smallest member."""
    n = a.num_states
    succ = [[] for _ in range(n)]
    for t in a.transitions:
        succ[t.src].append(t.dst)

    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp = [-1] * n
    groups: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = len(groups)
                    members.append(w)
                    if w == v:
                        break
                groups.append(members)

    internal: list[list[int]] = [[] for _ in groups]
    colors = [0] * len(groups)
    for i, t in enumerate(a.transitions):
        c = comp[t.src]
        if c == comp[t.dst]:
            internal[c].append(i)
            colors[c] |= t.colors
    sccs = [
        Scc(tuple(sorted(g)), tuple(internal[c]), colors[c], not internal[c])
        for c, g in enumerate(groups)
    ]
    sccs.sort(key=lambda s: s.states[0])
    return sccs


def is_accepting(s: Scc, k: int) -> bool:
    full = all_colors(k)
    return not s.trivial and s.colors & full == full


def degeneralize_scc(a: WeightedBuchiAutomaton, s: Scc) -> DegeneralizedScc:
    """Counting construction restricted to the internal transitions of ``s``.

    Level ``i`` (1-based) waits for color ``i - 1``.  With no colors at all a
    single level is built and every internal transition is a back-edge.
    """
    k = a.num_colors
    levels = max(k, 1)
    members = s.states
    states = [LevelState(q, lvl) for lvl in range(1, levels + 1) for q in members]
    idx = {(ls.original, ls.level): i for i, ls in enumerate(states)}

    transitions: list[Transition] = []
    origin: list[int] = []
    back: list[int] = []
    for lvl in range(1, levels + 1):
        for tid in s.transitions:
            t = a.transitions[tid]
            seen = k == 0 or bool(t.colors >> (lvl - 1) & 1)
            if not seen:
                nxt, mark = lvl, 0
            elif lvl < levels:
                nxt, mark = lvl + 1, 0
            else:
                nxt, mark = 1, 1
            if mark:
                back.append(len(transitions))
            transitions.append(
                Transition(idx[(t.src, lvl)], idx[(t.dst, nxt)], t.weight, mark, t.letter)
            )
            origin.append(tid)

    graph = WeightedBuchiAutomaton(
        num_states=len(states),
        initial=idx[(members[0], 1)],
        transitions=tuple(transitions),
        num_colors=1,
        alphabet=a.alphabet,
        state_names=tuple(f"({a.state_label(x.original)},{x.level})" for x in states),
    )
    return DegeneralizedScc(
        scc=s,
        levels=levels,
        graph=graph,
        states=tuple(states),
        origin=tuple(origin),
        back_edges=tuple(back),
        _index=idx,
    )


def degeneralize_full(a: WeightedBuchiAutomaton) -> WeightedBuchiAutomaton:
    """Whole-automaton counting construction: ``n * k`` states, one color.

    State ``(s, i)`` gets id ``s * k + (i - 1)``; the initial state is
    ``(initial, 1)``.
    """
    k = a.num_colors
    if k < 1:
        raise ValueError("degeneralize_full needs at least one color")

    def sid(s: int, lvl: int) -> int:
        return s * k + (lvl - 1)

    transitions = []
    for t in a.transitions:
        for lvl in range(1, k + 1):
            if not t.colors >> (lvl - 1) & 1:
                nxt, mark = lvl, 0
            elif lvl < k:
                nxt, mark = lvl + 1, 0
            else:
                nxt, mark = 1, 1
            transitions.append(Transition(sid(t.src, lvl), sid(t.dst, nxt), t.weight, mark, t.letter))
    return WeightedBuchiAutomaton(
        num_states=a.num_states * k,
        initial=sid(a.initial, 1),
        transitions=tuple(transitions),
        num_colors=1,
        alphabet=a.alphabet,
        color_names=("acc",),
        state_names=tuple(
            f"({a.state_label(s)},{lvl})" for s in range(a.num_states) for lvl in range(1, k + 1)
        ),
    )
