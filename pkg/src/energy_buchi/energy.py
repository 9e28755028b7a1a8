"""Maximal attainable energy per state under the (c, b) semantics.

Bellman-Ford style relaxation that maximizes instead of minimizes, gated
so that energies never drop below zero and capped at the weak upper bound
``b``.  Positive cycles of the predecessor graph are not iterated one unit
at a time: they are *pumped*, i.e. set directly to their fixed point by
starting one cycle state at ``b`` and propagating along the cycle until
nothing changes (at most two laps).  The number of relaxations is therefore
independent of ``b``.

Every assignment to ``E`` is logged as a derivation so that an optimal run
can be rebuilt afterwards, including the number of laps a pumped cycle has
to be traversed.  Predecessors alone are not enough for that: once a cycle
has been pumped, following ``P`` backwards from one of its states never
leaves the cycle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .wba import EnergyConfig, Run, WeightedBuchiAutomaton

NEG_INF = float("-inf")


@dataclass
class Counters:
    relaxations: int = 0
    rounds: int = 0
    passes: int = 0
    pumps: int = 0
    pump_steps: int = 0


@dataclass(frozen=True)
class _Derivation:
    # run(self) = run(parent) + lap * laps + tail
    state: int
    value: int
    parent: int
    lap: tuple[int, ...] = ()
    laps: int = 0
    tail: tuple[int, ...] = ()


@dataclass(frozen=True)
class MaxEnergy:
    """Result of :func:`find_max_e`.

    ``energies[s]`` is ``NEG_INF`` when no feasible run reaches ``s``;
    ``predecessors[s]`` is the best incoming transition id, or ``None``.
    """

    source: int
    config: EnergyConfig
    energies: tuple
    predecessors: tuple
    counters: Counters
    _log: tuple = field(repr=False, compare=False, default=())
    _latest: tuple = field(repr=False, compare=False, default=())

    def __getitem__(self, s: int):
        return self.energies[s]

    def reachable(self, s: int) -> bool:
        return self.energies[s] != NEG_INF

    def run_to(self, s: int) -> Run:
        """A feasible run from the source ending in ``s`` with energy ``energies[s]``."""
        if not self.reachable(s):
            raise ValueError(f"state {s} is not feasibly reachable")
        chain = []
        i = self._latest[s]
        while i != -1:
            chain.append(i)
            i = self._log[i].parent
        steps: list[int] = []
        for i in reversed(chain):
            d = self._log[i]
            if d.laps:
                steps.extend(d.lap * d.laps)
            steps.extend(d.tail)
        return Run(self.source, tuple(steps))


class EnergySearch:
    """Mutable state of one maximal-energy computation (``E``, ``P``).

    :meth:`run` is the full fixed-point loop; :meth:`mod_bf`,
    :meth:`pump_all` and :meth:`pump_loop` are its steps and can be driven
    individually.
    """

    def __init__(self, g: WeightedBuchiAutomaton, source: int, cfg: EnergyConfig):
        if not 0 <= source < g.num_states:
            raise ValueError(f"source out of range: {source}")
        self.g = g
        self.source = source
        self.cfg = cfg
        self.b = cfg.bound
        n = g.num_states
        self.src = [t.src for t in g.transitions]
        self.dst = [t.dst for t in g.transitions]
        self.w = [t.weight for t in g.transitions]
        self.E: list = [NEG_INF] * n
        self.P: list[Optional[int]] = [None] * n
        self.counters = Counters()
        self.dirty: set[int] = set()
        self._log: list[_Derivation] = []
        self._latest = [-1] * n
        self._assign(source, cfg.start, _Derivation(source, cfg.start, -1))

    def _assign(self, s: int, value: int, d: _Derivation):
        self.E[s] = value
        self._latest[s] = len(self._log)
        self._log.append(d)

    def mod_bf(self) -> bool:
        """One relaxation pass of at most ``max(1, n - 1)`` rounds.

        Stops early after a round without change.  Returns whether anything
        changed.
        """
        E, P, b = self.E, self.P, self.b
        src, dst, w = self.src, self.dst, self.w
        m = len(src)
        changed = False
        for _ in range(max(1, self.g.num_states - 1)):
            self.counters.rounds += 1
            self.counters.relaxations += m
            round_changed = False
            for t in range(m):
                es = E[src[t]]
                if es == NEG_INF:
                    continue
                e = es + w[t]
                if e > b:
                    e = b
                d = dst[t]
                if e >= 0 and E[d] < e:
                    P[d] = t
                    self._assign(d, e, _Derivation(d, e, self._latest[src[t]], tail=(t,)))
                    self.dirty.add(d)
                    round_changed = True
            if not round_changed:
                break
            changed = True
        return changed

    def loop_of(self, s: int) -> list[int]:
        """States of the predecessor cycle through ``s``, in forward order from ``s``."""
        back = [s]
        cur = self.src[self.P[s]]
        while cur != s:
            back.append(cur)
            if len(back) > self.g.num_states:
                raise AssertionError(f"state {s} is not on a predecessor cycle")
            cur = self.src[self.P[cur]]
        return [s] + back[:0:-1]

    def pump_loop(self, s: int) -> bool:
        """Set every state on the predecessor cycle of ``s`` to its fixed point."""
        cyc = self.loop_of(s)
        m = len(cyc)
        b, P, E = self.b, self.P, self.E
        self.counters.pumps += 1
        # None marks "not yet visited"; it never compares equal to an energy
        pumped: dict[int, Optional[int]] = {x: None for x in cyc}
        pumped[cyc[-1]] = b
        i = 0
        while True:
            x = cyc[i % m]
            t = P[x]
            e = min(b, pumped[self.src[t]] + self.w[t])
            self.counters.pump_steps += 1
            if e == pumped[x]:
                break
            pumped[x] = e
            i += 1
            if i > 2 * m:
                raise AssertionError("pumping did not stabilise within two laps")

        lap = tuple(P[x] for x in cyc[1:]) + (P[cyc[0]],)
        gain = sum(self.w[t] for t in lap)
        entry = self._latest[s]
        e0 = E[s]
        top = pumped[s]
        if top < e0 or any(pumped[x] < E[x] for x in cyc):
            raise AssertionError("pumped values must dominate current energies")
        laps = 0
        if top > e0:
            if gain <= 0:
                raise AssertionError("predecessor cycle is not energy positive")
            laps = math.ceil((top - e0) / gain)

        changed = False
        for j, x in enumerate(cyc):
            if pumped[x] != E[x]:
                changed = True
                self._assign(x, pumped[x], _Derivation(x, pumped[x], entry, lap, laps, lap[:j]))
        return changed

    def pump_all(self) -> bool:
        """Pump every positive predecessor cycle upstream of a still-improvable state."""
        E, P, b = self.E, self.P, self.b
        candidates = sorted(self.dirty)
        self.dirty = set()
        done: set[int] = set()
        changed = False
        for s in candidates:
            if s in done:
                continue
            t = P[s]
            if t is None or min(b, E[self.src[t]] + self.w[t]) <= E[s]:
                continue
            on_path: set[int] = set()
            cur: Optional[int] = s
            while True:
                if cur in on_path:
                    break
                if cur in done or P[cur] is None:
                    cur = None
                    break
                on_path.add(cur)
                cur = self.src[P[cur]]
            done |= on_path
            if cur is not None:
                changed |= self.pump_loop(cur)
        return changed

    def run(self) -> MaxEnergy:
        while True:
            self.counters.passes += 1
            if not self.mod_bf():
                break
            self.pump_all()
        return self.result()

    def result(self) -> MaxEnergy:
        return MaxEnergy(
            source=self.source,
            config=self.cfg,
            energies=tuple(self.E),
            predecessors=tuple(self.P),
            counters=self.counters,
            _log=tuple(self._log),
            _latest=tuple(self._latest),
        )


def find_max_e(g: WeightedBuchiAutomaton, source: int, cfg: EnergyConfig) -> MaxEnergy:
    """Maximal energy attainable in each state by a feasible run from ``source``."""
    return EnergySearch(g, source, cfg).run()
