"""Energy Büchi decision for finite WBA, with lasso witnesses.

Prefix energies are computed once on the whole automaton (colors ignored).
Each accepting SCC is degeneralized into its level graph and every back-edge
``src -> dst`` is tested for a feasible cycle: starting in ``dst`` with the
best prefix energy as credit, the energy brought back through the back-edge
is compared against that credit.  When it falls short, the test is repeated
with the returned energy as the new credit.  The credits strictly decrease,
so the refinement ends either with a credit that reproduces itself (accept)
or with a negative one (reject).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

from .energy import NEG_INF, MaxEnergy, find_max_e
from .scc import DegeneralizedScc, degeneralize_scc, find_sccs, is_accepting
from .wba import (
    EnergyConfig,
    Lasso,
    Run,
    WeightedBuchiAutomaton,
    accumulate,
    check_valid,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BackEdgeCheck:
    """One credit test of one back-edge (``iteration`` 0 is the first test)."""

    scc: int
    back_edge: int
    iteration: int
    credit: int
    returned: float
    accepted: bool


@dataclass
class Decision:
    feasible: bool
    checks: list = field(default_factory=list)
    caveat: Optional[str] = None
    automaton: Optional[WeightedBuchiAutomaton] = None
    _build: Optional[Callable[[], Lasso]] = field(default=None, repr=False)
    _witness: Optional[Lasso] = field(default=None, repr=False)

    @property
    def witness(self) -> Optional[Lasso]:
        """The accepted lasso; built on first access."""
        if self._witness is None and self._build is not None:
            self._witness = self._build()
            self._build = None
        return self._witness

    @property
    def reruns(self) -> int:
        """Highest rerun index used by any back-edge test."""
        return max((c.iteration for c in self.checks), default=0)


def verify_lasso(a: WeightedBuchiAutomaton, cfg: EnergyConfig, lasso: Lasso) -> list[str]:
    """Problems with ``lasso`` as a witness of a Büchi accepted (c, b)-feasible run.

    Checks chaining and closing, coverage of all colors by the cycle,
    feasibility of the prefix followed by two cycle laps, and that the second
    lap returns at least the energy of the first (hence every later lap stays
    feasible).
    """
    out = lasso.problems(a)
    if out:
        return out
    full = a.accepting_mask
    if lasso.cycle.colors(a) & full != full:
        out.append("cycle misses some color")
    trace = accumulate([a.transitions[i].weight for i in lasso.unrolled(2)], cfg)
    if min(trace) < 0:
        out.append("energy drops below zero")
    p, c = len(lasso.prefix), len(lasso.cycle)
    if trace[p + 2 * c] < trace[p + c]:
        out.append("cycle loses energy after the first lap")
    return out


def buchi_energy(
    a: WeightedBuchiAutomaton,
    cfg: EnergyConfig,
    *,
    max_reruns: Optional[int] = None,
    accepting_only: bool = True,
) -> Decision:
    """Is there a Büchi accepted (c, b)-feasible run in ``a``?

    ``max_reruns`` caps the number of credit refinements per back-edge; the
    default runs them to the end.  ``max_reruns=1`` gives the single-rerun
    variant, which can miss cycles whose best entry energy is reached only
    after several refinements.  ``accepting_only=False`` also degeneralizes
    SCCs lacking some color, which never changes the verdict.
    """
    check_valid(a)
    b = cfg.bound
    prefix = find_max_e(a, a.initial, cfg)
    checks: list[BackEdgeCheck] = []
    for idx, scc in enumerate(find_sccs(a)):
        if scc.trivial or (accepting_only and not is_accepting(scc, a.num_colors)):
            continue
        deg = degeneralize_scc(a, scc)
        for be in deg.back_edges:
            t = deg.graph.transitions[be]
            start = prefix[deg.states[t.dst].original]
            if start == NEG_INF:
                continue
            credit = start
            iteration = 0
            while True:
                cycle = find_max_e(deg.graph, t.dst, EnergyConfig(credit, b))
                at_src = cycle[t.src]
                back = NEG_INF if at_src == NEG_INF else min(b, at_src + t.weight)
                ok = back >= credit
                checks.append(BackEdgeCheck(idx, deg.origin[be], iteration, credit, back, ok))
                log.debug("scc %d back-edge %d: credit %s -> %s", idx, deg.origin[be], credit, back)
                if ok:
                    return Decision(
                        True,
                        checks,
                        automaton=a,
                        _build=_witness_builder(a, cfg, prefix, deg, be, cycle),
                    )
                if back < 0 or (max_reruns is not None and iteration >= max_reruns):
                    break
                credit = back
                iteration += 1
    return Decision(False, checks, automaton=a)


def _witness_builder(
    a: WeightedBuchiAutomaton,
    cfg: EnergyConfig,
    prefix: MaxEnergy,
    deg: DegeneralizedScc,
    be: int,
    cycle: MaxEnergy,
) -> Callable[[], Lasso]:
    def build() -> Lasso:
        return extract_witness(a, cfg, prefix, deg, be, cycle)

    return build


def extract_witness(
    a: WeightedBuchiAutomaton,
    cfg: EnergyConfig,
    prefix: MaxEnergy,
    deg: DegeneralizedScc,
    be: int,
    cycle: MaxEnergy,
) -> Lasso:
    """Lasso from an accepted back-edge test.

    The prefix is an optimal run to the back-edge target in ``a``; the cycle
    is the optimal level-graph run from that target to the back-edge source,
    projected onto ``a``, closed by the back-edge itself.
    """
    t = deg.graph.transitions[be]
    anchor = deg.states[t.dst].original
    inner = cycle.run_to(t.src)
    steps = tuple(deg.origin[i] for i in inner.transitions) + (deg.origin[be],)
    lasso = Lasso(prefix.run_to(anchor), Run(anchor, steps))
    problems = verify_lasso(a, cfg, lasso)
    if problems:
        raise AssertionError(f"reconstructed lasso is invalid: {problems}")
    return _drop_prefix(a, cfg, lasso) or lasso


def _drop_prefix(a: WeightedBuchiAutomaton, cfg: EnergyConfig, lasso: Lasso) -> Optional[Lasso]:
    """The cycle rotated to start in the initial state, if that alone is a witness."""
    if not lasso.prefix.transitions:
        return None
    cyc = lasso.cycle.transitions
    for i, t in enumerate(cyc):
        if a.transitions[t].src != a.initial:
            continue
        rotated = Lasso(Run(a.initial, ()), Run(a.initial, cyc[i:] + cyc[:i]))
        if not verify_lasso(a, cfg, rotated):
            return rotated
    return None
