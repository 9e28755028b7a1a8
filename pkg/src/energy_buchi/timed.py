"""One-clock weighted timed Büchi automata and their corner-point abstraction.

Locations carry integer weight rates, edges carry guards, colors and
integer resets.  The abstraction is a finite WBA over (location, region)
pairs where regions are the points, right-open and left-open intervals
between consecutive clock constants.  Time-elapsing delays get an extra
color (index ``k``, after the automaton's own colors); demanding it
infinitely often rules out Zeno runs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .buchi import Decision, buchi_energy
from .wba import (
    EnergyConfig,
    Transition,
    ValidationError,
    WeightedBuchiAutomaton,
    all_colors,
    restrict_colors,
)

OPS = ("<=", "<", ">=", ">", "=")
STRICT = ("<", ">")
EPSILON = "ε"

INFIMUM_CAVEAT = (
    "strict clock constraints present: feasibility holds for every initial "
    "credit strictly above the given one"
)


@dataclass(frozen=True)
class ClockAtom:
    op: str
    k: int
    clock: str = "x"

    def holds(self, v) -> bool:
        if self.op == "<=":
            return v <= self.k
        if self.op == "<":
            return v < self.k
        if self.op == ">=":
            return v >= self.k
        if self.op == ">":
            return v > self.k
        return v == self.k

    def __str__(self):
        return f"{self.clock}{self.op}{self.k}"


ClockConstraint = tuple  # conjunction of ClockAtom


@dataclass(frozen=True)
class Location:
    name: str
    invariant: ClockConstraint = ()
    rate: int = 0


@dataclass(frozen=True)
class TimedEdge:
    src: int
    dst: int
    guard: ClockConstraint = ()
    resets: tuple = ()  # (clock, value) pairs; absent clocks keep their value
    colors: int = 0
    letter: Optional[int] = None

    def reset_of(self, clock: str) -> Optional[int]:
        for c, v in self.resets:
            if c == clock:
                return v
        return None


@dataclass(frozen=True)
class TimedAutomaton:
    locations: tuple
    edges: tuple
    initial: int = 0
    clocks: tuple = ("x",)
    num_colors: int = 0
    alphabet: tuple = ()
    color_names: Optional[tuple] = None

    def __post_init__(self):
        for name in ("locations", "edges", "clocks", "alphabet"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def clock(self) -> str:
        if len(self.clocks) != 1:
            raise ValidationError([f"expected exactly one clock, got {len(self.clocks)}"])
        return self.clocks[0]

    def atoms(self) -> Iterable[ClockAtom]:
        for loc in self.locations:
            yield from loc.invariant
        for e in self.edges:
            yield from e.guard


def validate_timed(t: TimedAutomaton) -> list[str]:
    problems = []
    n = len(t.locations)
    if n < 1:
        problems.append("automaton needs at least one location")
    if not 0 <= t.initial < n:
        problems.append(f"initial out of range: {t.initial}")
    if len(set(t.clocks)) != len(t.clocks):
        problems.append("duplicate clock names")
    if t.num_colors < 0:
        problems.append("color count must be >= 0")
    clocks = set(t.clocks)

    def check_atoms(where, atoms):
        for a in atoms:
            if a.op not in OPS:
                problems.append(f"{where}: unknown operator {a.op!r}")
            if not isinstance(a.k, int) or a.k < 0:
                problems.append(f"{where}: constant must be a natural number, got {a.k!r}")
            if a.clock not in clocks:
                problems.append(f"{where}: undeclared clock {a.clock!r}")

    for i, loc in enumerate(t.locations):
        check_atoms(f"location {i} invariant", loc.invariant)
        if not isinstance(loc.rate, int):
            problems.append(f"location {i}: rate must be an integer")
    for i, e in enumerate(t.edges):
        if not 0 <= e.src < n:
            problems.append(f"edge {i}: src out of range: {e.src}")
        if not 0 <= e.dst < n:
            problems.append(f"edge {i}: dst out of range: {e.dst}")
        if e.colors < 0 or e.colors & ~all_colors(t.num_colors):
            problems.append(f"edge {i}: color index out of range")
        if e.letter is not None and not 0 <= e.letter < len(t.alphabet):
            problems.append(f"edge {i}: letter out of range: {e.letter}")
        check_atoms(f"edge {i} guard", e.guard)
        for c, v in e.resets:
            if c not in clocks:
                problems.append(f"edge {i}: reset of undeclared clock {c!r}")
            if not isinstance(v, int) or v < 0:
                problems.append(f"edge {i}: reset value must be a natural number")
    return problems


def check_timed_valid(t: TimedAutomaton, *, one_clock: bool = False) -> None:
    problems = validate_timed(t)
    if one_clock and len(t.clocks) != 1:
        problems.append(f"corner-point abstraction needs exactly one clock, got {len(t.clocks)}")
    if problems:
        raise ValidationError(problems)


def max_constant(t: TimedAutomaton) -> int:
    """Largest constant in any invariant or guard (0 when there is none)."""
    return max((a.k for a in t.atoms()), default=0)


def has_strict(t: TimedAutomaton) -> bool:
    return any(a.op in STRICT for a in t.atoms())


def bound_clocks(t: TimedAutomaton) -> TimedAutomaton:
    """Keep every clock within ``N + 2`` without changing feasibility.

    Each location gets, per clock, an uncolored ε self-loop firing at
    ``x = N + 2`` that resets ``x`` to ``N + 1``; every invariant is
    strengthened with ``x <= N + 2``.
    """
    n = max_constant(t)
    alphabet = t.alphabet if EPSILON in t.alphabet else t.alphabet + (EPSILON,)
    eps = alphabet.index(EPSILON)
    locations = tuple(
        Location(
            loc.name,
            tuple(loc.invariant) + tuple(ClockAtom("<=", n + 2, x) for x in t.clocks),
            loc.rate,
        )
        for loc in t.locations
    )
    extra = tuple(
        TimedEdge(q, q, (ClockAtom("=", n + 2, x),), ((x, n + 1),), 0, eps)
        for q in range(len(t.locations))
        for x in t.clocks
    )
    return TimedAutomaton(
        locations=locations,
        edges=tuple(t.edges) + extra,
        initial=t.initial,
        clocks=t.clocks,
        num_colors=t.num_colors,
        alphabet=alphabet,
        color_names=t.color_names,
    )


def is_bounded(t: TimedAutomaton) -> bool:
    """Every location invariant bounds every clock from above."""
    return all(
        any(a.clock == x and a.op in ("<=", "<", "=") for a in loc.invariant)
        for loc in t.locations
        for x in t.clocks
    )


@dataclass(frozen=True, order=True)
class Region:
    """``point``: {lo}; ``right_open``: [lo, hi); ``left_open``: (lo, hi]."""

    lo: int
    rank: int  # 0 point, 1 right-open, 2 left-open; orders regions left to right
    hi: int

    @property
    def kind(self) -> str:
        return ("point", "right_open", "left_open")[self.rank]

    @staticmethod
    def point(a: int) -> "Region":
        return Region(a, 0, a)

    @staticmethod
    def right_open(a: int, b: int) -> "Region":
        return Region(a, 1, b)

    @staticmethod
    def left_open(a: int, b: int) -> "Region":
        return Region(a, 2, b)

    def __str__(self):
        if self.rank == 0:
            return f"{{{self.lo}}}"
        if self.rank == 1:
            return f"[{self.lo},{self.hi})"
        return f"({self.lo},{self.hi}]"


def clock_constants(t: TimedAutomaton) -> list[int]:
    """Sorted constants of guards, invariants and resets, together with 0 and N."""
    consts = {0, max_constant(t)}
    consts.update(a.k for a in t.atoms())
    for e in t.edges:
        consts.update(v for _, v in e.resets)
    return sorted(consts)


def regions_of(constants: Iterable[int]) -> list[Region]:
    cs = sorted(set(constants))
    out = []
    for a, b in zip(cs, cs[1:]):
        out += [Region.point(a), Region.right_open(a, b), Region.left_open(a, b)]
    if cs:
        out.append(Region.point(cs[-1]))
    return out


def corner_point_regions(t: TimedAutomaton) -> list[Region]:
    return regions_of(clock_constants(t))


def region_implies(r: Region, phi: Iterable[ClockAtom]) -> bool:
    """Whether the clock values of ``r`` satisfy the conjunction ``phi``.

    Points are checked at their value.  Both interval regions between ``a``
    and ``b`` stand for the open interval ``(a, b)``; the bracket only says
    which corner the abstraction charges.  So ``[a, b)`` implies ``x > a``
    and ``(a, b]`` implies ``x < b``.  For non-strict atoms this is the same
    as checking every value of the half-open set.
    """
    for a in phi:
        if r.rank == 0:
            ok = a.holds(r.lo)
        elif a.op in ("<=", "<"):
            ok = r.hi <= a.k
        elif a.op in (">=", ">"):
            ok = r.lo >= a.k
        else:
            ok = False
        if not ok:
            return False
    return True


def corner_point_abstraction(t: TimedAutomaton, *, require_bounded: bool = True) -> WeightedBuchiAutomaton:
    """Finite WBA over admissible (location, region) states reachable from (q0, {0}).

    Colors ``0..k-1`` are the automaton's own; color ``k`` marks the delays
    ``[a, a') -> (a, a']``, which are the only transitions where time elapses.
    """
    check_timed_valid(t, one_clock=True)
    if require_bounded and not is_bounded(t):
        raise ValidationError(["clock is not bounded by every invariant; run bound_clocks first"])
    x = t.clock
    regions = corner_point_regions(t)
    pos = {r: i for i, r in enumerate(regions)}
    tick = 1 << t.num_colors

    def admissible(q: int, r: Region) -> bool:
        return region_implies(r, t.locations[q].invariant)

    out_edges: list[list[int]] = [[] for _ in t.locations]
    for i, e in enumerate(t.edges):
        out_edges[e.src].append(i)

    start = (t.initial, Region.point(0))
    ids = {start: 0}
    order = [start]
    transitions: list[Transition] = []
    todo = deque([start] if admissible(*start) else [])

    def target(state):
        if state not in ids:
            ids[state] = len(order)
            order.append(state)
            todo.append(state)
        return ids[state]

    while todo:
        q, r = state = todo.popleft()
        here = ids[state]
        rate = t.locations[q].rate
        i = pos[r]
        if i + 1 < len(regions):
            nxt = regions[i + 1]
            if admissible(q, nxt):
                if r.rank == 1:
                    transitions.append(Transition(here, target((q, nxt)), rate * (r.hi - r.lo), tick))
                else:
                    transitions.append(Transition(here, target((q, nxt)), 0, 0))
        for ei in out_edges[q]:
            e = t.edges[ei]
            if not region_implies(r, e.guard):
                continue
            k = e.reset_of(x)
            r2 = r if k is None else Region.point(k)
            if admissible(e.dst, r2):
                transitions.append(Transition(here, target((e.dst, r2)), 0, e.colors, e.letter))

    names = None
    if t.color_names is not None:
        names = tuple(t.color_names) + ("tick",)
    return WeightedBuchiAutomaton(
        num_states=len(order),
        initial=0,
        transitions=tuple(transitions),
        num_colors=t.num_colors + 1,
        alphabet=t.alphabet,
        color_names=names,
        state_names=tuple(f"{t.locations[q].name}:{r}" for q, r in order),
    )


def check_timed(t: TimedAutomaton, cfg: EnergyConfig, *, allow_zeno: bool = False) -> Decision:
    """Energy Büchi question for a one-clock WTBA, answered on its abstraction.

    The returned decision carries the abstraction in ``automaton``; its
    witness is a lasso over abstraction transitions.  ``caveat`` is set when
    strict constraints are present.
    """
    check_timed_valid(t, one_clock=True)
    cpa = corner_point_abstraction(bound_clocks(t))
    target = restrict_colors(cpa, all_colors(t.num_colors)) if allow_zeno else cpa
    decision = buchi_energy(target, cfg)
    decision.automaton = cpa
    if has_strict(t):
        decision.caveat = INFIMUM_CAVEAT
    return decision


def make_resets(reset: Optional[int] = None, clock: str = "x", **more: int) -> tuple:
    """Helper for building ``TimedEdge.resets``."""
    pairs = dict(more)
    if reset is not None:
        pairs[clock] = reset
    return tuple(sorted(pairs.items()))


def atoms(pairs: Mapping[str, int] | Iterable[tuple[str, int]], clock: str = "x") -> tuple:
    """``atoms([("<=", 35)])`` -> ``(ClockAtom("<=", 35, "x"),)``."""
    items = pairs.items() if isinstance(pairs, Mapping) else pairs
    return tuple(ClockAtom(op, k, clock) for op, k in items)
