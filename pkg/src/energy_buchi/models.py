"""Small named models and random instance generators."""
from __future__ import annotations

import random

from .timed import ClockAtom, Location, TimedAutomaton, TimedEdge
from .wba import Transition, WeightedBuchiAutomaton


def satellite_wba() -> WeightedBuchiAutomaton:
    """Shadow (state 0) costs 350 units, sun (state 1) yields 2200; no colors."""
    return WeightedBuchiAutomaton(
        num_states=2,
        initial=0,
        transitions=(Transition(0, 1, -350), Transition(1, 0, 2200)),
        state_names=("shadow", "sun"),
    )


def satellite_timed() -> TimedAutomaton:
    """35 minutes of shadow at -10 per minute, 55 minutes of sun at +40."""
    return TimedAutomaton(
        locations=(
            Location("shadow", (ClockAtom("<=", 35),), -10),
            Location("sun", (ClockAtom("<=", 55),), 40),
        ),
        edges=(
            TimedEdge(0, 1, (ClockAtom("=", 35),), (("x", 0),)),
            TimedEdge(1, 0, (ClockAtom("=", 55),), (("x", 0),)),
        ),
    )


def satellite_with_work() -> TimedAutomaton:
    """Satellite plus a 5 minute work phase at -20 whose exit carries color 0."""
    base = satellite_timed()
    return TimedAutomaton(
        locations=base.locations + (Location("work", (ClockAtom("<=", 5),), -20),),
        edges=base.edges
        + (
            TimedEdge(0, 2, (), (("x", 0),)),
            TimedEdge(2, 0, (ClockAtom("=", 5),), (), colors=0b1),
        ),
        num_colors=1,
        color_names=("work",),
    )


BLUE, ORANGE = 0b01, 0b10


def double_check_wba() -> WeightedBuchiAutomaton:
    """Two-color WBA where the first back-edge test fails and one rerun succeeds.

    With c=0, b=30 state 1 is reached with 30, but the only accepting cycle
    returns it with 20; rerunning from credit 20 closes the cycle at 20.
    """
    return WeightedBuchiAutomaton(
        num_states=3,
        initial=0,
        transitions=(
            Transition(0, 1, 30),
            Transition(1, 2, 0),
            Transition(2, 1, -10, ORANGE),
            Transition(2, 2, 1),
            Transition(2, 2, -1, BLUE),
        ),
        num_colors=2,
        color_names=("blue", "orange"),
    )


def pumping_chain(n: int, b: int) -> WeightedBuchiAutomaton:
    """States 0..n; states below n carry a +1 self-loop and pay ``b`` to move on.

    State ``n`` has a -1 self-loop with color 0.  Plain fixed-point iteration
    needs about ``b`` rounds per state here.
    """
    ts = []
    for i in range(n):
        ts.append(Transition(i, i, 1))
        ts.append(Transition(i, i + 1, -b))
    ts.append(Transition(n, n, -1, 0b1))
    return WeightedBuchiAutomaton(num_states=n + 1, initial=0, transitions=tuple(ts), num_colors=1)


def zeno_trap() -> TimedAutomaton:
    """The only accepting cycle is a colored self-loop at x = 0 that lets no time pass.

    A second location with a positive rate exists but is unreachable.
    """
    return TimedAutomaton(
        locations=(
            Location("stuck", (ClockAtom("<=", 0),), 0),
            Location("island", (ClockAtom("<=", 3),), 5),
        ),
        edges=(
            TimedEdge(0, 0, (ClockAtom("=", 0),), (), colors=0b1),
            TimedEdge(1, 1, (ClockAtom("=", 3),), (("x", 0),), colors=0b1),
        ),
        num_colors=1,
    )


def random_wba(
    rng: random.Random,
    *,
    max_states: int = 6,
    max_weight: int = 3,
    max_colors: int = 2,
    colors: int | None = None,
    density: float = 0.5,
) -> WeightedBuchiAutomaton:
    n = rng.randint(1, max_states)
    k = rng.randint(0, max_colors) if colors is None else colors
    p = rng.uniform(0.1, density)
    ts = []
    for s in range(n):
        for d in range(n):
            if rng.random() < p:
                mask = 0
                for c in range(k):
                    if rng.random() < 0.4:
                        mask |= 1 << c
                ts.append(Transition(s, d, rng.randint(-max_weight, max_weight), mask))
    rng.shuffle(ts)
    return WeightedBuchiAutomaton(
        num_states=n, initial=rng.randrange(n), transitions=tuple(ts), num_colors=k
    )
