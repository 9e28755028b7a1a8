"""Weighted transition-based generalized Büchi automata and (c, b)-energy runs.

Color sets are plain ``int`` bitmasks: bit ``i`` set means color ``i``.
Weights, credits and bounds are Python ints, so there is no overflow to
guard against; very large inputs only cost time and memory.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

ColorSet = int


def colors_of(mask: ColorSet) -> list[int]:
    """Indices of the colors present in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def color_mask(indices: Iterable[int]) -> ColorSet:
    mask = 0
    for i in indices:
        if i < 0:
            raise ValueError(f"negative color index {i}")
        mask |= 1 << i
    return mask


def all_colors(k: int) -> ColorSet:
    return (1 << k) - 1


class ValidationError(ValueError):
    """Raised when an automaton or document violates its structural rules.

    ``problems`` holds one message per violation.
    """

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class Transition:
    src: int
    dst: int
    weight: int = 0
    colors: ColorSet = 0
    letter: Optional[int] = None


@dataclass(frozen=True)
class WeightedBuchiAutomaton:
    """A finite WBA with states ``0..num_states-1``.

    With ``num_colors == 0`` the acceptance condition is vacuous and every
    infinite run is accepted.  Letters are carried along but never consulted
    by the decision procedures.
    """

    num_states: int
    initial: int
    transitions: tuple[Transition, ...]
    num_colors: int = 0
    alphabet: tuple[str, ...] = ()
    color_names: Optional[tuple[str, ...]] = None
    state_names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))

    @property
    def accepting_mask(self) -> ColorSet:
        return all_colors(self.num_colors)

    def outgoing(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_states)]
        for i, t in enumerate(self.transitions):
            out[t.src].append(i)
        return out

    def state_label(self, s: int) -> str:
        if self.state_names is not None:
            return self.state_names[s]
        return str(s)


def validate(a: WeightedBuchiAutomaton) -> list[str]:
    """Return the list of structural problems of ``a`` (empty when ok)."""
    problems = []
    n = a.num_states
    if n < 1:
        problems.append("automaton needs at least one state")
    if a.num_colors < 0:
        problems.append("color count must be >= 0")
    if not 0 <= a.initial < n:
        problems.append(f"initial out of range: {a.initial}")
    if a.color_names is not None and len(a.color_names) != a.num_colors:
        problems.append("color_names length differs from color count")
    if a.state_names is not None and len(a.state_names) != n:
        problems.append("state_names length differs from state count")
    limit = a.accepting_mask
    for i, t in enumerate(a.transitions):
        if not 0 <= t.src < n:
            problems.append(f"transition {i}: src out of range: {t.src}")
        if not 0 <= t.dst < n:
            problems.append(f"transition {i}: dst out of range: {t.dst}")
        if t.colors < 0 or t.colors & ~limit:
            problems.append(f"transition {i}: color index out of range")
        if t.letter is not None and not 0 <= t.letter < len(a.alphabet):
            problems.append(f"transition {i}: letter out of range: {t.letter}")
        if not isinstance(t.weight, int) or isinstance(t.weight, bool):
            problems.append(f"transition {i}: weight must be an integer")
    return problems


def check_valid(a: WeightedBuchiAutomaton) -> None:
    problems = validate(a)
    if problems:
        raise ValidationError(problems)


def restrict_colors(a: WeightedBuchiAutomaton, keep: ColorSet) -> WeightedBuchiAutomaton:
    """Project the acceptance condition onto the colors in ``keep``.

    Kept colors are renumbered densely in index order; transition ids and
    weights are unchanged.
    """
    kept = [i for i in colors_of(keep) if i < a.num_colors]
    remap = {old: new for new, old in enumerate(kept)}

    def project(mask: ColorSet) -> ColorSet:
        return color_mask(remap[i] for i in colors_of(mask) if i in remap)

    names = None
    if a.color_names is not None:
        names = tuple(a.color_names[i] for i in kept)
    return WeightedBuchiAutomaton(
        num_states=a.num_states,
        initial=a.initial,
        transitions=tuple(
            Transition(t.src, t.dst, t.weight, project(t.colors), t.letter)
            for t in a.transitions
        ),
        num_colors=len(kept),
        alphabet=a.alphabet,
        color_names=names,
        state_names=a.state_names,
    )


@dataclass(frozen=True)
class EnergyConfig:
    """Initial credit ``credit`` and weak upper bound ``bound``."""

    credit: int
    bound: int

    def __post_init__(self):
        for name in ("credit", "bound"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"{name} must be a natural number, got {v!r}")

    @property
    def start(self) -> int:
        return min(self.bound, self.credit)


def accumulate(weights: Iterable[int], cfg: EnergyConfig) -> list[int]:
    """(c, b)-accumulated weights: ``m`` weights give ``m + 1`` energies.

    Only the upper bound clamps; negative values are returned as they are.
    """
    b = cfg.bound
    e = cfg.start
    out = [e]
    for w in weights:
        e = min(b, e + w)
        out.append(e)
    return out


def is_feasible(weights: Iterable[int], cfg: EnergyConfig) -> bool:
    return all(e >= 0 for e in accumulate(weights, cfg))


@dataclass(frozen=True)
class Run:
    """A finite run: a start state and the ids of the transitions taken."""

    start: int
    transitions: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(self.transitions))

    def __len__(self):
        return len(self.transitions)

    def end(self, a: WeightedBuchiAutomaton) -> int:
        if not self.transitions:
            return self.start
        return a.transitions[self.transitions[-1]].dst

    def weights(self, a: WeightedBuchiAutomaton) -> list[int]:
        return [a.transitions[i].weight for i in self.transitions]

    def colors(self, a: WeightedBuchiAutomaton) -> ColorSet:
        mask = 0
        for i in self.transitions:
            mask |= a.transitions[i].colors
        return mask

    def problems(self, a: WeightedBuchiAutomaton) -> list[str]:
        out = []
        if not 0 <= self.start < a.num_states:
            return [f"run start out of range: {self.start}"]
        here = self.start
        for pos, i in enumerate(self.transitions):
            if not 0 <= i < len(a.transitions):
                return out + [f"step {pos}: unknown transition {i}"]
            t = a.transitions[i]
            if t.src != here:
                out.append(f"step {pos}: transition {i} leaves {t.src}, run is at {here}")
            here = t.dst
        return out


@dataclass(frozen=True)
class Lasso:
    """The infinite run ``prefix . cycle^omega``."""

    prefix: Run
    cycle: Run

    def problems(self, a: WeightedBuchiAutomaton) -> list[str]:
        out = [f"prefix: {p}" for p in self.prefix.problems(a)]
        out += [f"cycle: {p}" for p in self.cycle.problems(a)]
        if out:
            return out
        if not self.cycle.transitions:
            out.append("cycle is empty")
        if self.prefix.start != a.initial:
            out.append("prefix does not start in the initial state")
        if self.prefix.end(a) != self.cycle.start:
            out.append("prefix does not end where the cycle starts")
        if self.cycle.end(a) != self.cycle.start:
            out.append("cycle does not close")
        return out

    def unrolled(self, repetitions: int = 2) -> list[int]:
        """Transition ids of the prefix followed by ``repetitions`` cycle laps."""
        return list(self.prefix.transitions) + list(self.cycle.transitions) * repetitions

