"""JSON documents for WBA and one-clock WTBA.

WBA::

    {"alphabet": ["a"], "colors": 1, "states": 2, "initial": 0,
     "transitions": [{"src": 0, "dst": 1, "label": "a", "colors": [0], "weight": -3}]}

WTBA::

    {"alphabet": [], "colors": 0, "clock": "x", "initial": 0,
     "locations": [{"name": "shadow", "invariant": [{"op": "<=", "k": 35}], "rate": -10}],
     "edges": [{"src": 0, "dst": 1, "colors": [], "guard": [{"op": "=", "k": 35}], "reset": 0}]}

Optional keys: ``color_names`` and ``state_names`` (display only), ``label``
on transitions and edges, ``reset`` on edges (absent means no reset).
``clock`` may also be a list of names; atoms and resets then name their
clock explicitly (``{"clock": "y", "op": "<", "k": 3}``, ``"reset": {"y": 0}``).
"""
from __future__ import annotations

import json
from typing import Any, Optional, Union

from .timed import OPS, ClockAtom, Location, TimedAutomaton, TimedEdge, validate_timed
from .wba import Transition, ValidationError, WeightedBuchiAutomaton, color_mask, colors_of, validate


class DocumentError(ValueError):
    """Malformed document; ``where`` locates the problem."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


Source = Union[bytes, str]


def _load(data: Source) -> dict:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentError(f"byte {exc.start}", "document is not UTF-8") from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(obj, dict):
        raise DocumentError("$", "top level must be an object")
    return obj


def _dump(obj: dict) -> bytes:
    return (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _get(obj: dict, key: str, where: str, kind, default: Any = ...):
    if key not in obj:
        if default is ...:
            raise DocumentError(where, f"missing field {key!r}")
        return default
    value = obj[key]
    if kind is int and (not isinstance(value, int) or isinstance(value, bool)):
        raise DocumentError(f"{where}.{key}", f"expected an integer, got {value!r}")
    if kind is not int and not isinstance(value, kind):
        raise DocumentError(f"{where}.{key}", f"expected {kind.__name__}, got {value!r}")
    return value


def _names(obj: dict, key: str, where: str) -> Optional[tuple]:
    names = _get(obj, key, where, list, None)
    if names is None:
        return None
    for i, x in enumerate(names):
        if not isinstance(x, str):
            raise DocumentError(f"{where}.{key}[{i}]", "expected a string")
    return tuple(names)


def _colors(obj: dict, where: str, k: int) -> int:
    idx = _get(obj, "colors", where, list, [])
    for i, c in enumerate(idx):
        if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < k:
            raise DocumentError(f"{where}.colors[{i}]", f"color index out of range: {c!r}")
    return color_mask(idx)


def _label(obj: dict, where: str, alphabet: tuple) -> Optional[int]:
    label = _get(obj, "label", where, str, None)
    if label is None:
        return None
    if label not in alphabet:
        raise DocumentError(f"{where}.label", f"unknown letter {label!r}")
    return alphabet.index(label)


def _raise_validation(problems: list[str]):
    if problems:
        raise ValidationError(problems)


def parse_wba(data: Source) -> WeightedBuchiAutomaton:
    obj = _load(data)
    alphabet = _names(obj, "alphabet", "$") or ()
    k = _get(obj, "colors", "$", int, 0)
    n = _get(obj, "states", "$", int)
    initial = _get(obj, "initial", "$", int)
    transitions = []
    for i, rec in enumerate(_get(obj, "transitions", "$", list)):
        where = f"$.transitions[{i}]"
        if not isinstance(rec, dict):
            raise DocumentError(where, "expected an object")
        transitions.append(
            Transition(
                src=_get(rec, "src", where, int),
                dst=_get(rec, "dst", where, int),
                weight=_get(rec, "weight", where, int),
                colors=_colors(rec, where, k),
                letter=_label(rec, where, alphabet),
            )
        )
    a = WeightedBuchiAutomaton(
        num_states=n,
        initial=initial,
        transitions=tuple(transitions),
        num_colors=k,
        alphabet=alphabet,
        color_names=_names(obj, "color_names", "$"),
        state_names=_names(obj, "state_names", "$"),
    )
    _raise_validation(validate(a))
    return a


def wba_document(a: WeightedBuchiAutomaton) -> dict:
    doc: dict = {"alphabet": list(a.alphabet), "colors": a.num_colors}
    if a.color_names is not None:
        doc["color_names"] = list(a.color_names)
    doc["states"] = a.num_states
    if a.state_names is not None:
        doc["state_names"] = list(a.state_names)
    doc["initial"] = a.initial
    recs = []
    for t in a.transitions:
        rec: dict = {"src": t.src, "dst": t.dst}
        if t.letter is not None:
            rec["label"] = a.alphabet[t.letter]
        rec["colors"] = colors_of(t.colors)
        rec["weight"] = t.weight
        recs.append(rec)
    doc["transitions"] = recs
    return doc


def emit_wba(a: WeightedBuchiAutomaton) -> bytes:
    return _dump(wba_document(a))


def _atoms(obj: dict, key: str, where: str, clocks: tuple) -> tuple:
    out = []
    for i, rec in enumerate(_get(obj, key, where, list, [])):
        w = f"{where}.{key}[{i}]"
        if not isinstance(rec, dict):
            raise DocumentError(w, "expected an object")
        op = _get(rec, "op", w, str)
        if op == "==":
            op = "="
        if op not in OPS:
            raise DocumentError(f"{w}.op", f"unknown operator {op!r}")
        k = _get(rec, "k", w, int)
        if k < 0:
            raise DocumentError(f"{w}.k", "constant must be a natural number")
        clock = _get(rec, "clock", w, str, None)
        if clock is None:
            if len(clocks) != 1:
                raise DocumentError(w, "atom must name its clock")
            clock = clocks[0]
        out.append(ClockAtom(op, k, clock))
    return tuple(out)


def _resets(rec: dict, where: str, clocks: tuple) -> tuple:
    if "reset" not in rec or rec["reset"] is None:
        return ()
    r = rec["reset"]
    if isinstance(r, int) and not isinstance(r, bool):
        if len(clocks) != 1:
            raise DocumentError(f"{where}.reset", "reset must name its clock")
        pairs = {clocks[0]: r}
    elif isinstance(r, dict):
        pairs = r
    else:
        raise DocumentError(f"{where}.reset", f"expected an integer or object, got {r!r}")
    for c, v in pairs.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise DocumentError(f"{where}.reset", f"reset value must be a natural number, got {v!r}")
    return tuple(sorted(pairs.items()))


def parse_wtba(data: Source) -> TimedAutomaton:
    obj = _load(data)
    alphabet = _names(obj, "alphabet", "$") or ()
    k = _get(obj, "colors", "$", int, 0)
    clock = obj.get("clock", "x")
    if isinstance(clock, str):
        clocks: tuple = (clock,)
    elif isinstance(clock, list) and all(isinstance(c, str) for c in clock):
        clocks = tuple(clock)
    else:
        raise DocumentError("$.clock", "expected a clock name or a list of names")
    locations = []
    for i, rec in enumerate(_get(obj, "locations", "$", list)):
        where = f"$.locations[{i}]"
        if not isinstance(rec, dict):
            raise DocumentError(where, "expected an object")
        locations.append(
            Location(
                name=_get(rec, "name", where, str, str(i)),
                invariant=_atoms(rec, "invariant", where, clocks),
                rate=_get(rec, "rate", where, int),
            )
        )
    edges = []
    for i, rec in enumerate(_get(obj, "edges", "$", list)):
        where = f"$.edges[{i}]"
        if not isinstance(rec, dict):
            raise DocumentError(where, "expected an object")
        edges.append(
            TimedEdge(
                src=_get(rec, "src", where, int),
                dst=_get(rec, "dst", where, int),
                guard=_atoms(rec, "guard", where, clocks),
                resets=_resets(rec, where, clocks),
                colors=_colors(rec, where, k),
                letter=_label(rec, where, alphabet),
            )
        )
    t = TimedAutomaton(
        locations=tuple(locations),
        edges=tuple(edges),
        initial=_get(obj, "initial", "$", int),
        clocks=clocks,
        num_colors=k,
        alphabet=alphabet,
        color_names=_names(obj, "color_names", "$"),
    )
    _raise_validation(validate_timed(t))
    return t


def wtba_document(t: TimedAutomaton) -> dict:
    single = len(t.clocks) == 1

    def atoms(phi) -> list:
        out = []
        for a in phi:
            rec: dict = {} if single else {"clock": a.clock}
            rec.update(op=a.op, k=a.k)
            out.append(rec)
        return out

    doc: dict = {"alphabet": list(t.alphabet), "colors": t.num_colors}
    if t.color_names is not None:
        doc["color_names"] = list(t.color_names)
    doc["clock"] = t.clocks[0] if single else list(t.clocks)
    doc["locations"] = [
        {"name": loc.name, "invariant": atoms(loc.invariant), "rate": loc.rate} for loc in t.locations
    ]
    doc["initial"] = t.initial
    recs = []
    for e in t.edges:
        rec: dict = {"src": e.src, "dst": e.dst}
        if e.letter is not None:
            rec["label"] = t.alphabet[e.letter]
        rec["colors"] = colors_of(e.colors)
        rec["guard"] = atoms(e.guard)
        if e.resets:
            rec["reset"] = e.resets[0][1] if single else dict(e.resets)
        recs.append(rec)
    doc["edges"] = recs
    return doc


def emit_wtba(t: TimedAutomaton) -> bytes:
    return _dump(wtba_document(t))
