import json
import random
from pathlib import Path

import pytest

from energy_buchi.io import DocumentError, emit_wba, emit_wtba, parse_wba, parse_wtba
from energy_buchi.models import (
    double_check_wba,
    random_wba,
    satellite_timed,
    satellite_wba,
    satellite_with_work,
)
from energy_buchi.timed import ClockAtom, corner_point_abstraction
from energy_buchi.wba import Transition, ValidationError

DATA = Path(__file__).resolve().parent.parent / "data"

SATELLITE_DOC = {
    "alphabet": [],
    "colors": 0,
    "states": 2,
    "initial": 0,
    "transitions": [
        {"src": 0, "dst": 1, "colors": [], "weight": -350},
        {"src": 1, "dst": 0, "colors": [], "weight": 2200},
    ],
}


def test_satellite_document_round_trip():
    a = parse_wba(json.dumps(SATELLITE_DOC).encode())
    assert a.num_states == 2 and a.num_colors == 0
    assert [t.weight for t in a.transitions] == [-350, 2200]
    assert json.loads(emit_wba(a)) == SATELLITE_DOC


def test_missing_initial():
    doc = dict(SATELLITE_DOC)
    del doc["initial"]
    with pytest.raises(DocumentError, match="initial"):
        parse_wba(json.dumps(doc))


def test_errors_carry_positions():
    with pytest.raises(DocumentError) as err:
        parse_wba(b'{"states": 2,\n "initial": }')
    assert err.value.where.startswith("line 2")

    doc = json.loads(json.dumps(SATELLITE_DOC))
    doc["transitions"][1]["weight"] = "a lot"
    with pytest.raises(DocumentError) as err:
        parse_wba(json.dumps(doc))
    assert err.value.where == "$.transitions[1].weight"

    doc["transitions"][1]["weight"] = 3
    doc["transitions"][1]["colors"] = [0]
    with pytest.raises(DocumentError) as err:
        parse_wba(json.dumps(doc))
    assert err.value.where == "$.transitions[1].colors[0]"


def test_structural_errors_are_validation_errors():
    doc = dict(SATELLITE_DOC, initial=5)
    with pytest.raises(ValidationError, match="initial out of range"):
        parse_wba(json.dumps(doc))


def test_unknown_label_rejected():
    doc = json.loads(json.dumps(SATELLITE_DOC))
    doc["transitions"][0]["label"] = "zap"
    with pytest.raises(DocumentError, match="unknown letter"):
        parse_wba(json.dumps(doc))


def _normalize(doc):
    """Fill the optional fields the way the emitter writes them."""
    out = {
        "alphabet": doc.get("alphabet", []),
        "colors": doc.get("colors", 0),
        "states": doc["states"],
        "initial": doc["initial"],
        "transitions": [],
    }
    for key in ("color_names", "state_names"):
        if key in doc:
            out[key] = doc[key]
    for t in doc["transitions"]:
        rec = {"src": t["src"], "dst": t["dst"], "colors": sorted(t.get("colors", [])), "weight": t["weight"]}
        if "label" in t:
            rec["label"] = t["label"]
        out["transitions"].append(rec)
    return out


def _random_document(rng):
    n = rng.randint(1, 5)
    k = rng.randint(0, 3)
    alphabet = ["a", "b", "c"][: rng.randint(0, 3)]
    doc = {"states": n, "initial": rng.randrange(n), "transitions": []}
    if k or rng.random() < 0.5:
        doc["colors"] = k
    if alphabet or rng.random() < 0.5:
        doc["alphabet"] = alphabet
    if k and rng.random() < 0.5:
        doc["color_names"] = [f"m{i}" for i in range(k)]
    if rng.random() < 0.3:
        doc["state_names"] = [f"q{i}" for i in range(n)]
    for _ in range(rng.randint(0, 6)):
        t = {"weight": rng.randint(-50, 50), "dst": rng.randrange(n), "src": rng.randrange(n)}
        colors = [c for c in range(k) if rng.random() < 0.5]
        if colors or rng.random() < 0.5:
            t["colors"] = list(reversed(colors))
        if alphabet and rng.random() < 0.5:
            t["label"] = rng.choice(alphabet)
        doc["transitions"].append(t)
    return doc


def test_round_trip_corpus():
    rng = random.Random(12)
    for _ in range(20):
        doc = _random_document(rng)
        emitted = emit_wba(parse_wba(json.dumps(doc)))
        assert json.loads(emitted) == _normalize(doc)
        assert emit_wba(parse_wba(emitted)) == emitted


def test_parse_emit_identity_on_models():
    rng = random.Random(13)
    models = [satellite_wba(), double_check_wba(), corner_point_abstraction(satellite_timed())]
    models += [random_wba(rng) for _ in range(30)]
    for a in models:
        assert parse_wba(emit_wba(a)) == a


def test_satellite_timed_document():
    t = parse_wtba((DATA / "satellite_timed.json").read_bytes())
    assert t == satellite_timed()
    shadow, sun = t.locations
    assert shadow.invariant == (ClockAtom("<=", 35),) and shadow.rate == -10
    assert sun.invariant == (ClockAtom("<=", 55),) and sun.rate == 40
    assert [e.resets for e in t.edges] == [(("x", 0),), (("x", 0),)]


def test_work_module_document():
    t = parse_wtba((DATA / "satellite_work.json").read_bytes())
    assert t == satellite_with_work()
    assert t.locations[2].rate == -20
    assert t.edges[3].colors == 0b1


def test_wtba_round_trip():
    for t in (satellite_timed(), satellite_with_work()):
        assert parse_wtba(emit_wtba(t)) == t


def test_wtba_reset_absent_means_none():
    doc = json.loads(emit_wtba(satellite_timed()))
    del doc["edges"][0]["reset"]
    t = parse_wtba(json.dumps(doc))
    assert t.edges[0].resets == ()
    assert "reset" not in json.loads(emit_wtba(t))["edges"][0]


def test_two_clocks_parse_but_fail_for_abstraction():
    doc = {
        "clock": ["x", "y"],
        "initial": 0,
        "locations": [{"name": "q", "invariant": [{"clock": "y", "op": "<=", "k": 2}], "rate": 1}],
        "edges": [{"src": 0, "dst": 0, "guard": [{"clock": "x", "op": "=", "k": 1}], "reset": {"x": 0}}],
    }
    t = parse_wtba(json.dumps(doc))
    assert t.clocks == ("x", "y")
    assert parse_wtba(emit_wtba(t)) == t
    with pytest.raises(ValidationError):
        corner_point_abstraction(t)


def test_wtba_atom_errors():
    doc = json.loads(emit_wtba(satellite_timed()))
    doc["locations"][1]["invariant"][0]["op"] = "~"
    with pytest.raises(DocumentError) as err:
        parse_wtba(json.dumps(doc))
    assert err.value.where == "$.locations[1].invariant[0].op"


def test_sample_documents_match_models():
    assert parse_wba((DATA / "satellite.json").read_bytes()) == satellite_wba()
    assert parse_wba((DATA / "double_check.json").read_bytes()) == double_check_wba()


def test_transition_letters_survive():
    doc = dict(SATELLITE_DOC, alphabet=["go"])
    doc["transitions"] = [dict(SATELLITE_DOC["transitions"][0], label="go"), SATELLITE_DOC["transitions"][1]]
    a = parse_wba(json.dumps(doc))
    assert a.transitions[0] == Transition(0, 1, -350, 0, 0)
    assert json.loads(emit_wba(a))["transitions"][0]["label"] == "go"
