import pytest
from hypothesis import given
from hypothesis import strategies as st

from energy_buchi.models import satellite_wba
from energy_buchi.wba import (
    EnergyConfig,
    Lasso,
    Run,
    Transition,
    ValidationError,
    WeightedBuchiAutomaton,
    accumulate,
    check_valid,
    color_mask,
    colors_of,
    is_feasible,
    restrict_colors,
    validate,
)

SAT = (-350, 2200, -350, 2200)


def test_accumulate_satellite_trace():
    assert accumulate(SAT, EnergyConfig(360, 750)) == [360, 10, 750, 400, 750]


def test_accumulate_empty_starts_at_min():
    assert accumulate((), EnergyConfig(5, 3)) == [3]


def test_accumulate_tight_bound():
    assert accumulate((-350, 2200), EnergyConfig(350, 350)) == [350, 0, 350]


def test_accumulate_keeps_negative_values():
    assert accumulate((-4, 10), EnergyConfig(3, 9)) == [3, -1, 9]


def test_is_feasible_threshold():
    assert is_feasible(SAT, EnergyConfig(360, 750))
    assert not is_feasible(SAT, EnergyConfig(349, 750))
    assert is_feasible((0, 0, 0), EnergyConfig(0, 0))


def test_energy_config_rejects_negative():
    with pytest.raises(ValueError):
        EnergyConfig(-1, 3)
    with pytest.raises(ValueError):
        EnergyConfig(1, -3)
    assert EnergyConfig(9, 4).start == 4


weights = st.lists(st.integers(-8, 8), max_size=12)


@given(weights, st.integers(0, 20), st.integers(0, 20), st.integers(0, 20))
def test_accumulate_monotone_and_capped(ws, c1, c2, b):
    lo, hi = sorted((c1, c2))
    e1 = accumulate(ws, EnergyConfig(lo, b))
    e2 = accumulate(ws, EnergyConfig(hi, b))
    assert all(x <= y for x, y in zip(e1, e2))
    assert max(e1 + e2) <= b
    if is_feasible(ws, EnergyConfig(lo, b)):
        assert is_feasible(ws, EnergyConfig(hi, b))


def test_validate_satellite_clean():
    assert validate(satellite_wba()) == []


def test_validate_reports_initial():
    a = WeightedBuchiAutomaton(2, 5, (Transition(0, 1, 1),))
    problems = validate(a)
    assert any("initial out of range" in p for p in problems)
    with pytest.raises(ValidationError):
        check_valid(a)


def test_validate_reports_color_index():
    a = WeightedBuchiAutomaton(2, 0, (Transition(0, 1, 1, colors=0b1000),), num_colors=2)
    assert any("color index out of range" in p for p in validate(a))


def test_validate_reports_endpoints_and_names():
    a = WeightedBuchiAutomaton(
        2, 0, (Transition(0, 3, 1), Transition(-1, 0, 1)), state_names=("a",), num_colors=1, color_names=()
    )
    assert len(validate(a)) >= 3


def test_color_masks():
    assert colors_of(0b101) == [0, 2]
    assert color_mask([2, 0]) == 0b101


def test_restrict_colors_renumbers():
    a = WeightedBuchiAutomaton(
        1, 0, (Transition(0, 0, 0, 0b110),), num_colors=3, color_names=("r", "g", "b")
    )
    r = restrict_colors(a, 0b100)
    assert r.num_colors == 1
    assert r.transitions[0].colors == 0b1
    assert r.color_names == ("b",)


def test_run_and_lasso_checks():
    a = satellite_wba()
    assert Run(0, (0, 1)).problems(a) == []
    assert Run(0, (1,)).problems(a)
    good = Lasso(Run(0, ()), Run(0, (0, 1)))
    assert good.problems(a) == []
    assert good.unrolled(2) == [0, 1, 0, 1]
    assert Lasso(Run(0, ()), Run(0, (0,))).problems(a)
    assert Lasso(Run(1, ()), Run(0, (0, 1))).problems(a)
    assert Lasso(Run(0, ()), Run(0, ())).problems(a)
