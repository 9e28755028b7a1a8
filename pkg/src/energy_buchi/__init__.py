"""Energy-bounded Büchi acceptance for weighted (timed) Büchi automata."""
from .buchi import BackEdgeCheck, Decision, buchi_energy, verify_lasso
from .energy import NEG_INF, MaxEnergy, find_max_e
from .io import DocumentError, emit_wba, emit_wtba, parse_wba, parse_wtba
from .oracle import OracleLimitError, brute_force, brute_force_max_e
from .scc import degeneralize_full, degeneralize_scc, find_sccs
from .timed import (
    ClockAtom,
    Location,
    Region,
    TimedAutomaton,
    TimedEdge,
    bound_clocks,
    check_timed,
    corner_point_abstraction,
)
from .wba import (
    EnergyConfig,
    Lasso,
    Run,
    Transition,
    ValidationError,
    WeightedBuchiAutomaton,
    accumulate,
    is_feasible,
    validate,
)

__all__ = [
    "BackEdgeCheck",
    "ClockAtom",
    "Decision",
    "DocumentError",
    "EnergyConfig",
    "Lasso",
    "Location",
    "MaxEnergy",
    "NEG_INF",
    "OracleLimitError",
    "Region",
    "Run",
    "TimedAutomaton",
    "TimedEdge",
    "Transition",
    "ValidationError",
    "WeightedBuchiAutomaton",
    "accumulate",
    "bound_clocks",
    "brute_force",
    "brute_force_max_e",
    "buchi_energy",
    "check_timed",
    "corner_point_abstraction",
    "degeneralize_full",
    "degeneralize_scc",
    "emit_wba",
    "emit_wtba",
    "find_max_e",
    "find_sccs",
    "is_feasible",
    "parse_wba",
    "parse_wtba",
    "validate",
    "verify_lasso",
]
