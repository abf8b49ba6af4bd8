"""Counting and enumerating minimal acyclic DFA through parking functions."""
from .automata import (
    ABSORBING,
    AutomatonError,
    Constraint,
    CyclicAutomatonError,
    ExtendedNiAutomaton,
    InitialAutomaton,
    delta_star,
    is_minimal,
    is_simple,
    merge,
    minimize,
    right_language_partition,
    split,
)
from .bijection import BijectionError, zeta, zeta_extended, zeta_extended_inverse, zeta_inverse
from .census import count_adfa, count_extended_ni, count_madfa, count_transition_functions, emit_table
from .oracle import BudgetExceeded, verify_all
from .parking import (
    ParkingFunction,
    ParkingStructureError,
    WeightFunction,
    count_pf,
    count_simple_pf,
    enumerate_pf,
    enumerate_simple_pf,
    is_parking,
)

__version__ = "0.1.0"
