"""Output-decomposed active learning of Mealy machines (OL*) with an L* baseline."""

from .errors import AlphabetError, CompositionError, CounterexampleError, SearchLimitError, TableError
from .mealy import (
    EPSILON,
    MealyMachine,
    OutputMap,
    apply_output_map,
    compose,
    equivalent,
    identity_map,
    indicator_map,
    is_jointly_injective,
    isomorphic,
    minimize,
    project,
    run,
    semantics,
)
from .oracle import QueryStats, Teacher, WpConfig
from .table import ObservationTable, build_hypothesis, init_table
from .lstar import LearnResult, run_lstar
from .olstar import run_olstar

__all__ = [
    "AlphabetError",
    "CompositionError",
    "CounterexampleError",
    "SearchLimitError",
    "TableError",
    "EPSILON",
    "MealyMachine",
    "OutputMap",
    "apply_output_map",
    "compose",
    "equivalent",
    "identity_map",
    "indicator_map",
    "is_jointly_injective",
    "isomorphic",
    "minimize",
    "project",
    "run",
    "semantics",
    "QueryStats",
    "Teacher",
    "WpConfig",
    "ObservationTable",
    "build_hypothesis",
    "init_table",
    "LearnResult",
    "run_lstar",
    "run_olstar",
]
