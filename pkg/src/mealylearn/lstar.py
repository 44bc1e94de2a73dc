"""Classic L* for Mealy machines."""

from dataclasses import dataclass, field
from typing import Optional

from .errors import CounterexampleError
from .mealy import MealyMachine, semantics
from .oracle import QueryStats
from .table import ObservationTable, add_suffixes_until, build_hypothesis, init_table


@dataclass
class LearnResult:
    machine: MealyMachine
    stats: QueryStats  # the final, successful equivalence query's tests excluded
    table: ObservationTable
    rounds: int = 0
    components: Optional[dict] = field(default=None)


def process_counterexample(tab: ObservationTable, w, teacher):
    """Grow ``E`` with suffixes of ``w`` until the table is unclosed or the hypothesis agrees on ``w``."""
    w = tuple(w)
    expected = teacher.mq(w)
    if semantics(build_hypothesis(tab), w) == expected:
        raise CounterexampleError(f"{w} is not a counterexample")

    def done():
        return not tab.is_closed() or semantics(build_hypothesis(tab), w) == expected

    return add_suffixes_until(tab, w, done)


def close_table(tab: ObservationTable):
    while True:
        defects = tab.closed_defects()
        if not defects:
            return
        tab.add_prefix(defects[0])


def run_lstar(inputs, teacher, observer=None, max_rounds=None) -> LearnResult:
    tab = init_table(inputs, teacher, observer)
    rounds = 0
    while True:
        close_table(tab)
        h = build_hypothesis(tab)
        before = teacher.snapshot_stats()
        cex = teacher.eq(h)
        rounds += 1
        if cex is None:
            before.eq_count = teacher.stats.eq_count
            return LearnResult(h, before, tab, rounds)
        if max_rounds is not None and rounds >= max_rounds:
            raise RuntimeError(f"no convergence within {max_rounds} equivalence queries")
        process_counterexample(tab, cex, teacher)
