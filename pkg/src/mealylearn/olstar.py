"""OL*: learning one {0,1}-output component per observed output from a shared table.

The table's outputs ``Y`` grow as new symbols show up in cells. For each
``y ∈ Y`` the table is viewed through the indicator of ``y``; learning runs
until every view is closed and consistent, the resulting components agree
that exactly one of them fires on every input, and the recomposed machine
passes the equivalence query.
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import repeat

from .errors import CounterexampleError, SearchLimitError, TableError
from .lstar import LearnResult
from .mealy import EPSILON, MealyMachine, compose, indicator_map, semantics
from .table import ObservationTable, add_suffixes_until, build_hypothesis

DEFAULT_PRODUCT_CAP = 10**6


@lru_cache(maxsize=1 << 16)  # tables repeat a small number of distinct cells
def project_cell(cell, y):
    return tuple("1" if o == y else "0" for o in cell)


def _cache(tab):
    cache = tab.__dict__.get("_projected")
    if cache is None or cache[0] != tab.version:
        cache = (tab.version, {})
        tab.__dict__["_projected"] = cache
    return cache[1]


def projected_row(tab: ObservationTable, y, s) -> tuple:
    """Row of ``s`` with every cell passed through the indicator of ``y``."""
    cache = _cache(tab)
    key = (y, s)
    r = cache.get(key)
    if r is None:
        r = tuple(map(project_cell, tab.row(s), repeat(y)))
        cache[key] = r
    return r


@dataclass(frozen=True)
class ProjectedView:
    """The table seen through the indicator of ``output``; no storage of its own."""

    base: ObservationTable
    output: str

    def row(self, s):
        return projected_row(self.base, self.output, tuple(s))

    def cell(self, s, e):
        return project_cell(self.base.cells[tuple(s)][tuple(e)], self.output)


@dataclass
class DefectReport:
    closedness: list = field(default_factory=list)  # (y, sa)
    consistency: list = field(default_factory=list)  # (y, s, s', a, e)

    def __bool__(self):
        return bool(self.closedness or self.consistency)


def _groups(tab, y):
    groups = {}
    for s in tab.prefixes:
        groups.setdefault(projected_row(tab, y, s), []).append(s)
    return groups


def output_defects(tab: ObservationTable) -> DefectReport:
    report = DefectReport()
    long = tab.long_prefixes()
    for y in tab.outputs:
        groups = _groups(tab, y)
        report.closedness.extend((y, sa) for sa in long if projected_row(tab, y, sa) not in groups)
        for members in groups.values():
            if len(members) < 2:
                continue
            for a in tab.inputs:
                succ = [projected_row(tab, y, s + (a,)) for s in members]
                if len(set(succ)) < 2:
                    continue
                for i, s in enumerate(members):
                    for j in range(i + 1, len(members)):
                        if succ[i] == succ[j]:
                            continue
                        t = members[j]
                        cs, ct = tab.cells[s + (a,)], tab.cells[t + (a,)]
                        report.consistency.extend(
                            (y, s, t, a, e)
                            for e in tab.suffixes
                            if project_cell(cs[e], y) != project_cell(ct[e], y)
                        )
    return report


def has_output_defects(tab: ObservationTable) -> bool:
    long = tab.long_prefixes()
    for y in tab.outputs:
        groups = _groups(tab, y)
        if any(projected_row(tab, y, sa) not in groups for sa in long):
            return True
        for members in groups.values():
            if len(members) > 1:
                for a in tab.inputs:
                    if len({projected_row(tab, y, s + (a,)) for s in members}) > 1:
                        return True
    return False


def row_fix_scores(tab: ObservationTable, report: DefectReport) -> dict:
    """For each closedness defect word: how many closedness defects promoting it would fix."""
    pending = Counter((y, projected_row(tab, y, sa)) for y, sa in report.closedness)
    ys = list(dict.fromkeys(y for y, _ in report.closedness))
    candidates = dict.fromkeys(sa for _, sa in report.closedness)
    return {c: sum(pending.get((y, projected_row(tab, y, c)), 0) for y in ys) for c in candidates}


def column_fix_scores(tab: ObservationTable, report: DefectReport) -> dict:
    """For each candidate suffix ``a·e``: how many consistency defects adding it would fix."""
    pairs = Counter((y, s, t) for y, s, t, _, _ in report.consistency)
    scores = {}
    for a, e in dict.fromkeys((a, e) for _, _, _, a, e in report.consistency):
        # the new cell at s is T(s)(a)·T(sa)(e), and the T(s)(a) part agrees within a pair
        scores[(a,) + e] = sum(
            n
            for (y, s, t), n in pairs.items()
            if project_cell(tab.cells[s + (a,)][e], y) != project_cell(tab.cells[t + (a,)][e], y)
        )
    return scores


def _best(tab, scores):
    return min(scores, key=lambda c: (-scores[c], tab.shortlex(c)))


def select_row_fix(tab: ObservationTable, report: DefectReport):
    """The defect word whose promotion to ``S`` matches the most closedness defects."""
    if not report.closedness:
        raise TableError("no closedness defects to fix")
    return _best(tab, row_fix_scores(tab, report))


def select_column_fix(tab: ObservationTable, report: DefectReport):
    """The new suffix ``a·e`` that separates the most consistency defects."""
    if not report.consistency:
        raise TableError("no consistency defects to fix")
    return _best(tab, column_fix_scores(tab, report))


def repair_output_defects(tab: ObservationTable):
    """Greedy loop until the table is output-closed and output-consistent."""
    while True:
        report = output_defects(tab)
        if not report:
            return
        if report.closedness:
            tab.add_prefix(select_row_fix(tab, report))
            report = output_defects(tab)
        if report.consistency:
            tab.add_suffix(select_column_fix(tab, report))


@dataclass
class ComponentFamily:
    components: dict  # output symbol -> MealyMachine over {"0", "1"}

    @property
    def sizes(self):
        return {y: len(m) for y, m in self.components.items()}


def build_components(tab: ObservationTable) -> ComponentFamily:
    if output_defects(tab):
        raise TableError("table is not output-closed and output-consistent")
    components = {}
    for y in tab.outputs:
        names = {}
        reps = []
        for s in tab.prefixes:
            r = projected_row(tab, y, s)
            if r not in names:
                names[r] = f"q{len(names)}"
                reps.append(s)
        trans = {}
        for s in reps:
            q = names[projected_row(tab, y, s)]
            for a in tab.inputs:
                nxt = names[projected_row(tab, y, s + (a,))]
                trans[(q, a)] = (nxt, "1" if tab.cells[s][(a,)][0] == y else "0")
        components[y] = MealyMachine(tuple(names.values()), tab.inputs, ("0", "1"), "q0", trans)
    return ComponentFamily(components)


def component_consistency_witness(fam: ComponentFamily, max_states=DEFAULT_PRODUCT_CAP):
    """Shortest word after which zero or several components output 1, or ``None``."""
    machines = list(fam.components.values())
    if not machines:
        raise ValueError("empty component family")
    inputs = machines[0].inputs
    start = tuple(m.initial for m in machines)
    access = {start: EPSILON}
    queue = deque([start])
    while queue:
        joint = queue.popleft()
        for a in inputs:
            steps = [m.transitions[(q, a)] for m, q in zip(machines, joint)]
            word = access[joint] + (a,)
            if sum(out == "1" for _, out in steps) != 1:
                return word
            nxt = tuple(q for q, _ in steps)
            if nxt not in access:
                if len(access) >= max_states:
                    raise SearchLimitError(len(access), max_states)
                access[nxt] = word
                queue.append(nxt)
    return None


def family_agrees(fam: ComponentFamily, w, expected=None) -> bool:
    """Exactly one component fires at each step of ``w`` (and it is ``expected[i]``, if given)."""
    state = {y: m.initial for y, m in fam.components.items()}
    for i, a in enumerate(w):
        firing = []
        for y, m in fam.components.items():
            state[y], out = m.transitions[(state[y], a)]
            if out == "1":
                firing.append(y)
        if len(firing) != 1:
            return False
        if expected is not None and firing[0] != expected[i]:
            return False
    return True


def recompose(fam: ComponentFamily, outputs=None) -> MealyMachine:
    outputs = tuple(outputs if outputs is not None else fam.components)
    return compose([(m, indicator_map(y, outputs)) for y, m in fam.components.items()], outputs)


def _hypothesis_agrees(tab, w, expected):
    if tab.is_closed():
        return semantics(build_hypothesis(tab), w) == expected
    return family_agrees(build_components(tab), w, expected)


def process_counterexample(tab: ObservationTable, w, teacher, hypothesis=None):
    w = tuple(w)
    expected = teacher.mq(w)
    if hypothesis is not None and semantics(hypothesis, w) == expected:
        raise CounterexampleError(f"{w} is not a counterexample")

    def done():
        return has_output_defects(tab) or _hypothesis_agrees(tab, w, expected)

    return add_suffixes_until(tab, w, done)


def process_witness(tab: ObservationTable, w):
    def done():
        return has_output_defects(tab) or tab.is_closed() or family_agrees(build_components(tab), w)

    return add_suffixes_until(tab, w, done)


def run_olstar(
    inputs,
    teacher,
    observer=None,
    seed_outputs=(),
    max_product_states=DEFAULT_PRODUCT_CAP,
    max_rounds=None,
) -> LearnResult:
    tab = ObservationTable(inputs, teacher, observer, seed_outputs)
    rounds = 0
    while True:
        repair_output_defects(tab)
        if tab.is_closed():
            h = build_hypothesis(tab)
        else:
            fam = build_components(tab)
            w = component_consistency_witness(fam, max_product_states)
            if w is not None:
                if process_witness(tab, w) == 0:
                    raise RuntimeError(f"component witness {w} already fully covered by E")
                continue
            h = recompose(fam, tab.outputs)
        before = teacher.snapshot_stats()
        cex = teacher.eq(h)
        rounds += 1
        if cex is None:
            before.eq_count = teacher.stats.eq_count
            fam = build_components(tab)
            return LearnResult(h, before, tab, rounds, fam.components)
        if max_rounds is not None and rounds >= max_rounds:
            raise RuntimeError(f"no convergence within {max_rounds} equivalence queries")
        process_counterexample(tab, cex, teacher, h)


def table_law_violations(tab: ObservationTable) -> list:
    """Check the closedness/consistency implications and the exactly-one-bit law on ``tab``."""
    problems = []
    report = output_defects(tab)
    if tab.is_closed() and report.closedness:
        problems.append("closed but not output-closed")
    if not report.consistency and not tab.is_consistent():
        problems.append("output-consistent but not consistent")
    ys = tab.outputs
    for w in tab.row_words():
        for e, cell in tab.cells[w].items():
            for i in range(len(cell)):
                ones = sum(project_cell(cell, y)[i] == "1" for y in ys)
                if ones != 1:
                    problems.append(f"cell ({w}, {e}) position {i} has {ones} set bits")
    return problems
