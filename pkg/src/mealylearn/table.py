"""Observation tables shared by L* and OL*.

A cell ``T(s)(e)`` stores the last ``|e|`` outputs of the target on ``s·e``,
i.e. what the target answers to ``e`` after having read ``s``.
"""

from typing import Callable, Optional

from .errors import TableError
from .mealy import EPSILON, MealyMachine, Word


class ObservationTable:
    """Prefixes ``S``, suffixes ``E`` and cells over ``S ∪ S·X``.

    The table fills itself through ``teacher.mq`` whenever it grows and keeps
    the set of output symbols seen so far in ``outputs`` (discovery order).
    ``observer`` is called with the table after every fill.
    """

    def __init__(self, inputs, teacher, observer: Optional[Callable] = None, seed_outputs=()):
        inputs = tuple(inputs)
        if not inputs:
            raise ValueError("input alphabet is empty")
        self.inputs = inputs
        self.teacher = teacher
        self.observer = observer
        self.prefixes = [EPSILON]
        self._prefix_set = {EPSILON}
        self.suffixes = [(a,) for a in inputs]
        self._suffix_set = set(self.suffixes)
        self.cells = {}
        self.outputs = list(dict.fromkeys(seed_outputs))
        self._output_set = set(self.outputs)
        self._order = {a: i for i, a in enumerate(inputs)}
        self.version = 0  # bumped whenever columns are added; keys row caches
        self._rows = {}
        self.fill()

    def shortlex(self, w):
        return len(w), tuple(self._order[a] for a in w)

    def long_prefixes(self):
        """``S·X \\ S`` in S order then input order."""
        out = []
        for s in self.prefixes:
            for a in self.inputs:
                sa = s + (a,)
                if sa not in self._prefix_set:
                    out.append(sa)
        return out

    def row_words(self):
        return self.prefixes + self.long_prefixes()

    def is_indexed(self, w):
        w = tuple(w)
        return w in self._prefix_set or (
            len(w) > 0 and w[:-1] in self._prefix_set and w[-1] in self._order
        )

    def fill(self):
        mq = self.teacher.mq
        for w in self.row_words():
            cells = self.cells.setdefault(w, {})
            n = len(w)
            for e in self.suffixes:
                if e not in cells:
                    out = mq(w + e)[n:]
                    cells[e] = out
                    for y in out:
                        if y not in self._output_set:
                            self._output_set.add(y)
                            self.outputs.append(y)
        if self.observer is not None:
            self.observer(self)

    def add_prefix(self, w):
        w = tuple(w)
        if w in self._prefix_set:
            raise TableError(f"{w} already in S")
        if w[:-1] not in self._prefix_set or not w:
            raise TableError(f"{w} is not in S·X; S must stay prefix-closed")
        self.prefixes.append(w)
        self._prefix_set.add(w)
        self.fill()

    def add_suffix(self, e, fill=True):
        e = tuple(e)
        if not e:
            raise TableError("suffixes must be non-empty")
        if e in self._suffix_set:
            raise TableError(f"{e} already in E")
        self.suffixes.append(e)
        self._suffix_set.add(e)
        self.version += 1
        self._rows.clear()
        if fill:
            self.fill()

    def has_suffix(self, e):
        return tuple(e) in self._suffix_set

    def row(self, w) -> tuple:
        """Cells of ``w`` in suffix insertion order."""
        w = tuple(w)
        r = self._rows.get(w)
        if r is None:
            if not self.is_indexed(w):
                raise TableError(f"{w} is not a row of the table")
            cells = self.cells[w]
            r = tuple(cells[e] for e in self.suffixes)
            self._rows[w] = r
        return r

    def closed_defects(self):
        """Words of ``S·X`` whose row matches no row of ``S``, shortlex sorted."""
        srows = {self.row(s) for s in self.prefixes}
        return sorted((sa for sa in self.long_prefixes() if self.row(sa) not in srows), key=self.shortlex)

    def is_closed(self):
        srows = {self.row(s) for s in self.prefixes}
        return all(self.row(sa) in srows for sa in self.long_prefixes())

    def consistent_defects(self):
        """``(s, s', a, e)`` with equal rows for ``s, s'`` but different cells at ``(sa, e)``."""
        groups = {}
        for s in self.prefixes:
            groups.setdefault(self.row(s), []).append(s)
        defects = []
        for members in groups.values():
            for i, s in enumerate(members):
                for t in members[i + 1:]:
                    for a in self.inputs:
                        ca, ta = self.cells[s + (a,)], self.cells[t + (a,)]
                        defects.extend((s, t, a, e) for e in self.suffixes if ca[e] != ta[e])
        return defects

    def is_consistent(self):
        return not self.consistent_defects()

    def dump(self, views=()) -> str:
        """Plain-text rendering; ``views`` adds one projected block per output symbol."""

        def fmt(w):
            return " ".join(w) if w else "ε"

        header = ["", *(fmt(e) for e in self.suffixes)]
        blocks = []
        for label, cellfmt in [("T", lambda c: " ".join(c))] + [
            (f"T|{y}", lambda c, y=y: "".join("1" if o == y else "0" for o in c)) for y in views
        ]:
            lines = [f"[{label}]", " | ".join(header)]
            for w in self.prefixes:
                lines.append(" | ".join([fmt(w)] + [cellfmt(c) for c in self.row(w)]))
            lines.append("-" * 8)
            for w in self.long_prefixes():
                lines.append(" | ".join([fmt(w)] + [cellfmt(c) for c in self.row(w)]))
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"


def init_table(inputs, teacher, observer=None, seed_outputs=()) -> ObservationTable:
    return ObservationTable(inputs, teacher, observer, seed_outputs)


def build_hypothesis(tab: ObservationTable) -> MealyMachine:
    """The machine whose states are the distinct rows of ``S``."""
    if not tab.is_closed():
        raise TableError("table is not closed")
    names = {}
    for s in tab.prefixes:
        names.setdefault(tab.row(s), f"q{len(names)}")
    if len(names) != len(tab.prefixes) and not tab.is_consistent():
        raise TableError("table is not consistent")
    trans = {}
    for s in tab.prefixes:
        q = names[tab.row(s)]
        if (q, tab.inputs[0]) in trans:
            continue
        for a in tab.inputs:
            trans[(q, a)] = (names[tab.row(s + (a,))], tab.cells[s][(a,)][0])
    return MealyMachine(tuple(names.values()), tab.inputs, tuple(tab.outputs), "q0", trans)


def add_suffixes_until(tab: ObservationTable, w, done: Callable[[], bool]) -> int:
    """Add suffixes of ``w`` to ``E`` shortest first until ``done()`` holds.

    Returns the number of suffixes added. Every suffix of ``w`` ends up in
    ``E`` if ``done`` never fires.
    """
    added = 0
    for i in range(len(w) - 1, -1, -1):
        e = tuple(w[i:])
        if tab.has_suffix(e):
            continue
        tab.add_suffix(e)
        added += 1
        if done():
            break
    return added
