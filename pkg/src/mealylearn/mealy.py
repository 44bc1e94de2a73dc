"""Mealy machines and their output algebra.

Words are tuples of symbols (strings); the empty word is ``()``. Machines are
immutable; every operation here returns a new machine.
"""

from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

from .errors import AlphabetError, CompositionError, SearchLimitError

Word = tuple
EPSILON: Word = ()
BITS = ("0", "1")


@dataclass(frozen=True, eq=False)
class MealyMachine:
    """A completely specified deterministic Mealy machine.

    ``transitions`` maps ``(state, input)`` to ``(next_state, output)``.
    """

    states: tuple
    inputs: tuple
    outputs: tuple
    initial: str
    transitions: Mapping = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "transitions", MappingProxyType(dict(self.transitions)))
        state_set = frozenset(self.states)
        input_set = frozenset(self.inputs)
        output_set = frozenset(self.outputs)
        if len(state_set) != len(self.states):
            raise ValueError("duplicate state names")
        if len(input_set) != len(self.inputs) or len(output_set) != len(self.outputs):
            raise AlphabetError("duplicate alphabet symbols")
        if not self.inputs:
            raise AlphabetError("input alphabet is empty")
        if self.initial not in state_set:
            raise ValueError(f"initial state {self.initial!r} is not a state")
        for q in self.states:
            for a in self.inputs:
                try:
                    nxt, out = self.transitions[(q, a)]
                except KeyError:
                    raise ValueError(f"missing transition for ({q!r}, {a!r})") from None
                if nxt not in state_set:
                    raise ValueError(f"transition ({q!r}, {a!r}) targets unknown state {nxt!r}")
                if out not in output_set:
                    raise AlphabetError(f"output {out!r} not in output alphabet")
        if len(self.transitions) != len(self.states) * len(self.inputs):
            raise ValueError("transitions mention unknown states or inputs")
        object.__setattr__(self, "_input_set", input_set)

    @classmethod
    def from_table(cls, inputs, outputs, initial, rows):
        """Build from ``(state, input, next_state, output)`` rows; states ordered by first appearance as source."""
        rows = list(rows)
        states = {initial: None}
        transitions = {}
        for q, a, nxt, out in rows:
            states.setdefault(q, None)
            transitions[(q, a)] = (nxt, out)
        for _, _, nxt, _ in rows:
            states.setdefault(nxt, None)
        return cls(tuple(states), tuple(inputs), tuple(outputs), initial, transitions)

    def __len__(self):
        return len(self.states)

    def step(self, q, a):
        return self.transitions[(q, a)]

    def check_word(self, w):
        for a in w:
            if a not in self._input_set:
                raise AlphabetError(f"input symbol {a!r} not in alphabet {self.inputs}")

    def rows(self):
        """Transitions as ``(state, input, next_state, output)`` in state and input order."""
        for q in self.states:
            for a in self.inputs:
                nxt, out = self.transitions[(q, a)]
                yield q, a, nxt, out


@dataclass(frozen=True, eq=False)
class OutputMap:
    """A total function between output alphabets."""

    domain: tuple
    codomain: tuple
    table: Mapping

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "codomain", tuple(self.codomain))
        object.__setattr__(self, "table", MappingProxyType(dict(self.table)))
        cod = set(self.codomain)
        for y in self.domain:
            if y not in self.table:
                raise AlphabetError(f"output map is not total: {y!r} unmapped")
            if self.table[y] not in cod:
                raise AlphabetError(f"{self.table[y]!r} not in codomain {self.codomain}")

    def __call__(self, y):
        try:
            return self.table[y]
        except KeyError:
            raise AlphabetError(f"{y!r} not in domain of output map") from None

    def then(self, g: "OutputMap") -> "OutputMap":
        """The map ``g ∘ self``."""
        return OutputMap(self.domain, g.codomain, {y: g(self(y)) for y in self.domain})


def identity_map(alphabet) -> OutputMap:
    alphabet = tuple(alphabet)
    return OutputMap(alphabet, alphabet, {y: y for y in alphabet})


def indicator_map(y, alphabet) -> OutputMap:
    """The map sending ``y`` to ``"1"`` and every other symbol to ``"0"``."""
    alphabet = tuple(alphabet)
    if y not in alphabet:
        raise AlphabetError(f"{y!r} not in {alphabet}")
    return OutputMap(alphabet, BITS, {z: "1" if z == y else "0" for z in alphabet})


def run(m: MealyMachine, start, w) -> tuple:
    """Return ``(state reached, output word)`` for reading ``w`` from ``start``."""
    if start not in m.states:
        raise ValueError(f"{start!r} is not a state")
    m.check_word(w)
    q = start
    out = []
    trans = m.transitions
    for a in w:
        q, y = trans[(q, a)]
        out.append(y)
    return q, tuple(out)


def semantics(m: MealyMachine, w) -> Word:
    return run(m, m.initial, w)[1]


def apply_output_map(m: MealyMachine, f: OutputMap) -> MealyMachine:
    dom = set(f.domain)
    missing = [y for y in m.outputs if y not in dom]
    if missing:
        raise AlphabetError(f"output map undefined on {missing}")
    trans = {k: (nxt, f(out)) for k, (nxt, out) in m.transitions.items()}
    return MealyMachine(m.states, m.inputs, f.codomain, m.initial, trans)


def project(m: MealyMachine, y) -> MealyMachine:
    """Projection onto output ``y``: outputs become ``"1"`` exactly where ``y`` was emitted."""
    if y not in m.outputs:
        raise AlphabetError(f"{y!r} not in outputs {m.outputs}")
    return apply_output_map(m, indicator_map(y, m.outputs))


def is_jointly_injective(maps: Sequence[OutputMap]) -> bool:
    maps = list(maps)
    if not maps:
        raise AlphabetError("empty family of output maps")
    domain = maps[0].domain
    for f in maps[1:]:
        if set(f.domain) != set(domain):
            raise AlphabetError("output maps do not share a domain")
    images = {tuple(f(y) for f in maps) for y in domain}
    return len(images) == len(domain)


def compose(parts, target_outputs, max_states: Optional[int] = None) -> MealyMachine:
    """Rebuild a machine over ``target_outputs`` from ``(machine, map)`` components.

    Only the reachable part of the product is built. Raises ``CompositionError``
    with the offending access word if some joint transition has no candidate
    output or several.
    """
    parts = list(parts)
    target_outputs = tuple(target_outputs)
    if not parts:
        raise ValueError("nothing to compose")
    inputs = parts[0][0].inputs
    for m, f in parts:
        if set(m.inputs) != set(inputs):
            raise AlphabetError("components do not share an input alphabet")
        if set(f.domain) != set(target_outputs):
            raise AlphabetError("output map domain differs from target outputs")
        if not set(m.outputs) <= set(f.codomain):
            raise AlphabetError("component outputs not covered by map codomain")
    candidates = {}
    for y in target_outputs:
        candidates.setdefault(tuple(f(y) for _, f in parts), []).append(y)
    machines = [m for m, _ in parts]

    start = tuple(m.initial for m in machines)
    index = {start: 0}
    access = {start: EPSILON}
    queue = deque([start])
    trans = {}
    while queue:
        joint = queue.popleft()
        for a in inputs:
            steps = [m.transitions[(q, a)] for m, q in zip(machines, joint)]
            ys = candidates.get(tuple(out for _, out in steps), [])
            word = access[joint] + (a,)
            if not ys:
                raise CompositionError("zero-output", word)
            if len(ys) > 1:
                raise CompositionError("ambiguous", word)
            nxt = tuple(q for q, _ in steps)
            if nxt not in index:
                index[nxt] = len(index)
                access[nxt] = word
                queue.append(nxt)
                if max_states is not None and len(index) > max_states:
                    raise SearchLimitError(len(index), max_states)
            trans[(f"q{index[joint]}", a)] = (f"q{index[nxt]}", ys[0])
    states = tuple(f"q{i}" for i in range(len(index)))
    return MealyMachine(states, inputs, target_outputs, "q0", trans)


def access_sequences(m: MealyMachine) -> dict:
    """Shortest access word of every reachable state, in breadth-first order."""
    acc = {m.initial: EPSILON}
    queue = deque([m.initial])
    while queue:
        q = queue.popleft()
        for a in m.inputs:
            nxt = m.transitions[(q, a)][0]
            if nxt not in acc:
                acc[nxt] = acc[q] + (a,)
                queue.append(nxt)
    return acc


def reachable(m: MealyMachine) -> MealyMachine:
    """Restriction to reachable states, states renamed ``q0, q1, ...`` in breadth-first order."""
    order = list(access_sequences(m))
    name = {q: f"q{i}" for i, q in enumerate(order)}
    trans = {}
    for q in order:
        for a in m.inputs:
            nxt, out = m.transitions[(q, a)]
            trans[(name[q], a)] = (name[nxt], out)
    return MealyMachine(tuple(name[q] for q in order), m.inputs, m.outputs, "q0", trans)


def refinement_levels(m: MealyMachine) -> list:
    """Moore partition refinement on ``m``'s states.

    Returns a list of dicts ``state -> block id``; level k separates exactly the
    states distinguishable by some word of length ≤ k+1. The last level is stable.
    """
    states = m.states
    trans = m.transitions
    ids = {}
    block = {}
    for q in states:
        sig = tuple(trans[(q, a)][1] for a in m.inputs)
        block[q] = ids.setdefault(sig, len(ids))
    levels = [block]
    while True:
        prev = levels[-1]
        ids = {}
        block = {}
        for q in states:
            sig = (prev[q],) + tuple(prev[trans[(q, a)][0]] for a in m.inputs)
            block[q] = ids.setdefault(sig, len(ids))
        if len(ids) == len(set(prev.values())):
            return levels
        levels.append(block)


def minimize(m: MealyMachine) -> MealyMachine:
    """Reachable, observably minimal equivalent of ``m``."""
    r = reachable(m)
    block = refinement_levels(r)[-1]
    # name blocks by the breadth-first position of their first state
    names = {}
    for q in r.states:
        names.setdefault(block[q], f"q{len(names)}")
    trans = {}
    for q in r.states:
        for a in r.inputs:
            nxt, out = r.transitions[(q, a)]
            trans[(names[block[q]], a)] = (names[block[nxt]], out)
    return reachable(MealyMachine(tuple(names.values()), r.inputs, r.outputs, "q0", trans))


def equivalent(m1: MealyMachine, m2: MealyMachine) -> Optional[Word]:
    """``None`` if both machines have the same semantics, else a shortest distinguishing word."""
    if set(m1.inputs) != set(m2.inputs):
        raise AlphabetError("machines have different input alphabets")
    start = (m1.initial, m2.initial)
    access = {start: EPSILON}
    queue = deque([start])
    t1, t2 = m1.transitions, m2.transitions
    while queue:
        p, q = pair = queue.popleft()
        for a in m1.inputs:
            n1, o1 = t1[(p, a)]
            n2, o2 = t2[(q, a)]
            if o1 != o2:
                return access[pair] + (a,)
            nxt = (n1, n2)
            if nxt not in access:
                access[nxt] = access[pair] + (a,)
                queue.append(nxt)
    return None


def isomorphic(m1: MealyMachine, m2: MealyMachine) -> bool:
    """Equal up to renaming of reachable states (no minimisation)."""
    if set(m1.inputs) != set(m2.inputs):
        return False
    pairing = {m1.initial: m2.initial}
    queue = deque([m1.initial])
    while queue:
        p = queue.popleft()
        q = pairing[p]
        for a in m1.inputs:
            n1, o1 = m1.transitions[(p, a)]
            n2, o2 = m2.transitions[(q, a)]
            if o1 != o2:
                return False
            if n1 in pairing:
                if pairing[n1] != n2:
                    return False
            else:
                pairing[n1] = n2
                queue.append(n1)
    return len(set(pairing.values())) == len(pairing) == len(access_sequences(m2))


def words(alphabet: Iterable, max_length: int):
    """All words over ``alphabet`` up to ``max_length``, shortest first."""
    alphabet = tuple(alphabet)
    layer = [EPSILON]
    yield EPSILON
    for _ in range(max_length):
        layer = [w + (a,) for w in layer for a in alphabet]
        yield from layer
