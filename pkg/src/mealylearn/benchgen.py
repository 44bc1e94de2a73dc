"""Seeded benchmark generators and decomposition profiles."""

import random
from dataclasses import dataclass
from itertools import product

from .mealy import MealyMachine, minimize, project

FAMILIES = ("random", "switching", "interleaving")
SWITCH_INPUTS = ("L", "R")


def _bfs_tree(states0, inputs, trans):
    """Reachable states and the (state, input) edges of a breadth-first spanning tree."""
    seen = {states0}
    tree = set()
    queue = [states0]
    for q in queue:
        for a in inputs:
            nxt = trans[(q, a)][0]
            if nxt not in seen:
                seen.add(nxt)
                tree.add((q, a))
                queue.append(nxt)
    return seen, tree


def gen_random(seed, n_states, inputs, outputs, max_repairs=None) -> MealyMachine:
    """Uniformly random machine with every state reachable from ``q0``.

    Unreachable states are patched in by redirecting random non-tree
    transitions of the reachable part; whatever is still unreachable after
    ``max_repairs`` attempts is pruned.
    """
    if n_states < 1 or not inputs or not outputs:
        raise ValueError("need at least one state, input and output")
    inputs, outputs = tuple(inputs), tuple(outputs)
    rng = random.Random(seed)
    states = [f"q{i}" for i in range(n_states)]
    trans = {(q, a): (rng.choice(states), rng.choice(outputs)) for q in states for a in inputs}
    budget = max_repairs if max_repairs is not None else 100 * n_states
    for _ in range(budget):
        seen, tree = _bfs_tree("q0", inputs, trans)
        missing = [q for q in states if q not in seen]
        if not missing:
            break
        free = [(q, a) for q in states if q in seen for a in inputs if (q, a) not in tree]
        if not free:
            break
        edge = rng.choice(free)
        trans[edge] = (rng.choice(missing), trans[edge][1])
    seen, _ = _bfs_tree("q0", inputs, trans)
    kept = [q for q in states if q in seen]
    return MealyMachine(kept, inputs, outputs, "q0", {(q, a): trans[(q, a)] for q in kept for a in inputs})


@dataclass(frozen=True)
class BenchSpec:
    """A composite benchmark: per-component sizes and alphabets."""

    seed: int
    family: str
    component_sizes: tuple
    inputs_per_component: tuple  # one tuple of symbols per component
    outputs_per_component: tuple
    switch_output: str = "sw"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        k = len(self.component_sizes)
        if k == 0 or any(n < 1 for n in self.component_sizes):
            raise ValueError("component sizes must be positive")
        if len(self.inputs_per_component) != k or len(self.outputs_per_component) != k:
            raise ValueError("one input and output alphabet per component")
        if self.family == "switching":
            if any(set(x) != set(self.inputs_per_component[0]) for x in self.inputs_per_component):
                raise ValueError("switching components must share their inputs")
            if set(self.inputs_per_component[0]) & set(SWITCH_INPUTS):
                raise ValueError("L and R are reserved for switching")
            _require_disjoint(self.outputs_per_component, "outputs")
            if any(self.switch_output in ys for ys in self.outputs_per_component):
                raise ValueError(f"{self.switch_output!r} is reserved for switch inputs")
        if self.family == "interleaving":
            _require_disjoint(self.inputs_per_component, "inputs")

    def component_seeds(self):
        rng = random.Random(self.seed)
        return [rng.randrange(2**32) for _ in self.component_sizes]

    def components(self):
        return [
            gen_random(s, n, xs, ys)
            for s, n, xs, ys in zip(
                self.component_seeds(),
                self.component_sizes,
                self.inputs_per_component,
                self.outputs_per_component,
            )
        ]


def _require_disjoint(alphabets, what):
    seen = set()
    for alpha in alphabets:
        if seen & set(alpha):
            raise ValueError(f"component {what} must be pairwise disjoint")
        seen |= set(alpha)


def switching_spec(seed, sizes, n_outputs=2, inputs=("a", "b")) -> BenchSpec:
    k = len(sizes)
    outputs = tuple(tuple(f"o{i}_{j}" for j in range(n_outputs)) for i in range(k))
    return BenchSpec(seed, "switching", tuple(sizes), (tuple(inputs),) * k, outputs)


def interleaving_spec(seed, sizes, n_inputs=2, n_outputs=2, shared_outputs=True) -> BenchSpec:
    k = len(sizes)
    inputs = tuple(tuple(f"i{i}_{j}" for j in range(n_inputs)) for i in range(k))
    if shared_outputs:
        outputs = (tuple(f"o{j}" for j in range(n_outputs)),) * k
    else:
        outputs = tuple(tuple(f"o{i}_{j}" for j in range(n_outputs)) for i in range(k))
    return BenchSpec(seed, "interleaving", tuple(sizes), inputs, outputs)


def _state_name(parts):
    return "_".join(str(p) for p in parts)


def gen_switching(spec: BenchSpec) -> MealyMachine:
    """Components share ``a, b``; ``L``/``R`` move the active index and emit ``spec.switch_output``.

    Inactive components keep their state, so the product has
    ``k · Π n_j`` states.
    """
    if spec.family != "switching":
        raise ValueError("spec is not a switching benchmark")
    comps = spec.components()
    k = len(comps)
    inputs = tuple(spec.inputs_per_component[0]) + SWITCH_INPUTS
    outputs = tuple(y for ys in spec.outputs_per_component for y in ys) + (spec.switch_output,)
    trans = {}
    states = []
    for active in range(k):
        for joint in product(*(c.states for c in comps)):
            q = _state_name((active,) + joint)
            states.append(q)
            for a in spec.inputs_per_component[0]:
                nxt, out = comps[active].transitions[(joint[active], a)]
                moved = joint[:active] + (nxt,) + joint[active + 1:]
                trans[(q, a)] = (_state_name((active,) + moved), out)
            trans[(q, "L")] = (_state_name(((active - 1) % k,) + joint), spec.switch_output)
            trans[(q, "R")] = (_state_name(((active + 1) % k,) + joint), spec.switch_output)
    initial = _state_name((0,) + tuple(c.initial for c in comps))
    return MealyMachine(states, inputs, outputs, initial, trans)


def gen_interleaving(spec: BenchSpec) -> MealyMachine:
    """Parallel interleaving: each input steps only the component that owns it."""
    if spec.family != "interleaving":
        raise ValueError("spec is not an interleaving benchmark")
    comps = spec.components()
    owner = {a: i for i, xs in enumerate(spec.inputs_per_component) for a in xs}
    inputs = tuple(a for xs in spec.inputs_per_component for a in xs)
    outputs = tuple(dict.fromkeys(y for ys in spec.outputs_per_component for y in ys))
    trans = {}
    states = []
    for joint in product(*(c.states for c in comps)):
        q = _state_name(joint)
        states.append(q)
        for a in inputs:
            i = owner[a]
            nxt, out = comps[i].transitions[(joint[i], a)]
            trans[(q, a)] = (_state_name(joint[:i] + (nxt,) + joint[i + 1:]), out)
    initial = _state_name(tuple(c.initial for c in comps))
    return MealyMachine(states, inputs, outputs, initial, trans)


def generate(spec: BenchSpec) -> MealyMachine:
    if spec.family == "switching":
        return gen_switching(spec)
    if spec.family == "interleaving":
        return gen_interleaving(spec)
    (n,), (xs,), (ys,) = spec.component_sizes, spec.inputs_per_component, spec.outputs_per_component
    return gen_random(spec.seed, n, xs, ys)


def decomposition_profile(m: MealyMachine) -> dict:
    sizes = {y: len(minimize(project(m, y))) for y in m.outputs}
    return {"projections": sizes, "total": sum(sizes.values()), "original": len(minimize(m))}
