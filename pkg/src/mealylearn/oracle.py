"""Simulated teacher: cached, counted membership queries and equivalence oracles."""

import random
from dataclasses import dataclass, replace
from typing import Optional, Union

from .errors import AlphabetError
from .mealy import MealyMachine, Word, access_sequences, equivalent, minimize, refinement_levels


@dataclass
class QueryStats:
    mq_count: int = 0
    mq_symbols: int = 0
    test_count: int = 0
    test_symbols: int = 0
    eq_count: int = 0

    @property
    def total_symbols(self):
        return self.mq_symbols + self.test_symbols

    @property
    def total_queries(self):
        return self.mq_count + self.test_count

    def copy(self) -> "QueryStats":
        return replace(self)


@dataclass(frozen=True)
class WpConfig:
    """Randomised Wp-method parameters.

    ``depth_bound`` caps the length of the random infix between access
    sequence and characterising suffix.
    """

    random_seed: int = 0
    max_tests: int = 2000
    expected_random_middle_length: float = 3.0
    depth_bound: int = 20

    def __post_init__(self):
        if self.max_tests < 1 or self.expected_random_middle_length <= 0 or self.depth_bound < 1:
            raise ValueError(f"invalid Wp parameters: {self}")


def separating_word(m: MealyMachine, levels, p, q) -> Word:
    """Shortest word on which states ``p`` and ``q`` of ``m`` produce different outputs."""
    trans = m.transitions
    word = []
    while True:
        k = next(i for i, lv in enumerate(levels) if lv[p] != lv[q])
        if k == 0:
            word.append(next(a for a in m.inputs if trans[(p, a)][1] != trans[(q, a)][1]))
            return tuple(word)
        below = levels[k - 1]
        a = next(a for a in m.inputs if below[trans[(p, a)][0]] != below[trans[(q, a)][0]])
        word.append(a)
        p, q = trans[(p, a)][0], trans[(q, a)][0]


def _outputs_from(m, q, w):
    out = []
    for a in w:
        q, y = m.transitions[(q, a)]
        out.append(y)
    return tuple(out)


def characterization(m: MealyMachine):
    """Global characterising set and per-state identifiers of a minimal machine.

    Built as a splitting tree: every inner node holds one separating word, the
    global set is all node words, and a state's identifier set is the words on
    its root-to-leaf path.
    """
    levels = refinement_levels(m)
    global_set = []
    local = {q: [] for q in m.states}
    stack = [list(m.states)]
    while stack:
        block = stack.pop()
        if len(block) < 2:
            continue
        w = separating_word(m, levels, block[0], block[1])
        global_set.append(w)
        parts = {}
        for q in block:
            local[q].append(w)
            parts.setdefault(_outputs_from(m, q, w), []).append(q)
        stack.extend(reversed(list(parts.values())))
    return global_set, local


def wp_tests(h: MealyMachine, cfg: WpConfig, rng: random.Random):
    """Endless stream of randomised Wp test words for hypothesis ``h``.

    Each word is access sequence · random infix · characterising suffix. ``h``
    should be minimal (``eq_random_wp`` minimises before calling).
    """
    access = access_sequences(h)
    states = list(access)
    global_set, local = characterization(h)
    if not global_set:
        global_set = [(a,) for a in h.inputs]
        local = {q: global_set for q in states}
    stop = 1.0 / (cfg.expected_random_middle_length + 1.0)
    inputs = h.inputs
    while True:
        q = rng.choice(states)
        middle = []
        while len(middle) < cfg.depth_bound and rng.random() >= stop:
            middle.append(rng.choice(inputs))
        r = q
        for a in middle:
            r = h.transitions[(r, a)][0]
        if rng.random() < 0.5:
            suffix = rng.choice(global_set)
        else:
            suffix = rng.choice(local[r])
        yield access[q] + tuple(middle) + suffix


class Teacher:
    """Minimally adequate teacher over a hidden target machine.

    ``oracle`` selects how :meth:`eq` is answered: ``"exact"`` or a
    :class:`WpConfig` for randomised Wp testing. Membership and test queries
    have separate caches; a cached word is never counted twice.
    """

    def __init__(self, target: MealyMachine, oracle: Union[str, WpConfig] = "exact"):
        if oracle != "exact" and not isinstance(oracle, WpConfig):
            raise ValueError(f"unknown oracle {oracle!r}")
        self.target = target
        self.oracle = oracle
        self.stats = QueryStats()
        self.learn_cache = {}
        self.test_cache = {}
        self._rng = random.Random(oracle.random_seed) if isinstance(oracle, WpConfig) else None

    @property
    def inputs(self):
        return self.target.inputs

    def _evaluate(self, w):
        q = self.target.initial
        trans = self.target.transitions
        out = []
        for a in w:
            q, y = trans[(q, a)]
            out.append(y)
        return tuple(out)

    def mq(self, w) -> Word:
        w = tuple(w)
        hit = self.learn_cache.get(w)
        if hit is not None:
            return hit
        self.target.check_word(w)
        out = self._evaluate(w)
        self.learn_cache[w] = out
        self.stats.mq_count += 1
        self.stats.mq_symbols += len(w)
        return out

    def test(self, w) -> Word:
        """Test query issued by the equivalence oracle (own cache and counters)."""
        w = tuple(w)
        hit = self.test_cache.get(w)
        if hit is not None:
            return hit
        self.target.check_word(w)
        out = self._evaluate(w)
        self.test_cache[w] = out
        self.stats.test_count += 1
        self.stats.test_symbols += len(w)
        return out

    def _check_hypothesis(self, h):
        if set(h.inputs) != set(self.target.inputs):
            raise AlphabetError("hypothesis input alphabet differs from target")

    def eq(self, h: MealyMachine) -> Optional[Word]:
        if self.oracle == "exact":
            return self.eq_exact(h)
        return self.eq_random_wp(h, self.oracle)

    def eq_exact(self, h: MealyMachine) -> Optional[Word]:
        self._check_hypothesis(h)
        self.stats.eq_count += 1
        return equivalent(self.target, h)

    def eq_random_wp(self, h: MealyMachine, cfg: Optional[WpConfig] = None) -> Optional[Word]:
        self._check_hypothesis(h)
        cfg = cfg or (self.oracle if isinstance(self.oracle, WpConfig) else WpConfig())
        if self._rng is None:
            self._rng = random.Random(cfg.random_seed)
        self.stats.eq_count += 1
        hm = minimize(h)
        tests = wp_tests(hm, cfg, self._rng)
        for _ in range(cfg.max_tests):
            w = next(tests)
            expected = self.test(w)
            q = hm.initial
            for i, a in enumerate(w):
                q, y = hm.transitions[(q, a)]
                if y != expected[i]:
                    return w[: i + 1]
        return None

    def snapshot_stats(self) -> QueryStats:
        return self.stats.copy()
