import random

import pytest
from hypothesis import given, settings

from conftest import machines, random_machine
from mealylearn.errors import AlphabetError
from mealylearn.mealy import MealyMachine, compose, indicator_map, minimize, project, semantics
from mealylearn.oracle import QueryStats, Teacher, WpConfig, characterization, wp_tests
from test_mealy import flip_output


def constant(inputs, y):
    return MealyMachine(("q0",), inputs, (y,), "q0", {("q0", a): ("q0", y) for a in inputs})


def test_fresh_stats_are_zero(m_fig2):
    assert Teacher(m_fig2).snapshot_stats() == QueryStats()


def test_mq_counts_once(m_fig2):
    t = Teacher(m_fig2)
    assert t.mq(("a",)) == ("y",)
    assert (t.stats.mq_count, t.stats.mq_symbols) == (1, 1)
    t.mq(("a",))
    assert (t.stats.mq_count, t.stats.mq_symbols) == (1, 1)
    t.mq(("a", "b", "a"))
    assert (t.stats.mq_count, t.stats.mq_symbols) == (2, 4)
    assert t.mq(()) == ()


def test_mq_length_three():
    t = Teacher(random_machine(1))
    w = (t.inputs[0],) * 3
    t.mq(w)
    assert t.snapshot_stats() == QueryStats(mq_count=1, mq_symbols=3)


def test_mq_unknown_symbol(m_fig2):
    with pytest.raises(AlphabetError):
        Teacher(m_fig2).mq(("c",))


def test_caches_are_separate(m_fig2):
    t = Teacher(m_fig2)
    t.mq(("a", "b"))
    t.test(("a", "b"))
    assert t.stats.mq_count == 1 and t.stats.test_count == 1
    t.test(("a", "b"))
    assert t.stats.test_count == 1
    assert set(t.learn_cache) == set(t.test_cache) == {("a", "b")}


def test_eq_exact(m_fig2):
    t = Teacher(m_fig2)
    assert t.eq_exact(m_fig2) is None
    parts = [(project(m_fig2, y), indicator_map(y, m_fig2.outputs)) for y in m_fig2.outputs]
    assert t.eq_exact(compose(parts, m_fig2.outputs)) is None
    cex = t.eq_exact(constant(m_fig2.inputs, "x"))
    assert cex == ("a",)
    assert t.stats.eq_count == 3


def test_eq_alphabet_mismatch(m_fig2):
    with pytest.raises(AlphabetError):
        Teacher(m_fig2).eq_exact(constant(("a",), "x"))


def test_wp_accepts_target(m_fig2):
    cfg = WpConfig(random_seed=3, max_tests=300)
    t = Teacher(m_fig2, cfg)
    assert t.eq(m_fig2) is None
    assert 0 < t.stats.test_count <= 300


def test_wp_finds_flipped_output(m_fig2):
    for seed in range(5):
        h = flip_output(m_fig2, "q4", "b", "x")
        t = Teacher(m_fig2, WpConfig(random_seed=seed, max_tests=100_000))
        w = t.eq(h)
        assert w is not None
        assert semantics(m_fig2, w) != semantics(h, w)


def test_wp_test_sequence_is_deterministic(m_fig2):
    cfg = WpConfig(random_seed=11)

    def draw():
        gen = wp_tests(minimize(m_fig2), cfg, random.Random(cfg.random_seed))
        return [next(gen) for _ in range(200)]

    assert draw() == draw()
    t1, t2 = Teacher(m_fig2, cfg), Teacher(m_fig2, cfg)
    h = flip_output(m_fig2, "q1", "b", "z")
    assert t1.eq(h) == t2.eq(h)
    assert list(t1.test_cache) == list(t2.test_cache)


@settings(max_examples=50)
@given(machines(max_states=8))
def test_characterization_separates_all_states(m):
    mm = minimize(m)
    global_set, local = characterization(mm)
    assert len(global_set) <= max(len(mm) - 1, 0)

    def signature(q, ws):
        out = []
        for w in ws:
            r, o = q, []
            for a in w:
                r, y = mm.transitions[(r, a)]
                o.append(y)
            out.append(tuple(o))
        return tuple(out)

    assert len({signature(q, global_set) for q in mm.states}) == len(mm)
    for q in mm.states:
        for r in mm.states:
            if r != q:
                assert signature(q, local[q]) != signature(r, local[q])


@settings(max_examples=30)
@given(machines(max_states=6))
def test_returned_counterexamples_are_sound(m):
    h = flip_output(m, m.initial, m.inputs[0], m.outputs[-1])
    t = Teacher(m, WpConfig(max_tests=500))
    w = t.eq(h)
    if w is not None:
        assert semantics(m, w) != semantics(h, w)
    # every word evaluated on the target sits in exactly one of the caches' key sets
    assert t.stats.test_count == len(t.test_cache)
