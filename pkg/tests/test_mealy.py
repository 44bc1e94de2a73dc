import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import machines, random_machine
from mealylearn.errors import AlphabetError, CompositionError
from mealylearn.mealy import (
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
    reachable,
    run,
    semantics,
    words,
)


def flip_output(m, q, a, new):
    trans = dict(m.transitions)
    trans[(q, a)] = (trans[(q, a)][0], new)
    return MealyMachine(m.states, m.inputs, m.outputs, m.initial, trans)


def brute_force_distinguishing(m1, m2, max_len):
    for w in words(m1.inputs, max_len):
        if semantics(m1, w) != semantics(m2, w):
            return w
    return None


def test_run_examples(m_fig2):
    assert run(m_fig2, "q0", ()) == ("q0", ())
    assert run(m_fig2, "q0", ("a", "a", "a")) == ("q0", ("y", "z", "x"))
    # q0 -b/x-> q3 -a/z-> q5 in the drawn machine
    assert run(m_fig2, "q0", ("b", "a")) == ("q5", ("x", "z"))


def test_run_rejects_unknown_symbol(m_fig2):
    with pytest.raises(AlphabetError):
        run(m_fig2, "q0", ("c",))


def test_semantics(m_fig2):
    assert semantics(m_fig2, ("a",)) == ("y",)
    assert semantics(m_fig2, ()) == ()


@given(machines(), st.lists(st.sampled_from("abc"), max_size=10))
def test_semantics_length(m, w):
    w = tuple(a for a in w if a in m.inputs)
    assert len(semantics(m, w)) == len(w)


def test_machine_rejects_partial():
    with pytest.raises(ValueError):
        MealyMachine(("q0",), ("a", "b"), ("x",), "q0", {("q0", "a"): ("q0", "x")})


def test_indicator_map():
    f = indicator_map("x", ("x", "y", "z"))
    assert [f(s) for s in "xyz"] == ["1", "0", "0"]
    assert indicator_map("y", ("y",))("y") == "1"
    with pytest.raises(AlphabetError):
        indicator_map("w", ("x", "y"))


def test_joint_injectivity():
    ys = ("x", "y", "z")
    assert is_jointly_injective([indicator_map(y, ys) for y in ys])
    assert is_jointly_injective([identity_map(ys)])
    assert not is_jointly_injective([indicator_map("x", ys)])
    with pytest.raises(AlphabetError):
        is_jointly_injective([indicator_map("x", ys), indicator_map("x", ("x", "y"))])


def test_apply_identity_and_indicator(m_fig2):
    same = apply_output_map(m_fig2, identity_map(m_fig2.outputs))
    assert equivalent(same, m_fig2) is None
    px = apply_output_map(m_fig2, indicator_map("x", m_fig2.outputs))
    assert len(px) == 6
    assert semantics(px, ("a", "a", "a")) == ("0", "0", "1")


def test_apply_output_map_needs_total_map(m_fig2):
    partial = OutputMap(("x", "y"), ("0",), {"x": "0", "y": "0"})
    with pytest.raises(AlphabetError):
        apply_output_map(m_fig2, partial)


def test_output_maps_commute_with_semantics():
    rng = random.Random(7)
    for seed in range(100):
        m = random_machine(seed)
        codomain = ("p", "q", "r")[: rng.randint(1, 3)]
        f = OutputMap(m.outputs, codomain, {y: rng.choice(codomain) for y in m.outputs})
        mf = apply_output_map(m, f)
        for w in words(m.inputs, 6 if len(m.inputs) < 3 else 5):
            assert semantics(mf, w) == tuple(f(y) for y in semantics(m, w))


@settings(max_examples=60)
@given(machines(max_states=6), st.data())
def test_functor_law(m, data):
    mid = ("p", "q")
    f = OutputMap(m.outputs, mid, {y: data.draw(st.sampled_from(mid)) for y in m.outputs})
    g = OutputMap(mid, ("0", "1"), {"p": data.draw(st.sampled_from("01")), "q": data.draw(st.sampled_from("01"))})
    lhs = apply_output_map(apply_output_map(m, f), g)
    rhs = apply_output_map(m, f.then(g))
    for w in words(m.inputs, 6 if len(m.inputs) < 3 else 4):
        assert semantics(lhs, w) == semantics(rhs, w)


@settings(max_examples=60)
@given(machines(max_states=6), st.data())
def test_projection_semantics(m, data):
    y = data.draw(st.sampled_from(m.outputs))
    p = project(m, y)
    for w in words(m.inputs, 6 if len(m.inputs) < 3 else 4):
        assert semantics(p, w) == tuple("1" if o == y else "0" for o in semantics(m, w))


def test_fig2_projections(m_fig2, m_fig2_x):
    px = minimize(project(m_fig2, "x"))
    assert len(px) == 3
    assert isomorphic(px, m_fig2_x)
    assert len(minimize(project(m_fig2, "y"))) == 3
    assert len(minimize(project(m_fig2, "z"))) == 3
    with pytest.raises(AlphabetError):
        project(m_fig2, "w")


def test_project_single_output_machine():
    m = random_machine(3, max_outputs=1)
    assert len(minimize(project(m, m.outputs[0]))) == 1


def test_compose_reconstructs_fig2(m_fig2):
    parts = [(project(m_fig2, y), indicator_map(y, m_fig2.outputs)) for y in m_fig2.outputs]
    assert equivalent(compose(parts, m_fig2.outputs), m_fig2) is None
    minimal = [(minimize(project(m_fig2, y)), indicator_map(y, m_fig2.outputs)) for y in m_fig2.outputs]
    rebuilt = compose(minimal, m_fig2.outputs)
    assert equivalent(rebuilt, m_fig2) is None
    assert len(minimize(rebuilt)) == 6


def test_compose_identity(m_fig2):
    out = compose([(m_fig2, identity_map(m_fig2.outputs))], m_fig2.outputs)
    assert isomorphic(out, m_fig2)


def test_compose_zero_output(m_fig2):
    ys = m_fig2.outputs
    px = minimize(project(m_fig2, "x"))
    # initial state no longer says x on b: nobody claims the b-step from q0
    bad_x = flip_output(px, px.initial, "b", "0")
    parts = [(bad_x, indicator_map("x", ys))] + [
        (minimize(project(m_fig2, y)), indicator_map(y, ys)) for y in ("y", "z")
    ]
    with pytest.raises(CompositionError) as info:
        compose(parts, ys)
    assert info.value.kind == "zero-output"
    assert info.value.word == ("b",)


def test_compose_ambiguous(m_fig2):
    ys = m_fig2.outputs
    collapse = OutputMap(ys, ("u",), {y: "u" for y in ys})
    const = apply_output_map(m_fig2, collapse)
    with pytest.raises(CompositionError) as info:
        compose([(const, collapse)], ys)
    assert info.value.kind == "ambiguous"


@given(machines())
def test_reconstruction_property(m):
    parts = [(minimize(project(m, y)), indicator_map(y, m.outputs)) for y in m.outputs]
    assert equivalent(compose(parts, m.outputs), m) is None


@given(machines())
def test_minimize_sound_and_idempotent(m):
    mm = minimize(m)
    assert equivalent(m, mm) is None
    assert len(minimize(mm)) == len(mm)
    assert len(mm) <= len(reachable(m))
    for y in m.outputs:
        assert len(minimize(project(m, y))) <= len(reachable(m))


def test_minimize_brute_force():
    for seed in range(100):
        m = random_machine(seed)
        mm = minimize(m)
        for w in words(m.inputs, 8 if len(m.inputs) == 1 else (6 if len(m.inputs) == 2 else 4)):
            assert semantics(mm, w) == semantics(m, w)


@given(machines())
def test_minimal_states_pairwise_distinguishable(m):
    mm = minimize(m)
    for p, q in itertools.combinations(mm.states, 2):
        a = MealyMachine(mm.states, mm.inputs, mm.outputs, p, mm.transitions)
        b = MealyMachine(mm.states, mm.inputs, mm.outputs, q, mm.transitions)
        assert equivalent(a, b) is not None


def test_equivalent_examples(m_fig2):
    assert equivalent(m_fig2, m_fig2) is None
    changed = flip_output(m_fig2, "q2", "a", "y")
    assert equivalent(m_fig2, changed) == ("a", "a", "a")
    assert brute_force_distinguishing(m_fig2, changed, 4) == ("a", "a", "a")


def test_equivalent_alphabet_mismatch(m_fig2):
    other = MealyMachine(("q0",), ("a",), ("x",), "q0", {("q0", "a"): ("q0", "x")})
    with pytest.raises(AlphabetError):
        equivalent(m_fig2, other)


@settings(max_examples=80)
@given(machines(max_states=10, max_inputs=2), st.data())
def test_counterexample_is_shortest(m, data):
    q = data.draw(st.sampled_from(m.states))
    a = data.draw(st.sampled_from(m.inputs))
    y = data.draw(st.sampled_from(m.outputs))
    other = flip_output(m, q, a, y)
    cex = equivalent(m, other)
    # the changed edge is reachable within |Q| - 1 steps, if at all
    brute = brute_force_distinguishing(m, other, len(m.states))
    if cex is None:
        assert brute is None
    else:
        assert semantics(m, cex) != semantics(other, cex)
        assert brute is not None and len(brute) == len(cex)
