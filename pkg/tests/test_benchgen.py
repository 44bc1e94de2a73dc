import pytest

from mealylearn.benchgen import (
    BenchSpec,
    decomposition_profile,
    gen_random,
    generate,
    interleaving_spec,
    switching_spec,
)
from mealylearn.mealy import access_sequences, equivalent, minimize, project


@pytest.mark.parametrize("seed", range(20))
def test_gen_random_reachable_and_deterministic(seed):
    m = gen_random(seed, 12, ("a", "b"), ("x", "y", "z"))
    assert len(access_sequences(m)) == len(m)
    again = gen_random(seed, 12, ("a", "b"), ("x", "y", "z"))
    assert m.transitions == again.transitions


def test_gen_random_single_input_prunes():
    # one input: only a lasso is reachable
    m = gen_random(3, 10, ("a",), ("x",))
    assert len(access_sequences(m)) == len(m) <= 10


def test_switching_size_and_projections():
    spec = switching_spec(7, (3, 3))
    m = generate(spec)
    assert len(m) == 2 * 9
    assert set(m.inputs) == {"a", "b", "L", "R"}
    assert len(minimize(project(m, "sw"))) == 1
    k = len(spec.component_sizes)
    for sizes, ys in zip(spec.component_sizes, spec.outputs_per_component):
        for y in ys:
            assert len(minimize(project(m, y))) <= k * sizes


def test_switching_deterministic():
    a = generate(switching_spec(11, (4, 5, 6)))
    b = generate(switching_spec(11, (4, 5, 6)))
    assert a.transitions == b.transitions
    c = generate(switching_spec(12, (4, 5, 6)))
    assert a.transitions != c.transitions


def test_switch_inputs_preserve_inactive_state():
    m = generate(switching_spec(5, (3, 4)))
    q = m.initial
    for a in ("a", "b", "a", "R", "L"):
        q, _ = m.step(q, a)
    q2 = m.initial
    for a in ("a", "b", "a"):
        q2, _ = m.step(q2, a)
    assert q == q2


def test_interleaving_size():
    m = generate(interleaving_spec(2, (2, 3)))
    assert len(m) == 6
    assert m.outputs == ("o0", "o1")


def test_interleaving_disjoint_projection_bound():
    spec = interleaving_spec(4, (3, 4), shared_outputs=False)
    m = generate(spec)
    for n, ys in zip(spec.component_sizes, spec.outputs_per_component):
        for y in ys:
            assert len(minimize(project(m, y))) <= n


def test_interleaving_matches_components():
    spec = interleaving_spec(9, (3, 2), shared_outputs=False)
    m = generate(spec)
    comps = spec.components()
    w = ["i0_0", "i1_1", "i0_1", "i1_0", "i0_0"]
    states = [c.initial for c in comps]
    q = m.initial
    for a in w:
        i = 0 if a.startswith("i0") else 1
        states[i], expected = comps[i].step(states[i], a)
        q, out = m.step(q, a)
        assert out == expected


def test_fig2_profile(m_fig2):
    assert decomposition_profile(m_fig2) == {
        "projections": {"x": 3, "y": 3, "z": 3},
        "total": 9,
        "original": 6,
    }


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(family="nope"),
        dict(component_sizes=()),
        dict(component_sizes=(3, 0)),
        dict(inputs_per_component=(("a", "b"),)),
        dict(inputs_per_component=(("a", "b"), ("a", "c"))),
        dict(inputs_per_component=(("a", "L"), ("a", "L"))),
        dict(outputs_per_component=(("x",), ("x",))),
        dict(outputs_per_component=(("x",), ("sw",))),
    ],
)
def test_spec_validation(kwargs):
    base = dict(
        seed=0,
        family="switching",
        component_sizes=(3, 3),
        inputs_per_component=(("a", "b"), ("a", "b")),
        outputs_per_component=(("x",), ("y",)),
    )
    base.update(kwargs)
    with pytest.raises(ValueError):
        BenchSpec(**base)


def test_interleaving_requires_disjoint_inputs():
    with pytest.raises(ValueError):
        BenchSpec(0, "interleaving", (2, 2), (("a",), ("a",)), (("x",), ("x",)))


def test_random_family_generate():
    spec = BenchSpec(3, "random", (5,), (("a", "b"),), (("x", "y"),))
    assert equivalent(generate(spec), gen_random(3, 5, ("a", "b"), ("x", "y"))) is None
