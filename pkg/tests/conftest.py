import random

import pytest
from hypothesis import strategies as st

from mealylearn.benchgen import gen_random
from mealylearn.fixtures import fig2, fig2_projection_x
from mealylearn.mealy import MealyMachine


@pytest.fixture
def m_fig2():
    return fig2()


@pytest.fixture
def m_fig2_x():
    return fig2_projection_x()


def random_machine(seed, max_states=10, max_inputs=3, max_outputs=4):
    rng = random.Random(seed)
    n = rng.randint(1, max_states)
    inputs = tuple("abc"[: rng.randint(1, max_inputs)])
    outputs = tuple("wxyz"[: rng.randint(1, max_outputs)])
    return gen_random(rng.randrange(2**32), n, inputs, outputs)


@st.composite
def machines(draw, max_states=8, max_inputs=3, max_outputs=4):
    """Arbitrary (not necessarily connected) complete machines."""
    n = draw(st.integers(1, max_states))
    inputs = tuple("abc"[: draw(st.integers(1, max_inputs))])
    outputs = tuple("wxyz"[: draw(st.integers(1, max_outputs))])
    states = [f"q{i}" for i in range(n)]
    trans = {
        (q, a): (draw(st.sampled_from(states)), draw(st.sampled_from(outputs)))
        for q in states
        for a in inputs
    }
    return MealyMachine(states, inputs, outputs, "q0", trans)


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1][len("test_"):]
    if report.when == "call" or report.failed:
        detail = dict(report.user_properties).get("detail", "")
        _acceptance[name] = ("PASS" if report.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        verdict, detail = _acceptance[name]
        terminalreporter.write_line(f"{verdict} {name}  {detail}".rstrip())
