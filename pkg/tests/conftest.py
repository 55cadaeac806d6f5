import numpy as np
import pytest
from hypothesis import settings, strategies as st

from amst.consequence import LogicalStructure
from amst.core import FiniteAmst

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def make_a1():
    return FiniteAmst.normal("ab", ["m0", "m1", "m2"], [[1, 0], [0, 1], [1, 1]])


def make_a2():
    return FiniteAmst.normal("ab", ["m0", "m1"], [[1, 0], [0, 1]])


def make_t0():
    """L = {p, q}; Γ ⊢ α iff α ∈ Γ or Γ = {p, q}."""
    return LogicalStructure.from_closure("pq", lambda g: g if g != 0b11 else 0b11)


@pytest.fixture
def a1():
    return make_a1()


@pytest.fixture
def a2():
    return make_a2()


@pytest.fixture
def t0():
    return make_t0()


@st.composite
def normal_amsts(draw, max_models=4, max_sentences=4, min_sentences=0):
    k = draw(st.integers(1, max_models))
    n = draw(st.integers(min_sentences, max_sentences))
    cells = draw(st.lists(st.booleans(), min_size=k * n, max_size=k * n))
    matrix = np.array(cells, dtype=bool).reshape(k, n)
    return FiniteAmst.normal([f"s{i}" for i in range(n)], [f"m{j}" for j in range(k)], matrix)


@st.composite
def general_amsts(draw, max_models=3, max_sentences=3):
    k = draw(st.integers(1, max_models))
    n = draw(st.integers(0, max_sentences))
    cells = draw(st.lists(st.booleans(), min_size=k << n, max_size=k << n))
    table = np.array(cells, dtype=bool).reshape(k, 1 << n)
    return FiniteAmst.general([f"s{i}" for i in range(n)], [f"m{j}" for j in range(k)], table)


@st.composite
def unsat_normal_amsts(draw, max_models=4, max_sentences=3):
    """Normal amsts with an always-false sentence appended, so L is unsatisfiable."""
    a = draw(normal_amsts(max_models, max_sentences))
    matrix = np.hstack([a.matrix, np.zeros((a.n_models, 1), dtype=bool)])
    return FiniteAmst.normal(a.sentence_labels + ("bot",), a.model_labels, matrix)


# Acceptance criteria report --------------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and report.passed:
        return
    number, title = marker.args
    ok = _CRITERIA.get(number, (title, True))[1] and report.passed
    _CRITERIA[number] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {title}")
