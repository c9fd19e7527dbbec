import numpy as np
import pytest
from hypothesis import strategies as st

from improved_hoeffding import IntervalSet, make_interval

magnitudes = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)


@st.composite
def intervals(draw, skew=None):
    """Valid supports; ``skew`` in {None, 'left', 'right'} restricts the class."""
    x = draw(magnitudes)
    y = draw(magnitudes)
    if skew == "left":
        x, y = max(x, y), min(x, y)
        if x == y:
            x = x * 2
    elif skew == "right":
        x, y = min(x, y), max(x, y)
    return make_interval(-x, y)


interval_sets = st.lists(intervals(), min_size=1, max_size=50).map(lambda xs: IntervalSet(tuple(xs)))


def random_interval(gen: np.random.Generator, skew=None):
    x, y = np.exp(gen.uniform(np.log(1e-2), np.log(1e2), 2))
    if skew == "left":
        x, y = max(x, y), min(x, y)
    elif skew == "right":
        x, y = min(x, y), max(x, y)
    return make_interval(-float(x), float(y))


@pytest.fixture
def worked_set():
    return IntervalSet((make_interval(-2, 1), make_interval(-1, 3), make_interval(-1, 1)))


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""
    state = {"label": request.node.name, "detail": ""}

    def note(label, detail=""):
        state["label"], state["detail"] = label, detail

    yield note
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    line = f"[{'PASS' if ok else 'FAIL'}] {state['label']}"
    if state["detail"]:
        line += f" -- {state['detail']}"
    ACCEPTANCE_LINES.append(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
