from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import strategies as st

from amalgam_ft import CoefficientSequence, FunctionModel

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def chi():
    return FunctionModel([0.0, 1.0], [1.0, 1.0])


@pytest.fixture
def hat():
    return FunctionModel([0.0, 1.0], [1.0, 0.0])


@pytest.fixture
def tent():
    return FunctionModel([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])


values = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)


@st.composite
def models(draw, continuous: bool = False, max_pieces: int = 6, start=None):
    k = draw(st.integers(1, max_pieces))
    gaps = draw(st.lists(st.floats(0.05, 2.0), min_size=k, max_size=k))
    t0 = draw(st.sampled_from([0.0, 0.25, 0.5, 1.25, 3.0])) if start is None else start
    t = t0 + np.concatenate([[0.0], np.cumsum(gaps)])
    v = np.array(draw(st.lists(values, min_size=k + 1, max_size=k + 1)))
    if continuous:
        v[-1] = 0.0
        if t0 > 0:
            v[0] = 0.0
    return FunctionModel(t, v)


@st.composite
def sequences(draw, max_len: int = 40):
    n = draw(st.integers(1, max_len))
    return CoefficientSequence(draw(st.lists(st.floats(-1.0, 1.0), min_size=n, max_size=n)))


def chi_series(kmax: int = 200) -> float:
    return math.fsum(2.0**-k * math.sqrt(2.0**k - 1.0) for k in range(1, kmax))
