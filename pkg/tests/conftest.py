import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from bellcoherence.core import BellCoeffs

REF_STATE = (0.3, -0.4, 0.56)


@st.composite
def physical_coeffs(draw):
    w = draw(st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=4, max_size=4))
    total = sum(w)
    if total == 0:
        w, total = [1.0, 1.0, 1.0, 1.0], 4.0
    return BellCoeffs.from_probabilities([x / total for x in w])


@st.composite
def density_matrices(draw):
    """Random full-rank-or-not two-qubit states, not restricted to Bell-diagonal form."""
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    rank = draw(st.integers(1, 4))
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    m = g @ g.conj().T
    return m / np.trace(m).real


@pytest.fixture
def ref_state():
    return BellCoeffs(*REF_STATE)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
