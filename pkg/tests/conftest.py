import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from pcmcop.matrix import DeltaScheme, DisturbanceSpec, generate_consistent, make_pcm, perturb

EXAMPLE = [[1, 2, 8], [0.5, 1, 2], [0.125, 0.5, 1]]


@pytest.fixture
def example():
    return make_pcm(EXAMPLE)


def consistent_from(weights):
    w = np.asarray(weights, dtype=float)
    return make_pcm(w[:, None] / w[None, :])


def random_pcm(seed, n, gamma, scheme=DeltaScheme.UNIFORM):
    rng = np.random.default_rng(seed)
    _, C = generate_consistent(n, rng)
    return perturb(C, DisturbanceSpec(gamma, scheme), rng)


@st.composite
def pcms(draw, n_min=3, n_max=9):
    n = draw(st.integers(n_min, n_max))
    gamma = draw(st.floats(1.0001, 3.9999))
    scheme = draw(st.sampled_from(list(DeltaScheme)))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_pcm(seed, n, gamma, scheme)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
