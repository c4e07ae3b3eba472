import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import EXAMPLE, consistent_from, pcms
from pcmcop.inconsistency import inconsistency_report, koczkodaj_ki, saaty_ci
from pcmcop.matrix import consistency_defect, make_pcm
from pcmcop.priority import ev_weights

from test_priority import EXAMPLE_LAMBDA


def test_saaty_ci_arithmetic():
    assert saaty_ci(3.0, 3) == 0.0
    assert saaty_ci(3.2, 3) == pytest.approx(0.1, abs=1e-15)
    assert saaty_ci(5.0 - 1e-13, 5) == 0.0


def test_example_ci_and_ki(example):
    rep = inconsistency_report(example, ev_weights(example).lambda_max)
    assert rep.ci == pytest.approx((EXAMPLE_LAMBDA - 3) / 2, abs=1e-9)
    assert rep.ki == oracles.koczkodaj(EXAMPLE) == 0.5


def test_consistent_ki_zero():
    assert koczkodaj_ki(consistent_from([2, 1, 0.5])) <= 1e-12
    assert koczkodaj_ki(make_pcm(np.ones((5, 5)))) == 0.0


@given(pcms(), st.randoms())
@settings(max_examples=80)
def test_ki_properties(C, rnd):
    ki = koczkodaj_ki(C)
    assert 0 <= ki < 1
    assert ki == oracles.koczkodaj(C.entries.tolist())
    perm = list(range(C.order))
    rnd.shuffle(perm)
    assert koczkodaj_ki(C.permuted(perm)) == ki
    assert koczkodaj_ki(make_pcm(C.entries.T)) == pytest.approx(ki, abs=1e-15)
    ci = saaty_ci(ev_weights(C).lambda_max, C.order)
    assert ci >= -1e-9
    assert saaty_ci(ev_weights(C.permuted(perm)).lambda_max, C.order) == pytest.approx(ci, abs=1e-10)


@given(st.integers(3, 5), st.integers(0, 2**32 - 1), st.booleans())
@settings(max_examples=80)
def test_ki_zero_iff_consistent(n, seed, disturb):
    from conftest import random_pcm

    C = random_pcm(seed, n, 1.5) if disturb else consistent_from(np.random.default_rng(seed).uniform(1, 9, n))
    assert (koczkodaj_ki(C) <= 1e-10) == (consistency_defect(C) <= 1e-10)
