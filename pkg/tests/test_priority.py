import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import EXAMPLE, consistent_from, pcms
from pcmcop.matrix import make_pcm
from pcmcop.priority import Method, NoConvergence, PriorityVector, ev_weights, gm_weights

# Characteristic-polynomial bisection and cross-product null vector.
EXAMPLE_LAMBDA = 3.0536215758789726
EXAMPLE_WEIGHTS = [0.6433597194751468, 0.25531747387220344, 0.10132280665264973]


def test_ev_consistent():
    res = ev_weights(consistent_from([2, 1, 0.5]))
    assert res.lambda_max == pytest.approx(3, abs=1e-9)
    assert np.allclose(res.vector.weights, [4 / 7, 2 / 7, 1 / 7], rtol=0, atol=1e-9)
    assert res.vector.method is Method.EV
    assert res.residual <= 1e-12


def test_ev_example_against_cubic_oracle(example):
    res = ev_weights(example)
    assert res.lambda_max == pytest.approx(EXAMPLE_LAMBDA, abs=1e-9)
    assert np.allclose(res.vector.weights, EXAMPLE_WEIGHTS, rtol=0, atol=1e-9)


def test_gm_consistent_and_uniform():
    w = gm_weights(consistent_from([2, 1, 0.5]))
    assert np.allclose(w.weights, [4 / 7, 2 / 7, 1 / 7], rtol=0, atol=1e-12)
    for n in range(3, 10):
        assert np.array_equal(gm_weights(make_pcm(np.ones((n, n)))).weights, np.full(n, 1 / n))


def test_gm_example_direct_product(example):
    g = np.array([16 ** (1 / 3), 1.0, 16 ** (-1 / 3)])
    assert np.allclose(gm_weights(example).weights, g / g.sum(), rtol=0, atol=1e-12)
    assert np.allclose(gm_weights(example).weights, oracles.geometric_means_direct(EXAMPLE),
                       rtol=0, atol=1e-12)


@given(pcms(), st.randoms())
@settings(max_examples=80)
def test_permutation_equivariance(C, rnd):
    perm = list(range(C.order))
    rnd.shuffle(perm)
    P = C.permuted(perm)
    ev, evp = ev_weights(C), ev_weights(P)
    assert evp.lambda_max == pytest.approx(ev.lambda_max, abs=1e-10)
    assert np.allclose(evp.vector.weights, ev.vector.weights[perm], rtol=0, atol=1e-10)
    assert np.allclose(gm_weights(P).weights, gm_weights(C).weights[perm], rtol=0, atol=1e-15)


@given(pcms())
@settings(max_examples=80)
def test_lambda_max_at_least_n_and_gm_log_space(C):
    assert ev_weights(C).lambda_max >= C.order - 1e-9
    assert np.allclose(gm_weights(C).weights, oracles.geometric_means_direct(C.entries.tolist()),
                       rtol=0, atol=1e-12)


@given(st.lists(st.floats(1, 9), min_size=3, max_size=9))
@settings(max_examples=80)
def test_methods_agree_on_consistent(values):
    w = np.array(values)
    C = consistent_from(w)
    target = w / w.sum()
    assert np.allclose(ev_weights(C).vector.weights, target, rtol=0, atol=1e-9)
    assert np.allclose(gm_weights(C).weights, target, rtol=0, atol=1e-9)


def test_no_convergence_guard(example):
    with pytest.raises(NoConvergence):
        ev_weights(example, tol=1e-12, max_iter=1)
    with pytest.raises(ValueError):
        ev_weights(example, tol=0)


def test_priority_vector_validation():
    with pytest.raises(ValueError):
        PriorityVector(np.array([0.5, 0.6, -0.1]), Method.GM)
    with pytest.raises(ValueError):
        PriorityVector(np.array([0.5, 0.6, 0.1]), Method.GM)
