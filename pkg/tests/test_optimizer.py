import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from skinrec.errors import LengthMismatch, NonFiniteGradient, NonFiniteLoss
from skinrec.optimizer import init_state, minimize, step


def quadratic(theta):
    return float(theta @ theta), 2.0 * theta


def test_step_without_momentum_is_plain_descent():
    state = init_state(np.array([1.0, -2.0]), momentum=0.0, learning_rate=0.1)
    grad = np.array([2.0, -4.0])
    out = step(state, grad)
    np.testing.assert_allclose(out.theta, np.array([0.8, -1.6]), atol=1e-15)


def test_step_matches_hand_unrolled_recurrence():
    # theta0=1, v0=0, m=0.9, lr=0.1, gradient 2*theta
    state = init_state(np.array([1.0]), momentum=0.9, learning_rate=0.1)
    state = step(state, 2.0 * state.theta)
    assert abs(state.theta[0] - 0.8) < 1e-12
    state = step(state, 2.0 * state.theta)
    assert abs(state.velocity[0] - 0.34) < 1e-12
    assert abs(state.theta[0] - 0.46) < 1e-12
    assert state.step_count == 2


def test_step_zero_gradient_zero_velocity_is_fixed_point():
    state = init_state(np.array([3.0, 4.0]), momentum=0.9, learning_rate=0.5)
    out = step(state, np.zeros(2))
    np.testing.assert_array_equal(out.theta, state.theta)


def test_step_does_not_mutate_input():
    theta = np.array([1.0, 2.0])
    state = init_state(theta, momentum=0.5, learning_rate=0.1)
    before_theta = state.theta.copy()
    before_velocity = state.velocity.copy()
    step(state, np.array([1.0, 1.0]))
    np.testing.assert_array_equal(state.theta, before_theta)
    np.testing.assert_array_equal(state.velocity, before_velocity)
    assert state.step_count == 0


def test_step_rejects_non_finite_gradient():
    state = init_state(np.array([1.0]), momentum=0.0, learning_rate=0.1)
    with pytest.raises(NonFiniteGradient):
        step(state, np.array([np.nan]))


def test_step_rejects_length_mismatch():
    state = init_state(np.array([1.0]), momentum=0.0, learning_rate=0.1)
    with pytest.raises(LengthMismatch):
        step(state, np.array([1.0, 2.0]))


def test_state_validates_hyperparameters():
    with pytest.raises(ValueError):
        init_state(np.array([1.0]), momentum=1.0, learning_rate=0.1)
    with pytest.raises(ValueError):
        init_state(np.array([1.0]), momentum=0.5, learning_rate=0.0)


# ------------------------------------------------------------------- minimize

def test_minimize_quadratic_geometric_decay():
    theta, trace = minimize(quadratic, np.array([1.0]), momentum=0.0,
                            learning_rate=0.1, max_steps=100)
    # contraction factor 0.8 per step
    assert abs(theta[0]) < 1e-4
    assert abs(theta[0] - 0.8**100) < 1e-12
    assert len(trace) == 100


def test_minimize_stationary_start_constant_trace():
    theta, trace = minimize(quadratic, np.array([0.0]), momentum=0.9,
                            learning_rate=0.1, max_steps=20)
    assert theta[0] == 0.0
    assert trace == [0.0] * 20


@pytest.mark.filterwarnings("ignore:overflow")
def test_minimize_divergent_rate_raises_with_step_index():
    with pytest.raises(NonFiniteLoss) as info:
        minimize(quadratic, np.array([1.0]), momentum=0.0,
                 learning_rate=1.1, max_steps=5000)
    assert info.value.step_index > 0


def test_minimize_divergent_trace_is_monotone_increasing():
    # theta_{t+1} = -1.2 * theta_t, so the loss grows every step
    try:
        _, trace = minimize(quadratic, np.array([1.0]), momentum=0.0,
                            learning_rate=1.1, max_steps=100)
    except NonFiniteLoss:
        return
    assert all(b > a for a, b in zip(trace, trace[1:]))


def test_minimize_zero_momentum_matches_plain_reference():
    lr = 0.07
    theta = np.array([1.3, -0.4])
    reference = theta.copy()
    state = init_state(theta, momentum=0.0, learning_rate=lr)
    for _ in range(100):
        loss, grad = quadratic(state.theta)
        state = step(state, grad)
        reference = reference - lr * (2.0 * reference)
        np.testing.assert_allclose(state.theta, reference, atol=1e-12, rtol=0)


def test_minimize_grad_tolerance_stops_early():
    _, trace = minimize(quadratic, np.array([1.0]), momentum=0.0,
                        learning_rate=0.1, max_steps=10_000, grad_tolerance=1e-6)
    assert len(trace) < 10_000


@given(
    st.lists(
        st.lists(st.floats(-10, 10, allow_nan=False), min_size=3, max_size=3),
        min_size=10,
        max_size=10,
    ),
    st.floats(0.0, 0.99),
    st.floats(0.001, 1.0),
)
def test_velocity_is_momentum_weighted_gradient_sum(gradients, momentum, lr):
    gradients = [np.array(g) for g in gradients]
    state = init_state(np.zeros(3), momentum=momentum, learning_rate=lr)
    for g in gradients:
        state = step(state, g)
    t = len(gradients)
    expected = sum(lr * momentum ** (t - i) * g for i, g in enumerate(gradients, start=1))
    np.testing.assert_allclose(state.velocity, expected, atol=1e-10)
