"""Gradient descent with classical momentum.

One velocity vector accumulates lr-scaled gradients:

    velocity' = momentum * velocity + lr * gradient
    theta'    = theta - velocity'

The learning rate scales the gradient inside the velocity accumulation,
not the parameter update. Both the 2-D embedding trainer and the matrix
factorization trainer drive this update; callers own any schedule by
swapping momentum/lr between steps.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Tuple

import numpy as np

from .errors import LengthMismatch, NonFiniteGradient, NonFiniteLoss

LossAndGrad = Callable[[np.ndarray], Tuple[float, np.ndarray]]


@dataclass(frozen=True)
class OptimizerState:
    theta: np.ndarray
    velocity: np.ndarray
    momentum: float
    learning_rate: float
    step_count: int = 0

    def __post_init__(self):
        if self.theta.shape != self.velocity.shape:
            raise LengthMismatch(
                f"theta shape {self.theta.shape} != velocity shape {self.velocity.shape}"
            )
        if not self.learning_rate > 0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")
        if not (0 <= self.momentum < 1):
            raise ValueError(f"momentum must be in [0, 1), got {self.momentum}")


def init_state(theta: np.ndarray, momentum: float, learning_rate: float) -> OptimizerState:
    """Fresh state with zero initial velocity (step 1 is then plain SGD)."""
    theta = np.asarray(theta, dtype=np.float64)
    return OptimizerState(
        theta=theta,
        velocity=np.zeros_like(theta),
        momentum=momentum,
        learning_rate=learning_rate,
    )


def step(state: OptimizerState, gradient: np.ndarray) -> OptimizerState:
    """One momentum update. Returns a new state; the input is untouched."""
    gradient = np.asarray(gradient, dtype=np.float64)
    if gradient.shape != state.theta.shape:
        raise LengthMismatch(
            f"gradient shape {gradient.shape} != theta shape {state.theta.shape}"
        )
    if not np.all(np.isfinite(gradient)):
        raise NonFiniteGradient(f"gradient has non-finite entries at step {state.step_count}")
    velocity = state.momentum * state.velocity + state.learning_rate * gradient
    return replace(
        state,
        theta=state.theta - velocity,
        velocity=velocity,
        step_count=state.step_count + 1,
    )


def minimize(
    loss_and_grad: LossAndGrad,
    init: np.ndarray,
    momentum: float = 0.9,
    learning_rate: float = 0.01,
    max_steps: int = 100,
    grad_tolerance: float = 0.0,
) -> tuple[np.ndarray, list[float]]:
    """Iterate ``step`` until the gradient infinity-norm drops below
    ``grad_tolerance`` or ``max_steps`` is reached.

    Returns the final parameters and one loss value per completed step.
    Raises NonFiniteLoss (carrying the step index) on divergence.
    """
    if max_steps < 1:
        raise ValueError(f"max_steps must be >= 1, got {max_steps}")
    state = init_state(np.array(init, dtype=np.float64), momentum, learning_rate)
    trace: list[float] = []
    for i in range(max_steps):
        loss, grad = loss_and_grad(state.theta)
        grad = np.asarray(grad, dtype=np.float64)
        if not np.isfinite(loss):
            raise NonFiniteLoss(f"loss became non-finite at step {i}", step_index=i)
        if not np.all(np.isfinite(grad)):
            raise NonFiniteLoss(f"gradient became non-finite at step {i}", step_index=i)
        if float(np.max(np.abs(grad), initial=0.0)) < grad_tolerance:
            break
        state = step(state, grad)
        trace.append(float(loss))
    return state.theta, trace
