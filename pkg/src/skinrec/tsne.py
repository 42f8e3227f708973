"""Exact 2-D t-SNE over ingredient vectors.

The O(n^2) formulation is deliberate: the catalog tops out around 1,500
products, and exactness keeps every piece independently checkable (entropy
calibration against recomputation, the KL gradient against finite
differences, the trace against the non-increase property).

Input affinities use Gaussian kernels with per-point bandwidths calibrated
by binary search to a perplexity target; output affinities are Student-t
with one degree of freedom. The embedding is trained by the shared
momentum optimizer with the usual two-phase schedule (early exaggeration,
then a momentum switch).
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import NonFiniteLoss, PerplexityTooLow, TooFewPoints
from .optimizer import init_state, step
from .vectors import IngredientMatrix

log = logging.getLogger(__name__)

_LOG2 = math.log(2.0)
_SIGMA_LO = 1e-20
_SIGMA_HI = 1e20
_MAX_SEARCH_ITERS = 64
_ENTROPY_TOL = 1e-5  # on log2 scale


@dataclass(frozen=True)
class TSNEConfig:
    perplexity: float = 30.0
    iterations: int = 1000
    exaggeration: float = 12.0
    exaggeration_iters: int = 250
    learning_rate: float = 200.0
    momentum_early: float = 0.5
    momentum_late: float = 0.8
    momentum_switch_iter: int = 250
    seed: int = 0


@dataclass(frozen=True)
class Affinities:
    """Symmetrized joint probabilities with the calibrated bandwidths."""

    p: np.ndarray
    perplexity: float
    sigmas: np.ndarray
    degenerate_rows: tuple[int, ...] = ()


@dataclass(frozen=True)
class Embedding:
    points: np.ndarray  # n x 2
    kl_trace: tuple[float, ...]
    seed: int
    product_ids: tuple[int, ...]


def pairwise_sq_distances(matrix: Union[IngredientMatrix, np.ndarray]) -> np.ndarray:
    """Squared Euclidean distances between all row pairs."""
    x = matrix.data if isinstance(matrix, IngredientMatrix) else np.asarray(matrix, dtype=np.float64)
    if x.shape[0] < 2:
        raise TooFewPoints(f"need at least 2 points, got {x.shape[0]}")
    sq = np.sum(x * x, axis=1)
    d = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    np.maximum(d, 0.0, out=d)
    d = (d + d.T) / 2.0
    np.fill_diagonal(d, 0.0)
    return d


def _row_entropy_bits(row_distances: np.ndarray, sigma: float) -> tuple[float, np.ndarray]:
    """Shannon entropy (bits) and conditional probabilities for one point.

    Distances are shifted by their minimum before exponentiation so tiny
    sigmas underflow gracefully to a point mass on the nearest neighbours.
    """
    beta = 1.0 / (2.0 * sigma * sigma)
    shifted = row_distances - row_distances.min()
    u = np.exp(-beta * shifted)
    total = u.sum()
    p = u / total
    h_nats = math.log(total) + beta * float(np.dot(u, shifted)) / total
    return h_nats / _LOG2, p


def calibrate_affinities(distances: np.ndarray, perplexity: float) -> Affinities:
    """Per-row bandwidth search to the perplexity target, then symmetrize.

    The effective target is min(perplexity, (n-1)/3). Rows whose entropy
    cannot reach the target (e.g. a point at distance zero from everything)
    are clamped at the last bandwidth tried and counted as degenerate.
    """
    d = np.asarray(distances, dtype=np.float64)
    n = d.shape[0]
    if n < 2 or d.shape != (n, n):
        raise TooFewPoints(f"need a square distance matrix with n >= 2, got {d.shape}")
    effective = min(perplexity, (n - 1) / 3.0)
    if effective < 1.0:
        raise PerplexityTooLow(
            f"effective perplexity {effective:.3f} < 1 (requested {perplexity}, n={n})"
        )
    target = math.log2(effective)

    conditional = np.zeros((n, n), dtype=np.float64)
    sigmas = np.empty(n, dtype=np.float64)
    degenerate: list[int] = []
    others = ~np.eye(n, dtype=bool)

    for i in range(n):
        row = d[i][others[i]]
        lo, hi = _SIGMA_LO, _SIGMA_HI
        sigma = 1.0
        converged = False
        for _ in range(_MAX_SEARCH_ITERS):
            entropy, p_row = _row_entropy_bits(row, sigma)
            if abs(entropy - target) <= _ENTROPY_TOL:
                converged = True
                break
            if entropy > target:
                hi = sigma
            else:
                lo = sigma
            sigma = math.sqrt(lo * hi)
        if not converged:
            entropy, p_row = _row_entropy_bits(row, sigma)
            degenerate.append(i)
        sigmas[i] = sigma
        conditional[i][others[i]] = p_row

    if degenerate:
        log.warning("bandwidth search did not converge for %d rows; clamped", len(degenerate))

    p = (conditional + conditional.T) / (2.0 * n)
    return Affinities(p=p, perplexity=effective, sigmas=sigmas, degenerate_rows=tuple(degenerate))


def _student_t_q(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Normalized Student-t output affinities Q and the raw kernel W."""
    d = pairwise_sq_distances(y)
    w = 1.0 / (1.0 + d)
    np.fill_diagonal(w, 0.0)
    q = w / w.sum()
    return q, w


def kl_divergence(p: np.ndarray, q: np.ndarray) -> float:
    mask = p > 0
    return float(np.sum(p[mask] * np.log(p[mask] / q[mask])))


def kl_gradient(p: np.ndarray, q: np.ndarray, w: np.ndarray, y: np.ndarray) -> np.ndarray:
    """dKL/dy: 4 * sum_j (p_ij - q_ij) * (1 + |y_i - y_j|^2)^-1 * (y_i - y_j)."""
    m = (p - q) * w
    return 4.0 * (m.sum(axis=1)[:, None] * y - m @ y)


def kl_divergence_and_grad(p: np.ndarray, y: np.ndarray) -> tuple[float, np.ndarray]:
    """Loss and analytic gradient in one evaluation (finite-diff checkable)."""
    q, w = _student_t_q(y)
    return kl_divergence(p, q), kl_gradient(p, q, w, y)


def fit(
    matrix: Union[IngredientMatrix, np.ndarray],
    config: TSNEConfig = TSNEConfig(),
    init: Optional[np.ndarray] = None,
) -> Embedding:
    """Project the rows of ``matrix`` to 2-D.

    Deterministic for a fixed seed. ``init`` overrides the seeded Gaussian
    starting layout (used by equivariance checks). The returned trace holds
    the KL divergence against the un-exaggerated affinities at the start of
    every iteration.
    """
    if isinstance(matrix, IngredientMatrix):
        x = matrix.data
        product_ids = matrix.product_ids
    else:
        x = np.asarray(matrix, dtype=np.float64)
        product_ids = tuple(range(x.shape[0]))
    n = x.shape[0]
    if n < 4:
        raise TooFewPoints(f"need at least 4 points to embed, got {n}")

    affinities = calibrate_affinities(pairwise_sq_distances(x), config.perplexity)
    p = affinities.p

    rng = np.random.default_rng(config.seed)
    if init is not None:
        y = np.array(init, dtype=np.float64)
        if y.shape != (n, 2):
            raise ValueError(f"init must have shape ({n}, 2), got {y.shape}")
    else:
        y = rng.normal(0.0, 1e-4, size=(n, 2))

    state = init_state(y.ravel(), config.momentum_early, config.learning_rate)
    kl_trace: list[float] = []

    for it in range(config.iterations):
        y = state.theta.reshape(n, 2)
        q, w = _student_t_q(y)
        kl = kl_divergence(p, q)
        if not math.isfinite(kl):
            raise NonFiniteLoss(f"KL divergence non-finite at iteration {it}", step_index=it)
        kl_trace.append(kl)

        p_phase = p * config.exaggeration if it < config.exaggeration_iters else p
        grad = kl_gradient(p_phase, q, w, y)
        if not np.all(np.isfinite(grad)):
            raise NonFiniteLoss(f"gradient non-finite at iteration {it}", step_index=it)

        if 0 < config.exaggeration_iters == it:
            # the exaggerated target just vanished; restart the velocity so
            # the plain-KL phase is a fresh descent from the warm layout
            state = replace(state, velocity=np.zeros_like(state.velocity))
        if it == config.momentum_switch_iter:
            state = replace(state, momentum=config.momentum_late)
        state = step(state, grad.ravel())

        centered = state.theta.reshape(n, 2)
        centered = centered - centered.mean(axis=0)
        state = replace(state, theta=centered.ravel())

    return Embedding(
        points=state.theta.reshape(n, 2),
        kl_trace=tuple(kl_trace),
        seed=config.seed,
        product_ids=product_ids,
    )


def export_embedding_csv(embedding: Embedding, path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["product_id", "x", "y"])
        for pid, (x, y) in zip(embedding.product_ids, embedding.points):
            writer.writerow([pid, repr(float(x)), repr(float(y))])
