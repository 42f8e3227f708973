"""Matrix factorization over skin-profile x product interactions.

The 20 profiles are every (skin type, concern) pair in canonical order.
An interaction is 1 when the product's suitability flag for the profile's
skin type is set and its target issue matches the profile's concern
(untagged products match every concern). Training minimizes the dense
squared-reconstruction objective with an L2 penalty,

    sum_{u,p} (r_up - U_u . V_p)^2 + reg * (|U|^2 + |V|^2),

by full-batch gradient descent through the shared momentum optimizer, so
runs are reproducible for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .catalog import CONCERN_ORDER, SKIN_TYPE_ORDER, Catalog, Concern, SkinType
from .errors import IndexOutOfRange, ModelFormatError
from .optimizer import minimize

MODEL_MAGIC = "MFv1"


@dataclass(frozen=True)
class ProfileIndex:
    """Row-major (skin type, concern) pairs: row = type_index * 4 + concern_index."""

    pairs: tuple[tuple[SkinType, Concern], ...]

    @classmethod
    def default(cls) -> "ProfileIndex":
        return cls(pairs=tuple((st, c) for st in SKIN_TYPE_ORDER for c in CONCERN_ORDER))

    def __len__(self) -> int:
        return len(self.pairs)

    def row_of(self, skin_type: SkinType, concern: Concern) -> int:
        return SKIN_TYPE_ORDER.index(skin_type) * len(CONCERN_ORDER) + concern.index


@dataclass(frozen=True)
class InteractionMatrix:
    r: np.ndarray  # profiles x products, entries in {0, 1}
    profiles: ProfileIndex
    product_ids: tuple[int, ...]


@dataclass(frozen=True)
class MFConfig:
    k: int = 8
    reg: float = 0.01
    momentum: float = 0.9
    learning_rate: float = 0.01
    epochs: int = 500
    seed: int = 0
    grad_tolerance: float = 0.0


@dataclass(frozen=True)
class FactorModel:
    u_factors: np.ndarray  # profiles x k
    v_factors: np.ndarray  # products x k
    k: int
    reg: float
    final_loss: float
    seed: int
    loss_trace: tuple[float, ...] = ()
    fingerprint: Optional[str] = None


def build_interactions(catalog: Catalog, profiles: Optional[ProfileIndex] = None) -> InteractionMatrix:
    profiles = profiles or ProfileIndex.default()
    n = len(catalog.products)
    r = np.zeros((len(profiles), n), dtype=np.float64)
    for col, product in enumerate(catalog.products):
        for row, (skin_type, concern) in enumerate(profiles.pairs):
            if product.suits(skin_type) and product.targets(concern):
                r[row, col] = 1.0
    return InteractionMatrix(
        r=r, profiles=profiles, product_ids=tuple(p.id for p in catalog.products)
    )


def objective(r: np.ndarray, u: np.ndarray, v: np.ndarray, reg: float) -> float:
    err = r - u @ v.T
    return float(np.sum(err * err) + reg * (np.sum(u * u) + np.sum(v * v)))


def objective_grad(
    r: np.ndarray, u: np.ndarray, v: np.ndarray, reg: float
) -> tuple[np.ndarray, np.ndarray]:
    err = r - u @ v.T
    grad_u = -2.0 * err @ v + 2.0 * reg * u
    grad_v = -2.0 * err.T @ u + 2.0 * reg * v
    return grad_u, grad_v


def train(
    interactions: Union[InteractionMatrix, np.ndarray],
    config: MFConfig = MFConfig(),
    fingerprint: Optional[str] = None,
) -> FactorModel:
    """Fit profile and product factors to the interaction matrix."""
    r = interactions.r if isinstance(interactions, InteractionMatrix) else np.asarray(interactions, dtype=np.float64)
    if r.size == 0:
        raise ValueError("interaction matrix is empty")
    if config.k < 1:
        raise ValueError(f"k must be >= 1, got {config.k}")
    n_profiles, n_products = r.shape
    k = config.k

    rng = np.random.default_rng(config.seed)
    u0 = rng.normal(0.0, 0.1, size=(n_profiles, k))
    v0 = rng.normal(0.0, 0.1, size=(n_products, k))

    split = n_profiles * k

    def unpack(theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return theta[:split].reshape(n_profiles, k), theta[split:].reshape(n_products, k)

    def loss_and_grad(theta: np.ndarray) -> tuple[float, np.ndarray]:
        u, v = unpack(theta)
        loss = objective(r, u, v, config.reg)
        grad_u, grad_v = objective_grad(r, u, v, config.reg)
        return loss, np.concatenate([grad_u.ravel(), grad_v.ravel()])

    theta, trace = minimize(
        loss_and_grad,
        np.concatenate([u0.ravel(), v0.ravel()]),
        momentum=config.momentum,
        learning_rate=config.learning_rate,
        max_steps=config.epochs,
        grad_tolerance=config.grad_tolerance,
    )
    u, v = unpack(theta)
    return FactorModel(
        u_factors=u,
        v_factors=v,
        k=k,
        reg=config.reg,
        final_loss=objective(r, u, v, config.reg),
        seed=config.seed,
        loss_trace=tuple(trace),
        fingerprint=fingerprint,
    )


def score(
    model: FactorModel,
    skin_type: SkinType,
    concern: Concern,
    product_row: int,
    profiles: Optional[ProfileIndex] = None,
) -> float:
    """Predicted interaction strength: dot of profile and product factors."""
    profiles = profiles or ProfileIndex.default()
    row = profiles.row_of(skin_type, concern)
    if not (0 <= product_row < model.v_factors.shape[0]):
        raise IndexOutOfRange(
            f"product_row {product_row} outside 0..{model.v_factors.shape[0] - 1}"
        )
    return float(np.dot(model.u_factors[row], model.v_factors[product_row]))


def save_model(model: FactorModel, path: Union[str, Path]) -> None:
    """Versioned flat text persistence; floats round-trip via repr."""
    lines = [
        MODEL_MAGIC,
        f"k={model.k}",
        f"seed={model.seed}",
        f"reg={model.reg!r}",
        f"final_loss={model.final_loss!r}",
        f"fingerprint={model.fingerprint or ''}",
        f"u_shape={model.u_factors.shape[0]},{model.u_factors.shape[1]}",
        f"v_shape={model.v_factors.shape[0]},{model.v_factors.shape[1]}",
    ]
    for matrix in (model.u_factors, model.v_factors):
        for row in matrix:
            lines.append(" ".join(repr(float(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: Union[str, Path]) -> FactorModel:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != MODEL_MAGIC:
        raise ModelFormatError(f"not a {MODEL_MAGIC} model file: {path}")

    header: dict[str, str] = {}
    body_start = 1
    for line in lines[1:]:
        if "=" not in line:
            break
        key, _, value = line.partition("=")
        header[key] = value
        body_start += 1
    try:
        k = int(header["k"])
        seed = int(header["seed"])
        reg = float(header["reg"])
        final_loss = float(header["final_loss"])
        u_rows, u_cols = (int(v) for v in header["u_shape"].split(","))
        v_rows, v_cols = (int(v) for v in header["v_shape"].split(","))
    except (KeyError, ValueError) as e:
        raise ModelFormatError(f"bad model header in {path}: {e}")

    rows = lines[body_start:]
    if len(rows) < u_rows + v_rows:
        raise ModelFormatError(f"truncated model file: {path}")
    try:
        u = np.array([[float(v) for v in rows[i].split()] for i in range(u_rows)])
        v = np.array(
            [[float(x) for x in rows[u_rows + i].split()] for i in range(v_rows)]
        )
    except ValueError as e:
        raise ModelFormatError(f"bad matrix row in {path}: {e}")
    if u.shape != (u_rows, u_cols) or v.shape != (v_rows, v_cols):
        raise ModelFormatError(f"matrix shape mismatch in {path}")

    return FactorModel(
        u_factors=u,
        v_factors=v,
        k=k,
        reg=reg,
        final_loss=final_loss,
        seed=seed,
        fingerprint=header.get("fingerprint") or None,
    )
