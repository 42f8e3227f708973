"""Skin assessments: the boundary where a skin profile enters the engine.

An assessment can come from a plugged-in classifier (a confidence vector
over the four concerns), a short questionnaire, a direct (skin type,
concern) statement, or the synthetic generator used for load tests and
simulations. Everything downstream consumes only the SkinAssessment shape,
so a real image classifier can slot in behind the same contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .catalog import CONCERN_ORDER, SKIN_TYPE_ORDER, Concern, SkinType
from .errors import InvalidDistribution


class Source(Enum):
    DIRECT = "direct"
    CLASSIFIER = "classifier"
    QUESTIONNAIRE = "questionnaire"
    SYNTHETIC = "synthetic"


@dataclass(frozen=True)
class SkinAssessment:
    skin_type: SkinType
    concern_probs: tuple[float, float, float, float]  # canonical concern order
    concern: Concern
    source: Source


# Prevalence weights for the synthetic concern sampler. The first three come
# from a published skin-issue survey (multi-label prevalences, so they do not
# sum to 100); the clear-skin weight is a pragmatic choice to keep a small
# share of issue-free profiles in synthetic workloads.
SYNTHETIC_CONCERN_WEIGHTS: dict[Concern, float] = {
    Concern.PIGMENTATION: 55.9,
    Concern.ACNE: 49.4,
    Concern.WRINKLES: 39.4,
    Concern.CLEAR_SKIN: 10.0,
}


class Tightness(Enum):
    NEVER = "never"
    SOMETIMES = "sometimes"
    ALWAYS = "always"


class Shine(Enum):
    NONE = "none"
    TZONE = "tzone"
    ALLOVER = "allover"


@dataclass(frozen=True)
class QuestionnaireAnswers:
    tightness_after_wash: Tightness
    midday_shine: Shine
    reacts_to_new_products: bool
    primary_goal: Concern


def _argmax_concern(probs: np.ndarray) -> Concern:
    # np.argmax returns the first maximum, which is the canonical tie-break
    return CONCERN_ORDER[int(np.argmax(probs))]


def _one_hot(concern: Concern) -> tuple[float, float, float, float]:
    probs = [0.0, 0.0, 0.0, 0.0]
    probs[concern.index] = 1.0
    return tuple(probs)  # type: ignore[return-value]


def direct(skin_type: SkinType, concern: Concern) -> SkinAssessment:
    """Assessment from an explicitly stated profile (e.g. CLI flags)."""
    return SkinAssessment(
        skin_type=skin_type,
        concern_probs=_one_hot(concern),
        concern=concern,
        source=Source.DIRECT,
    )


def from_confidences(probs: Sequence[float], skin_type: SkinType) -> SkinAssessment:
    """Assessment from a classifier confidence vector in canonical concern order.

    The vector is normalized to sum 1; entries must be non-negative and not
    all zero.
    """
    arr = np.asarray(probs, dtype=np.float64)
    if arr.shape != (len(CONCERN_ORDER),):
        raise InvalidDistribution(f"expected {len(CONCERN_ORDER)} confidences, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidDistribution("confidences must be finite")
    if np.any(arr < 0):
        raise InvalidDistribution("confidences must be non-negative")
    total = float(arr.sum())
    if total == 0.0:
        raise InvalidDistribution("confidences must not be all zero")
    arr = arr / total
    return SkinAssessment(
        skin_type=skin_type,
        concern_probs=tuple(float(v) for v in arr),  # type: ignore[arg-type]
        concern=_argmax_concern(arr),
        source=Source.CLASSIFIER,
    )


def from_questionnaire(answers: QuestionnaireAnswers) -> SkinAssessment:
    """Assessment from the four-question form.

    Reactivity to new products dominates and maps to Sensitive; otherwise
    persistent tightness with no shine means Dry, no tightness with all-over
    shine means Oily, T-zone shine means Combination, and anything else
    Normal.
    """
    if answers.reacts_to_new_products:
        skin_type = SkinType.SENSITIVE
    elif answers.tightness_after_wash is Tightness.ALWAYS and answers.midday_shine is Shine.NONE:
        skin_type = SkinType.DRY
    elif answers.tightness_after_wash is Tightness.NEVER and answers.midday_shine is Shine.ALLOVER:
        skin_type = SkinType.OILY
    elif answers.midday_shine is Shine.TZONE:
        skin_type = SkinType.COMBINATION
    else:
        skin_type = SkinType.NORMAL
    return SkinAssessment(
        skin_type=skin_type,
        concern_probs=_one_hot(answers.primary_goal),
        concern=answers.primary_goal,
        source=Source.QUESTIONNAIRE,
    )


def synthesize(seed: int, n: int) -> list[SkinAssessment]:
    """Deterministic synthetic assessments, concerns weighted by prevalence."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    weights = np.array([SYNTHETIC_CONCERN_WEIGHTS[c] for c in CONCERN_ORDER])
    weights = weights / weights.sum()
    concern_draws = rng.choice(len(CONCERN_ORDER), size=n, p=weights)
    type_draws = rng.integers(0, len(SKIN_TYPE_ORDER), size=n)
    out = []
    for c_idx, t_idx in zip(concern_draws, type_draws):
        concern = CONCERN_ORDER[int(c_idx)]
        out.append(
            SkinAssessment(
                skin_type=SKIN_TYPE_ORDER[int(t_idx)],
                concern_probs=_one_hot(concern),
                concern=concern,
                source=Source.SYNTHETIC,
            )
        )
    return out
