"""Personalized routine assembly.

Each of the five categories gets up to five candidate products, filtered
hard on the assessed skin type and ranked by a blend of two signals:

  * cosine_part: ingredient-cosine similarity to the anchor product, or,
    without an anchor, to the centroid of the category's candidates that
    target the assessed concern;
  * mf_part: the factor-model score for (skin type, concern), min-max
    normalized within the category's candidate set so it shares the
    cosine scale.

final = alpha * cosine_part + (1 - alpha) * mf_part. alpha=1 reduces to
pure nearest-by-ingredients, alpha=0 to pure factor-model ranking.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

import numpy as np

from .assessment import SkinAssessment
from .catalog import CATEGORY_ORDER, Catalog, Category, Product
from .errors import StaleModel, UnknownAnchor, UnknownBrand
from .mf import FactorModel, ProfileIndex, score
from .vectors import IngredientMatrix, cosine


@dataclass(frozen=True)
class ScoredProduct:
    product_id: int
    final_score: float
    cosine_part: float
    mf_part: float


@dataclass(frozen=True)
class Routine:
    categories: dict[Category, list[ScoredProduct]]
    assessment: SkinAssessment
    anchor: Optional[int]
    alpha: float
    created_at: datetime


def _check_alignment(catalog: Catalog, matrix: IngredientMatrix, model: FactorModel) -> None:
    ids = tuple(p.id for p in catalog.products)
    if matrix.product_ids != ids:
        raise StaleModel("ingredient matrix rows do not match the catalog")
    if model.v_factors.shape[0] != len(ids):
        raise StaleModel("factor model product count does not match the catalog")
    for fp in (matrix.fingerprint, model.fingerprint):
        if fp is not None and fp != catalog.fingerprint:
            raise StaleModel("artifact fingerprint does not match the catalog")


def _min_max_normalize(raw: list[float]) -> list[float]:
    lo, hi = min(raw), max(raw)
    if hi == lo:
        return [0.5] * len(raw)
    return [(v - lo) / (hi - lo) for v in raw]


def _category_ranking(
    candidates: list[Product],
    catalog: Catalog,
    matrix: IngredientMatrix,
    model: FactorModel,
    assessment: SkinAssessment,
    anchor_row: Optional[int],
    alpha: float,
    profiles: ProfileIndex,
    limit: int = 5,
) -> list[ScoredProduct]:
    if not candidates:
        return []
    rows = [catalog.by_id[p.id] for p in candidates]

    if anchor_row is not None:
        reference = matrix.data[anchor_row]
    else:
        targeted = [r for p, r in zip(candidates, rows) if p.targets(assessment.concern)]
        reference = matrix.data[targeted or rows].mean(axis=0)

    cosine_parts = [cosine(matrix.data[r], reference) for r in rows]
    raw_mf = [score(model, assessment.skin_type, assessment.concern, r, profiles) for r in rows]
    mf_parts = _min_max_normalize(raw_mf)

    scored = [
        ScoredProduct(
            product_id=p.id,
            final_score=alpha * c + (1.0 - alpha) * m,
            cosine_part=c,
            mf_part=m,
        )
        for p, c, m in zip(candidates, cosine_parts, mf_parts)
    ]
    scored.sort(key=lambda s: (-s.final_score, s.product_id))
    return scored[:limit]


def recommend(
    catalog: Catalog,
    matrix: IngredientMatrix,
    model: FactorModel,
    assessment: SkinAssessment,
    anchor: Optional[int] = None,
    alpha: float = 0.5,
) -> Routine:
    """Assemble the up-to-five-per-category routine for an assessment."""
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    _check_alignment(catalog, matrix, model)

    anchor_row: Optional[int] = None
    if anchor is not None:
        if anchor not in catalog.by_id:
            raise UnknownAnchor(f"anchor product id {anchor} not in catalog")
        anchor_row = catalog.by_id[anchor]

    profiles = ProfileIndex.default()
    categories: dict[Category, list[ScoredProduct]] = {}
    for category in CATEGORY_ORDER:
        candidates = sorted(
            (
                p
                for p in catalog.products
                if p.category == category and p.suits(assessment.skin_type) and p.id != anchor
            ),
            key=lambda p: p.id,
        )
        categories[category] = _category_ranking(
            candidates, catalog, matrix, model, assessment, anchor_row, alpha, profiles
        )

    return Routine(
        categories=categories,
        assessment=assessment,
        anchor=anchor,
        alpha=alpha,
        created_at=datetime.now(timezone.utc),
    )


def alternatives(
    catalog: Catalog,
    matrix: IngredientMatrix,
    routine: Routine,
    category: Category,
    brand: str,
) -> list[ScoredProduct]:
    """What-if: rank the named brand's products for one routine slot.

    Candidates are the brand's products in the category that suit the
    assessed skin type, ranked by ingredient cosine against the routine's
    current top product in that category (falling back to the anchor when
    the slot is empty). The reference product never ranks against itself.
    Returns an empty list when the brand has no matching products, or when
    the slot is empty and there is no anchor to compare against.
    """
    brand_key = brand.casefold()
    if not any(p.brand.casefold() == brand_key for p in catalog.products):
        raise UnknownBrand(f"brand {brand!r} not in catalog")

    current = routine.categories.get(category, [])
    if current:
        reference_id = current[0].product_id
    elif routine.anchor is not None:
        reference_id = routine.anchor
    else:
        return []
    reference = matrix.data[catalog.by_id[reference_id]]

    scored = []
    for p in catalog.products:
        if p.brand.casefold() != brand_key or p.category != category:
            continue
        if not p.suits(routine.assessment.skin_type) or p.id == reference_id:
            continue
        sim = cosine(matrix.data[catalog.by_id[p.id]], reference)
        scored.append(
            ScoredProduct(product_id=p.id, final_score=sim, cosine_part=sim, mf_part=0.0)
        )
    scored.sort(key=lambda s: (-s.final_score, s.product_id))
    return scored[:5]
