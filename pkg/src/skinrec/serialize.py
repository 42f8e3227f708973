"""JSON codecs shared by the HTTP service, the session log and the CLI.

All field names are lowercase snake_case and timestamps are RFC 3339
strings; enum values keep their canonical spelling.
"""

from __future__ import annotations

from datetime import datetime
from typing import Optional

from .assessment import SkinAssessment, Source
from .catalog import CATEGORY_ORDER, Catalog, Category, Concern, Product, SkinType
from .routine import Routine, ScoredProduct
from .tsne import Embedding


def timestamp(dt: datetime) -> str:
    return dt.isoformat()


def product_to_json(p: Product) -> dict:
    return {
        "id": p.id,
        "category": p.category.value,
        "issue": p.issue.value if p.issue else None,
        "brand": p.brand,
        "name": p.name,
        "ingredients": list(p.ingredients),
        "suitable_for": [st.value for st in p.suitability if p.suitability[st]],
        "price": p.price,
        "rank": p.rank,
    }


def assessment_to_json(a: SkinAssessment) -> dict:
    return {
        "skin_type": a.skin_type.value,
        "concern": a.concern.value,
        "concern_probs": list(a.concern_probs),
        "source": a.source.value,
    }


def assessment_from_json(data: dict) -> SkinAssessment:
    return SkinAssessment(
        skin_type=SkinType.parse(data["skin_type"]),
        concern_probs=tuple(float(v) for v in data["concern_probs"]),
        concern=Concern.parse(data["concern"]),
        source=Source(data["source"]),
    )


def scored_product_to_json(s: ScoredProduct, catalog: Optional[Catalog] = None) -> dict:
    out = {
        "product_id": s.product_id,
        "final_score": s.final_score,
        "cosine_part": s.cosine_part,
        "mf_part": s.mf_part,
    }
    if catalog is not None:
        product = catalog.get(s.product_id)
        if product is not None:
            out["brand"] = product.brand
            out["name"] = product.name
    return out


def scored_product_from_json(data: dict) -> ScoredProduct:
    return ScoredProduct(
        product_id=int(data["product_id"]),
        final_score=float(data["final_score"]),
        cosine_part=float(data["cosine_part"]),
        mf_part=float(data["mf_part"]),
    )


def routine_to_json(r: Routine, catalog: Optional[Catalog] = None) -> dict:
    return {
        "created_at": timestamp(r.created_at),
        "alpha": r.alpha,
        "anchor": r.anchor,
        "assessment": assessment_to_json(r.assessment),
        "categories": [
            {
                "category": category.value,
                "products": [scored_product_to_json(s, catalog) for s in r.categories[category]],
            }
            for category in CATEGORY_ORDER
            if category in r.categories
        ],
    }


def routine_from_json(data: dict) -> Routine:
    categories = {
        Category.parse(entry["category"]): [
            scored_product_from_json(s) for s in entry["products"]
        ]
        for entry in data["categories"]
    }
    return Routine(
        categories=categories,
        assessment=assessment_from_json(data["assessment"]),
        anchor=data.get("anchor"),
        alpha=float(data["alpha"]),
        created_at=datetime.fromisoformat(data["created_at"]),
    )


def embedding_to_json(emb: Embedding, scope: str, catalog: Optional[Catalog] = None) -> dict:
    points = []
    for pid, (x, y) in zip(emb.product_ids, emb.points):
        point = {"product_id": int(pid), "x": float(x), "y": float(y)}
        if catalog is not None:
            product = catalog.get(int(pid))
            if product is not None:
                point["category"] = product.category.value
                point["issue"] = product.issue.value if product.issue else None
                point["brand"] = product.brand
                point["name"] = product.name
        points.append(point)
    return {"scope": scope, "count": len(points), "points": points}
