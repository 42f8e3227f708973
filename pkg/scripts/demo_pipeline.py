#!/usr/bin/env python3
"""End-to-end demo on the bundled sample: build, embed, recommend, what-if.

Usage: python scripts/demo_pipeline.py [--catalog path.csv]
"""

import argparse
from pathlib import Path

from skinrec.assessment import direct
from skinrec.catalog import Category, Concern, SkinType
from skinrec.config import EngineConfig
from skinrec.data import sample_catalog_path
from skinrec.engine import build_engine
from skinrec.routine import alternatives, recommend
from skinrec.tsne import export_embedding_csv


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--catalog", type=Path, default=sample_catalog_path())
    parser.add_argument("--cache-dir", type=Path, default=Path(".skinrec/cache"))
    args = parser.parse_args()

    engine = build_engine(args.catalog, EngineConfig(), cache_dir=args.cache_dir)
    print(f"engine built in {engine.build_seconds:.1f}s "
          f"({'cache' if engine.from_cache else 'fresh'}), "
          f"{len(engine.catalog)} products, vocabulary {len(engine.vocab)}")

    export_embedding_csv(engine.embeddings["global"], "embedding_global.csv")
    print("wrote embedding_global.csv")

    profile = direct(SkinType.DRY, Concern.ACNE)
    routine = recommend(engine.catalog, engine.matrix, engine.model, profile,
                        anchor=engine.catalog.products[0].id, alpha=engine.config.alpha)
    print(f"\nroutine for {profile.skin_type.value}/{profile.concern.value} "
          f"anchored on product {routine.anchor}:")
    for category, scored in routine.categories.items():
        names = [
            f"{engine.catalog.get(s.product_id).brand} ({s.final_score:.2f})" for s in scored
        ]
        print(f"  {category.value:<12} {', '.join(names) if names else '(none)'}")

    brand = "BELIF"
    swaps = alternatives(engine.catalog, engine.matrix, routine, Category.MOISTURIZER, brand)
    print(f"\nalternatives from {brand} for the moisturizer slot:")
    if not swaps:
        print("  (no matching products)")
    for s in swaps:
        product = engine.catalog.get(s.product_id)
        print(f"  #{s.product_id} {product.name} (similarity {s.final_score:.3f})")


if __name__ == "__main__":
    main()
