"""Command line entry points.

Subcommands: ingest, build, embed, recommend, evaluate, serve. All of the
pipeline commands share --catalog/--config/--data-dir; derived artifacts
are cached under <data-dir>/cache keyed by catalog fingerprint and config
hash, so repeat invocations are fast.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from collections import Counter
from pathlib import Path
from typing import Optional

from . import assessment, metrics
from .catalog import Category, Concern, SkinType, load_catalog, load_mapping
from .config import EngineConfig, load_config
from .data import sample_catalog_path
from .engine import GLOBAL_SCOPE, build_engine, embedding_for_scope
from .errors import SkinrecError
from .routine import recommend as compute_recommendation
from .serialize import routine_to_json
from .sessions import SessionStore
from .tsne import export_embedding_csv


def _add_shared_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--catalog", type=Path, default=None,
                        help="catalog CSV (default: bundled 50-product sample)")
    parser.add_argument("--config", type=Path, default=None, help="key=value config file")
    parser.add_argument("--data-dir", type=Path, default=Path(".skinrec"),
                        help="directory for caches and session history")
    parser.add_argument("--mapping", type=Path, default=None,
                        help="column-mapping file for non-canonical CSV layouts")


def _resolve(args) -> tuple[Path, EngineConfig, Optional[dict[str, str]]]:
    catalog = args.catalog or sample_catalog_path()
    config = load_config(args.config) if args.config else EngineConfig()
    mapping = load_mapping(args.mapping) if getattr(args, "mapping", None) else None
    return catalog, config, mapping


def _build(args):
    catalog, config, mapping = _resolve(args)
    cache = Path(args.data_dir) / "cache"
    return build_engine(catalog, config, cache_dir=cache, mapping=mapping)


def cmd_ingest(args) -> int:
    mapping = load_mapping(args.mapping) if args.mapping else None
    catalog = load_catalog(args.csv, mapping)
    by_category = Counter(p.category.value for p in catalog.products)
    print(f"products: {len(catalog)}")
    for category in Category:
        print(f"  {category.value}: {by_category.get(category.value, 0)}")
    print(f"skipped rows: {len(catalog.warnings)}")
    for warning in catalog.warnings[:10]:
        print(f"  {warning}")
    print(f"fingerprint: {catalog.fingerprint}")
    return 0


def cmd_build(args) -> int:
    engine = _build(args)
    source = "cache" if engine.from_cache else "fresh build"
    print(f"engine ready ({source}) in {engine.build_seconds:.1f}s")
    print(f"  products: {len(engine.catalog)}")
    print(f"  vocabulary: {len(engine.vocab)} tokens")
    print(f"  embeddings: {', '.join(sorted(engine.embeddings))}")
    print(f"  factor model: k={engine.model.k}, final loss {engine.model.final_loss:.4f}")
    print(f"  fingerprint: {engine.fingerprint}")
    return 0


def cmd_embed(args) -> int:
    engine = _build(args)
    scope = f"category:{args.category}" if args.category else GLOBAL_SCOPE
    embedding = embedding_for_scope(engine, scope)
    if args.out:
        export_embedding_csv(embedding, args.out)
        print(f"wrote {len(embedding.product_ids)} points to {args.out}")
    else:
        print("product_id,x,y")
        for pid, (x, y) in zip(embedding.product_ids, embedding.points):
            print(f"{pid},{x:.6f},{y:.6f}")
    return 0


def cmd_recommend(args) -> int:
    engine = _build(args)
    profile = assessment.direct(SkinType.parse(args.skin_type), Concern.parse(args.concern))
    alpha = engine.config.alpha if args.alpha is None else args.alpha
    routine = compute_recommendation(
        engine.catalog, engine.matrix, engine.model, profile, args.anchor, alpha
    )
    if args.json:
        print(json.dumps(routine_to_json(routine, engine.catalog), indent=2))
        return 0
    print(f"routine for {profile.skin_type.value} / {profile.concern.value}"
          f" (alpha={alpha}, anchor={args.anchor})")
    for category, scored in routine.categories.items():
        print(f"\n{category.value}:")
        if not scored:
            print("  (no suitable products)")
        for s in scored:
            product = engine.catalog.get(s.product_id)
            print(
                f"  #{s.product_id:<4} {product.brand} - {product.name}"
                f"  [score {s.final_score:.3f} = cos {s.cosine_part:.3f} / mf {s.mf_part:.3f}]"
            )
    return 0


def cmd_evaluate(args) -> int:
    truths, predictions = [], []
    with open(args.csv, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or not row[0].strip():
                continue
            if row[0].strip().lower() == "truth":
                continue  # header
            truths.append(Concern.parse(row[0]))
            predictions.append(Concern.parse(row[1]))
    cm = metrics.confusion(truths, predictions)
    print(json.dumps(metrics.report(cm), indent=2))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    engine = _build(args)
    data_dir = Path(args.data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    store = SessionStore(data_dir / "sessions.jsonl")
    app = create_app(engine, store, ui_dir=args.ui)
    print(f"serving {len(engine.catalog)} products on port {args.port}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skinrec",
                                     description="ingredient-based skincare routine recommender")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load and validate a catalog CSV")
    p.add_argument("csv", type=Path)
    p.add_argument("--mapping", type=Path, default=None)
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("build", help="build (or reuse) all derived artifacts")
    _add_shared_options(p)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("embed", help="export a 2-D embedding as CSV")
    _add_shared_options(p)
    p.add_argument("--category", default=None, help="restrict to one category")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(fn=cmd_embed)

    p = sub.add_parser("recommend", help="print a personalized routine")
    _add_shared_options(p)
    p.add_argument("--skin-type", required=True)
    p.add_argument("--concern", required=True)
    p.add_argument("--anchor", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_recommend)

    p = sub.add_parser("evaluate", help="metrics report from a truth,prediction CSV")
    p.add_argument("csv", type=Path)
    p.set_defaults(fn=cmd_evaluate)

    p = sub.add_parser("serve", help="run the HTTP service")
    _add_shared_options(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui", type=Path, default=None, help="static UI directory to mount at /ui")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SkinrecError as e:
        print(f"error [{e.code}]: {e}", file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
