"""End-to-end engine assembly: catalog -> vectors -> embeddings -> factors.

Building is the slow path (the embedding fits dominate), so finished
artifacts are cached in a directory keyed by catalog fingerprint plus
config hash; a rebuild over unchanged inputs is a cheap cache hit. The
assembled EngineState is immutable and safe to share across request
handlers; a rebuild produces a fresh state to swap in atomically.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .catalog import CATEGORY_ORDER, Catalog, Category, load_catalog
from .config import EngineConfig
from .errors import EngineBuildError, SkinrecError
from .mf import FactorModel, build_interactions, load_model, save_model, train
from .tsne import Embedding, fit
from .vectors import IngredientMatrix, Vocabulary, build_vocabulary, vectorize

log = logging.getLogger(__name__)

GLOBAL_SCOPE = "global"
_MIN_EMBED_POINTS = 4
_CACHE_VERSION = 1


@dataclass(frozen=True)
class EngineState:
    catalog: Catalog
    vocab: Vocabulary
    matrix: IngredientMatrix
    embeddings: dict[str, Embedding]  # GLOBAL_SCOPE plus one key per category value
    model: FactorModel
    config: EngineConfig
    fingerprint: str
    from_cache: bool = False
    build_seconds: float = 0.0


def _cache_dir_for(cache_dir: Path, fingerprint: str, config: EngineConfig) -> Path:
    return cache_dir / f"{fingerprint[:16]}-{config.digest()[:8]}"


def _save_artifacts(
    directory: Path, fingerprint: str, config: EngineConfig,
    embeddings: dict[str, Embedding], model: FactorModel,
) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    arrays: dict[str, np.ndarray] = {}
    for scope, emb in embeddings.items():
        arrays[f"{scope}__points"] = emb.points
        arrays[f"{scope}__kl"] = np.array(emb.kl_trace)
        arrays[f"{scope}__ids"] = np.array(emb.product_ids, dtype=np.int64)
    np.savez(directory / "embeddings.npz", **arrays)
    save_model(model, directory / "model.mf")
    meta = {
        "version": _CACHE_VERSION,
        "fingerprint": fingerprint,
        "config": asdict(config),
        "scopes": sorted(embeddings),
        "seed": config.seed,
    }
    (directory / "meta.json").write_text(json.dumps(meta, indent=2), encoding="utf-8")


def _load_artifacts(
    directory: Path, fingerprint: str
) -> Optional[tuple[dict[str, Embedding], FactorModel]]:
    meta_path = directory / "meta.json"
    if not meta_path.exists():
        return None
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        if meta.get("version") != _CACHE_VERSION or meta.get("fingerprint") != fingerprint:
            return None
        with np.load(directory / "embeddings.npz") as data:
            embeddings = {}
            for scope in meta["scopes"]:
                embeddings[scope] = Embedding(
                    points=data[f"{scope}__points"],
                    kl_trace=tuple(float(v) for v in data[f"{scope}__kl"]),
                    seed=int(meta["seed"]),
                    product_ids=tuple(int(v) for v in data[f"{scope}__ids"]),
                )
        model = load_model(directory / "model.mf")
    except (OSError, KeyError, ValueError, SkinrecError) as e:
        log.warning("ignoring unreadable cache at %s: %s", directory, e)
        return None
    return embeddings, model


def build_engine(
    catalog_path: Union[str, Path],
    config: EngineConfig = EngineConfig(),
    cache_dir: Optional[Union[str, Path]] = None,
    mapping: Optional[dict[str, str]] = None,
) -> EngineState:
    """Run the full pipeline, reusing cached artifacts when fingerprints match."""
    started = time.monotonic()
    catalog_path = Path(catalog_path)
    if not catalog_path.exists():
        raise EngineBuildError("catalog", FileNotFoundError(f"no such catalog file: {catalog_path}"))

    def stage(name: str, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SkinrecError as e:
            raise EngineBuildError(name, e) from e

    catalog = stage("catalog", load_catalog, catalog_path, mapping)
    vocab = stage("vectors", build_vocabulary, catalog.products)
    matrix = stage("vectors", vectorize, catalog.products, vocab, catalog.fingerprint)

    cached = None
    target_dir = None
    if cache_dir is not None:
        target_dir = _cache_dir_for(Path(cache_dir), catalog.fingerprint, config)
        cached = _load_artifacts(target_dir, catalog.fingerprint)

    if cached is not None:
        embeddings, model = cached
        model = replace(model, fingerprint=catalog.fingerprint)
        return EngineState(
            catalog=catalog, vocab=vocab, matrix=matrix, embeddings=embeddings,
            model=model, config=config, fingerprint=catalog.fingerprint,
            from_cache=True, build_seconds=time.monotonic() - started,
        )

    embeddings: dict[str, Embedding] = {}
    embeddings[GLOBAL_SCOPE] = stage("tsne", fit, matrix, config.tsne())
    for category in CATEGORY_ORDER:
        rows = [i for i, p in enumerate(catalog.products) if p.category == category]
        if len(rows) < _MIN_EMBED_POINTS:
            log.warning("skipping %s embedding: only %d products", category.value, len(rows))
            continue
        subset = IngredientMatrix(
            data=matrix.data[rows],
            product_ids=tuple(catalog.products[i].id for i in rows),
            vocab=vocab,
            fingerprint=catalog.fingerprint,
        )
        embeddings[category.value] = stage("tsne", fit, subset, config.tsne())

    interactions = stage("mf", build_interactions, catalog)
    model = stage("mf", train, interactions, config.mf(), catalog.fingerprint)

    if target_dir is not None:
        _save_artifacts(target_dir, catalog.fingerprint, config, embeddings, model)

    return EngineState(
        catalog=catalog, vocab=vocab, matrix=matrix, embeddings=embeddings,
        model=model, config=config, fingerprint=catalog.fingerprint,
        from_cache=False, build_seconds=time.monotonic() - started,
    )


def embedding_for_scope(engine: EngineState, scope: str) -> Embedding:
    """Resolve 'global' or 'category:<name>' to a fitted embedding."""
    if scope == GLOBAL_SCOPE:
        return engine.embeddings[GLOBAL_SCOPE]
    if scope.startswith("category:"):
        category = Category.parse(scope.split(":", 1)[1])
        emb = engine.embeddings.get(category.value)
        if emb is None:
            raise KeyError(f"no embedding for category {category.value}")
        return emb
    raise ValueError(f"scope must be 'global' or 'category:<name>', got {scope!r}")
