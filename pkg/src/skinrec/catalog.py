"""Product catalog: loading, validation and canonicalization.

The catalog is an immutable snapshot of the product CSV. Loading normalizes
every ingredient string into canonical tokens, collapses duplicate products
and assigns stable ids, so that every derived artifact (vocabulary, matrix,
embeddings, factor model) can be tied back to one content fingerprint.
"""

from __future__ import annotations

import csv
import hashlib
import io
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import BinaryIO, Iterable, Optional, Union

from .errors import (
    DuplicateId,
    EmptyCatalog,
    MalformedCsv,
    UnknownCategory,
    UnknownConcern,
    UnknownSkinType,
)

log = logging.getLogger(__name__)

_WS = re.compile(r"\s+")


class Category(Enum):
    """The five routine categories. Closed set; anything else is rejected."""

    CLEANSER = "Cleanser"
    MOISTURIZER = "Moisturizer"
    TREATMENT = "Treatment"
    MASK = "Mask"
    SUNSCREEN = "Sunscreen"

    @classmethod
    def parse(cls, text: str) -> "Category":
        key = text.strip().lower()
        for member in cls:
            if member.value.lower() == key:
                return member
        raise UnknownCategory(f"unknown category: {text!r}")


# Accepted at ingestion only: some source files label treatments as serums.
CATEGORY_ALIASES = {"serum": Category.TREATMENT}


class SkinType(Enum):
    COMBINATION = "Combination"
    DRY = "Dry"
    NORMAL = "Normal"
    OILY = "Oily"
    SENSITIVE = "Sensitive"

    @classmethod
    def parse(cls, text: str) -> "SkinType":
        key = text.strip().lower()
        for member in cls:
            if member.value.lower() == key:
                return member
        raise UnknownSkinType(f"unknown skin type: {text!r}")


class Concern(Enum):
    """Skin concern labels, declared in canonical (alphabetical) order.

    The declaration order is load-bearing: it fixes tie-breaking and the
    row/column indexing of every concern-indexed matrix.
    """

    ACNE = "Acne"
    CLEAR_SKIN = "ClearSkin"
    PIGMENTATION = "Pigmentation"
    WRINKLES = "Wrinkles"

    @classmethod
    def parse(cls, text: str) -> "Concern":
        key = text.strip().lower().replace(" ", "").replace("_", "")
        for member in cls:
            if member.value.lower() == key:
                return member
        raise UnknownConcern(f"unknown concern: {text!r}")

    @property
    def index(self) -> int:
        return CONCERN_ORDER.index(self)


SKIN_TYPE_ORDER: tuple[SkinType, ...] = tuple(SkinType)
CONCERN_ORDER: tuple[Concern, ...] = tuple(Concern)
CATEGORY_ORDER: tuple[Category, ...] = tuple(Category)


@dataclass(frozen=True)
class Product:
    """One catalog item after normalization.

    ``issue`` is None when the source row carried no concern tag; such a
    product counts as targeting every concern downstream.
    """

    id: int
    category: Category
    issue: Optional[Concern]
    brand: str
    name: str
    ingredients: tuple[str, ...]
    suitability: dict[SkinType, bool]
    price: Optional[float] = None
    rank: Optional[float] = None

    def suits(self, skin_type: SkinType) -> bool:
        return self.suitability.get(skin_type, False)

    def targets(self, concern: Concern) -> bool:
        return self.issue is None or self.issue == concern


@dataclass(frozen=True)
class Catalog:
    products: tuple[Product, ...]
    by_id: dict[int, int] = field(repr=False)
    fingerprint: str = ""
    warnings: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.products)

    def get(self, product_id: int) -> Optional[Product]:
        pos = self.by_id.get(product_id)
        return None if pos is None else self.products[pos]

    def brands(self) -> set[str]:
        return {p.brand for p in self.products}


def parse_ingredients(raw: str) -> list[str]:
    """Split an ingredient string into canonical tokens.

    Fragments are separated by commas or semicolons, trimmed, lowercased
    and internally whitespace-collapsed. Empty fragments are dropped and
    duplicates keep their first occurrence, preserving relative order.
    """
    tokens: list[str] = []
    seen: set[str] = set()
    for fragment in re.split(r"[,;]", raw):
        token = _WS.sub(" ", fragment.strip()).lower()
        if token and token not in seen:
            seen.add(token)
            tokens.append(token)
    return tokens


# Canonical CSV column names. Optional columns may be absent entirely.
REQUIRED_COLUMNS = (
    "Label",
    "brand",
    "name",
    "ingredients",
    "Combination",
    "Dry",
    "Normal",
    "Oily",
    "Sensitive",
)
OPTIONAL_COLUMNS = ("id", "Issue", "price", "rank")

_SKIN_TYPE_COLUMNS = {
    SkinType.COMBINATION: "Combination",
    SkinType.DRY: "Dry",
    SkinType.NORMAL: "Normal",
    SkinType.OILY: "Oily",
    SkinType.SENSITIVE: "Sensitive",
}

_TRUTHY = {"1", "true", "yes"}
_FALSY = {"0", "false", "no", ""}


def load_mapping(path: Union[str, Path]) -> dict[str, str]:
    """Read a flat ``canonical_key = source column name`` mapping file."""
    mapping: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise MalformedCsv(f"mapping line {lineno} is not 'key = column': {line!r}")
        key, _, value = line.partition("=")
        mapping[key.strip()] = value.strip()
    return mapping


def _parse_bool(text: str, column: str, lineno: int) -> bool:
    key = text.strip().lower()
    if key in _TRUTHY:
        return True
    if key in _FALSY:
        return False
    raise MalformedCsv(f"row {lineno}: column {column!r} has non-boolean value {text!r}")


def _parse_optional_float(text: str, column: str, lineno: int) -> Optional[float]:
    text = text.strip()
    if not text:
        return None
    try:
        return float(text)
    except ValueError:
        raise MalformedCsv(f"row {lineno}: column {column!r} has non-numeric value {text!r}")


def catalog_fingerprint(products: Iterable[Product]) -> str:
    """Deterministic content hash of the normalized catalog."""
    h = hashlib.sha256()
    for p in products:
        suit = ",".join("1" if p.suitability[st] else "0" for st in SKIN_TYPE_ORDER)
        record = "\x1f".join(
            [
                str(p.id),
                p.category.value,
                p.issue.value if p.issue else "",
                p.brand,
                p.name,
                "|".join(p.ingredients),
                suit,
                "" if p.price is None else repr(p.price),
                "" if p.rank is None else repr(p.rank),
            ]
        )
        h.update(record.encode("utf-8"))
        h.update(b"\x1e")
    return h.hexdigest()


def load_catalog(
    source: Union[str, Path, BinaryIO, io.TextIOBase],
    mapping: Optional[dict[str, str]] = None,
) -> Catalog:
    """Load and normalize a product catalog from CSV.

    ``mapping`` translates canonical column keys to the source file's header
    names for files with a different layout. Rows with categories outside the
    five known ones are skipped (counted in ``Catalog.warnings``); duplicate
    (brand, name, category) triples collapse to the first occurrence.

    Raises MalformedCsv, EmptyCatalog or DuplicateId.
    """
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            return load_catalog(fh, mapping)
    if isinstance(source, io.TextIOBase):
        text = source
    else:
        text = io.TextIOWrapper(source, encoding="utf-8", newline="")

    reader = csv.reader(text)
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedCsv("empty file: missing header row")
    except csv.Error as e:
        raise MalformedCsv(f"unparseable header: {e}")

    header = [h.strip() for h in header]
    lookup = {h.lower(): i for i, h in enumerate(header)}

    def column_index(key: str) -> Optional[int]:
        name = (mapping or {}).get(key, key)
        return lookup.get(name.lower())

    columns: dict[str, int] = {}
    for key in REQUIRED_COLUMNS:
        idx = column_index(key)
        if idx is None:
            raise MalformedCsv(f"missing required column {key!r} (header: {header})")
        columns[key] = idx
    for key in OPTIONAL_COLUMNS:
        idx = column_index(key)
        if idx is not None:
            columns[key] = idx

    has_id = "id" in columns
    warnings: list[str] = []
    parsed: list[Product] = []
    seen_triples: set[tuple[str, str, Category]] = set()
    next_id = 1

    try:
        rows = list(reader)
    except csv.Error as e:
        raise MalformedCsv(f"unparseable row structure: {e}")

    for lineno, row in enumerate(rows, 2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < len(header):
            raise MalformedCsv(f"row {lineno}: expected {len(header)} fields, got {len(row)}")

        def cell(key: str) -> str:
            return row[columns[key]]

        raw_category = cell("Label").strip()
        alias = CATEGORY_ALIASES.get(raw_category.lower())
        if alias is not None:
            category = alias
        else:
            try:
                category = Category.parse(raw_category)
            except UnknownCategory:
                warnings.append(f"row {lineno}: skipped unknown category {raw_category!r}")
                continue

        issue: Optional[Concern] = None
        if "Issue" in columns and cell("Issue").strip():
            try:
                issue = Concern.parse(cell("Issue"))
            except UnknownConcern:
                warnings.append(f"row {lineno}: skipped unknown issue {cell('Issue')!r}")
                continue

        brand = cell("brand").strip()
        name = cell("name").strip()
        if not brand or not name:
            raise MalformedCsv(f"row {lineno}: brand and name must be non-empty")

        triple = (brand.casefold(), name.casefold(), category)
        if triple in seen_triples:
            continue
        seen_triples.add(triple)

        if has_id:
            raw_id = cell("id").strip()
            try:
                product_id = int(raw_id)
            except ValueError:
                raise MalformedCsv(f"row {lineno}: id {raw_id!r} is not an integer")
            if product_id < 1:
                raise MalformedCsv(f"row {lineno}: id must be positive, got {product_id}")
        else:
            product_id = next_id
            next_id += 1

        suitability = {
            st: _parse_bool(cell(col), col, lineno) for st, col in _SKIN_TYPE_COLUMNS.items()
        }
        price = _parse_optional_float(cell("price"), "price", lineno) if "price" in columns else None
        rank = _parse_optional_float(cell("rank"), "rank", lineno) if "rank" in columns else None
        if price is not None and price < 0:
            raise MalformedCsv(f"row {lineno}: price must be non-negative")
        if rank is not None and not (0 <= rank <= 5):
            raise MalformedCsv(f"row {lineno}: rank must be in [0, 5]")

        parsed.append(
            Product(
                id=product_id,
                category=category,
                issue=issue,
                brand=brand,
                name=name,
                ingredients=tuple(parse_ingredients(cell("ingredients"))),
                suitability=suitability,
                price=price,
                rank=rank,
            )
        )

    if not parsed:
        raise EmptyCatalog("no valid product rows")

    by_id: dict[int, int] = {}
    for pos, product in enumerate(parsed):
        if product.id in by_id:
            raise DuplicateId(f"id {product.id} appears more than once")
        by_id[product.id] = pos

    for message in warnings:
        log.warning("%s", message)

    return Catalog(
        products=tuple(parsed),
        by_id=by_id,
        fingerprint=catalog_fingerprint(parsed),
        warnings=tuple(warnings),
    )


def filter_products(
    catalog: Catalog,
    category: Optional[Category] = None,
    skin_type: Optional[SkinType] = None,
    issue: Optional[Concern] = None,
    brand: Optional[str] = None,
) -> list[Product]:
    """Conjunction of the provided predicates, ordered by ascending id.

    The issue predicate matches untagged products too (they target every
    concern); the brand comparison is case-insensitive exact.
    """
    brand_key = brand.casefold() if brand is not None else None
    out = []
    for p in catalog.products:
        if category is not None and p.category != category:
            continue
        if skin_type is not None and not p.suits(skin_type):
            continue
        if issue is not None and not p.targets(issue):
            continue
        if brand_key is not None and p.brand.casefold() != brand_key:
            continue
        out.append(p)
    out.sort(key=lambda p: p.id)
    return out
