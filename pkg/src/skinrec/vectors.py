"""Ingredient vocabulary, binary product vectors and cosine retrieval."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .catalog import Product
from .errors import EmptyVocabulary, LengthMismatch, RowOutOfRange, UnknownToken


@dataclass(frozen=True)
class Vocabulary:
    """Sorted ingredient token list with its token -> column map."""

    tokens: tuple[str, ...]
    index: dict[str, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class IngredientMatrix:
    """Dense binary products x vocabulary indicator matrix.

    Row i is the indicator vector of product i's ingredients;
    ``product_ids[i]`` maps the row back to its product id.
    ``fingerprint`` ties the matrix to the catalog it was built from
    (None when built from a bare product list).
    """

    data: np.ndarray
    product_ids: tuple[int, ...]
    vocab: Vocabulary
    fingerprint: Optional[str] = None

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def row_of(self, product_id: int) -> int:
        try:
            return self.product_ids.index(product_id)
        except ValueError:
            raise RowOutOfRange(f"product id {product_id} has no row")


def build_vocabulary(products: Sequence[Product]) -> Vocabulary:
    """Sorted union of all ingredient tokens across the products."""
    union: set[str] = set()
    for p in products:
        union.update(p.ingredients)
    if not union:
        raise EmptyVocabulary("no product has any ingredient")
    tokens = tuple(sorted(union))
    return Vocabulary(tokens=tokens, index={t: i for i, t in enumerate(tokens)})


def vectorize(
    products: Sequence[Product],
    vocab: Vocabulary,
    fingerprint: Optional[str] = None,
) -> IngredientMatrix:
    data = np.zeros((len(products), len(vocab)), dtype=np.float64)
    for i, p in enumerate(products):
        for token in p.ingredients:
            col = vocab.index.get(token)
            if col is None:
                raise UnknownToken(f"token {token!r} (product {p.id}) not in vocabulary")
            data[i, col] = 1.0
    return IngredientMatrix(
        data=data,
        product_ids=tuple(p.id for p in products),
        vocab=vocab,
        fingerprint=fingerprint,
    )


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity; exactly 0.0 when either vector has zero norm.

    Inputs are rescaled by their largest magnitude before the dot products
    so extreme entries neither overflow nor underflow the norms.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise LengthMismatch(f"vector lengths differ: {a.shape} vs {b.shape}")
    scale_a = float(np.max(np.abs(a), initial=0.0))
    scale_b = float(np.max(np.abs(b), initial=0.0))
    if scale_a == 0.0 or scale_b == 0.0:
        return 0.0
    a = a / scale_a
    b = b / scale_b
    na = float(np.sqrt(np.dot(a, a)))
    nb = float(np.sqrt(np.dot(b, b)))
    return float(np.dot(a, b) / (na * nb))


MaskLike = Union[Sequence[bool], np.ndarray, Callable[[int], bool]]


def nearest(
    matrix: IngredientMatrix,
    query_row: int,
    k: int,
    mask: Optional[MaskLike] = None,
) -> list[tuple[int, float]]:
    """The k most cosine-similar rows to ``query_row``.

    Candidates are the rows passing ``mask`` (a predicate over row indices
    or a boolean array), excluding the query row itself. Results are ordered
    by descending similarity with ties broken by ascending product id; fewer
    than k pairs come back only when fewer candidates exist.
    """
    n = matrix.rows
    if not (0 <= query_row < n):
        raise RowOutOfRange(f"query_row {query_row} outside 0..{n - 1}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    if mask is None:
        allowed = [True] * n
    elif callable(mask):
        allowed = [bool(mask(i)) for i in range(n)]
    else:
        allowed = [bool(v) for v in mask]
        if len(allowed) != n:
            raise LengthMismatch(f"mask length {len(allowed)} != rows {n}")

    query = matrix.data[query_row]
    scored = [
        (matrix.product_ids[i], cosine(matrix.data[i], query))
        for i in range(n)
        if i != query_row and allowed[i]
    ]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored[:k]


def export_matrix_csv(matrix: IngredientMatrix, path: Union[str, Path]) -> None:
    """Write the 0/1 matrix with the product id as the first column."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["product_id", *matrix.vocab.tokens])
        for i, pid in enumerate(matrix.product_ids):
            writer.writerow([pid, *(int(v) for v in matrix.data[i])])
