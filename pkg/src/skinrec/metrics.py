"""Classifier evaluation arithmetic over the four concern labels.

Per-class accuracy is one-vs-rest: each class in turn is treated as the
positive label and everything else as negative. Metrics with a zero
denominator come back as None rather than a silent 0 or 1, so callers
decide how degenerate classes affect any average.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .catalog import CONCERN_ORDER, Concern
from .errors import EmptyInput, LengthMismatch


@dataclass(frozen=True)
class ConfusionMatrix:
    """counts[i][j] = samples with true label i predicted as j,
    rows/columns in canonical concern order."""

    labels: tuple[Concern, ...]
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class ClassMetrics:
    precision: Optional[float]
    recall: Optional[float]
    f1: Optional[float]
    accuracy: Optional[float]


def confusion(truths: Sequence[Concern], predictions: Sequence[Concern]) -> ConfusionMatrix:
    if len(truths) != len(predictions):
        raise LengthMismatch(f"{len(truths)} truths vs {len(predictions)} predictions")
    if not truths:
        raise EmptyInput("no samples")
    counts = np.zeros((len(CONCERN_ORDER), len(CONCERN_ORDER)), dtype=np.int64)
    for t, p in zip(truths, predictions):
        counts[t.index, p.index] += 1
    return ConfusionMatrix(labels=CONCERN_ORDER, counts=counts)


def f1_from_precision_recall(precision: float, recall: float) -> Optional[float]:
    """Harmonic mean of precision and recall; None when both are zero."""
    if precision + recall == 0:
        return None
    return 2.0 * precision * recall / (precision + recall)


def class_metrics(cm: ConfusionMatrix, label: Concern) -> ClassMetrics:
    i = label.index
    counts = cm.counts
    tp = int(counts[i, i])
    fp = int(counts[:, i].sum()) - tp
    fn = int(counts[i, :].sum()) - tp
    total = cm.total
    tn = total - tp - fp - fn

    precision = tp / (tp + fp) if (tp + fp) > 0 else None
    recall = tp / (tp + fn) if (tp + fn) > 0 else None
    if precision is None or recall is None:
        f1 = None
    else:
        f1 = f1_from_precision_recall(precision, recall)
    accuracy = (tp + tn) / total if total > 0 else None
    return ClassMetrics(precision=precision, recall=recall, f1=f1, accuracy=accuracy)


def macro_average_accuracy(cm: ConfusionMatrix) -> float:
    """Mean of the four per-class one-vs-rest accuracies."""
    accs = [class_metrics(cm, label).accuracy for label in cm.labels]
    return float(np.mean([a for a in accs if a is not None]))


def report(cm: ConfusionMatrix) -> dict:
    """JSON-ready metrics report (used by the CLI evaluate command)."""
    per_class = {}
    for label in cm.labels:
        m = class_metrics(cm, label)
        per_class[label.value] = {
            "precision": m.precision,
            "recall": m.recall,
            "f1": m.f1,
            "accuracy": m.accuracy,
        }
    return {
        "labels": [l.value for l in cm.labels],
        "counts": cm.counts.tolist(),
        "total": cm.total,
        "per_class": per_class,
        "macro_average_accuracy": macro_average_accuracy(cm),
    }
