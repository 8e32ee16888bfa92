"""Screening quality metrics: confusion counts, ROC/AUC, CV splits.

The suspicious class is the positive class throughout. ROC uses the
standard axes, false positive rate (1 - specificity) against true
positive rate (sensitivity), because only in that convention does the
trapezoidal area equal the probability that a random positive outscores a
random negative, which is what the tests pin it to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DegenerateLabelsError,
    EmptyInputError,
    LengthMismatchError,
    NoNegativesError,
    NoPositivesError,
    TooFewRowsError,
)
from .features import LABELS, NORMAL, SUSPICIOUS, FeatureTable
from .rng import Rng


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def _check_labels(labels) -> None:
    for label in labels:
        if label not in LABELS:
            raise ValueError(f"unknown label {label!r}")


def confusion(pred, truth) -> ConfusionMatrix:
    """Count the four outcomes of a binary screen (suspicious = positive)."""
    pred = list(pred)
    truth = list(truth)
    if len(pred) != len(truth):
        raise LengthMismatchError(f"{len(pred)} predictions vs {len(truth)} truths")
    if not pred:
        raise EmptyInputError("no cases to tally")
    _check_labels(pred)
    _check_labels(truth)
    tp = fp = tn = fn = 0
    for p, t in zip(pred, truth):
        if t == SUSPICIOUS:
            if p == SUSPICIOUS:
                tp += 1
            else:
                fn += 1
        else:
            if p == NORMAL:
                tn += 1
            else:
                fp += 1
    return ConfusionMatrix(tp, fp, tn, fn)


def sensitivity(cm: ConfusionMatrix) -> float:
    """True positive rate tp / (tp + fn)."""
    if cm.tp + cm.fn == 0:
        raise NoPositivesError("sensitivity undefined without positive cases")
    return cm.tp / (cm.tp + cm.fn)


def specificity(cm: ConfusionMatrix) -> float:
    """True negative rate tn / (tn + fp)."""
    if cm.tn + cm.fp == 0:
        raise NoNegativesError("specificity undefined without negative cases")
    return cm.tn / (cm.tn + cm.fp)


@dataclass(frozen=True)
class RocCurve:
    """Operating points (fpr, tpr, threshold) from (0,0) to (1,1), plus AUC."""

    points: tuple[tuple[float, float, float], ...]
    auc: float


def _trapezoid_area(points) -> float:
    area = 0.0
    for (x0, y0, _), (x1, y1, _) in zip(points, points[1:]):
        area += (x1 - x0) * (y0 + y1) / 2.0
    return area


def roc(scores, truth) -> RocCurve:
    """Sweep the decision threshold over every distinct score.

    A case is called suspicious when score >= threshold (inclusive, same
    rule as the classifier). The initial point uses an infinite threshold
    so the curve is anchored at (0, 0); the lowest score anchors (1, 1).
    """
    scores = [float(s) for s in scores]
    truth = list(truth)
    if len(scores) != len(truth):
        raise LengthMismatchError(f"{len(scores)} scores vs {len(truth)} truths")
    _check_labels(truth)
    n_pos = sum(1 for t in truth if t == SUSPICIOUS)
    n_neg = len(truth) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabelsError("ROC needs at least one case of each class")

    order = sorted(range(len(scores)), key=lambda i: -scores[i])
    points = [(0.0, 0.0, math.inf)]
    tp = fp = 0
    i = 0
    while i < len(order):
        value = scores[order[i]]
        while i < len(order) and scores[order[i]] == value:
            if truth[order[i]] == SUSPICIOUS:
                tp += 1
            else:
                fp += 1
            i += 1
        points.append((fp / n_neg, tp / n_pos, value))
    return RocCurve(tuple(points), _trapezoid_area(points))


def auc(curve: RocCurve) -> float:
    """Trapezoidal area under the curve's points."""
    return _trapezoid_area(curve.points)


def kfold_indices(table: FeatureTable, k: int, seed: int) -> list[tuple[list[int], list[int]]]:
    """Row-index version of :func:`kfold`, for callers that track rows."""
    if k < 2:
        raise ValueError("k must be >= 2")
    rng = Rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    for label in LABELS:
        indices = [i for i, lab in enumerate(table.labels) if lab == label]
        if len(indices) < k:
            raise TooFewRowsError(f"class {label!r} has {len(indices)} rows, needs >= {k}")
        rng.shuffle(indices)
        for position, row in enumerate(indices):
            folds[position % k].append(row)
    splits = []
    for f in range(k):
        test = sorted(folds[f])
        train = sorted(row for g in range(k) if g != f for row in folds[g])
        splits.append((train, test))
    return splits


def kfold(table: FeatureTable, k: int, seed: int) -> list[tuple[FeatureTable, FeatureTable]]:
    """Stratified k-fold splits, deterministic under the seed.

    Rows of each class are shuffled once (normal first, then suspicious)
    and dealt round-robin, so every fold's class count is within one row
    of the global ratio and the folds partition the table.
    """
    return [
        (table.subset(train), table.subset(test))
        for train, test in kfold_indices(table, k, seed)
    ]


def roc_to_csv(curve: RocCurve) -> str:
    lines = ["threshold,fpr,tpr"]
    for fpr, tpr, thr in curve.points:
        lines.append(f"{thr!r},{fpr!r},{tpr!r}")
    return "\n".join(lines) + "\n"


def roc_to_svg(curve: RocCurve, size: int = 360, margin: int = 30) -> str:
    """Minimal single-file plot: unit-square axis box plus the curve polyline."""
    span = size - 2 * margin

    def sx(x: float) -> float:
        return margin + x * span

    def sy(y: float) -> float:
        return size - margin - y * span

    coords = " ".join(f"{sx(f):.2f},{sy(t):.2f}" for f, t, _ in curve.points)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">\n'
        f'<rect x="{margin}" y="{margin}" width="{span}" height="{span}" '
        f'fill="white" stroke="black"/>\n'
        f'<line x1="{sx(0):.2f}" y1="{sy(0):.2f}" x2="{sx(1):.2f}" y2="{sy(1):.2f}" '
        f'stroke="#bbbbbb" stroke-dasharray="4 4"/>\n'
        f'<polyline points="{coords}" fill="none" stroke="#c0392b" stroke-width="1.5"/>\n'
        f'<text x="{sx(0.5):.2f}" y="{size - 8}" text-anchor="middle" '
        f'font-size="12">false positive rate</text>\n'
        f'<text x="12" y="{sy(0.5):.2f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 12 {sy(0.5):.2f})">true positive rate</text>\n'
        f'<text x="{sx(0.98):.2f}" y="{sy(0.02):.2f}" text-anchor="end" '
        f'font-size="12">AUC = {curve.auc:.4f}</text>\n'
        "</svg>\n"
    )
