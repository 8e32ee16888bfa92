"""Two-class Gaussian naive Bayes over named scalar features.

Class posteriors follow Bayes' rule with conditionally independent
features; each feature's class-conditional likelihood is a Gaussian fitted
by population mean and variance. Evaluation happens in log space, each
log-density term floored near the smallest representable magnitude, and
the normalized posteriors are kept strictly inside (0, 1) so downstream
ratio work never sees an exact 0 or 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CorruptModelError,
    EmptyTableError,
    FeatureMismatchError,
    MissingClassError,
    UnknownVersionError,
)
from .features import LABELS, NORMAL, SUSPICIOUS, FeatureTable, FeatureVector

MODEL_VERSION = 1

VARIANCE_FLOOR = 1e-12
_LOG_DENSITY_FLOOR = -745.0  # near log of the smallest positive double
_PROB_FLOOR = 1e-15


@dataclass(frozen=True)
class GaussianNbModel:
    """Per-class priors plus per-class per-feature Gaussian parameters."""

    classes: tuple[str, str]
    priors: np.ndarray  # shape (2,)
    feature_names: tuple[str, ...]
    means: np.ndarray  # shape (2, n_features)
    variances: np.ndarray  # shape (2, n_features)
    variance_floor: float = VARIANCE_FLOOR
    version: int = MODEL_VERSION


def train(table: FeatureTable) -> GaussianNbModel:
    """Fit priors and per-class Gaussians from a labeled feature table.

    Variances are population variances, floored per feature at
    max(1e-9 * global feature variance, 1e-12) so single-row classes stay
    usable.
    """
    if table.n_rows == 0:
        raise EmptyTableError("cannot train on an empty table")
    per_class = [table.class_values(label) for label in LABELS]
    for label, rows in zip(LABELS, per_class):
        if len(rows) == 0:
            raise MissingClassError(f"no rows labeled {label!r}")
    priors = np.array([len(rows) / table.n_rows for rows in per_class])
    floor = np.maximum(1e-9 * table.values.var(axis=0), VARIANCE_FLOOR)
    means = np.stack([rows.mean(axis=0) for rows in per_class])
    variances = np.stack([np.maximum(rows.var(axis=0), floor) for rows in per_class])
    return GaussianNbModel(LABELS, priors, table.names, means, variances)


def _normalize_log_probs(log_probs: np.ndarray) -> np.ndarray:
    shifted = np.exp(log_probs - log_probs.max())
    probs = shifted / shifted.sum()
    probs = np.maximum(probs, _PROB_FLOOR)
    return probs / probs.sum()


def posterior(model: GaussianNbModel, x: FeatureVector) -> dict[str, float]:
    """P(class | x) for both classes; values sum to 1."""
    if x.names != model.feature_names:
        raise FeatureMismatchError(
            f"feature names {x.names} do not match model {model.feature_names}"
        )
    terms = -0.5 * (
        (x.values - model.means) ** 2 / model.variances
        + np.log(2.0 * np.pi * model.variances)
    )
    terms = np.maximum(terms, _LOG_DENSITY_FLOOR)
    log_probs = np.log(model.priors) + terms.sum(axis=1)
    probs = _normalize_log_probs(log_probs)
    return {label: float(p) for label, p in zip(model.classes, probs)}


def classify(
    model: GaussianNbModel, x: FeatureVector, threshold: float = 0.5
) -> tuple[str, float]:
    """Label plus suspicious-class score for ROC sweeping.

    The default threshold 0.5 reduces to the largest-posterior rule;
    comparison is inclusive, so an exact tie classifies as suspicious.
    """
    probs = posterior(model, x)
    score = probs[SUSPICIOUS]
    label = SUSPICIOUS if score >= threshold else NORMAL
    return label, score


def save_model(model: GaussianNbModel) -> bytes:
    """Line-oriented text encoding with full round-trip float precision."""
    lines = [f"nbmodel v{model.version}"]
    for label, prior in zip(model.classes, model.priors):
        lines.append(f"prior {label} {float(prior)!r}")
    for c, label in enumerate(model.classes):
        for f, name in enumerate(model.feature_names):
            lines.append(
                f"gauss {label} {name} {float(model.means[c, f])!r} "
                f"{float(model.variances[c, f])!r}"
            )
    return ("\n".join(lines) + "\n").encode("ascii")


def load_model(data: bytes) -> GaussianNbModel:
    try:
        lines = data.decode("ascii").splitlines()
    except UnicodeDecodeError:
        raise CorruptModelError("model file is not ASCII text") from None
    if not lines:
        raise CorruptModelError("empty model file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "nbmodel" or not head[1].startswith("v"):
        raise CorruptModelError(f"bad header line {lines[0]!r}")
    if head[1] != f"v{MODEL_VERSION}":
        raise UnknownVersionError(f"unsupported model version {head[1]!r}")

    priors: dict[str, float] = {}
    gauss: dict[str, list[tuple[str, float, float]]] = {label: [] for label in LABELS}
    for line in lines[1:]:
        if not line.strip():
            continue
        parts = line.split()
        try:
            if parts[0] == "prior" and len(parts) == 3:
                priors[parts[1]] = float(parts[2])
            elif parts[0] == "gauss" and len(parts) == 5:
                gauss[parts[1]].append((parts[2], float(parts[3]), float(parts[4])))
            else:
                raise CorruptModelError(f"unreadable record {line!r}")
        except (ValueError, KeyError):
            raise CorruptModelError(f"unreadable record {line!r}") from None

    if set(priors) != set(LABELS):
        raise CorruptModelError(f"priors present for {sorted(priors)}, need {LABELS}")
    prior_values = np.array([priors[label] for label in LABELS])
    if prior_values.min() <= 0.0 or abs(prior_values.sum() - 1.0) > 1e-12:
        raise CorruptModelError("priors must be positive and sum to 1")

    name_lists = [tuple(name for name, _, _ in gauss[label]) for label in LABELS]
    if not name_lists[0] or name_lists[0] != name_lists[1]:
        raise CorruptModelError("gauss records missing or inconsistent across classes")
    if len(set(name_lists[0])) != len(name_lists[0]):
        raise CorruptModelError("duplicate feature in gauss records")

    means = np.array([[m for _, m, _ in gauss[label]] for label in LABELS])
    variances = np.array([[v for _, _, v in gauss[label]] for label in LABELS])
    if not np.all(np.isfinite(means)) or not np.all(np.isfinite(variances)):
        raise CorruptModelError("non-finite model parameter")
    if variances.min() < VARIANCE_FLOOR:
        raise CorruptModelError(f"variance below floor {VARIANCE_FLOOR}")
    return GaussianNbModel(LABELS, prior_values, name_lists[0], means, variances)
