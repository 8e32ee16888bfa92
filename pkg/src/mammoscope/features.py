"""Statistical moment features over wavelet and spectral maps.

All moments are population moments (divide by n): the statistics describe
the pixel distribution itself, not a sample estimate of something larger.
Kurtosis is plain (a Gaussian map scores 3), not excess. Maps that are
constant to within 1e-12 standard deviation yield 0 for skewness,
kurtosis and correlation rather than an error, because a flat subband is
a legitimate pipeline outcome and must not abort a batch run.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import BadKError, EmptyMapError, InsufficientDataError
from .fourier import fft2d, log_magnitude
from .imgio import GrayImage
from .wavelet import DETAIL_BANDS, get_filter, dwt2d

NORMAL = "normal"
SUSPICIOUS = "suspicious"
LABELS = (NORMAL, SUSPICIOUS)

DEGENERATE_STD = 1e-12


def _as_map(values) -> np.ndarray:
    a = np.asarray(values, dtype=np.float64)
    if a.size == 0:
        raise EmptyMapError("statistic over an empty map")
    return a


def mean(values) -> float:
    return float(_as_map(values).mean())


def stddev(values) -> float:
    """Population standard deviation: sqrt(mean((x - m)^2))."""
    a = _as_map(values)
    return float(np.sqrt(np.mean((a - a.mean()) ** 2)))


def skewness(values) -> float:
    """Third central moment over sigma^3; 0 for degenerate maps."""
    a = _as_map(values)
    centered = a - a.mean()
    sigma = np.sqrt(np.mean(centered**2))
    if sigma <= DEGENERATE_STD:
        return 0.0
    return float(np.mean(centered**3) / sigma**3)


def kurtosis(values) -> float:
    """Fourth central moment over sigma^4 (no -3 adjustment); 0 for degenerate maps."""
    a = _as_map(values)
    centered = a - a.mean()
    sigma = np.sqrt(np.mean(centered**2))
    if sigma <= DEGENERATE_STD:
        return 0.0
    return float(np.mean(centered**4) / sigma**4)


def _resample_bilinear(src: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    """Resize by bilinear interpolation on the corner-aligned grid."""
    h, w = src.shape
    out_h, out_w = shape
    rows = np.linspace(0.0, h - 1.0, out_h) if out_h > 1 else np.zeros(1)
    cols = np.linspace(0.0, w - 1.0, out_w) if out_w > 1 else np.zeros(1)
    r0 = np.floor(rows).astype(int)
    c0 = np.floor(cols).astype(int)
    r1 = np.minimum(r0 + 1, h - 1)
    c1 = np.minimum(c0 + 1, w - 1)
    fr = (rows - r0)[:, None]
    fc = (cols - c0)[None, :]
    top = src[np.ix_(r0, c0)] * (1 - fc) + src[np.ix_(r0, c1)] * fc
    bottom = src[np.ix_(r1, c0)] * (1 - fc) + src[np.ix_(r1, c1)] * fc
    return top * (1 - fr) + bottom * fr


def cross_correlation(a, b) -> float:
    """Pearson correlation of two maps, in [-1, 1].

    When the shapes differ, b is bilinearly resampled to a's dimensions
    first. Returns 0 when either map is degenerate.
    """
    x = np.atleast_2d(_as_map(a))
    y = np.atleast_2d(_as_map(b))
    if x.shape != y.shape:
        y = _resample_bilinear(y, x.shape)
    xc = x - x.mean()
    yc = y - y.mean()
    sx = np.sqrt(np.mean(xc**2))
    sy = np.sqrt(np.mean(yc**2))
    if sx <= DEGENERATE_STD or sy <= DEGENERATE_STD:
        return 0.0
    r = float(np.mean(xc * yc) / (sx * sy))
    return min(1.0, max(-1.0, r))


_STATS = (("mean", mean), ("std", stddev), ("skew", skewness), ("kurt", kurtosis))

FEATURE_MODES = ("default8", "extended")


@dataclass(frozen=True)
class FeatureConfig:
    mode: str = "default8"
    filter: str = "daub4"
    levels: int = 3


@dataclass(frozen=True)
class FeatureVector:
    names: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        if len(self.names) != len(self.values):
            raise ValueError("names and values differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate feature names")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("non-finite feature value")


def extract_features(img: GrayImage, cfg: FeatureConfig = FeatureConfig()) -> FeatureVector:
    """Extract the feature vector of one (preprocessed) image.

    default8 mode emits, in this fixed order, the four moments of the
    final-level wavelet LL band and the four moments of the centered
    log-magnitude spectrum:

        wll_mean, wll_std, wll_skew, wll_kurt,
        fft_mean, fft_std, fft_skew, fft_kurt

    extended mode appends the four moments of every detail subband
    (w<band><level>_<stat>, levels inner, bands HL/LH/HH) and the
    correlation of each final-level subband against the log-magnitude map
    (xcorr_ll, xcorr_hl, xcorr_lh, xcorr_hh).
    """
    if cfg.mode not in FEATURE_MODES:
        raise ValueError(f"unknown feature mode {cfg.mode!r}")
    filt = get_filter(cfg.filter)
    decomp = dwt2d(img.pixels, filt, cfg.levels)
    spectral_map = log_magnitude(fft2d(img.pixels))

    names: list[str] = []
    values: list[float] = []
    for prefix, grid in (("wll", decomp.approx), ("fft", spectral_map)):
        for stat, fn in _STATS:
            names.append(f"{prefix}_{stat}")
            values.append(fn(grid))

    if cfg.mode == "extended":
        for level, bands in enumerate(decomp.details, start=1):
            for band in DETAIL_BANDS:
                for stat, fn in _STATS:
                    names.append(f"w{band.lower()}{level}_{stat}")
                    values.append(fn(bands[band]))
        final = {"LL": decomp.approx, **decomp.details[-1]}
        for band in ("LL", "HL", "LH", "HH"):
            names.append(f"xcorr_{band.lower()}")
            values.append(cross_correlation(final[band], spectral_map))

    return FeatureVector(tuple(names), np.array(values))


@dataclass(frozen=True)
class FeatureTable:
    """Labeled feature rows; every row shares the header's feature names."""

    names: tuple[str, ...]
    ids: tuple[str, ...]
    labels: tuple[str, ...]
    values: np.ndarray  # shape (n_rows, n_features)

    def __post_init__(self):
        rows = len(self.ids)
        if len(self.labels) != rows or self.values.shape != (rows, len(self.names)):
            raise ValueError("inconsistent table dimensions")
        for label in self.labels:
            if label not in LABELS:
                raise ValueError(f"unknown label {label!r}")

    @property
    def n_rows(self) -> int:
        return len(self.ids)

    def subset(self, indices) -> "FeatureTable":
        idx = list(indices)
        return FeatureTable(
            self.names,
            tuple(self.ids[i] for i in idx),
            tuple(self.labels[i] for i in idx),
            self.values[idx, :],
        )

    def select_columns(self, names) -> "FeatureTable":
        wanted = list(names)
        missing = [n for n in wanted if n not in self.names]
        if missing:
            raise ValueError(f"unknown feature names {missing}")
        cols = [self.names.index(n) for n in wanted]
        return FeatureTable(tuple(wanted), self.ids, self.labels, self.values[:, cols])

    def class_values(self, label: str) -> np.ndarray:
        rows = [i for i, lab in enumerate(self.labels) if lab == label]
        return self.values[rows, :]


def table_from_rows(rows) -> FeatureTable:
    """Build a table from (id, label, FeatureVector) triples with matching names."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows")
    names = rows[0][2].names
    for rid, _, vec in rows:
        if vec.names != names:
            raise ValueError(f"row {rid!r} feature names do not match the header")
    return FeatureTable(
        names,
        tuple(r[0] for r in rows),
        tuple(r[1] for r in rows),
        np.array([r[2].values for r in rows]),
    )


def table_to_csv(table: FeatureTable) -> str:
    """Serialize with ``id,label,<names...>`` header and round-trip floats."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("id", "label") + table.names)
    for i in range(table.n_rows):
        writer.writerow(
            [table.ids[i], table.labels[i]] + [repr(float(v)) for v in table.values[i]]
        )
    return buf.getvalue()


def table_from_csv(text: str) -> FeatureTable:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("empty feature CSV") from None
    if header[:2] != ["id", "label"]:
        raise ValueError("feature CSV must start with id,label columns")
    names = tuple(header[2:])
    ids, labels, rows = [], [], []
    for row in reader:
        if not row:
            continue
        if len(row) != len(names) + 2:
            raise ValueError(f"row {row[0]!r} has {len(row) - 2} values, expected {len(names)}")
        ids.append(row[0])
        labels.append(row[1])
        rows.append([float(v) for v in row[2:]])
    return FeatureTable(names, tuple(ids), tuple(labels), np.array(rows))


def select_features(table: FeatureTable, k: int) -> list[str]:
    """Rank features by Fisher discriminant ratio and return the top k.

    Score per feature: (mu_pos - mu_neg)^2 / (var_pos + var_neg + 1e-12)
    with population variances; ties break by header order.
    """
    n_features = len(table.names)
    if not 1 <= k <= n_features:
        raise BadKError(f"k={k} outside 1..{n_features}")
    pos = table.class_values(SUSPICIOUS)
    neg = table.class_values(NORMAL)
    if len(pos) < 2 or len(neg) < 2:
        raise InsufficientDataError("need at least 2 rows per class to rank features")
    score = (pos.mean(axis=0) - neg.mean(axis=0)) ** 2 / (
        pos.var(axis=0) + neg.var(axis=0) + 1e-12
    )
    order = sorted(range(n_features), key=lambda i: (-score[i], i))
    return [table.names[i] for i in order[:k]]
