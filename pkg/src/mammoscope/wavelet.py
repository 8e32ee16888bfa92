"""Separable 2-D discrete wavelet transform on the dyadic grid.

Analysis anchors the filter at sample 2k under periodic extension:

    approx[k] = sum_j low[j]  * s[(2k + j) mod n]
    detail[k] = sum_j high[j] * s[(2k + j) mod n]

Two-dimensional levels run along rows (x) first, then columns (y), and
split into the four quadrant bands LL, HL, LH, HH, where H in the first
position means highpass along x. Filters are orthonormal, so the inverse
transform is the exact adjoint and reconstruction is exact up to float
rounding. Odd extents are edge-replicated to even before each level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import (
    DimensionMismatchError,
    MalformedDecompositionError,
    OddLengthError,
    SignalTooShortError,
    TooManyLevelsError,
)

FILTER_NAMES = ("haar", "daub4")

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)

DETAIL_BANDS = ("HL", "LH", "HH")


@dataclass(frozen=True)
class WaveletFilter:
    """Orthonormal analysis pair: sum(low) = sqrt(2), sum(low^2) = 1,
    high[k] = (-1)^k * low[L-1-k]."""

    name: str
    lowpass: np.ndarray
    highpass: np.ndarray

    def __len__(self) -> int:
        return len(self.lowpass)


def _quadrature_mirror(lowpass: np.ndarray) -> np.ndarray:
    length = len(lowpass)
    return np.array([(-1.0) ** k * lowpass[length - 1 - k] for k in range(length)])


def get_filter(name: str) -> WaveletFilter:
    """Build a named filter from closed-form tap values."""
    if name == "haar":
        low = np.array([1.0, 1.0]) / _SQRT2
    elif name == "daub4":
        low = np.array(
            [1.0 + _SQRT3, 3.0 + _SQRT3, 3.0 - _SQRT3, 1.0 - _SQRT3]
        ) / (4.0 * _SQRT2)
    else:
        raise ValueError(f"unknown wavelet filter {name!r}; expected one of {FILTER_NAMES}")
    return WaveletFilter(name, low, _quadrature_mirror(low))


@dataclass(frozen=True)
class Subband:
    band: str  # LL, HL, LH or HH
    level: int
    data: np.ndarray


@dataclass(frozen=True)
class WaveletDecomposition:
    """Detail bands per level plus the final approximation band.

    ``level_shapes[k]`` records the (pre-padding) input shape of level k+1
    so the inverse can strip replicated rows between levels.
    """

    filter: WaveletFilter
    levels: int
    details: tuple[dict[str, np.ndarray], ...]
    approx: np.ndarray
    level_shapes: tuple[tuple[int, int], ...]

    def subbands(self) -> Iterator[Subband]:
        """All 3*levels + 1 subbands, details first, final LL last."""
        for level, bands in enumerate(self.details, start=1):
            for name in DETAIL_BANDS:
                yield Subband(name, level, bands[name])
        yield Subband("LL", self.levels, self.approx)


def _analyze(values: np.ndarray, filt: WaveletFilter, axis: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.moveaxis(np.asarray(values, dtype=np.float64), axis, -1)
    n = x.shape[-1]
    length = len(filt)
    if n % 2:
        raise OddLengthError(f"extent {n} is odd; pad to even first")
    if n < length:
        raise SignalTooShortError(f"extent {n} shorter than filter length {length}")
    half = n // 2
    starts = 2 * np.arange(half)
    approx = np.zeros(x.shape[:-1] + (half,))
    detail = np.zeros_like(approx)
    for j in range(length):
        tap = x[..., (starts + j) % n]
        approx += filt.lowpass[j] * tap
        detail += filt.highpass[j] * tap
    return np.moveaxis(approx, -1, axis), np.moveaxis(detail, -1, axis)


def _synthesize(
    approx: np.ndarray, detail: np.ndarray, filt: WaveletFilter, axis: int
) -> np.ndarray:
    a = np.moveaxis(np.asarray(approx, dtype=np.float64), axis, -1)
    d = np.moveaxis(np.asarray(detail, dtype=np.float64), axis, -1)
    if a.shape != d.shape:
        raise DimensionMismatchError(f"approx {a.shape} vs detail {d.shape}")
    half = a.shape[-1]
    n = 2 * half
    out = np.zeros(a.shape[:-1] + (n,))
    starts = 2 * np.arange(half)
    for j in range(len(filt)):
        # stride-2 targets are distinct for fixed j, so plain += is safe
        out[..., (starts + j) % n] += filt.lowpass[j] * a + filt.highpass[j] * d
    return np.moveaxis(out, -1, axis)


def dwt1d(signal, filt: WaveletFilter) -> tuple[np.ndarray, np.ndarray]:
    """One analysis step on a 1-D signal of even length >= filter length."""
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("dwt1d expects a 1-D signal")
    return _analyze(x, filt, axis=0)


def idwt1d(approx, detail, filt: WaveletFilter) -> np.ndarray:
    """Exact inverse of dwt1d under periodic extension."""
    a = np.asarray(approx, dtype=np.float64)
    d = np.asarray(detail, dtype=np.float64)
    if a.ndim != 1 or d.ndim != 1:
        raise ValueError("idwt1d expects 1-D coefficient arrays")
    return _synthesize(a, d, filt, axis=0)


def dwt2d_level(matrix, filt: WaveletFilter) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """One 2-D level: rows first, then columns of each half.

    Returns (LL, HL, LH, HH).
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError("dwt2d_level expects a 2-D matrix")
    low_x, high_x = _analyze(m, filt, axis=1)
    ll, lh = _analyze(low_x, filt, axis=0)
    hl, hh = _analyze(high_x, filt, axis=0)
    return ll, hl, lh, hh


def _idwt2d_level(
    ll: np.ndarray, hl: np.ndarray, lh: np.ndarray, hh: np.ndarray, filt: WaveletFilter
) -> np.ndarray:
    low_x = _synthesize(ll, lh, filt, axis=0)
    high_x = _synthesize(hl, hh, filt, axis=0)
    return _synthesize(low_x, high_x, filt, axis=1)


def pad_even(matrix) -> tuple[np.ndarray, tuple[int, int]]:
    """Replicate the last row/column so both extents are even.

    Returns the padded matrix and the original (height, width).
    """
    m = np.asarray(matrix, dtype=np.float64)
    h, w = m.shape
    if h % 2:
        m = np.vstack([m, m[-1:, :]])
    if w % 2:
        m = np.hstack([m, m[:, -1:]])
    return m, (h, w)


def dwt2d(matrix, filt: WaveletFilter, levels: int) -> WaveletDecomposition:
    """Multi-level decomposition, recursing on the LL band.

    Each level pads its input to even extents first; the run is rejected
    with TooManyLevelsError if any level would see an extent shorter than
    the filter.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError("dwt2d expects a 2-D matrix")

    h, w = m.shape
    length = len(filt)
    for _ in range(levels):
        h += h % 2
        w += w % 2
        if min(h, w) < length:
            raise TooManyLevelsError(
                f"{levels} levels exhaust a {matrix.shape[0]}x{matrix.shape[1]} "
                f"input for filter {filt.name}"
            )
        h //= 2
        w //= 2

    details: list[dict[str, np.ndarray]] = []
    shapes: list[tuple[int, int]] = []
    current = m
    for _ in range(levels):
        shapes.append(current.shape)
        current, _ = pad_even(current)
        ll, hl, lh, hh = dwt2d_level(current, filt)
        details.append({"HL": hl, "LH": lh, "HH": hh})
        current = ll
    return WaveletDecomposition(filt, levels, tuple(details), current, tuple(shapes))


def idwt2d(decomp: WaveletDecomposition) -> np.ndarray:
    """Invert dwt2d, returning the (top-level padded) input matrix."""
    current = decomp.approx
    for level in range(decomp.levels, 0, -1):
        bands = decomp.details[level - 1]
        hl, lh, hh = bands["HL"], bands["LH"], bands["HH"]
        if hl.shape != lh.shape or hl.shape != hh.shape:
            raise MalformedDecompositionError(f"detail shapes differ at level {level}")
        target = hl.shape
        if current.shape != target:
            if current.shape[0] < target[0] or current.shape[1] < target[1]:
                raise MalformedDecompositionError(
                    f"approximation {current.shape} smaller than details {target}"
                )
            current = current[: target[0], : target[1]]
        current = _idwt2d_level(current, hl, lh, hh, decomp.filter)
    return current
