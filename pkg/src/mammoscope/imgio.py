"""PGM reading and writing, plus the normalized raster the pipeline works on.

Supports the two grayscale Netpbm formats only: plain "P2" (ASCII) and raw
"P5" (binary, big-endian two-byte samples above maxval 255). Header
comments starting with ``#`` are accepted wherever whitespace may appear,
since real scanner exports contain them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    MalformedHeaderError,
    SampleOutOfRangeError,
    TruncatedDataError,
)

_WHITESPACE = b" \t\r\n\x0b\x0c"
MAX_MAXVAL = 65535


@dataclass(frozen=True)
class RawImage:
    """Decoded PGM: integer samples in row-major order."""

    width: int
    height: int
    maxval: int
    samples: np.ndarray  # 1-D int array, length width * height


@dataclass(frozen=True)
class GrayImage:
    """Real-valued intensity raster, shape (height, width)."""

    pixels: np.ndarray

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def _skip_space(data: bytes, pos: int) -> int:
    """Advance past whitespace and '#' comments (comment runs to end of line)."""
    n = len(data)
    while pos < n:
        if data[pos] == ord("#"):
            while pos < n and data[pos] != ord("\n"):
                pos += 1
        elif data[pos] in _WHITESPACE:
            pos += 1
        else:
            break
    return pos


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    pos = _skip_space(data, pos)
    start = pos
    n = len(data)
    while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
        pos += 1
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    token, pos = _next_token(data, pos)
    try:
        value = int(token)
    except ValueError:
        raise MalformedHeaderError(f"non-numeric {what} token {token!r}") from None
    return value, pos


def read_pgm(data: bytes) -> RawImage:
    """Parse P2/P5 bytes into a RawImage.

    Raises MalformedHeaderError, TruncatedDataError or
    SampleOutOfRangeError per the failure.
    """
    magic, pos = _next_token(data, 0)
    if magic not in (b"P2", b"P5"):
        raise MalformedHeaderError(f"unsupported magic {magic!r}; expected P2 or P5")
    width, pos = _header_int(data, pos, "width")
    height, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"non-positive dimensions {width}x{height}")
    if not 1 <= maxval <= MAX_MAXVAL:
        raise MalformedHeaderError(f"maxval {maxval} outside 1..{MAX_MAXVAL}")

    count = width * height
    if magic == b"P2":
        samples = np.empty(count, dtype=np.int64)
        for i in range(count):
            token, pos = _next_token(data, pos)
            if not token:
                raise TruncatedDataError(f"expected {count} samples, got {i}")
            try:
                samples[i] = int(token)
            except ValueError:
                raise TruncatedDataError(f"unreadable sample token {token!r}") from None
        if samples.min() < 0:
            raise TruncatedDataError("negative sample value")
    else:
        # exactly one whitespace byte separates maxval from the binary payload
        payload = data[pos + 1 :]
        if maxval > 255:
            needed = 2 * count
            if len(payload) < needed:
                raise TruncatedDataError(f"expected {needed} bytes, got {len(payload)}")
            samples = np.frombuffer(payload[:needed], dtype=">u2").astype(np.int64)
        else:
            if len(payload) < count:
                raise TruncatedDataError(f"expected {count} bytes, got {len(payload)}")
            samples = np.frombuffer(payload[:count], dtype=np.uint8).astype(np.int64)

    if samples.max() > maxval:
        raise SampleOutOfRangeError(
            f"sample {int(samples.max())} exceeds maxval {maxval}"
        )
    return RawImage(width, height, maxval, samples)


def to_gray(raw: RawImage) -> GrayImage:
    """Scale samples by 1/maxval into a float raster."""
    pixels = raw.samples.astype(np.float64).reshape(raw.height, raw.width) / raw.maxval
    return GrayImage(pixels)


def write_pgm(img: GrayImage, maxval: int = 255, binary: bool = False) -> bytes:
    """Encode a [0, 1] raster as PGM bytes.

    Pixels quantize to round(p * maxval) with ties rounding up, so a
    read-back of the output reproduces the quantized image exactly.
    """
    if not 1 <= maxval <= MAX_MAXVAL:
        raise ValueError(f"maxval {maxval} outside 1..{MAX_MAXVAL}")
    pixels = img.pixels
    if pixels.min() < 0.0 or pixels.max() > 1.0:
        raise ValueError("pixels must lie in [0, 1] before writing")
    quantized = np.floor(pixels * maxval + 0.5).astype(np.int64)
    header = f"{'P5' if binary else 'P2'}\n{img.width} {img.height}\n{maxval}\n"
    if binary:
        dtype = ">u2" if maxval > 255 else np.uint8
        return header.encode("ascii") + quantized.astype(dtype).tobytes()
    rows = "\n".join(" ".join(str(v) for v in row) for row in quantized)
    return header.encode("ascii") + rows.encode("ascii") + b"\n"
