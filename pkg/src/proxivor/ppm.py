"""Minimal PPM (P3 ASCII / P6 binary, maxval 255) reader and writer."""

from __future__ import annotations

import re
from pathlib import Path
from typing import Union

from .descriptive import ProbeImage

_WS = b" \t\r\n\v\f"


class PPMError(ValueError):
    pass


def _tokens(data: bytes, count: int, pos: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    out = []
    n = len(data)
    while len(out) < count:
        while pos < n and data[pos] in _WS:
            pos += 1
        if pos < n and data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and data[pos] not in _WS and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise PPMError("truncated header")
        out.append(data[start:pos])
    return out, pos


def parse_ppm(data: bytes) -> ProbeImage:
    magic = data[:2]
    if magic not in (b"P3", b"P6"):
        raise PPMError(f"unsupported magic {magic!r}; expected P3 or P6")
    (w, h, maxval), pos = _tokens(data, 3, 2)
    try:
        width, height, maxv = int(w), int(h), int(maxval)
    except ValueError:
        raise PPMError("non-integer header field") from None
    if width <= 0 or height <= 0:
        raise PPMError("image dimensions must be positive")
    if maxv != 255:
        raise PPMError(f"only maxval 255 is supported, got {maxv}")
    count = width * height * 3
    if magic == b"P6":
        # exactly one whitespace byte separates the header from the raster
        if pos >= len(data) or data[pos] not in _WS:
            raise PPMError("missing whitespace after header")
        raster = data[pos + 1:pos + 1 + count]
        if len(raster) != count:
            raise PPMError(f"expected {count} raster bytes, got {len(raster)}")
        values = list(raster)
    else:
        body = re.sub(rb"#[^\r\n]*", b" ", data[pos:])
        fields = body.split()
        if len(fields) < count:
            raise PPMError(f"expected {count} samples, got {len(fields)}")
        values = [int(f) for f in fields[:count]]
        if any(v < 0 or v > 255 for v in values):
            raise PPMError("sample out of range 0..255")
    pixels = tuple(tuple(values[k:k + 3]) for k in range(0, count, 3))
    return ProbeImage(width, height, pixels)


def read_ppm(path: Union[str, Path]) -> ProbeImage:
    return parse_ppm(Path(path).read_bytes())


def encode_ppm(img: ProbeImage, binary: bool = True) -> bytes:
    header = f"{'P6' if binary else 'P3'}\n{img.width} {img.height}\n255\n".encode()
    if binary:
        return header + bytes(v for px in img.pixels for v in px)
    rows = []
    for y in range(img.height):
        row = img.pixels[y * img.width:(y + 1) * img.width]
        rows.append(" ".join(f"{r} {g} {b}" for r, g, b in row))
    return header + ("\n".join(rows) + "\n").encode()


def write_ppm(path: Union[str, Path], img: ProbeImage, binary: bool = True) -> None:
    Path(path).write_bytes(encode_ppm(img, binary))
