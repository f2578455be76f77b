"""Minimal portable-anymap I/O.

Binary P4 (bitmap), P5 (graymap), P6 (pixmap) — enough to export views,
masks, and false-color potential fields, and to feed masks back into later
pipeline stages.  No external imaging dependency.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np


def write_pgm(path: str | Path, gray: np.ndarray) -> None:
    """Write a uint8 grayscale image as binary P5."""
    gray = np.asarray(gray, dtype=np.uint8)
    h, w = gray.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(gray.tobytes())


def read_pgm(path: str | Path) -> np.ndarray:
    magic, (w, h), maxval, data = _read_pnm(path, b"P5")
    if maxval != 255:
        raise ValueError(f"{path}: only 8-bit graymaps supported")
    return np.frombuffer(data, dtype=np.uint8, count=w * h).reshape(h, w)


def write_pbm(path: str | Path, bits: np.ndarray) -> None:
    """Write a boolean grid as binary P4; True encodes a set (black) bit."""
    bits = np.asarray(bits, dtype=bool)
    h, w = bits.shape
    packed = np.packbits(bits, axis=1)
    with open(path, "wb") as fh:
        fh.write(f"P4\n{w} {h}\n".encode("ascii"))
        fh.write(packed.tobytes())


def read_pbm(path: str | Path) -> np.ndarray:
    magic, (w, h), _, data = _read_pnm(path, b"P4")
    row_bytes = (w + 7) // 8
    raw = np.frombuffer(data, dtype=np.uint8, count=row_bytes * h).reshape(h, row_bytes)
    bits = np.unpackbits(raw, axis=1)[:, :w]
    return bits.astype(bool)


def write_ppm(path: str | Path, rgb: np.ndarray) -> None:
    """Write an (H, W, 3) uint8 image as binary P6."""
    rgb = np.asarray(rgb, dtype=np.uint8)
    h, w, _ = rgb.shape
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(rgb.tobytes())


def _read_pnm(path: str | Path, expect: bytes):
    data = Path(path).read_bytes()
    fields: list[bytes] = []
    i = 0
    # header tokens may be separated by whitespace and '#' comments
    while len(fields) < (2 if expect == b"P4" else 3) + 1:
        while i < len(data) and data[i : i + 1].isspace():
            i += 1
        if data[i : i + 1] == b"#":
            while i < len(data) and data[i : i + 1] != b"\n":
                i += 1
            continue
        start = i
        while i < len(data) and not data[i : i + 1].isspace():
            i += 1
        fields.append(data[start:i])
    i += 1  # single whitespace after the header
    magic = fields[0]
    if magic != expect:
        raise ValueError(f"{path}: expected {expect.decode()}, found {magic.decode(errors='replace')}")
    w, h = int(fields[1]), int(fields[2])
    maxval = int(fields[3]) if expect != b"P4" else 1
    return magic, (w, h), maxval, data[i:]


def field_to_rgb(values: np.ndarray) -> np.ndarray:
    """False-color a scalar grid: blue (low) through yellow to red (high);
    non-finite cells are black."""
    finite = np.isfinite(values)
    out = np.zeros(values.shape + (3,), dtype=np.uint8)
    if finite.any():
        lo = float(values[finite].min())
        hi = float(values[finite].max())
        span = hi - lo if hi > lo else 1.0
        t = np.zeros_like(values)
        t[finite] = (values[finite] - lo) / span
        r = np.clip(2.0 * t, 0.0, 1.0)
        g = np.clip(2.0 - 2.0 * np.abs(t - 0.5) * 2.0, 0.0, 1.0)
        b = np.clip(2.0 * (1.0 - t), 0.0, 1.0)
        out[..., 0] = np.where(finite, (255 * r).astype(np.uint8), 0)
        out[..., 1] = np.where(finite, (255 * g).astype(np.uint8), 0)
        out[..., 2] = np.where(finite, (255 * b).astype(np.uint8), 0)
    return out
