"""Deterministic raster (plain PBM) and vector (SVG) output of prefractals.

One pixel or one unit rect per grid cell, nothing resampled: prefractals
are exactly grid-aligned, so any other policy would lose exactness.
Row 0 of a raster is the top of the image (largest j), keeping +y up.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fractal import Prefractal

__all__ = ["RasterSpec", "rasterize", "write_pbm", "write_svg"]


@dataclass(frozen=True)
class RasterSpec:
    """Pixel geometry of a rendered prefractal: one pixel per grid cell."""

    prefractal: Prefractal
    origin: tuple[int, int]  # (i_min, j_min) of the bounding box
    width: int
    height: int


def rasterize(p: Prefractal) -> tuple[RasterSpec, np.ndarray]:
    """Bitmap with pixel (row, col) set iff the matching cell is a square."""
    if len(p) == 0:
        raise DomainError("cannot rasterize an empty prefractal")
    cols = p.squares[:, 0]
    rows = p.squares[:, 1]
    i_min, i_max = int(cols.min()), int(cols.max())
    j_min, j_max = int(rows.min()), int(rows.max())
    spec = RasterSpec(p, (i_min, j_min), i_max - i_min + 1, j_max - j_min + 1)
    bitmap = np.zeros((spec.height, spec.width), dtype=np.uint8)
    bitmap[j_max - rows, cols - i_min] = 1
    return spec, bitmap


def write_pbm(bitmap) -> bytes:
    """Plain PBM (magic P1, ASCII); set pixel = 1 = black."""
    bitmap = np.asarray(bitmap)
    if bitmap.ndim != 2:
        raise DomainError("bitmap must be two-dimensional")
    h, w = bitmap.shape
    lines = [b"P1", f"{w} {h}".encode("ascii")]
    lines.extend(
        " ".join("1" if v else "0" for v in row).encode("ascii")
        for row in bitmap.tolist()
    )
    return b"\n".join(lines) + b"\n"


def write_svg(p: Prefractal) -> bytes:
    """One unit rect per square on the integer grid, y flipped so +j is up."""
    if len(p) == 0:
        raise DomainError("cannot render an empty prefractal")
    i = p.squares[:, 0]
    j = p.squares[:, 1]
    i_min, i_max = int(i.min()), int(i.max())
    j_min, j_max = int(j.min()), int(j.max())
    width = i_max - i_min + 1
    height = j_max - j_min + 1
    parts = [
        b'<?xml version="1.0" encoding="UTF-8"?>',
        (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'viewBox="{i_min} {-(j_max + 1)} {width} {height}" '
            f'width="{width}" height="{height}">'
        ).encode("ascii"),
    ]
    parts.extend(
        f'<rect x="{a}" y="{-(c + 1)}" width="1" height="1"/>'.encode("ascii")
        for a, c in p.squares.tolist()
    )
    parts.append(b"</svg>")
    return b"\n".join(parts) + b"\n"
