"""Rasterized arrangement oracle for spectral pictures.

Pictures are drawn onto a pixel grid over a quadrant window; the unbounded
component of the complement is found by flood fill seeded from the far (right
and top) borders, matching the quadrant semantics of the symbolic arrangement.
Comparisons are Hausdorff-style within one pixel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .spectra import GeometricFamily, Interval, Point, SpectralPicture


@dataclass(frozen=True)
class Grid:
    xmax: float
    ymax: float
    n: int = 2000

    @property
    def dx(self) -> float:
        return self.xmax / self.n

    @property
    def dy(self) -> float:
        return self.ymax / self.n


def grid_for(picture: SpectralPicture, n: int = 2000, margin: float = 1.1) -> Grid:
    """Window comfortably containing the picture."""
    xmax = ymax = 1.0
    for p, q in picture.primitives:
        xmax = max(xmax, _radial_max(p))
        ymax = max(ymax, _radial_max(q))
    return Grid(xmax * margin, ymax * margin, n)


def _radial_max(r) -> float:
    if isinstance(r, Interval):
        return r.hi
    if isinstance(r, Point):
        return r.r
    return r.r0


def _index_range(lo: float, hi: float, step: float, n: int) -> tuple[int, int]:
    """Pixels [i0, i1] whose cells intersect [lo, hi]."""
    i0 = max(0, int(math.floor(lo / step)))
    i1 = min(n - 1, int(math.floor(hi / step)))
    return i0, max(i0, i1)


def _radial_ranges(r, step: float, n: int):
    if isinstance(r, Interval):
        yield _index_range(r.lo, r.hi, step, n)
    elif isinstance(r, Point):
        yield _index_range(r.r, r.r, step, n)
    else:
        assert isinstance(r, GeometricFamily)
        x = r.r0
        while x > step:  # circles below pixel size collapse into the accumulation cell
            yield _index_range(x, x, step, n)
            x *= r.q
        yield _index_range(0.0, x, step, n)


def rasterize(picture: SpectralPicture, grid: Grid) -> np.ndarray:
    """Boolean mask, indexed [ix, iy], of pixels meeting the picture."""
    mask = np.zeros((grid.n, grid.n), dtype=bool)
    for p, q in picture.normal_form().primitives:
        for x0, x1 in _radial_ranges(p, grid.dx, grid.n):
            for y0, y1 in _radial_ranges(q, grid.dy, grid.n):
                mask[x0 : x1 + 1, y0 : y1 + 1] = True
    return mask


_FOUR = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
_EIGHT = np.ones((3, 3), dtype=bool)


def unbounded_complement(mask: np.ndarray) -> np.ndarray:
    """Pixels of the complement connected to the far (right/top) borders."""
    comp = ~mask
    labels, _ = ndimage.label(comp, structure=_FOUR)
    border_labels = set(labels[-1, :][comp[-1, :]]) | set(labels[:, -1][comp[:, -1]])
    border_labels.discard(0)
    if not border_labels:
        return np.zeros_like(mask)
    return np.isin(labels, sorted(border_labels))


def raster_outer_boundary(mask: np.ndarray) -> np.ndarray:
    """Set pixels adjacent (8-connected) to the unbounded complement component."""
    u = unbounded_complement(mask)
    grown = ndimage.binary_dilation(u, structure=_EIGHT)
    return mask & grown


def within_one_pixel(a: np.ndarray, b: np.ndarray) -> bool:
    """Symmetric one-pixel Hausdorff containment of two masks."""
    da = ndimage.binary_dilation(a, structure=_EIGHT)
    db = ndimage.binary_dilation(b, structure=_EIGHT)
    return bool(np.all(~a | db) and np.all(~b | da))
