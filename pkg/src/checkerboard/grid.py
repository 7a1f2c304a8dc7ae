"""Square pixel grids over a window of the complex plane."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import ValidationError

MIN_RESOLUTION = 64


@dataclass(frozen=True)
class GridSpec:
    """Square window center +/- half_width sampled at pixel centres, top row first."""

    center: complex = 0j
    half_width: float = 1.5
    resolution: int = 512

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "half_width", float(self.half_width))
        object.__setattr__(self, "resolution", int(self.resolution))
        if self.half_width <= 0:
            raise ValidationError("half_width must be positive")
        if self.resolution < MIN_RESOLUTION:
            raise ValidationError(f"resolution must be >= {MIN_RESOLUTION}")

    @property
    def pixel_size(self) -> float:
        return 2.0 * self.half_width / self.resolution

    def _offsets(self) -> np.ndarray:
        # symmetric about 0 exactly: offset[i] == -offset[res-1-i]
        res = self.resolution
        return (np.arange(res) + 0.5 - res / 2.0) * self.pixel_size

    def axes(self) -> Tuple[np.ndarray, np.ndarray]:
        """(xs, ys): real parts per column and imaginary parts per row (decreasing)."""
        off = self._offsets()
        return self.center.real + off, self.center.imag - off

    def points(self) -> np.ndarray:
        xs, ys = self.axes()
        return xs[None, :] + 1j * ys[:, None]

    def pixel_of(self, z):
        """(row, col) of the pixel containing z; may fall outside the grid."""
        s = self.pixel_size
        z = np.asarray(z)
        col = np.floor((z.real - (self.center.real - self.half_width)) / s).astype(int)
        row = np.floor(((self.center.imag + self.half_width) - z.imag) / s).astype(int)
        return row, col

    def contains(self, z) -> bool:
        r, c = self.pixel_of(z)
        res = self.resolution
        return bool(np.all((r >= 0) & (r < res) & (c >= 0) & (c < res)))

    def pixel_center(self, row, col):
        xs, ys = self.axes()
        return xs[col] + 1j * ys[row]

    def covers_disk(self, radius: float) -> bool:
        c = self.center
        return abs(c.real) + radius < self.half_width and abs(c.imag) + radius < self.half_width
