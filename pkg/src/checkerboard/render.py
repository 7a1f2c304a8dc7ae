"""Deterministic RGB rendering of dynamical and parameter planes, written as binary PPM."""

from __future__ import annotations

import colorsys
import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from ._kernels import dynamical_block, parameter_block, run_rows
from .errors import UnsupportedFamily, ValidationError
from .grid import GridSpec
from .rational_map import MapParams, escape_radius
from .regions import Kind, build_region_map

MAX_RESOLUTION = 8192
MAX_ITER_LIMIT = 1_000_000
SHADE_SCALE = 32.0
RED_FLOOR = 96


class Palette(enum.Enum):
    ESCAPE_SHADE = "EscapeShade"
    REGION_LABELS = "RegionLabels"


@dataclass(frozen=True)
class DynamicalPlane:
    params: MapParams


@dataclass(frozen=True)
class ParameterPlane:
    n: int
    d: int


@dataclass(frozen=True)
class RenderSpec:
    plane: Union[DynamicalPlane, ParameterPlane]
    grid: GridSpec
    max_iter: int = 500
    palette: Palette = Palette.ESCAPE_SHADE

    def __post_init__(self):
        if self.grid.resolution > MAX_RESOLUTION:
            raise ValidationError(f"resolution must be <= {MAX_RESOLUTION}")
        if not 1 <= self.max_iter <= MAX_ITER_LIMIT:
            raise ValidationError(f"max_iter must lie in 1..{MAX_ITER_LIMIT}")


@dataclass(frozen=True, eq=False)
class Image:
    pixels: np.ndarray  # (height, width, 3) uint8, top row first

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def to_ppm(self) -> bytes:
        header = f"P6\n{self.width} {self.height}\n255\n".encode("ascii")
        return header + np.ascontiguousarray(self.pixels, dtype=np.uint8).tobytes()


def write_ppm(image: Image, path) -> None:
    with open(path, "wb") as fh:
        fh.write(image.to_ppm())


def escape_shade(esc: np.ndarray) -> np.ndarray:
    """Red ramp rising with the escape index; bounded pixels (esc < 0) stay black."""
    out = np.zeros(esc.shape + (3,), dtype=np.uint8)
    k = esc.astype(np.float64)
    v = RED_FLOOR + (255 - RED_FLOOR) * (1.0 - np.exp(-k / SHADE_SCALE))
    red = np.where(esc >= 0, np.rint(v), 0)
    out[..., 0] = red.astype(np.uint8)
    return out


FIXED_COLORS = {
    Kind.JULIA: (255, 255, 255),
    Kind.BASIN: (200, 30, 30),
    Kind.TRAP_DOOR: (255, 110, 70),
    Kind.ESCAPING_OTHER: (140, 20, 20),
    Kind.FATOU_OTHER: (25, 25, 25),
}


def connecting_color(j: int, count: int):
    r, g, b = colorsys.hsv_to_rgb(j / max(count, 1), 0.8, 0.5)
    return int(round(255 * r)), int(round(255 * g)), int(round(255 * b))


def label_colors(kind: np.ndarray, index: np.ndarray, n_connecting: int) -> np.ndarray:
    out = np.zeros(kind.shape + (3,), dtype=np.uint8)
    for k, rgb in FIXED_COLORS.items():
        out[kind == k] = rgb
    conn = kind == Kind.CONNECTING
    for j in range(n_connecting):
        out[conn & (index == j)] = connecting_color(j, n_connecting)
    return out


def render_dynamical(spec: RenderSpec, workers: int = 1) -> Image:
    if not isinstance(spec.plane, DynamicalPlane):
        raise ValidationError("render_dynamical needs a dynamical-plane spec")
    params = spec.plane.params
    if spec.palette is Palette.REGION_LABELS:
        rmap = build_region_map(params, spec.grid, spec.max_iter, workers=workers)
        return Image(label_colors(rmap.kind, rmap.index, rmap.n_connecting))
    res = spec.grid.resolution
    outs = (
        np.empty((res, res), np.int32),
        np.empty((res, res), np.int32),
        np.empty((res, res), np.float64),
    )
    xs, ys = spec.grid.axes()
    empty_pts = np.zeros(0, np.complex128)
    empty_ids = np.zeros(0, np.int32)
    args = (
        params.n,
        params.d,
        params.lam,
        escape_radius(params),
        spec.max_iter,
        empty_pts,
        empty_ids,
        0.0,
    )
    esc, _, _ = run_rows(dynamical_block, xs, ys, args, outs, workers)
    return Image(escape_shade(esc))


def render_parameter(spec: RenderSpec, workers: int = 1) -> Image:
    """Escape shading of the critical orbit over the lambda plane; bounded orbits are black."""
    if not isinstance(spec.plane, ParameterPlane):
        raise ValidationError("render_parameter needs a parameter-plane spec")
    n, d = spec.plane.n, spec.plane.d
    MapParams(n, d, 1.0)  # validates n, d
    res = spec.grid.resolution
    xs, ys = spec.grid.axes()
    (esc,) = run_rows(parameter_block, xs, ys, (n, d, spec.max_iter), (np.empty((res, res), np.int32),), workers)
    return Image(escape_shade(esc))


def default_parameter_window(n: int, d: int) -> GridSpec:
    from .centers import center_of_M0

    try:
        hw = 1.2 * abs(center_of_M0(n, d).lam) * 2
    except UnsupportedFamily:
        hw = 1.0
    return GridSpec(0j, hw, 512)
