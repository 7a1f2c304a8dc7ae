"""Labelled dynamical-plane grids: basin, trap door, connecting components.

Pixels are iterated at their centres. Escaping pixels whose exterior distance
estimate is below ``julia_width`` pixels, and pixels whose 4-neighbourhood
mixes escaping and non-escaping samples (or two attracting cycles), form the
Julia band. Everything else
is flood filled with 8-connectivity; non-escaping pixels are only joined when
they are captured by the same attracting cycle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from scipy import ndimage

from ._kernels import dynamical_block, run_rows
from .errors import (
    InvariantViolation,
    NotInSector,
    ResolutionTooCoarse,
    Unresolvable,
    ViewportTooSmall,
)
from .grid import GridSpec
from .orbits import (
    DEFAULT_MAX_ITER,
    Basis,
    Trichotomy,
    TrichotomyLabel,
    _step,
    attracting_cycles,
    cantor_circles_possible,
    classify_fast,
)
from .rational_map import MapParams, critical_point, critical_value, escape_radius, trap_radius

EIGHT = np.ones((3, 3), dtype=bool)
CAPTURE_RADIUS = 1e-6
JULIA_WIDTH_PX = 0.5
BRIDGE_PX = 4
TIE_PX = 2.0
INSIDE_PX = 2


class Kind(enum.IntEnum):
    JULIA = 0
    BASIN = 1
    TRAP_DOOR = 2
    ESCAPING_OTHER = 3
    CONNECTING = 4
    FATOU_OTHER = 5


KIND_NAMES = {
    Kind.JULIA: "JuliaApprox",
    Kind.BASIN: "Basin",
    Kind.TRAP_DOOR: "TrapDoor",
    Kind.ESCAPING_OTHER: "EscapingOther",
    Kind.CONNECTING: "Connecting",
    Kind.FATOU_OTHER: "FatouOther",
}
ESCAPING_KINDS = (Kind.BASIN, Kind.TRAP_DOOR, Kind.ESCAPING_OTHER)


@dataclass(frozen=True, eq=False)
class RegionMap:
    params: MapParams
    spec: GridSpec
    max_iter: int
    kind: np.ndarray  # uint8 Kind codes
    index: np.ndarray  # connecting index j, or component id, or -1
    escape_iterations: np.ndarray  # -1 where bounded
    cycle_ids: np.ndarray  # attracting-cycle id, -1 where none
    red_labels: np.ndarray  # flood-fill ids of escaping components (0 = none)
    black_labels: np.ndarray  # flood-fill ids of non-escaping components (0 = none)
    cycles: Tuple[Tuple[complex, ...], ...]
    connecting_centroids: Tuple[complex, ...]
    connecting_cycle_ids: Tuple[int, ...]
    component_count: Dict[str, int] = field(default_factory=dict)

    @property
    def n_connecting(self) -> int:
        return len(self.connecting_centroids)

    @property
    def has_trap_door(self) -> bool:
        return self.component_count.get("TrapDoor", 0) > 0

    def label_at(self, z) -> Optional[Tuple[Kind, int]]:
        """(Kind, index) of the pixel containing z, or None outside the window."""
        if not self.spec.contains(z):
            return None
        r, c = self.spec.pixel_of(z)
        return Kind(int(self.kind[r, c])), int(self.index[r, c])

    def label_histogram(self) -> Dict[str, int]:
        counts = np.bincount(self.kind.ravel(), minlength=len(Kind))
        return {KIND_NAMES[k]: int(counts[k]) for k in Kind}

    def to_report(self, trichotomy: Optional[TrichotomyLabel] = None) -> dict:
        return {
            "n": self.params.n,
            "d": self.params.d,
            "lambda_re": self.params.lam.real,
            "lambda_im": self.params.lam.imag,
            "resolution": self.spec.resolution,
            "label_histogram": self.label_histogram(),
            "n_connecting": self.n_connecting,
            "trichotomy": None if trichotomy is None else trichotomy.to_dict(),
            "red_red_adjacencies": count_cross_adjacencies(self.red_labels),
        }


def _mixed(key: np.ndarray, valid: np.ndarray) -> np.ndarray:
    # pixels with a 4-neighbour carrying a different key (both ends valid)
    out = np.zeros(key.shape, dtype=bool)
    for a, b, oa, ob in (
        (np.s_[:-1, :], np.s_[1:, :], np.s_[:-1, :], np.s_[1:, :]),
        (np.s_[:, :-1], np.s_[:, 1:], np.s_[:, :-1], np.s_[:, 1:]),
    ):
        diff = (key[a] != key[b]) & valid[a] & valid[b]
        out[oa] |= diff
        out[ob] |= diff
    return out


def _julia_band(escaping: np.ndarray, att: np.ndarray, dist: np.ndarray, pixel: float, width: float) -> np.ndarray:
    """Escaping pixels within `width` pixels of the Julia set by distance estimate, plus
    pixels whose 4-neighbourhood mixes escaping with bounded samples or two different
    attracting cycles."""
    band = escaping & (dist < width * pixel)
    everywhere = np.ones_like(escaping)
    band |= _mixed(escaping, everywhere)
    captured = ~escaping & (att >= 0)
    band |= _mixed(att, captured)
    return band


def _label_by_attractor(black: np.ndarray, att: np.ndarray) -> Tuple[np.ndarray, int]:
    labels = np.zeros(black.shape, dtype=np.int32)
    total = 0
    for aid in np.unique(att[black]):
        lab, k = ndimage.label(black & (att == aid), structure=EIGHT)
        sel = lab > 0
        labels[sel] = lab[sel] + total
        total += k
    return labels, total


def _touching(seed: np.ndarray, julia: np.ndarray, black_labels: np.ndarray, bridge: int) -> set:
    # walk from seed through Julia-band pixels only, then look one step further
    grown = ndimage.binary_dilation(seed, structure=EIGHT, iterations=bridge, mask=seed | julia)
    reach = ndimage.binary_dilation(grown, structure=EIGHT)
    ids = np.unique(black_labels[reach])
    return set(int(i) for i in ids if i > 0)


def _centroid(spec: GridSpec, row: float, col: float) -> complex:
    res, s = spec.resolution, spec.pixel_size
    return complex(
        spec.center.real + (col + 0.5 - res / 2.0) * s,
        spec.center.imag - (row + 0.5 - res / 2.0) * s,
    )


def _wrap(a):
    return (a + math.pi) % (2.0 * math.pi) - math.pi


def compute_escape_grid(params: MapParams, spec: GridSpec, max_iter: int, cycles, workers: int = 1):
    """Raw per-pixel arrays (escape index, cycle id, distance estimate)."""
    pts = [p for cyc in cycles for p in cyc]
    ids = [i for i, cyc in enumerate(cycles) for _ in cyc]
    cycle_pts = np.array(pts, dtype=np.complex128).reshape(-1)
    cycle_ids = np.array(ids, dtype=np.int32).reshape(-1)
    res = spec.resolution
    outs = (
        np.empty((res, res), np.int32),
        np.empty((res, res), np.int32),
        np.empty((res, res), np.float64),
    )
    xs, ys = spec.axes()
    args = (
        params.n,
        params.d,
        complex(params.lam),
        escape_radius(params),
        int(max_iter),
        cycle_pts,
        cycle_ids,
        CAPTURE_RADIUS,
    )
    return run_rows(dynamical_block, xs, ys, args, outs, workers)


def build_region_map(
    params: MapParams,
    spec: GridSpec,
    max_iter: int = DEFAULT_MAX_ITER,
    *,
    workers: int = 1,
    julia_width: float = JULIA_WIDTH_PX,
    bridge: int = BRIDGE_PX,
) -> RegionMap:
    rstar = trap_radius(params)
    if not spec.covers_disk(rstar):
        raise ViewportTooSmall(
            f"window must contain |z| <= {rstar:.6g} so the basin reaches the border"
        )
    cycles = attracting_cycles(params, max_iter)
    esc, att, dist = compute_escape_grid(params, spec, max_iter, cycles, workers)

    escaping = esc >= 0
    julia = _julia_band(escaping, att, dist, spec.pixel_size, julia_width)
    red = escaping & ~julia
    black = ~escaping & ~julia
    red_labels, n_red = ndimage.label(red, structure=EIGHT)
    red_labels = red_labels.astype(np.int32)
    black_labels, n_black = _label_by_attractor(black, att)

    edge = np.concatenate([red_labels[0], red_labels[-1], red_labels[:, 0], red_labels[:, -1]])
    border = sorted(set(int(i) for i in np.unique(edge) if i > 0))
    if len(border) != 1:
        raise InvariantViolation(f"{len(border)} escaping components touch the border, expected 1")
    basin_id = border[0]

    r0, c0 = spec.pixel_of(0j)
    near = red_labels[max(r0 - 1, 0) : r0 + 1, max(c0 - 1, 0) : c0 + 1]
    origin_ids = [int(i) for i in np.unique(near) if i > 0 and i != basin_id]
    trap_id = origin_ids[0] if len(origin_ids) == 1 else 0
    if len(origin_ids) > 1:
        raise InvariantViolation("several escaping components at the origin")

    if trap_id == 0:
        fast = classify_fast(params, max_iter)
        if fast.label is not Trichotomy.CANTOR_SET:
            raise ResolutionTooCoarse(
                f"critical orbit implies a trap door ({fast}) but none was separated from the basin"
            )

    kind = np.full(esc.shape, Kind.JULIA, dtype=np.uint8)
    index = np.full(esc.shape, -1, dtype=np.int32)
    kind[red] = Kind.ESCAPING_OTHER
    index[red] = red_labels[red]
    basin = red_labels == basin_id
    kind[basin] = Kind.BASIN
    index[basin] = -1
    if trap_id:
        trap = red_labels == trap_id
        kind[trap] = Kind.TRAP_DOOR
        index[trap] = -1
    kind[black] = Kind.FATOU_OTHER
    index[black] = black_labels[black]

    centroids: List[complex] = []
    conn_cycles: List[int] = []
    if trap_id and n_black:
        tb = _touching(basin, julia, black_labels, bridge)
        tt = _touching(red_labels == trap_id, julia, black_labels, bridge)
        conn = sorted(tb & tt)
        if conn:
            coms = ndimage.center_of_mass(np.ones_like(black_labels), black_labels, conn)
            cents = [_centroid(spec, r, c) for r, c in coms]
            a0 = np.angle(critical_point(params, 0))
            first = min(range(len(conn)), key=lambda i: abs(_wrap(np.angle(cents[i]) - a0)))
            base = np.angle(cents[first])
            order = sorted(range(len(conn)), key=lambda i: (np.angle(cents[i]) - base) % (2 * np.pi))
            for j, i in enumerate(order):
                sel = black_labels == conn[i]
                kind[sel] = Kind.CONNECTING
                index[sel] = j
                centroids.append(cents[i])
                conn_cycles.append(int(np.bincount(att[sel] + 1).argmax()) - 1)

    counts = {
        "Basin": 1,
        "TrapDoor": 1 if trap_id else 0,
        "EscapingOther": n_red - 1 - (1 if trap_id else 0),
        "Connecting": len(centroids),
        "FatouOther": n_black - len(centroids),
    }
    return RegionMap(
        params=params,
        spec=spec,
        max_iter=max_iter,
        kind=kind,
        index=index,
        escape_iterations=esc,
        cycle_ids=np.where(escaping, -1, att).astype(np.int32),
        red_labels=red_labels,
        black_labels=black_labels,
        cycles=tuple(tuple(c) for c in cycles),
        connecting_centroids=tuple(centroids),
        connecting_cycle_ids=tuple(conn_cycles),
        component_count=counts,
    )


def count_cross_adjacencies(labels: np.ndarray) -> int:
    """Number of 8-adjacent pixel pairs carrying two different nonzero labels."""
    total = 0
    pairs = (
        (labels[:, :-1], labels[:, 1:]),
        (labels[:-1, :], labels[1:, :]),
        (labels[:-1, :-1], labels[1:, 1:]),
        (labels[:-1, 1:], labels[1:, :-1]),
    )
    for a, b in pairs:
        total += int(np.count_nonzero((a > 0) & (b > 0) & (a != b)))
    return total


def classify_certified(
    params: MapParams,
    spec: GridSpec,
    max_iter: int = DEFAULT_MAX_ITER,
    *,
    region_map: Optional[RegionMap] = None,
    workers: int = 1,
) -> TrichotomyLabel:
    """Escape-trichotomy label read off a flood-filled grid.

    The critical value is looked up on the grid: basin gives a Cantor set,
    trap door gives Cantor circles, otherwise its orbit is followed until it
    drops into the trap door (Sierpinski curve, with that iterate).
    """
    fast = classify_fast(params, max_iter)
    if fast.label is Trichotomy.CONNECTED_OTHER:
        return TrichotomyLabel(Trichotomy.CONNECTED_OTHER, Basis.REGION_CERTIFIED)
    rmap = region_map or build_region_map(params, spec, max_iter, workers=workers)
    rstar = trap_radius(params)
    z = critical_value(params)
    for j in range(max_iter + 1):
        lab = rmap.label_at(z)
        if lab is None:
            if abs(z) <= rstar:
                raise Unresolvable(f"iterate {j} of the critical value left the window")
            kind = Kind.BASIN
        else:
            kind = lab[0]
        if kind is Kind.JULIA:
            raise Unresolvable(f"iterate {j} of the critical value sits on a Julia-band pixel")
        if j == 0 and kind is Kind.BASIN:
            return TrichotomyLabel(Trichotomy.CANTOR_SET, Basis.REGION_CERTIFIED)
        if j == 0 and kind is Kind.TRAP_DOOR:
            if not cantor_circles_possible(params.n, params.d):
                raise Unresolvable("critical value in a trap door for a family without Cantor circles")
            return TrichotomyLabel(Trichotomy.CANTOR_CIRCLES, Basis.REGION_CERTIFIED)
        if kind is Kind.TRAP_DOOR:
            return TrichotomyLabel(Trichotomy.SIERPINSKI, Basis.REGION_CERTIFIED, j)
        if kind is Kind.BASIN:
            raise Unresolvable("orbit reached the basin without passing the trap door")
        z = _step(params, z)
        if z is None:
            raise Unresolvable("orbit hit the pole")
    raise Unresolvable("critical orbit did not reach the trap door within max_iter")


@dataclass(frozen=True)
class CheckerboardStats:
    n_connecting: int
    red_red_adjacencies: int
    junction_estimates: Tuple[complex, ...]
    black_black_adjacencies: int = 0


def _contact_points(rmap: RegionMap, target: np.ndarray) -> List[complex]:
    # for each Connecting(j): midpoint between its pixel closest to target and that target pixel
    dist, (ri, ci) = ndimage.distance_transform_edt(~target, return_indices=True)
    out = []
    for j in range(rmap.n_connecting):
        sel = (rmap.kind == Kind.CONNECTING) & (rmap.index == j)
        rows, cols = np.nonzero(sel)
        best = int(np.argmin(dist[rows, cols]))
        r, c = rows[best], cols[best]
        a = rmap.spec.pixel_center(r, c)
        b = rmap.spec.pixel_center(ri[r, c], ci[r, c])
        out.append(complex(0.5 * (a + b)))
    return out


def checkerboard_stats(rmap: RegionMap) -> CheckerboardStats:
    junctions: List[complex] = []
    if rmap.n_connecting:
        junctions = _contact_points(rmap, rmap.kind == Kind.BASIN)
        junctions += _contact_points(rmap, rmap.kind == Kind.TRAP_DOOR)
    return CheckerboardStats(
        n_connecting=rmap.n_connecting,
        red_red_adjacencies=count_cross_adjacencies(rmap.red_labels),
        junction_estimates=tuple(junctions),
        black_black_adjacencies=count_cross_adjacencies(rmap.black_labels),
    )


class SectorInfo(NamedTuple):
    sector: int
    boundary: Optional[int]  # index of the nearby sector ray when inside the tie band


def sector_info(rmap: RegionMap, z: complex, tie_px: float = TIE_PX, inside_px: int = INSIDE_PX) -> SectorInfo:
    """Angular sector of z between consecutive connecting-component centroids.

    Inside the tie band of a ray the point is given to the counterclockwise
    sector and the ray index is reported, so callers can offer the other side.
    """
    m = rmap.params.degree
    if rmap.n_connecting != m:
        raise NotInSector(f"sectors need {m} connecting components, grid has {rmap.n_connecting}")
    lab = rmap.label_at(z)
    if lab is not None and lab[0] in (Kind.BASIN, Kind.TRAP_DOOR, Kind.CONNECTING):
        r, c = rmap.spec.pixel_of(z)
        win = rmap.kind[max(r - inside_px, 0) : r + inside_px + 1, max(c - inside_px, 0) : c + inside_px + 1]
        if not np.any(win == Kind.JULIA):
            raise NotInSector(f"{z} lies inside {KIND_NAMES[lab[0]]}")
    phi = np.angle(z)
    thetas = np.angle(np.array(rmap.connecting_centroids))
    base = thetas[0]
    rel = (phi - base) % (2 * np.pi)
    bounds = (thetas - base) % (2 * np.pi)
    sector = int(np.searchsorted(bounds, rel, side="right") - 1) % m
    gaps = np.abs(_wrap(phi - thetas))
    i = int(np.argmin(gaps))
    if gaps[i] * abs(z) < tie_px * rmap.spec.pixel_size:
        return SectorInfo(i, i)
    return SectorInfo(sector, None)


def sector_of(rmap: RegionMap, z: complex) -> int:
    return sector_info(rmap, z).sector
