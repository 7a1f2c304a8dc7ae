"""Orbit iteration, attracting-cycle detection and periodic points."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import PoleError
from .rational_map import (
    MapParams,
    critical_point,
    escape_radius,
    evaluate,
    iterate_with_derivative,
    pole_disk_radius,
    trap_radius,
)

POLE_EPS = 1e-300
CYCLE_TOL = 1e-9
VERIFY_TOL = 1e-8
DEDUP_RADIUS = 1e-6
DEFAULT_MAX_ITER = 1000
CENTER_MAX_ITER = 100_000


@dataclass(frozen=True)
class Escaped:
    iterations: int


@dataclass(frozen=True)
class Cycle:
    period: int
    representative: complex
    multiplier_modulus: float


@dataclass(frozen=True)
class Undecided:
    pass


@dataclass(frozen=True)
class OrbitOutcome:
    fate: object
    trace: Optional[Tuple[complex, ...]] = None

    @property
    def escaped(self) -> bool:
        return isinstance(self.fate, Escaped)


class Trichotomy(enum.Enum):
    CANTOR_SET = "CantorSet"
    CANTOR_CIRCLES = "CantorCircles"
    SIERPINSKI = "Sierpinski"
    CONNECTED_OTHER = "ConnectedOther"


class Basis(enum.Enum):
    FAST_HEURISTIC = "FastHeuristic"
    REGION_CERTIFIED = "RegionCertified"


@dataclass(frozen=True)
class TrichotomyLabel:
    label: Trichotomy
    basis: Basis
    escape_iteration: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "label": self.label.value,
            "basis": self.basis.value,
            "escape_iteration": self.escape_iteration,
        }

    def __str__(self):
        if self.label is Trichotomy.SIERPINSKI:
            return f"Sierpinski({self.escape_iteration})"
        return self.label.value


def cantor_circles_possible(n: int, d: int) -> bool:
    """Trap-door capture of the critical value only happens when 1/n + 1/d < 1."""
    return n * d > n + d


def _step(params: MapParams, z: complex) -> Optional[complex]:
    # None signals the orbit fell into the pole (or under/overflowed through it)
    try:
        return z**params.n + params.lam / z**params.d
    except (ZeroDivisionError, OverflowError):
        return None


def newton_periodic(params: MapParams, z: complex, period: int, steps: int = 60) -> Optional[complex]:
    """Newton on G(z) = F^p(z) - z from z; None if it does not settle."""
    for _ in range(steps):
        try:
            w, dw = iterate_with_derivative(params, z, period)
        except (PoleError, ZeroDivisionError, OverflowError):
            return None
        g = w - z
        dg = dw - 1.0
        if dg == 0:
            return None
        dz = g / dg
        z = z - dz
        if not np.isfinite(z) or z == 0:
            return None
        if abs(dz) <= 1e-15 * (1.0 + abs(z)):
            break
    return z


def cycle_multiplier(params: MapParams, z: complex, period: int) -> float:
    return abs(iterate_with_derivative(params, z, period)[1])


def minimal_period(params: MapParams, z: complex, period: int, tol: float = VERIFY_TOL) -> int:
    w = z
    for q in range(1, period + 1):
        w = evaluate(params, w)
        if period % q == 0 and abs(w - z) <= tol * (1.0 + abs(z)):
            return q
    return period


def _apply(params: MapParams, z: complex, p: int) -> complex:
    for _ in range(p):
        z = evaluate(params, z)
    return z


def _resolve_cycle(params: MapParams, z: complex, period: int) -> Optional[Cycle]:
    zs = newton_periodic(params, z, period)
    if zs is None or abs(zs - z) > 1e-3 * (1.0 + abs(z)):
        return None
    p = minimal_period(params, zs, period)
    if p != period:
        polished = newton_periodic(params, zs, p)
        zs = zs if polished is None else polished
    try:
        if abs(_apply(params, zs, p) - zs) > VERIFY_TOL * (1.0 + abs(zs)):
            return None
        m = cycle_multiplier(params, zs, p)
    except PoleError:
        return None
    if m >= 1.0:
        return None
    return Cycle(p, complex(zs), float(m))


def iterate_orbit(
    params: MapParams,
    z0: complex,
    max_iter: int = DEFAULT_MAX_ITER,
    trace_length: int = 0,
) -> OrbitOutcome:
    """Follow z0 until it escapes, settles on an attracting cycle, or max_iter runs out.

    Escaped(k) reports the first index with |z_k| > R. Cycles are found with
    Brent's algorithm on the orbit and then Newton-polished.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    z = complex(z0)
    if z == 0:
        raise PoleError("seed at the pole")
    R = escape_radius(params)
    trace: List[complex] = []

    def done(fate):
        return OrbitOutcome(fate, tuple(trace) if trace_length else None)

    tortoise = z
    power = lam = 1
    for k in range(max_iter + 1):
        if len(trace) < trace_length:
            trace.append(z)
        az = abs(z)
        if az > R:
            return done(Escaped(k))
        if az < POLE_EPS:
            return done(Escaped(k + 1))
        if k == max_iter:
            break
        nxt = _step(params, z)
        if nxt is None:
            return done(Escaped(k + 1))
        z = nxt
        if abs(z - tortoise) <= CYCLE_TOL * (1.0 + abs(z)):
            cyc = _resolve_cycle(params, z, lam)
            if cyc is not None:
                return done(cyc)
        if power == lam:
            tortoise = z
            power *= 2
            lam = 0
        lam += 1
    return done(Undecided())


def attracting_cycles(params: MapParams, max_iter: int = DEFAULT_MAX_ITER) -> List[Tuple[complex, ...]]:
    """Distinct attracting cycles found from the free critical orbits, as tuples of cycle points."""
    from .rational_map import critical_data

    cycles: List[Tuple[complex, ...]] = []
    for c in critical_data(params).critical_points:
        out = iterate_orbit(params, c, max_iter)
        if not isinstance(out.fate, Cycle):
            continue
        z = out.fate.representative
        pts = [z]
        for _ in range(out.fate.period - 1):
            z = evaluate(params, z)
            pts.append(z)
        if any(min(abs(p - q) for q in cyc) <= DEDUP_RADIUS for cyc in cycles for p in pts):
            continue
        cycles.append(tuple(pts))
    return cycles


def classify_fast(params: MapParams, max_iter: int = DEFAULT_MAX_ITER) -> TrichotomyLabel:
    """Escape-trichotomy guess from the orbit of one critical value.

    A bounded critical orbit gives ConnectedOther. For escaping orbits the disk
    |z| < pole_disk_radius is known to map into the basin, so landing in it is
    used as the trap-door test; anything else defaults to CantorSet. The region
    module certifies these guesses.
    """
    c = critical_point(params, 0)
    v = evaluate(params, c)
    out = iterate_orbit(params, v, max_iter)
    if not out.escaped:
        return TrichotomyLabel(Trichotomy.CONNECTED_OTHER, Basis.FAST_HEURISTIC)
    rstar = trap_radius(params)
    rho = pole_disk_radius(params)
    if abs(v) > rstar:
        return TrichotomyLabel(Trichotomy.CANTOR_SET, Basis.FAST_HEURISTIC)
    z = v
    for j in range(max_iter + 1):
        if abs(z) < rho:
            if j > 0:
                return TrichotomyLabel(Trichotomy.SIERPINSKI, Basis.FAST_HEURISTIC, j)
            if cantor_circles_possible(params.n, params.d):
                return TrichotomyLabel(Trichotomy.CANTOR_CIRCLES, Basis.FAST_HEURISTIC)
            break
        if abs(z) > rstar:
            break
        z = _step(params, z)
        if z is None:
            break
    return TrichotomyLabel(Trichotomy.CANTOR_SET, Basis.FAST_HEURISTIC)


def find_periodic_points(
    params: MapParams,
    period: int,
    search_box: Sequence[float],
    grid: int = 64,
    *,
    newton_steps: int = 80,
    exact_period: bool = False,
    dedup_radius: float = DEDUP_RADIUS,
) -> List[Tuple[complex, float]]:
    """Roots of F^p(z) = z inside search_box = (xmin, xmax, ymin, ymax).

    Newton runs vectorised from a grid x grid lattice of seeds. Returns
    (root, |(F^p)'(root)|) pairs; roots with modulus > 1 are repelling and so
    lie in the Julia set.
    """
    if period < 1:
        raise ValueError("period must be >= 1")
    if grid < 8:
        raise ValueError("grid must be >= 8")
    xmin, xmax, ymin, ymax = map(float, search_box)
    xs = np.linspace(xmin, xmax, grid)
    ys = np.linspace(ymin, ymax, grid)
    z = (xs[None, :] + 1j * ys[:, None]).ravel()
    z = z[z != 0]
    scale = max(xmax - xmin, ymax - ymin)
    with np.errstate(all="ignore"):
        for _ in range(newton_steps):
            w, dw = iterate_with_derivative_safe(params, z, period)
            step = (w - z) / (dw - 1.0)
            # keep wild steps from throwing seeds far away
            big = np.abs(step) > 0.25 * scale
            step[big] *= 0.25 * scale / np.abs(step[big])
            z = z - step
            ok = np.isfinite(z) & (z != 0)
            z = z[ok]
        w, dw = iterate_with_derivative_safe(params, z, period)
        resid = np.abs(w - z)
    keep = np.isfinite(resid) & (resid <= 1e-9)
    keep &= (z.real >= xmin) & (z.real <= xmax) & (z.imag >= ymin) & (z.imag <= ymax)
    roots = z[keep]
    mults = np.abs(dw[keep])
    order = np.lexsort((roots.imag, roots.real))
    roots, mults = roots[order], mults[order]
    found: List[Tuple[complex, float]] = []
    for r, m in zip(roots, mults):
        if any(abs(r - q) <= dedup_radius for q, _ in found):
            continue
        if exact_period and minimal_period(params, complex(r), period) != period:
            continue
        found.append((complex(r), float(m)))
    found.sort(key=lambda t: (_ccw_angle(t[0]), abs(t[0])))
    return found


def _ccw_angle(z: complex) -> float:
    # argument in [0, 2pi), with roots a hair below the positive axis counted as 0
    a = float(np.angle(z)) % (2 * np.pi)
    return 0.0 if a > 2 * np.pi - 1e-12 else a


def iterate_with_derivative_safe(params: MapParams, z: np.ndarray, k: int):
    """Array version of iterate_with_derivative that lets poles become inf/nan."""
    n, d, lam = params.n, params.d, params.lam
    dz = np.ones_like(z)
    with np.errstate(all="ignore"):
        for _ in range(k):
            dz = dz * (n * z ** (n - 1) - d * lam / z ** (d + 1))
            z = z**n + lam / z**d
    return z, dz
