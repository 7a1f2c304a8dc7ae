"""The family F(z) = z**n + lam / z**d and its elementary invariants."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import PoleError, SymmetryUndefined, ValidationError

# default tolerances: algebraic identities / iterated identities
ALGEBRAIC_TOL = 1e-10
ITERATED_TOL = 1e-6

TAU = 2.0 * math.pi


def root_of_unity(k: int, m: int) -> complex:
    """exp(2*pi*i*k/m), with k reduced mod m first so large k stay exact."""
    return cmath.exp(1j * TAU * (k % m) / m)


@dataclass(frozen=True)
class MapParams:
    n: int
    d: int
    lam: complex

    def __post_init__(self):
        if int(self.n) != self.n or int(self.d) != self.d:
            raise ValidationError("n and d must be integers")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "lam", complex(self.lam))
        if self.n < 2:
            raise ValidationError(f"n must be >= 2, got {self.n}")
        if self.d < 1:
            raise ValidationError(f"d must be >= 1, got {self.d}")
        if self.lam == 0:
            raise ValidationError("lambda = 0 degenerates to z**n")

    @property
    def degree(self) -> int:
        return self.n + self.d

    @property
    def omega(self) -> complex:
        return root_of_unity(1, self.n + self.d)

    @property
    def nu(self) -> complex:
        return root_of_unity(1, self.n - 1) if self.n >= 3 else 1.0 + 0j

    @property
    def eta(self) -> complex:
        return root_of_unity(1, (self.n + self.d) * (self.n - 1))

    def with_lambda(self, lam: complex) -> "MapParams":
        return MapParams(self.n, self.d, lam)


@dataclass(frozen=True)
class CriticalData:
    critical_points: Tuple[complex, ...]
    prepoles: Tuple[complex, ...]
    critical_radius: float


def _check_pole(z):
    if np.ndim(z) == 0:
        if z == 0:
            raise PoleError("F is not defined at the pole z = 0")
    elif np.any(np.asarray(z) == 0):
        raise PoleError("F is not defined at the pole z = 0")


def evaluate(params: MapParams, z):
    """F(z) = z**n + lam / z**d. Works on scalars and numpy arrays."""
    _check_pole(z)
    return z**params.n + params.lam / z**params.d


def derivative(params: MapParams, z):
    """F'(z) = n z**(n-1) - d lam / z**(d+1)."""
    _check_pole(z)
    n, d = params.n, params.d
    return n * z ** (n - 1) - d * params.lam / z ** (d + 1)


def iterate(params: MapParams, z, k: int):
    """F^k(z) (scalar or array)."""
    for _ in range(k):
        z = evaluate(params, z)
    return z


def iterate_with_derivative(params: MapParams, z, k: int):
    """Return (F^k(z), (F^k)'(z)) using the chain rule along the orbit."""
    dz = np.ones_like(z) if np.ndim(z) else 1.0 + 0j
    for _ in range(k):
        dz = dz * derivative(params, z)
        z = evaluate(params, z)
    return z, dz


def _ordered_roots(w: complex, m: int) -> List[complex]:
    # all m-th roots of w, counterclockwise from the smallest nonnegative argument
    r = abs(w) ** (1.0 / m)
    phi = cmath.phase(w) / m
    if phi < 0:
        phi += TAU / m
    return [cmath.rect(r, phi + TAU * j / m) for j in range(m)]


def critical_data(params: MapParams) -> CriticalData:
    n, d, lam = params.n, params.d, params.lam
    m = n + d
    crit = _ordered_roots(d * lam / n, m)
    pre = _ordered_roots(-lam, m)
    return CriticalData(tuple(crit), tuple(pre), (d * abs(lam) / n) ** (1.0 / m))


def critical_point(params: MapParams, j: int = 0) -> complex:
    return critical_data(params).critical_points[j % params.degree]


def critical_value(params: MapParams) -> complex:
    return evaluate(params, critical_point(params, 0))


def escape_radius(params: MapParams) -> float:
    """Radius R with |z| >= R  =>  |F(z)| >= 2|z|.

    For |z| >= R >= 2:  |F(z)| >= |z|(|z|**(n-1) - |lam|/|z|**(d+1))
    >= |z|(2 + |lam| - |lam|) = 2|z|.
    """
    return max(2.0, (2.0 + abs(params.lam)) ** (1.0 / (params.n - 1)))


def trap_radius(params: MapParams, rtol: float = 1e-12) -> float:
    """Smallest r >= 1 (up to rtol) such that |z| > r lies in the basin of infinity.

    On r >= 1 the function g(r) = r**n - |lam|/r**d - r is increasing; where it
    is positive the moduli of an orbit grow by at least g(r) per step.
    """
    n, d, a = params.n, params.d, abs(params.lam)

    def g(r):
        return r**n - a / r**d - r

    lo, hi = 1.0, escape_radius(params)
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            hi = mid
        else:
            lo = mid
    return hi


def pole_disk_radius(params: MapParams) -> float:
    """Radius rho such that the disk |z| < rho maps beyond trap_radius (so lies in the trap door or basin)."""
    n, d, a = params.n, params.d, abs(params.lam)
    rstar = trap_radius(params)

    def h(rho):
        return a / rho**d - rho**n - rstar

    lo, hi = 0.0, 1.0
    while h(hi) > 0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == 0 or h(mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo


def symmetry_rotate(params: MapParams, j: int) -> Tuple[MapParams, complex]:
    """Replace lam by nu**j * lam; also return eta**j, the matching dynamical-plane rotation.

    F^k_{nu lam}(eta z) = eta**(n**k) F^k_lam(z).
    """
    if params.n < 3:
        raise SymmetryUndefined("nu is trivial for n = 2")
    n, d = params.n, params.d
    lam = root_of_unity(j, n - 1) * params.lam
    return params.with_lambda(lam), root_of_unity(j, (n + d) * (n - 1))
