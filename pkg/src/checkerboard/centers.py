"""Centers of the principal main cardioids and their rotation numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import IndexMapMismatch, InvariantViolation, UnsupportedFamily, ValidationError
from .rational_map import MapParams, critical_data, derivative, evaluate, root_of_unity

CENTER_TOL = 1e-12
MATCH_RATIO = 10.0


def check_family(n: int, d: int) -> None:
    if n < 2 or d < 1:
        raise ValidationError(f"need n >= 2 and d >= 1, got ({n}, {d})")
    if d == 1:
        raise UnsupportedFamily("d = 1 has no principal Mandelbrot sets")
    if n == 2 and d == 2:
        raise UnsupportedFamily("n = d = 2 has no principal Mandelbrot set")


@dataclass(frozen=True)
class CenterData:
    k: int
    lam: complex
    fixed_or_periodic_critical_index: int
    superattracting_period: int


@dataclass(frozen=True)
class RotationProfile:
    k: int
    index_map: Tuple[int, ...]
    rho: Tuple[int, ...]
    rho_min: int


@dataclass(frozen=True)
class ConjugacyWitness:
    conjugate: bool
    kind: Optional[str]  # "rotation", "conjugation" or None
    rho_min: Tuple[int, int]

    def __bool__(self):
        return self.conjugate


def closed_form_center(n: int, d: int) -> Tuple[float, float]:
    """(lam0, c) solving F(c) = c with c**(n+d) = d*lam/n on the positive reals.

    Substituting lam/c**d = (n/d) c**n into c**n + lam/c**d = c gives
    c**(n-1) (1 + n/d) = 1.
    """
    c = (d / (n + d)) ** (1.0 / (n - 1))
    lam0 = (n / d) * c ** (n + d)
    return lam0, c


def _real_residual(n: int, d: int, lam: float) -> float:
    c = (d * lam / n) ** (1.0 / (n + d))
    return c**n + lam / c**d - c


def refine_center(n: int, d: int, lam: float, steps: int = 50) -> float:
    """Newton (secant-derivative) on lam -> F_lam(c(lam)) - c(lam) over real lam."""
    for _ in range(steps):
        f = _real_residual(n, d, lam)
        h = 1e-7 * lam
        df = (_real_residual(n, d, lam + h) - _real_residual(n, d, lam - h)) / (2 * h)
        if df == 0:
            break
        step = f / df
        lam -= step
        if abs(step) <= 1e-16 * lam:
            break
    return lam


def _critical_cycle(n: int, d: int, k: int) -> Tuple[int, int]:
    # first critical index on the cycle reached from c^0, and its period
    m = n + d
    seen = {}
    j, t = 0, 0
    while j not in seen:
        seen[j] = t
        j = (n * j + k) % m
        t += 1
    period = t - seen[j]
    cyc = [j]
    for _ in range(period - 1):
        cyc.append((n * cyc[-1] + k) % m)
    return min(cyc), period


def center_of_M0(n: int, d: int) -> CenterData:
    check_family(n, d)
    lam0, c = closed_form_center(n, d)
    lam = refine_center(n, d, lam0)
    p = MapParams(n, d, lam)
    c0 = critical_data(p).critical_points[0]
    if abs(evaluate(p, c0) - c0) > CENTER_TOL or abs(derivative(p, c0)) > CENTER_TOL * max(1.0, n + d):
        raise InvariantViolation(f"no superattracting fixed point at the center of ({n}, {d})")
    if abs(c0 - c) > CENTER_TOL:
        raise InvariantViolation("refined center drifted from the closed form")
    return CenterData(0, complex(lam), 0, 1)


def all_centers(n: int, d: int) -> List[CenterData]:
    base = center_of_M0(n, d)
    out = [base]
    for k in range(1, n - 1):
        idx, per = _critical_cycle(n, d, k)
        out.append(CenterData(k, root_of_unity(k, n - 1) * base.lam, idx, per))
    return out


def center_params(n: int, d: int, k: int = 0) -> MapParams:
    if not 0 <= k <= max(n - 2, 0):
        raise ValidationError(f"cardioid index k must lie in 0..{n - 2}")
    lam0 = center_of_M0(n, d).lam
    return MapParams(n, d, root_of_unity(k, n - 1) * lam0 if k else lam0)


def numeric_index_map(params: MapParams) -> Tuple[int, ...]:
    """Image index of each critical point under F, by nearest-critical-point matching."""
    crit = np.array(critical_data(params).critical_points)
    out = []
    for j, c in enumerate(crit):
        dist = np.abs(crit - evaluate(params, complex(c)))
        order = np.argsort(dist)
        best, second = dist[order[0]], dist[order[1]]
        if not best * MATCH_RATIO < second:
            raise IndexMapMismatch(f"F(c^{j}) is not clearly matched to one critical point")
        out.append(int(order[0]))
    return tuple(out)


def signed_rotation(j: int, image: int, m: int) -> int:
    """Representative of image - j mod m in (-m/2, m/2]."""
    r = (image - j) % m
    return r - m if r > m / 2 else r


def rotation_profile(n: int, d: int, k: int) -> RotationProfile:
    check_family(n, d)
    m = n + d
    closed = tuple((n * j + k) % m for j in range(m))
    numeric = numeric_index_map(center_params(n, d, k))
    if closed != numeric:
        raise IndexMapMismatch(f"closed form {closed} != numeric {numeric} at ({n}, {d}, k={k})")
    rho = tuple(signed_rotation(j, closed[j], m) for j in range(m))
    return RotationProfile(k, closed, rho, min(abs(r) for r in rho))


def rho_min_closed_form(n: int, d: int, k: int) -> int:
    # rho_j runs over k + (n-1)j mod (n+d), i.e. the coset k + gZ
    g = math.gcd(n - 1, n + d)
    r = k % g
    return min(r, g - r)


def are_conjugate(n: int, d: int, k1: int, k2: int) -> ConjugacyWitness:
    check_family(n, d)
    for k in (k1, k2):
        if not 0 <= k <= n - 2:
            raise ValidationError(f"cardioid index k must lie in 0..{n - 2}")
    g = math.gcd(n - 1, d + 1)
    kind = None
    if (k2 - k1) % g == 0:
        kind = "rotation"
    elif (k2 + k1) % g == 0:
        kind = "conjugation"
    r1 = rotation_profile(n, d, k1).rho_min
    r2 = rotation_profile(n, d, k2).rho_min
    if (kind is not None) != (r1 == r2):
        raise InvariantViolation(f"gcd criterion and rotation numbers disagree for k = {k1}, {k2}")
    return ConjugacyWitness(kind is not None, kind, (r1, r2))


def centers_report(n: int, d: int) -> dict:
    centers = []
    for c in all_centers(n, d):
        prof = rotation_profile(n, d, c.k)
        centers.append(
            {
                "k": c.k,
                "lambda_re": c.lam.real,
                "lambda_im": c.lam.imag,
                "rho": list(prof.rho),
                "rho_min": prof.rho_min,
            }
        )
    return {"n": n, "d": d, "g": math.gcd(n - 1, d + 1), "centers": centers}
