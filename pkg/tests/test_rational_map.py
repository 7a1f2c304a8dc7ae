import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from checkerboard.errors import PoleError, SymmetryUndefined, ValidationError
from checkerboard.rational_map import (
    MapParams,
    critical_data,
    derivative,
    escape_radius,
    evaluate,
    iterate,
    pole_disk_radius,
    symmetry_rotate,
    trap_radius,
)

FAMILIES = [(2, 1), (2, 3), (3, 2), (3, 3), (4, 3), (4, 4), (5, 2), (6, 7), (13, 7), (11, 4)]
lams = st.complex_numbers(min_magnitude=1e-3, max_magnitude=3.0, allow_nan=False, allow_infinity=False)


def test_evaluate_examples():
    assert evaluate(MapParams(2, 1, 1), 1) == 2.0
    assert evaluate(MapParams(4, 3, 0.18), 1) == pytest.approx(1.18, abs=1e-15)
    c = 2**-0.5
    assert abs(evaluate(MapParams(3, 3, 1 / 8), c) - c) < 1e-15


def test_derivative_examples():
    assert derivative(MapParams(2, 1, 1), 1) == 1.0
    assert abs(derivative(MapParams(2, 2, 16), 2)) < 1e-10
    p = MapParams(3, 3, 1 / 8)
    assert abs(derivative(p, (1 / 8) ** (1 / 6))) < 1e-10


def test_pole_rejected():
    with pytest.raises(PoleError):
        evaluate(MapParams(3, 3, 1), 0)
    with pytest.raises(PoleError):
        derivative(MapParams(3, 3, 1), 0j)


@pytest.mark.parametrize("n,d,lam", [(1, 2, 1), (3, 0, 1), (3, 3, 0)])
def test_invalid_params(n, d, lam):
    with pytest.raises(ValidationError):
        MapParams(n, d, lam)


def test_constants_relation():
    for n, d in FAMILIES:
        p = MapParams(n, d, 1)
        if n >= 3:
            assert abs(p.eta ** (n + d) - p.nu) < 1e-12
        assert abs(p.eta ** (n - 1) - p.omega) < 1e-12


def test_critical_data_examples():
    cd = critical_data(MapParams(2, 2, 16))
    assert cd.critical_radius == pytest.approx(2.0)
    assert np.allclose(cd.critical_points, [2, 2j, -2, -2j], atol=1e-12)
    assert critical_data(MapParams(3, 3, 1 / 8)).critical_radius == pytest.approx(2**-0.5, abs=1e-12)
    assert np.allclose(critical_data(MapParams(2, 2, -1)).prepoles, [1, 1j, -1, -1j], atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FAMILIES), lams)
def test_critical_points_and_prepoles(fam, lam):
    n, d = fam
    p = MapParams(n, d, lam)
    m = n + d
    cd = critical_data(p)
    target = d * lam / n
    args = []
    for c in cd.critical_points:
        assert abs(c**m - target) <= 1e-10 * abs(target)
        assert abs(abs(c) - cd.critical_radius) <= 1e-10 * cd.critical_radius
        assert abs(derivative(p, c)) <= 1e-9 * (1 + abs(n * c ** (n - 1)))
        args.append(cmath.phase(c) % (2 * math.pi))
    assert args[0] < 2 * math.pi / m + 1e-12
    steps = np.diff(np.unwrap(args))
    assert np.allclose(steps, 2 * math.pi / m, atol=1e-10)
    for w in cd.prepoles:
        assert abs(w**n * w**d + lam) <= 1e-10 * abs(lam)


def test_escape_radius_examples():
    assert escape_radius(MapParams(3, 2, 1)) == 2.0
    assert escape_radius(MapParams(2, 1, 100)) == 102.0
    assert escape_radius(MapParams(13, 7, 0.3228)) == 2.0


@pytest.mark.parametrize("n,d", FAMILIES)
def test_escape_guarantee(n, d):
    rng = np.random.default_rng(n * 100 + d)
    for lam in rng.normal(size=5) + 1j * rng.normal(size=5):
        p = MapParams(n, d, lam)
        R = escape_radius(p)
        z = R * np.exp(2j * np.pi * rng.random(1000))
        assert np.all(np.abs(evaluate(p, z)) >= 2 * R * (1 - 1e-12))


@pytest.mark.parametrize("n,d", FAMILIES)
def test_trap_and_pole_disk(n, d):
    rng = np.random.default_rng(7 + n + d)
    for lam in 0.5 * (rng.normal(size=4) + 1j * rng.normal(size=4)):
        p = MapParams(n, d, lam)
        r, rho = trap_radius(p), pole_disk_radius(p)
        assert 1.0 <= r <= escape_radius(p)
        z = r * 1.001 * np.exp(2j * np.pi * rng.random(500))
        assert np.all(np.abs(evaluate(p, z)) > np.abs(z))
        w = rho * 0.999 * np.exp(2j * np.pi * rng.random(500))
        assert np.all(np.abs(evaluate(p, w)) > r)


@pytest.mark.parametrize("n,d", FAMILIES)
def test_derivative_finite_difference(n, d):
    rng = np.random.default_rng(n + 31 * d)
    p = MapParams(n, d, 0.3 + 0.2j)
    z = (0.5 + rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
    h = 1e-6
    fd = (evaluate(p, z + h) - evaluate(p, z - h)) / (2 * h)
    exact = derivative(p, z)
    assert np.all(np.abs(fd - exact) <= 1e-4 * np.maximum(np.abs(exact), 1.0))


def test_rotation_conjugacy_identity():
    rng = np.random.default_rng(3)
    for n, d in [(3, 3), (4, 3), (13, 7), (11, 4)]:
        p = MapParams(n, d, 0.2 - 0.1j)
        z = (0.3 + rng.random(300)) * np.exp(2j * np.pi * rng.random(300))
        for j in range(n - 1):
            nu_j = cmath.exp(2j * math.pi * j / (n - 1))
            q = p.with_lambda(nu_j ** (d + 1) * p.lam)
            f = evaluate(p, z)
            assert np.all(np.abs(evaluate(q, nu_j * z) - nu_j * f) <= 1e-9 * (1 + np.abs(f)))


def test_symmetry_rotate_examples():
    assert symmetry_rotate(MapParams(3, 3, 1 / 8), 1)[0].lam == pytest.approx(-1 / 8)
    q, _ = symmetry_rotate(MapParams(13, 7, 0.3228), 12)
    assert q.lam == pytest.approx(0.3228, abs=1e-14)
    q, eta = symmetry_rotate(MapParams(4, 3, 0.18), 1)
    assert q.lam == pytest.approx(0.18 * cmath.exp(2j * math.pi / 3))
    assert eta == pytest.approx(cmath.exp(2j * math.pi / 21))
    with pytest.raises(SymmetryUndefined):
        symmetry_rotate(MapParams(2, 3, 1), 1)


def test_iterate_matches_repeated_evaluate():
    p = MapParams(4, 3, 0.18)
    z = 0.6 + 0.3j
    w = z
    for _ in range(4):
        w = w**4 + 0.18 / w**3
    assert iterate(p, z, 4) == pytest.approx(w, rel=1e-12)
