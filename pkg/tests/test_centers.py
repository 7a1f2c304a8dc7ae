import cmath
import math

import pytest
from scipy.optimize import brentq

from checkerboard.centers import (
    all_centers,
    are_conjugate,
    center_of_M0,
    center_params,
    centers_report,
    closed_form_center,
    rho_min_closed_form,
    rotation_profile,
)
from checkerboard.classes import enumerate_partition
from checkerboard.errors import UnsupportedFamily, ValidationError
from checkerboard.rational_map import MapParams, critical_point, derivative, evaluate


def bisection_center(n, d):
    # independent route: root of lam -> F_lam(c) - c with c the positive real critical point
    def g(lam):
        c = (d * lam / n) ** (1 / (n + d))
        return c**n + lam / c**d - c

    lo, hi = 1e-6, 1.0
    while g(hi) < 0:
        hi *= 2
    return brentq(g, lo, hi, xtol=1e-15, rtol=1e-15)


@pytest.mark.parametrize("n,d", [(3, 3), (4, 3), (13, 7), (11, 4), (3, 2), (2, 3), (7, 12)])
def test_center_matches_bisection(n, d):
    c = center_of_M0(n, d)
    assert c.lam.imag == 0
    assert c.lam.real == pytest.approx(bisection_center(n, d), abs=1e-12)
    p = MapParams(n, d, c.lam)
    c0 = critical_point(p, 0)
    assert abs(evaluate(p, c0) - c0) < 1e-10
    assert abs(derivative(p, c0)) < 1e-10


def test_center_examples():
    assert center_of_M0(3, 3).lam.real == pytest.approx(0.125, abs=1e-12)
    assert closed_form_center(3, 3)[1] == pytest.approx(2**-0.5, abs=1e-15)
    assert center_of_M0(13, 7).lam.real == pytest.approx(13 / 7 * (7 / 20) ** (5 / 3), abs=1e-12)
    assert center_of_M0(13, 7).lam.real == pytest.approx(0.3228, abs=1e-4)
    assert center_of_M0(4, 3).lam.real == pytest.approx(4 / 3 * (3 / 7) ** (7 / 3), abs=1e-12)


@pytest.mark.parametrize("n,d", [(2, 2), (3, 1), (2, 1)])
def test_unsupported(n, d):
    with pytest.raises(UnsupportedFamily):
        center_of_M0(n, d)


def test_all_centers():
    c = all_centers(3, 3)
    assert [x.lam.real for x in c] == pytest.approx([0.125, -0.125], abs=1e-12)
    assert [x.superattracting_period for x in c] == [1, 2]
    args = sorted(round(cmath.phase(x.lam) % (2 * math.pi), 12) for x in all_centers(4, 3))
    assert args == pytest.approx([0, 2 * math.pi / 3, 4 * math.pi / 3])
    big = all_centers(13, 7)
    assert len(big) == 12
    for x in big:
        assert x.lam == pytest.approx(cmath.exp(2j * math.pi * x.k / 12) * big[0].lam, abs=1e-15)


def test_superattracting_cycle_at_every_center():
    for n, d in [(3, 3), (4, 3), (5, 2), (13, 7)]:
        for c in all_centers(n, d):
            p = MapParams(n, d, c.lam)
            z = critical_point(p, c.fixed_or_periodic_critical_index)
            w = z
            for _ in range(c.superattracting_period):
                w = evaluate(p, w)
            assert abs(w - z) < 1e-9


@pytest.mark.parametrize(
    "n,d,k,expected",
    [(13, 7, 0, 0), (13, 7, 1, 1), (13, 7, 2, 2), (11, 4, 3, 2)],
)
def test_rho_min_examples(n, d, k, expected):
    prof = rotation_profile(n, d, k)
    assert prof.rho_min == expected
    assert prof.rho_min == rho_min_closed_form(n, d, k)


def test_profile_invariants():
    for n in range(3, 9):
        for d in range(2, 9):
            m = n + d
            for k in range(n - 1):
                prof = rotation_profile(n, d, k)
                for j, (img, r) in enumerate(zip(prof.index_map, prof.rho)):
                    assert (img - j - r) % m == 0
                    assert -m / 2 < r <= m / 2
                fixed = any(img == j for j, img in enumerate(prof.index_map))
                assert (prof.rho_min == 0) == fixed


def test_mirrored_profiles():
    for n, d in [(13, 7), (11, 4), (5, 3), (7, 2)]:
        for k in range(n - 1):
            a = sorted(rotation_profile(n, d, k).rho)
            b = sorted(rotation_profile(n, d, (n - 1 - k) % (n - 1)).rho)
            m = n + d
            # negation with the +m/2 tie convention
            neg = sorted(-r if 2 * r != m else r for r in b)
            assert a == neg


def test_rho_partition_matches_symmetry():
    for n in range(3, 10):
        for d in range(2, 10):
            levels = {}
            for k in range(n - 1):
                levels.setdefault(rotation_profile(n, d, k).rho_min, []).append(k)
            by_rho = sorted(tuple(v) for v in levels.values())
            assert by_rho == sorted(enumerate_partition(n, d).classes)


def test_are_conjugate_examples():
    w = are_conjugate(13, 7, 0, 4)
    assert w and w.kind == "rotation"
    w = are_conjugate(13, 7, 1, 3)
    assert w and w.kind == "conjugation" and w.rho_min == (1, 1)
    assert not are_conjugate(13, 7, 0, 2)
    with pytest.raises(ValidationError):
        are_conjugate(13, 7, 0, 12)


def test_center_params_range():
    with pytest.raises(ValidationError):
        center_params(3, 3, 2)


def test_report():
    rep = centers_report(3, 3)
    assert rep["g"] == 2
    assert [c["rho_min"] for c in rep["centers"]] == [0, 1]
    assert set(rep["centers"][0]) == {"k", "lambda_re", "lambda_im", "rho", "rho_min"}
