import json

import numpy as np
import pytest

from checkerboard.cli import main
from checkerboard.errors import ValidationError
from checkerboard.grid import GridSpec
from checkerboard.rational_map import MapParams
from checkerboard.render import (
    DynamicalPlane,
    Image,
    Palette,
    ParameterPlane,
    RenderSpec,
    connecting_color,
    escape_shade,
    render_dynamical,
    render_parameter,
)


def test_ppm_layout():
    px = np.arange(2 * 3 * 3, dtype=np.uint8).reshape(2, 3, 3)
    data = Image(px).to_ppm()
    assert data.startswith(b"P6\n3 2\n255\n")
    assert data[len(b"P6\n3 2\n255\n") :] == px.tobytes()


def test_escape_shade_monotone():
    esc = np.array([[-1, 0, 1, 5, 40, 400]])
    red = escape_shade(esc)[0, :, 0].astype(int)
    assert red[0] == 0
    assert np.all(np.diff(red[1:]) >= 0) and red[1] > 0
    assert np.all(escape_shade(esc)[..., 1:] == 0)


def test_spec_limits():
    with pytest.raises(ValidationError):
        RenderSpec(ParameterPlane(3, 3), GridSpec(0j, 1, 9000))
    with pytest.raises(ValidationError):
        RenderSpec(ParameterPlane(3, 3), GridSpec(0j, 1, 64), max_iter=2_000_000)


def test_cantor_render_all_red():
    spec = RenderSpec(DynamicalPlane(MapParams(2, 1, 5)), GridSpec(0j, 3.0, 256), 200)
    img = render_dynamical(spec)
    assert np.all(img.pixels[..., 0] > 0)


def test_region_label_render_blobs():
    p = MapParams(4, 3, 0.18)
    img = render_dynamical(RenderSpec(DynamicalPlane(p), GridSpec(0j, 1.5, 512), 500, Palette.REGION_LABELS))
    colors = {tuple(c) for c in img.pixels.reshape(-1, 3)}
    for j in range(7):
        assert connecting_color(j, 7) in colors


def test_worker_count_does_not_change_bytes():
    spec = RenderSpec(DynamicalPlane(MapParams(3, 3, 0.2j)), GridSpec(0j, 1.5, 192), 300)
    assert render_dynamical(spec, 1).to_ppm() == render_dynamical(spec, 3).to_ppm()
    pspec = RenderSpec(ParameterPlane(4, 4), GridSpec(0j, 0.6, 160), 300)
    assert render_parameter(pspec, 1).to_ppm() == render_parameter(pspec, 4).to_ppm()


def test_parameter_plane_blobs():
    img = render_parameter(RenderSpec(ParameterPlane(3, 3), GridSpec(0j, 0.5, 256), 300))
    black = np.all(img.pixels == 0, axis=2)
    spec = GridSpec(0j, 0.5, 256)
    for lam in (0.125, -0.125):
        r, c = spec.pixel_of(lam)
        assert black[r, c]


def test_parameter_plane_rotation():
    n = 4
    spec = GridSpec(0j, 0.6, 256)
    img = render_parameter(RenderSpec(ParameterPlane(n, 4), spec, 200))
    black = np.all(img.pixels == 0, axis=2)
    rng = np.random.default_rng(1)
    pts = spec.points()
    nu = np.exp(2j * np.pi / (n - 1))
    agree = total = 0
    while total < 1000:
        r, c = rng.integers(0, 256, size=2)
        w = nu * pts[r, c]
        if not spec.contains(w):
            continue
        rr, cc = spec.pixel_of(w)
        total += 1
        agree += black[r, c] == black[rr, cc]
    assert agree >= 0.99 * total


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_classes(capsys):
    code, out, _ = run(capsys, "classes", "--n", "13", "--d", "7")
    assert code == 0 and json.loads(out)["count_closed_form"] == 3


def test_cli_rotation(capsys):
    code, out, _ = run(capsys, "rotation", "--n", "13", "--d", "7", "--k", "1")
    assert code == 0 and json.loads(out)["rho_min"] == 1


def test_cli_centers_and_validation(capsys):
    code, out, _ = run(capsys, "centers", "--n", "3", "--d", "3")
    assert code == 0 and json.loads(out)["centers"][0]["lambda_re"] == pytest.approx(0.125)
    code, _, err = run(capsys, "centers", "--n", "2", "--d", "2")
    assert code == 2 and "error" in err


def test_cli_classify(capsys):
    code, out, _ = run(capsys, "classify", "--n", "3", "--d", "3", "--lambda", "0.0005+0i", "--resolution", "512")
    assert code == 0
    assert json.loads(out)["trichotomy"]["label"] == "CantorCircles"


def test_cli_unresolvable_exit(capsys):
    # the critical value sits on the Julia band near a Sierpinski-hole boundary
    code, _, err = run(capsys, "classify", "--n", "3", "--d", "3", "--lambda", "-0.02", "--window", "2.0")
    assert code == 3 and "error" in err


def test_cli_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classes", "--n", "x"])
    assert exc.value.code == 2


def test_cli_itinerary(capsys):
    code, out, _ = run(capsys, "itinerary", "--n", "3", "--d", "3", "--z", "0.9", "--period", "1", "--resolution", "512")
    rep = json.loads(out)
    assert code == 0 and rep["itinerary"] == "[0]" and "[5]" in rep["readings"]


def test_cli_render_param_default_window(tmp_path, capsys):
    out = tmp_path / "p.ppm"
    code, _, _ = run(capsys, "render-param", "--n", "3", "--d", "3", "--out", str(out), "--resolution", "64")
    assert code == 0 and out.read_bytes().startswith(b"P6\n64 64\n255\n")
