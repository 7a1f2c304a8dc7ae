"""Command-line entry point: classification, centers, classes, itineraries and renders."""

from __future__ import annotations

import argparse
import json
import sys

from .centers import all_centers, center_params, centers_report, rotation_profile
from .classes import classes_report, count_burnside, count_closed_form, enumerate_partition
from .errors import DynamicsError, ResolutionTooCoarse, Unresolvable, ValidationError
from .grid import GridSpec
from .orbits import DEFAULT_MAX_ITER, newton_periodic
from .rational_map import MapParams, trap_radius
from .regions import build_region_map, classify_certified
from .render import (
    DynamicalPlane,
    Palette,
    ParameterPlane,
    RenderSpec,
    default_parameter_window,
    render_dynamical,
    render_parameter,
    write_ppm,
)
from .symbolic import itinerary_of

EXIT_OK, EXIT_ERROR, EXIT_VALIDATION, EXIT_UNRESOLVED = 0, 1, 2, 3


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("I", "j").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def parse_window(text: str):
    """'hw' or 're,im,hw'."""
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad window {text!r}")
    if len(parts) == 1:
        return 0j, parts[0]
    if len(parts) == 3:
        return complex(parts[0], parts[1]), parts[2]
    raise argparse.ArgumentTypeError("window is 'half_width' or 're,im,half_width'")


def auto_grid(params: MapParams, resolution: int, window=None) -> GridSpec:
    if window is not None:
        return GridSpec(window[0], window[1], resolution)
    # leave a margin around the disk that must show the basin reaching the border
    return GridSpec(0j, max(1.5, 1.2 * trap_radius(params)), resolution)


def emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_classify(args) -> int:
    params = MapParams(args.n, args.d, args.lam)
    grid = auto_grid(params, args.resolution, args.window)
    rmap = build_region_map(params, grid, args.max_iter, workers=args.workers)
    label = classify_certified(params, grid, args.max_iter, region_map=rmap)
    emit(rmap.to_report(label))
    return EXIT_OK


def cmd_centers(args) -> int:
    emit(centers_report(args.n, args.d))
    return EXIT_OK


def cmd_rotation(args) -> int:
    ks = [args.k] if args.k is not None else [c.k for c in all_centers(args.n, args.d)]
    out = []
    for k in ks:
        prof = rotation_profile(args.n, args.d, k)
        out.append({"k": k, "index_map": list(prof.index_map), "rho": list(prof.rho), "rho_min": prof.rho_min})
    emit({"n": args.n, "d": args.d, "profiles": out} if args.k is None else {"n": args.n, "d": args.d, **out[0]})
    return EXIT_OK


def cmd_classes(args) -> int:
    if args.max_n is None and args.max_d is None:
        if args.n is None or args.d is None:
            raise ValidationError("classes needs --n and --d, or --max-n/--max-d for a sweep")
        emit(classes_report(args.n, args.d))
        return EXIT_OK
    rows = []
    agree = True
    for n in range(3, (args.max_n or 50) + 1):
        for d in range(1, (args.max_d or 50) + 1):
            a, b, c = count_closed_form(n, d), count_burnside(n, d), enumerate_partition(n, d).count
            agree &= a == b == c
            rows.append({"n": n, "d": d, "closed_form": a, "burnside": b, "enumerated": c})
    emit({"all_agree": agree, "families": rows})
    return EXIT_OK if agree else EXIT_ERROR


def cmd_itinerary(args) -> int:
    params = center_params(args.n, args.d, args.k)
    grid = auto_grid(params, args.resolution, args.window)
    rmap = build_region_map(params, grid, args.max_iter, workers=args.workers)
    z = args.z
    if args.period:
        polished = newton_periodic(params, z, args.period)
        if polished is None:
            raise Unresolvable(f"Newton did not converge to a period-{args.period} point from {z}")
        z = polished
    it = itinerary_of(params, rmap, z, args.length)
    emit(
        {
            "n": args.n,
            "d": args.d,
            "k": args.k,
            "z_re": z.real,
            "z_im": z.imag,
            "itinerary": str(it),
            "readings": [str(type(it)(pre, per, it.alphabet_size)) for pre, per in it.readings],
            "certified": it.certified,
        }
    )
    return EXIT_OK


def _palette(name: str) -> Palette:
    return Palette(name)


def cmd_render_julia(args) -> int:
    params = MapParams(args.n, args.d, args.lam)
    grid = auto_grid(params, args.resolution, args.window)
    spec = RenderSpec(DynamicalPlane(params), grid, args.max_iter, _palette(args.palette))
    write_ppm(render_dynamical(spec, workers=args.workers), args.out)
    return EXIT_OK


def cmd_render_param(args) -> int:
    if args.window is None:
        hw = default_parameter_window(args.n, args.d).half_width
        grid = GridSpec(0j, hw, args.resolution)
    else:
        grid = GridSpec(args.window[0], args.window[1], args.resolution)
    spec = RenderSpec(ParameterPlane(args.n, args.d), grid, args.max_iter, _palette(args.palette))
    write_ppm(render_parameter(spec, workers=args.workers), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="checkerboard", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def family(p, need=True):
        p.add_argument("--n", type=int, required=need)
        p.add_argument("--d", type=int, required=need)

    def grid_opts(p, resolution):
        p.add_argument("--resolution", type=int, default=resolution)
        p.add_argument("--window", type=parse_window, default=None, help="half_width or re,im,half_width")
        p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("classify", help="certified escape-trichotomy label")
    family(p)
    p.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    grid_opts(p, 1024)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("centers", help="centers of the principal main cardioids")
    family(p)
    p.set_defaults(func=cmd_centers)

    p = sub.add_parser("rotation", help="index map and rotation numbers at a center")
    family(p)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=cmd_rotation)

    p = sub.add_parser("classes", help="conjugacy-class counts")
    family(p, need=False)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--max-d", type=int, default=None)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("itinerary", help="sector itinerary of a Julia-set point at a center")
    family(p)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--length", type=int, default=12)
    p.add_argument("--period", type=int, default=0, help="Newton-polish z to a point of this period first")
    grid_opts(p, 1024)
    p.set_defaults(func=cmd_itinerary)

    for name, func, needs_lam in (
        ("render-julia", cmd_render_julia, True),
        ("render-param", cmd_render_param, False),
    ):
        p = sub.add_parser(name, help=f"write a {name.split('-')[1]}-plane PPM")
        family(p)
        if needs_lam:
            p.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
        p.add_argument("--out", required=True)
        p.add_argument("--palette", choices=[x.value for x in Palette], default=Palette.ESCAPE_SHADE.value)
        grid_opts(p, 512)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (Unresolvable, ResolutionTooCoarse) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNRESOLVED
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except DynamicsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
