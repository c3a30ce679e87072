"""Command-line interface: ``kappashape <command> [options]``.

Exit codes: 0 success or verification passed, 1 verification failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._validation import DomainError, check_int, check_positive
from .generators import GeneratorKind, GeneratorSpec
from .geometry import hull_2d, projected_crossings
from .io import (
    atomic_write_text,
    curve_to_csv,
    landmarks_to_json,
    read_curve,
    read_landmarks,
    read_scene,
    write_report,
)
from .render import Series, render_svg
from .shape import KappaFamily, SampledCurve, _QUALITY_CODES, kernel_weights, sample

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_HULL_KAPPAS = (0.01, 0.1, 0.5, 1.0, 5.0, 10.0, 100.0)
DEFAULT_CROSSING_KAPPAS = (0.01, 0.1, 0.3, 0.5, 0.7)
HULL_TOL = 1e-9
CERTIFICATE_TOL = 1e-12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _kappa_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty kappa list")
    return values


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}")
    return float(parts[0]), float(parts[1])


def _kappas(args, default=None) -> list[float]:
    if args.kappas is not None and args.kappa is not None:
        raise UsageError("give either --kappa or --kappas, not both")
    if args.kappas is not None:
        ks = args.kappas
    elif args.kappa is not None:
        ks = [args.kappa]
    elif default is not None:
        ks = list(default)
    else:
        raise UsageError("a smoothing scale is required (--kappa or --kappas)")
    return [check_positive(k, "kappa") for k in ks]


def _say(args, text):
    if not args.quiet:
        print(text)


def _kappa_path(out: str, kappa: float, many: bool) -> Path:
    if "{kappa}" in out:
        return Path(out.format(kappa=f"{kappa:g}"))
    p = Path(out)
    return p.with_name(f"{p.stem}_k{kappa:g}{p.suffix}") if many else p


def _emit(args, text: str, path: Path | None):
    if path is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(path, text)
        _say(args, f"wrote {path}")


# generate ------------------------------------------------------------------

_GEN_OPTIONS = {
    "p": int, "q": int, "n": int, "d": int, "mu": float, "y0": float, "sigma": float,
    "rho": float, "beta": float, "delta": float, "init": str, "topology": str, "points": str,
}


def cmd_generate(args) -> int:
    if args.config:
        try:
            doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise DomainError(f"config is not valid JSON: {exc}") from None
        if args.kind is not None:
            doc = {**doc, "kind": args.kind}
        spec = GeneratorSpec.from_dict(doc)
    else:
        if args.kind is None:
            raise UsageError("generate needs a generator kind or --config")
        params = {}
        for name in _GEN_OPTIONS:
            value = getattr(args, f"gen_{name}")
            if value is None:
                continue
            if name == "init":
                value = [float(v) for v in value.split(",")]
            elif name == "points":
                try:
                    value = json.loads(value)
                except json.JSONDecodeError:
                    raise DomainError("--points must be a JSON list of rows") from None
            params[name] = value
        spec = GeneratorSpec(args.kind, params, args.seed)
    landmarks = spec.build()
    meta = {"generator": spec.to_dict(), "package": "kappashape", "package_version": __version__}
    text = landmarks_to_json(landmarks, meta)
    _emit(args, text, Path(args.out) if args.out else None)
    return EXIT_OK


# eval ----------------------------------------------------------------------


def _sample_family(family, kappa, args) -> SampledCurve:
    lo, hi = args.range if args.range else (None, None)
    count = check_int(args.samples, "samples", minimum=2) if args.samples is not None else None
    return sample(family, kappa, lo, hi, count)


def cmd_eval(args) -> int:
    landmarks, _ = read_landmarks(args.landmarks)
    family = KappaFamily(landmarks)
    kappas = _kappas(args)
    many = len(kappas) > 1
    if many and not args.out:
        raise UsageError("several kappas need --out (a path template)")
    for k in kappas:
        curve = _sample_family(family, k, args)
        _emit(args, curve_to_csv(curve), _kappa_path(args.out, k, many) if args.out else None)
    return EXIT_OK


# render --------------------------------------------------------------------


def cmd_render(args) -> int:
    if not args.out:
        raise UsageError("render needs --out")
    curves = [read_curve(p) for p in args.curves]
    labels = args.labels.split(",") if args.labels else [Path(p).stem for p in args.curves]
    if len(labels) != len(curves):
        raise UsageError("--labels needs one label per curve")
    lm = hull = None
    if args.landmarks:
        landmarks, _ = read_landmarks(args.landmarks)
        lm = landmarks.points
        if args.hull:
            if landmarks.dim != 2:
                raise DomainError("--hull needs 2-D landmarks")
            hull = hull_2d(lm).vertices
    elif args.hull:
        raise UsageError("--hull needs --landmarks")
    svg = render_svg(
        [Series(c.t, c.points, lab) for c, lab in zip(curves, labels)],
        layout=args.layout, projection=args.projection, color_by_z=args.color_by_z,
        landmarks=lm, hull=hull, title=args.title, columns=args.columns,
    )
    _emit(args, svg, Path(args.out))
    return EXIT_OK


# check-hull ----------------------------------------------------------------


def _hull_rows(points_by_kappa, hull, tol):
    rows = []
    for k, pts in points_by_kappa:
        v = float(np.max(hull.signed_distance(pts)))
        rows.append({"kappa": k, "samples": len(pts), "max_violation": max(v, 0.0),
                     "max_signed_distance": v, "pass": v <= tol})
    return rows


def cmd_check_hull(args) -> int:
    landmarks, _ = read_landmarks(args.landmarks)
    family = KappaFamily(landmarks)
    mode = args.mode
    if mode == "auto":
        mode = "hull" if landmarks.dim == 2 else "certificate"
    if mode == "hull" and landmarks.dim != 2:
        raise DomainError(f"hull mode needs 2-D landmarks, got dim={landmarks.dim}")
    tol = args.tolerance if args.tolerance is not None else (HULL_TOL if mode == "hull" else CERTIFICATE_TOL)
    samples = check_int(args.samples if args.samples is not None else 1000, "samples", minimum=2)

    if args.curves:
        if mode != "hull":
            raise DomainError("curve files can only be checked in hull mode")
        hull = hull_2d(landmarks.points)
        data = []
        for p in args.curves:
            c = read_curve(p)
            if c.dim != 2:
                raise DomainError(f"{p}: curve is not 2-D")
            data.append((str(p), c.points))
        rows = _hull_rows(data, hull, tol)
        for r in rows:
            r["curve"] = r.pop("kappa")
    else:
        kappas = _kappas(args, DEFAULT_HULL_KAPPAS)
        lo, hi = args.range if args.range else family.canonical_range()
        t = np.linspace(lo, hi, samples)
        if mode == "hull":
            hull = hull_2d(landmarks.points)
            rows = _hull_rows([(k, family(t, k)) for k in kappas], hull, tol)
        else:
            rows = []
            for k in kappas:
                w = family.weights(t, k)[0]
                neg = float(max(0.0, -w.min()))
                sum_err = float(np.max(np.abs(w.sum(axis=1) - 1.0)))
                ok = bool(np.all(np.isfinite(w))) and neg <= tol and sum_err <= tol
                rows.append({"kappa": k, "samples": samples, "max_violation": max(neg, sum_err),
                             "min_weight": float(w.min()), "max_sum_error": sum_err, "pass": ok})

    passed = all(r["pass"] for r in rows)
    key = "curve" if args.curves else "kappa"
    lines = [f"containment check ({mode} mode, tolerance {tol:g}) for {args.landmarks}",
             f"{key:>12}  {'samples':>8}  {'max violation':>14}  result"]
    for r in rows:
        lines.append(f"{str(r[key]):>12}  {r['samples']:>8}  {r['max_violation']:>14.3e}  "
                     f"{'pass' if r['pass'] else 'FAIL'}")
    lines.append("overall: " + ("pass" if passed else "FAIL"))
    text = "\n".join(lines)
    report = {"mode": mode, "tolerance": tol, "landmarks": str(args.landmarks), "rows": rows, "pass": passed}
    if args.out:
        write_report(args.out, text, report)
    _say(args, text)
    return EXIT_OK if passed else EXIT_FAIL


# crossings -----------------------------------------------------------------


def cmd_crossings(args) -> int:
    landmarks, _ = read_landmarks(args.landmarks)
    if landmarks.dim != 3 or not landmarks.closed:
        raise DomainError("crossings need a closed 3-D landmark file")
    family = KappaFamily(landmarks)
    kappas = _kappas(args, DEFAULT_CROSSING_KAPPAS)
    samples = check_int(args.samples if args.samples is not None else 2000, "samples", minimum=8)
    reports = []
    for k in kappas:
        curve = sample(family, k, 0.0, float(family.n), samples + 1)
        rep = projected_crossings(curve)
        rep.kappa = k
        reports.append(rep)
    first_zero = next((r.kappa for r in reports if r.crossing_count == 0), None)
    first_reduced_zero = next((r.kappa for r in reports if r.reduced_count == 0), None)
    lines = [f"projected crossings of {args.landmarks} ({samples} samples per period)",
             f"{'kappa':>10}  {'crossings':>9}  {'reduced':>7}  {'degenerate':>10}"]
    for r in reports:
        lines.append(f"{r.kappa:>10g}  {r.crossing_count:>9}  {r.reduced_count:>7}  {len(r.degenerate):>10}")
    lines.append("first kappa with no crossings: " + ("none in sweep" if first_zero is None else f"{first_zero:g}"))
    lines.append("first kappa with no essential crossings: "
                 + ("none in sweep" if first_reduced_zero is None else f"{first_reduced_zero:g}"))
    text = "\n".join(lines)
    data = {"landmarks": str(args.landmarks), "samples": samples, "first_zero_kappa": first_zero,
            "first_reduced_zero_kappa": first_reduced_zero, "rows": [r.to_dict() for r in reports]}
    if args.out:
        write_report(args.out, text, data)
    _say(args, text)
    return EXIT_OK


# scene-eval ----------------------------------------------------------------


def cmd_scene_eval(args) -> int:
    scene = read_scene(args.scene)
    eta = check_positive(args.eta, "eta")
    count = check_int(args.samples, "samples", minimum=2) if args.samples is not None else None
    first = scene.members[0]
    lo, hi = args.range if args.range else first.canonical_range()
    count = count or 10 * first.n + 1
    w, code = kernel_weights(np.asarray(float(args.q)), scene.m, eta, closed=scene.closed)
    curves = [sample(m, k, lo, hi, count) for m, k in zip(scene.members, scene.kappas)]
    pts = sum(wi * c.points for wi, c in zip(w, curves))
    worst = []
    for i in range(count):
        codes = [int(code)] + [_QUALITY_CODES.index(c.quality[i]) for c in curves]
        worst.append(_QUALITY_CODES[max(codes)])
    curve = SampledCurve(curves[0].t, pts, tuple(worst), float("nan"))
    _emit(args, curve_to_csv(curve), Path(args.out) if args.out else None)
    return EXIT_OK


# figure --------------------------------------------------------------------


def cmd_figure(args) -> int:
    from .figures import FIGURES, figure_commands, figure_outputs

    if not args.out:
        raise UsageError("figure needs --out (a directory)")
    which = sorted(FIGURES) if args.number == "all" else [int(args.number)]
    for n in which:
        if n not in FIGURES:
            raise UsageError(f"no figure {n}; choose from {sorted(FIGURES)}")
        for argv in figure_commands(n, args.out):
            code = main(argv + ["--quiet"])
            if code != EXIT_OK:
                return code
        for svg in figure_outputs(n, args.out):
            _say(args, f"figure {n}: {svg}")
    return EXIT_OK


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="output file (or directory/template, depending on the command)")
    common.add_argument("--seed", type=int, help="seed for random generators")
    common.add_argument("--samples", type=int, help="number of samples")
    common.add_argument("--kappa", type=float, help="one smoothing scale")
    common.add_argument("--kappas", type=_kappa_list, help="comma-separated smoothing scales")
    common.add_argument("--tolerance", type=float, help="verification tolerance")
    common.add_argument("--quiet", action="store_true", help="suppress progress output")

    parser = _Parser(prog="kappashape", description="Smooth shape families from ordered landmarks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", parents=[common], help="write a landmark file from a generator")
    g.add_argument("kind", nargs="?", choices=[k.value for k in GeneratorKind])
    g.add_argument("--config", help="JSON generator spec {kind, params, seed}")
    for name, typ in _GEN_OPTIONS.items():
        g.add_argument(f"--{name}", dest=f"gen_{name}", type=typ)
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("eval", parents=[common], help="sample a family member to CSV")
    e.add_argument("landmarks")
    e.add_argument("--range", type=_pair, help="t range 'a,b' (default: canonical range)")
    e.set_defaults(func=cmd_eval)

    r = sub.add_parser("render", parents=[common], help="draw curve files as SVG")
    r.add_argument("curves", nargs="+")
    r.add_argument("--layout", choices=["overlay", "panels"], default="overlay")
    r.add_argument("--projection", choices=["xy", "xz", "yz"], default="xy")
    r.add_argument("--color-by-z", action="store_true")
    r.add_argument("--landmarks", help="landmark file to draw as dots")
    r.add_argument("--hull", action="store_true", help="shade the landmark hull (2-D)")
    r.add_argument("--labels", help="comma-separated panel or legend labels")
    r.add_argument("--title")
    r.add_argument("--columns", type=int)
    r.set_defaults(func=cmd_render)

    h = sub.add_parser("check-hull", parents=[common], help="verify curves stay in the landmark hull")
    h.add_argument("landmarks")
    h.add_argument("--mode", choices=["auto", "hull", "certificate"], default="auto")
    h.add_argument("--curves", nargs="+", help="check these curve files instead of sampling")
    h.add_argument("--range", type=_pair)
    h.set_defaults(func=cmd_check_hull)

    c = sub.add_parser("crossings", parents=[common], help="count projected crossings over a kappa sweep")
    c.add_argument("landmarks")
    c.set_defaults(func=cmd_crossings)

    s = sub.add_parser("scene-eval", parents=[common], help="sample a scene at member index q")
    s.add_argument("scene")
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--eta", type=float, required=True)
    s.add_argument("--range", type=_pair)
    s.set_defaults(func=cmd_scene_eval)

    f = sub.add_parser("figure", parents=[common], help="reproduce one of the example figures as SVG")
    f.add_argument("number", help="figure number or 'all'")
    f.set_defaults(func=cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"kappashape: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ValueError, OSError) as exc:
        print(f"kappashape: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
