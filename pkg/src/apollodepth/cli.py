"""Command-line workbench.

Exit codes: 0 success, 1 verification failure, 2 step cap reached,
64 usage error.  Machine-readable output is JSON on stdout unless an
output path is given; chart commands write their raster and print a
one-line summary.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from typing import List, Optional

from . import charts, conics, dust, sternbrocot, verify
from .descartes import (
    DEFAULT_CAP,
    completions,
    depth as depth_fn,
    depth_scaled,
)
from .exactnum import parse_rational, rational_to_json

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CAP_REACHED = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(payload, path: Optional[str]) -> None:
    text = json.dumps(payload, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_values(raw: List[str], exact: bool):
    if exact:
        return [parse_rational(v) for v in raw]
    return [float(parse_rational(v)) for v in raw]


def _cmd_depth(args) -> int:
    values = _parse_values(args.values, not args.float)
    if len(values) == 2:
        result = depth_scaled(values[0], values[1], cap=args.cap, trace=args.trace)
    else:
        result = depth_fn(tuple(values), cap=args.cap, trace=args.trace)
    _emit(result.to_json(), args.output)
    return EXIT_CAP_REACHED if result.capped else EXIT_OK


def _cmd_completions(args) -> int:
    values = _parse_values(args.values, not args.float)
    lo, hi = completions(tuple(values))
    _emit(
        {"d_minus": rational_to_json(lo), "d_plus": rational_to_json(hi)},
        args.output,
    )
    return EXIT_OK


def _cmd_chart(args) -> int:
    spec = charts.ChartSpec(
        width=args.size,
        height=args.size,
        window=tuple(args.window),
        mode=args.mode,
        cap=args.cap,
        transfer=args.transfer,
        strict_boundary=args.strict_boundary,
        bitexact=args.bitexact,
    )
    started = time.perf_counter()
    img = charts.render_chart(spec, workers=args.workers)
    elapsed = time.perf_counter() - started
    out = args.output or "chart.ppm"
    if out.endswith(".png"):
        from . import figures

        figures.save_image_png(img, out)
    else:
        charts.write_ppm(img, out)
    print(f"{args.mode} chart {img.width}x{img.height} -> {out} ({elapsed:.2f}s)")
    return EXIT_OK


def _cmd_section(args) -> int:
    x0 = parse_rational(args.x)
    y_to = parse_rational(args.to) if args.to is not None else None
    profile = charts.section_profile(
        x0,
        y_from=parse_rational(args.frm),
        y_to=y_to,
        samples=args.samples,
        cap=args.cap,
        exact=not args.float,
    )
    out = args.output or "section.csv"
    charts.write_csv(charts.section_rows(profile), out, charts.SECTION_HEADER)
    if args.plot:
        from . import figures

        figures.save_section_figure(profile, args.plot, x_label=args.x)
    deepest = max((s.depth for s in profile if s.depth is not None), default=0)
    capped = sum(1 for s in profile if s.capped)
    print(
        f"section x={args.x}: {args.samples} samples -> {out} "
        f"(max depth {deepest}, {capped} capped)"
    )
    return EXIT_OK


def _corona_csv_rows(entries):
    rows = []
    for e in entries:
        conic = e.conic.to_json()
        rows.append(
            [e.pair[0], e.pair[1], e.row, str(e.tangent_x)]
            + [conic[k] for k in "ABCDEF"]
        )
    return rows


def _cmd_corona(args) -> int:
    entries = sternbrocot.x_corona(args.max_row)
    if args.format == "csv" or (args.output or "").endswith(".csv"):
        out = args.output or "corona.csv"
        charts.write_csv(
            _corona_csv_rows(entries),
            out,
            ("p", "m", "row", "tangent_x", "A", "B", "C", "D", "E", "F"),
        )
        print(f"x-corona rows<={args.max_row}: {len(entries)} ellipses -> {out}")
    else:
        _emit([e.to_json() for e in entries], args.output)
    if args.plot:
        from . import figures

        figures.save_corona_figure(entries, args.plot)
    return EXIT_OK


def _cmd_parabola_corona(args) -> int:
    entries = sternbrocot.parabolic_corona(args.max_row)
    if args.format == "csv" or (args.output or "").endswith(".csv"):
        out = args.output or "parabola_corona.csv"
        rows = []
        for e in entries:
            rows.append(
                [e.pair[0], e.pair[1], e.row, int(e.degenerate),
                 str(e.point[0]), str(e.point[1])]
            )
        charts.write_csv(
            rows, out, ("p", "q", "row", "degenerate", "x", "y")
        )
        print(
            f"parabolic corona rows<={args.max_row}: {len(entries)} members -> {out}"
        )
    else:
        _emit([e.to_json() for e in entries], args.output)
    return EXIT_OK


def _cmd_derive(args) -> int:
    if args.fixture:
        text = (
            resources.files("apollodepth")
            .joinpath(f"data/arrangements/{args.fixture}.json")
            .read_text()
        )
    else:
        with open(args.spec) as fh:
            text = fh.read()
    spec = conics.ArrangementSpec.from_json(json.loads(text))
    conic = conics.derive_conic(spec)
    _emit(conic.to_json(), args.output)
    return EXIT_OK


def _cmd_registry(args) -> int:
    entries = conics.plateau_registry()
    if args.label:
        entries = conics.registry_lookup(args.label)
        if not entries:
            print(f"no registry entry labelled {args.label!r}", file=sys.stderr)
            return EXIT_USAGE
    _emit([e.conic.to_json(label=e.label) for e in entries], args.output)
    return EXIT_OK


def _cmd_dust(args) -> int:
    seed = dust.apollonian_window_seed()
    points = dust.dust_points(seed, args.bound)
    out = args.output or "dust.csv"
    charts.write_csv(
        [[f"{x:.12f}", f"{y:.12f}"] for x, y in points], out, ("x", "y")
    )
    if args.plot:
        from . import figures

        figures.save_dust_figure(points, args.plot)
    print(f"dust bound {args.bound}: {len(points)} tricycle points -> {out}")
    return EXIT_OK


def _cmd_area(args) -> int:
    estimate = charts.area_estimate(args.depth, args.samples, args.seed, cap=args.cap)
    payload = {"depth": args.depth, "samples": args.samples, "seed": args.seed,
               "estimate": estimate}
    if args.depth == 1:
        payload["exact"] = str(charts.parabolic_region_area())
    _emit(payload, args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    kwargs = {}
    if args.suite in ("corona", "probes"):
        kwargs["max_row"] = args.max_row
    if args.suite == "probes":
        kwargs["eps"] = args.epsilon
    if args.suite in ("sequences", "barycentric"):
        kwargs["n_max"] = args.max_row
    if args.suite == "corona":
        kwargs["samples"] = args.samples
    report = verify.run_suite(args.suite, **kwargs)
    _emit(report, args.output)
    failures = [c for c in report["checks"] if not c["pass"]]
    if failures:
        for c in failures:
            print(
                f"FAIL {c['name']}: expected {c['expected']}, got {c['actual']}",
                file=sys.stderr,
            )
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="apollodepth", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("-o", "--output", default=None, help="output path")

    p = sub.add_parser("depth", help="depth of a tricycle (a b c) or moduli point (x y)")
    p.add_argument("values", nargs="+", help="curvatures as p/q or decimals")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True,
                      help="exact rational engine (default)")
    mode.add_argument("--float", action="store_true", help="float engine")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--trace", action="store_true", help="include the triple sequence")
    add_common(p)
    p.set_defaults(fn=_cmd_depth, check_values=(2, 3))

    p = sub.add_parser("completions", help="both Descartes completions of a tricycle")
    p.add_argument("values", nargs=3)
    p.add_argument("--float", action="store_true")
    add_common(p)
    p.set_defaults(fn=_cmd_completions, check_values=(3, 3))

    p = sub.add_parser("chart", help="render a chart to PPM or PNG")
    p.add_argument("--size", type=int, default=1000)
    p.add_argument("--mode", choices=charts.CHART_MODES, default="depth")
    p.add_argument("--window", type=float, nargs=4, default=[0.0, 0.0, 1.0, 1.0],
                   metavar=("X0", "Y0", "X1", "Y1"))
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--transfer", choices=charts.TRANSFER_NAMES, default="gray30")
    p.add_argument("--bitexact", action="store_true",
                   help="faithful integer-seed loop, symmetric writes")
    p.add_argument("--strict-boundary", action="store_true",
                   help="apply the zero rule on the axes in bitexact mode")
    p.add_argument("--workers", type=int, default=None)
    add_common(p)
    p.set_defaults(fn=_cmd_chart)

    p = sub.add_parser("section", help="depth along a vertical segment, CSV")
    p.add_argument("--x", required=True, help="abscissa as p/q")
    p.add_argument("--from", dest="frm", default="0")
    p.add_argument("--to", default=None, help="default: the parabolic boundary")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--cap", type=int, default=2000)
    p.add_argument("--float", action="store_true", help="sample with the float engine")
    p.add_argument("--plot", default=None, help="also write a figure (PNG)")
    add_common(p)
    p.set_defaults(fn=_cmd_section)

    p = sub.add_parser("corona", help="x-axis corona listing")
    p.add_argument("--max-row", type=int, default=5)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--plot", default=None)
    add_common(p)
    p.set_defaults(fn=_cmd_corona)

    p = sub.add_parser("parabola-corona", help="parabolic corona listing")
    p.add_argument("--max-row", type=int, default=5)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    add_common(p)
    p.set_defaults(fn=_cmd_parabola_corona)

    p = sub.add_parser("derive", help="derive a plateau conic from an arrangement")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec", help="arrangement JSON path")
    src.add_argument("--fixture",
                     choices=("depth4_diagonal", "depth4_diagonal_disk_anchor",
                              "depth4_side"),
                     help="bundled arrangement")
    add_common(p)
    p.set_defaults(fn=_cmd_derive)

    p = sub.add_parser("registry", help="stored plateau equations as JSON")
    p.add_argument("--label", default=None)
    add_common(p)
    p.set_defaults(fn=_cmd_registry)

    p = sub.add_parser("dust", help="moduli dust of the bounded integral packing")
    p.add_argument("--bound", type=float, default=30.0,
                   help="curvature bound for the packing closure")
    p.add_argument("--plot", default=None)
    add_common(p)
    p.set_defaults(fn=_cmd_dust)

    p = sub.add_parser("area", help="Monte-Carlo area of a depth plateau")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    add_common(p)
    p.set_defaults(fn=_cmd_area)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--max-row", type=int, default=6)
    p.add_argument("--epsilon", type=float, default=1e-7)
    p.add_argument("--samples", type=int, default=1000)
    add_common(p)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        bounds = getattr(args, "check_values", None)
        if bounds is not None:
            lo, hi = bounds
            if not lo <= len(args.values) <= hi:
                parser.error(f"expected {lo} to {hi} values, got {len(args.values)}")
    except SystemExit as exc:  # argparse handles usage errors and --help
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
