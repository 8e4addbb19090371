"""Command-line interface: render result CSVs from a directory.

``render-figures --in <dir> --out <dir> [--figure figN]`` renders every
``fig*.csv`` in the input directory (or just the named figure) to PNG +
SVG files in the output directory.  Exit codes: 0 on success, 2 when
the input is missing or a file fails to render.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .csvread import SchemaError
from .render import RenderError, render_figure

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_FAILURE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render-figures",
        description="Render fran-tradeoff result CSVs as PNG + SVG plots "
                    "(analytic series as lines, Monte Carlo series as "
                    "error-bar markers).")
    parser.add_argument("--in", dest="in_dir", required=True,
                        help="directory containing fig*.csv result files")
    parser.add_argument("--out", dest="out_dir", required=True,
                        help="directory for the rendered plots "
                             "(created if missing)")
    parser.add_argument("--figure", default=None,
                        help="render only this figure, e.g. fig2 "
                             "(default: every fig*.csv found)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    in_dir = Path(args.in_dir)
    if not in_dir.is_dir():
        print(f"error: input directory not found: {in_dir}", file=sys.stderr)
        return EXIT_FAILURE
    if args.figure is not None:
        csv_paths = [in_dir / f"{args.figure}.csv"]
        if not csv_paths[0].is_file():
            print(f"error: no CSV for figure {args.figure!r} "
                  f"(expected {csv_paths[0]})", file=sys.stderr)
            return EXIT_FAILURE
    else:
        csv_paths = sorted(in_dir.glob("fig*.csv"))
        if not csv_paths:
            print(f"error: no figure CSVs (fig*.csv) in {in_dir}",
                  file=sys.stderr)
            return EXIT_FAILURE
    for csv_path in csv_paths:
        try:
            report = render_figure(csv_path, args.out_dir)
        except (SchemaError, RenderError) as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_FAILURE
        names = ", ".join(path.name for path in report.outputs)
        print(f"{report.figure}: {len(report.series)} series "
              f"({report.metric}) -> {names}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
