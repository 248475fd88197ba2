"""Command-line figure renderer for flowlimits CSV outputs."""

from __future__ import annotations

import argparse
import sys

from .figures import FIGURE_IDS, FigureJob, render
from .io import CurveFileError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render a publication-style figure from flowlimits CSV curve files.",
    )
    parser.add_argument(
        "--csv",
        action="append",
        required=True,
        metavar="PATH",
        help="input curve file (repeatable)",
    )
    parser.add_argument("--figure", required=True, choices=FIGURE_IDS, help="figure id")
    parser.add_argument("--out", required=True, metavar="PATH", help="output image path")
    parser.add_argument("--format", default="png", choices=("png", "svg"), help="image format")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    job = FigureJob(
        csv_paths=tuple(args.csv), figure=args.figure, out_path=args.out, format=args.format
    )
    try:
        result = render(job)
    except CurveFileError as exc:
        print(f"curve-file error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    print(f"{result.figure}: wrote {result.out_path} ({len(result.series)} series)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
