"""Command-line driver: python -m qcfigures --kind figN --input CSV --output IMG.

Mirrors the qchaos CLI conventions: the output path is printed as JSON
on success, failures exit nonzero with a JSON error object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .render import SCHEMAS, FigureSpec, render


class _JsonErrorParser(argparse.ArgumentParser):
    def error(self, message):
        print(
            json.dumps({"error": "ArgumentError", "message": message}),
            file=sys.stderr,
        )
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _JsonErrorParser(
        prog="qcfigures",
        description="Render a qchaos experiment CSV to a static SVG or PNG figure.",
    )
    parser.add_argument(
        "--kind",
        required=True,
        choices=sorted(SCHEMAS),
        help="which figure to draw",
    )
    parser.add_argument("--input", required=True, help="path to the experiment CSV")
    parser.add_argument("--output", required=True, help="image file to write (.svg or .png)")
    parser.add_argument("--dpi", type=int, default=150, help="raster resolution")
    parser.add_argument("--title", help="optional title drawn above the axes")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            kind=args.kind,
            input_csv=args.input,
            output=args.output,
            dpi=args.dpi,
            title=args.title,
        )
        out = render(spec)
        print(json.dumps({"output": out}))
        return 0
    except Exception as e:  # noqa: BLE001 - CLI boundary turns errors into JSON
        print(
            json.dumps({"error": type(e).__name__, "message": str(e)}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
