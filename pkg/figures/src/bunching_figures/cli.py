"""Render one figure from CSV data produced by the ``bunching`` CLI.

Usage::

    bunching-figures --figure 2  --in fig2.csv --out fig2.png
    bunching-figures --figure 6  --in fig6_gaussian.csv --in fig6_rect.csv --out fig6.png
    bunching-figures --figure B1 --in figb1.csv --out figb1.png

Two-panel figures (6 and 7) take two --in paths: the Gaussian panel first,
the rectangular one second. Exit codes: 0 success, 2 usage or a missing
column (named on stderr), 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from .render import FIGURES, FigureSpec, MissingColumn, render

__all__ = ["main"]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bunching-figures", description=__doc__.splitlines()[0])
    p.add_argument("--figure", required=True, help=f"one of {', '.join(FIGURES)}")
    p.add_argument(
        "--in",
        dest="inputs",
        action="append",
        required=True,
        metavar="CSV",
        help="input CSV (repeat for two-panel figures)",
    )
    p.add_argument("--out", required=True, help="output image path (png/pdf/svg)")
    p.add_argument("--dpi", type=int, default=150)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fid = args.figure.upper() if args.figure.lower() == "b1" else args.figure
    spec = FigureSpec(figure_id=fid, inputs=tuple(args.inputs), output=args.out, dpi=args.dpi)
    try:
        render(spec)
    except (MissingColumn, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
