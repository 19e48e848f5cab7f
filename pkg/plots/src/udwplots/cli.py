"""Command-line figure rendering from udwkit sweep CSVs.

    udwplots render --preset fig1a --data-dir data/ --out figures/fig1a.png
    udwplots render-all --data-dir data/ --out-dir figures/ [--fmt png|svg]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .io import MissingColumnsError
from .recipes import RECIPES
from .render import render_preset


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="udwplots", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_one = sub.add_parser("render", help="render one figure preset")
    p_one.add_argument("--preset", required=True, choices=sorted(RECIPES))
    p_one.add_argument("--data-dir", required=True)
    p_one.add_argument("--out", required=True)

    p_all = sub.add_parser("render-all", help="render every preset found")
    p_all.add_argument("--data-dir", required=True)
    p_all.add_argument("--out-dir", required=True)
    p_all.add_argument("--fmt", choices=("png", "svg"), default="png")

    args = parser.parse_args(argv)
    try:
        if args.subcommand == "render":
            out = render_preset(args.preset, args.data_dir, args.out)
            print(out)
        else:
            data_dir = Path(args.data_dir)
            rendered = 0
            for name in sorted(RECIPES):
                if not (data_dir / RECIPES[name].csv_name).exists():
                    continue
                out = render_preset(name, data_dir,
                                    Path(args.out_dir) / f"{name}.{args.fmt}")
                print(out)
                rendered += 1
            if rendered == 0:
                print(f"no preset CSVs found in {data_dir}", file=sys.stderr)
                return 2
    except (FileNotFoundError, MissingColumnsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
