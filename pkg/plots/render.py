#!/usr/bin/env python3
"""Render a figure from tuecount CSV output.

Examples:
    python render.py --kind scatter --input fig1_alpha2.csv fig1_alpha5.csv \
        fig1_alpha10.csv --output fig1.png
    python render.py --kind curves --input fig3_b1.csv fig3_b11.csv \
        --output fig3.png
    python render.py --kind loglog --input convergence.csv --output conv.png
"""

import argparse
import sys

from figrender import KINDS, FigureSpec, SchemaError, render


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kind", choices=KINDS, required=True)
    ap.add_argument("--input", nargs="+", required=True)
    ap.add_argument("--output", required=True)
    args = ap.parse_args(argv)
    try:
        out = render(FigureSpec(list(args.input), args.kind, args.output))
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
