#!/usr/bin/env python3
"""Rebuild the derived fixtures from their type D sources.

The type A trefoil structure and the three curves are computed, not typed
in.  With ``--check`` the script only reports files that would change.
"""

import argparse
import sys
from importlib.resources import files
from pathlib import Path

from bordered_calc.catalog import load
from bordered_calc.curves import format_curve, type_d_to_curve
from bordered_calc.typea import format_type_a, from_type_d

CURVE_HEADER = "# Immersed curve realizing {src}; coordinates on the 1/20 grid.\n"
CFA_HEADER = ("# CFA(M, mu, lambda) for the right-handed trefoil complement, obtained from\n"
              "# cfd.trefoil.mu-lambda by the path-regrouping conversion.\n")


def derived(root: Path):
    trefoil = load("cfd.trefoil.mu-lambda", root).payload
    yield root / "type_a" / "cfa.trefoil.mu-lambda.txt", CFA_HEADER + format_type_a(
        from_type_d(trefoil))
    for key in ("N.s0", "N.s1", "trefoil.mu-lambda"):
        src = f"cfd.{key}"
        text = format_curve(type_d_to_curve(load(src, root).payload))
        yield root / "curve" / f"curve.{key}.txt", CURVE_HEADER.format(src=src) + text


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--fixtures", type=Path,
                        default=Path(str(files("bordered_calc") / "fixtures")))
    parser.add_argument("--check", action="store_true", help="report differences only")
    args = parser.parse_args()
    stale = 0
    for path, text in derived(args.fixtures):
        if path.is_file() and path.read_text() == text:
            continue
        stale += 1
        print(("stale: " if args.check else "wrote: ") + str(path))
        if not args.check:
            path.write_text(text)
    return 1 if args.check and stale else 0


if __name__ == "__main__":
    sys.exit(main())
