#!/usr/bin/env python3
"""Emit the activation-comparison curves for the three proxy cases.

Each case pairs a theta-PGF-derived activation with a standard reference
activation (linear, prelu(0.25), relu).  The CSVs land in --out-dir and the
sup distance over [-2, 2] is printed per case; runs are bitwise stable.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

from thetakernels.cli import app

CASES = ("linear", "prelu-proxy", "relu-proxy")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("out"))
    args = parser.parse_args(argv)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for case in CASES:
        target = args.out_dir / f"activation_{case.replace('-', '_')}.csv"
        print(f"{case}: ", end="", flush=True)
        code = app(["reproduce-fig1", "--case", case, "--out", str(target)])
        if code != 0:
            return code
    print(f"wrote {len(CASES)} curve files to {args.out_dir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
