#!/usr/bin/env python3
"""GPD densities for gamma in {0, 1, 10, 100} with sigma = 1, as SVG and CSV."""
import argparse
import os

from pickands import cli


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--x-max", default="5")
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    common = ["plot-gpd", "--gammas", "0,1,10,100", "--sigma", "1", "--x-max", args.x_max]
    for fmt in ("svg", "csv"):
        path = os.path.join(args.outdir, f"figure1.{fmt}")
        code = cli.main(common + ["--format", fmt, "--out", path])
        if code:
            raise SystemExit(code)
        print("wrote", path)


if __name__ == "__main__":
    main()
