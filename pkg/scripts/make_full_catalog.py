#!/usr/bin/env python3
"""Generate a full-scale synthetic catalog CSV for load and scale testing."""

import argparse
from pathlib import Path

from skinrec.data.synth import FULL_CATALOG_SIZE, write_catalog_csv


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", type=Path, nargs="?", default=Path("full_catalog.csv"))
    parser.add_argument("--size", type=int, default=FULL_CATALOG_SIZE)
    parser.add_argument("--seed", type=int, default=20240101)
    args = parser.parse_args()
    path = write_catalog_csv(args.out, n=args.size, seed=args.seed)
    print(f"wrote {args.size} products to {path}")


if __name__ == "__main__":
    main()
