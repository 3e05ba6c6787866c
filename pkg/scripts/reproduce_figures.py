#!/usr/bin/env python3
"""Tool to write the data of every figure as CSV files into a directory."""

import argparse
import logging
import sys
from pathlib import Path

from coherence_power.figures import FIGURES, write_csv

logging.basicConfig(level=logging.INFO, format="%(message)s")
logger = logging.getLogger(__name__)


def main() -> None:
    """Run the figure reproduction tool."""
    parser = argparse.ArgumentParser(description="Write figure data as CSV files")
    parser.add_argument("--output-dir", default="figures", help="Output directory")
    parser.add_argument(
        "--only", choices=sorted(FIGURES), action="append", help="Figure to write"
    )

    args = parser.parse_args()
    names = args.only or sorted(FIGURES)

    try:
        output_dir = Path(args.output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        for name in names:
            table = FIGURES[name]()
            path = output_dir / f"{name}.csv"
            with path.open("w", encoding="utf-8", newline="") as f:
                write_csv(f, table)
            logger.info("Wrote %d rows to %s", len(table.rows), path)

    except OSError:
        logger.exception("Error occurred")
        sys.exit(1)


if __name__ == "__main__":
    main()
