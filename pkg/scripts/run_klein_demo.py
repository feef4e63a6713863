#!/usr/bin/env python3
"""Reproduce the Klein-family computations for a range of truncations.

Usage: python scripts/run_klein_demo.py [max_n] [sample_degree]
"""

import sys

from pisupport.cli import run_command


def main():
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    degree = int(sys.argv[2]) if len(sys.argv) > 2 else 3
    worst = 0
    for n in range(1, max_n + 1):
        code, out, err = run_command(
            ["demo", "klein", "--n", str(n), "--sample-degree", str(degree)]
        )
        sys.stdout.write(out)
        sys.stdout.write("\n" + "=" * 72 + "\n")
        if err:
            sys.stderr.write(err)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
