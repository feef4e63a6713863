#!/usr/bin/env python3
"""Run the full seeded verification battery across the standard algebra
configurations.

Usage: python scripts/run_verification.py [trials per suite] [seed]
"""

import sys
import time

from pisupport.cli import run_command

CONFIGS = [(2, 2), (2, 3), (3, 2), (3, 3)]


def main():
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 20
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    worst = 0
    for p, r in CONFIGS:
        start = time.perf_counter()
        code, out, err = run_command(
            ["verify", "--trials", str(trials), "--seed", str(seed),
             "--p", str(p), "--r", str(r)]
        )
        sys.stdout.write(out)
        if err:
            sys.stderr.write(err)
        print(f"[p={p} r={r}] exit {code} in "
              f"{time.perf_counter() - start:.1f}s")
        print("=" * 72)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
