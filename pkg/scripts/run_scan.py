#!/usr/bin/env python3
"""Run the main exponent-scan experiment.

Defaults reproduce the headline desk-scale run: q = 5, d = T^2 + 2,
N from 4 to 10 (the scale cap is raised accordingly), seeded target.
Extra CLI flags are passed straight through, e.g.:

    python3 scripts/run_scan.py --seed 3 --out scan.csv
"""

import sys

from realquad.cli import main

DEFAULTS = ["scan", "--q", "5", "--d", "2,0,1", "--nmin", "4", "--nmax",
            "10", "--seed", "1", "--scale-cap", "10000000"]

if __name__ == "__main__":
    sys.exit(main(DEFAULTS + sys.argv[1:]))
