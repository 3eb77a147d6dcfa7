#!/usr/bin/env python3
"""Verify the exact Poisson identity for the approximation counter on a
batch of seeded (ideal, target, delta) triples; exits nonzero on any
mismatch between the direct count and the cyclotomic reconstruction."""

import sys

from realquad.cli import main

DEFAULTS = ["poisson-check", "--q", "3", "--d", "1,0,1", "--samples", "100",
            "--seed", "7", "--max-norm-exp", "5"]

if __name__ == "__main__":
    sys.exit(main(DEFAULTS + sys.argv[1:]))
