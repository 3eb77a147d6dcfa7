#!/usr/bin/env python3
"""Run the full acceptance suite (all twelve criteria) and print one line
per criterion; exits 1 if any criterion fails."""

import sys

from realquad.selftest import run_all

if __name__ == "__main__":
    failed = 0
    for r in run_all():
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.number:2d} {r.name:32s} {status} {r.seconds:7.1f}s  "
              f"{r.detail}")
        failed += not r.passed
    sys.exit(1 if failed else 0)
