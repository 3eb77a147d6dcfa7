"""Acceptance gate: the twelve criteria, one test each, at the stated
tolerances.  Each test prints a single pass/fail line with the detail."""

import pytest

from realquad.selftest import CRITERIA


@pytest.mark.parametrize("number,name,fn", CRITERIA,
                         ids=[f"{n:02d}-{name}" for n, name, _ in CRITERIA])
def test_acceptance_criterion(number, name, fn, capsys):
    passed, detail = fn()
    line = f"criterion {number:2d} {name}: " \
           f"{'PASS' if passed else 'FAIL'} ({detail})"
    with capsys.disabled():
        print(line)
    assert passed, line
