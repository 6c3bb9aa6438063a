"""Acceptance battery: every top-level claim, one test per criterion, full
depths and sample sizes.  Each test prints its own PASS/FAIL line so a run
with `pytest -s tests/test_acceptance.py` reads as a report.

The expected cusp count for the mixed-multiplicity level t^3;t+1 is 8 (the
proof-side fiber count and the independent tree computation agree on it);
see the decisions ledger for the derivation.
"""

import pytest

from btquot.selftest import CHECKS


@pytest.mark.parametrize("name,fn", CHECKS, ids=[c[0] for c in CHECKS])
def test_acceptance(name, fn):
    ok, detail = fn(fast=False)
    print("[%s] %s: %s" % ("PASS" if ok else "FAIL", name, detail))
    assert ok, "%s: %s" % (name, detail)
