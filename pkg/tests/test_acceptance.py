"""The sixteen acceptance criteria, one test each, with a pass/fail line printed per criterion."""

from __future__ import annotations

import pytest

from ribbonkit.checks import CHECKS, run_check

# The reduction ((C_n)^1)^{2,n} minus {2,n} does not yield a delta-matroid
# isomorphic to D(C_{n-2}); exhaustive searches over every twist and every
# deleted pair find no such minor for n = 5, 6.  Kept red on purpose.
UNATTAINABLE = {
    11: "reduced C_n minor is not isomorphic to D(C_{n-2}); see the decisions ledger",
}


def _param(k: int):
    marks = [pytest.mark.xfail(strict=True, reason=UNATTAINABLE[k])] if k in UNATTAINABLE else []
    return pytest.param(k, id=f"criterion-{k:02d}", marks=marks)


@pytest.mark.parametrize("number", [_param(k) for k in sorted(CHECKS)])
def test_criterion(number, capsys):
    result = run_check(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
