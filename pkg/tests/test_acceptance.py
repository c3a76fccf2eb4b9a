"""The acceptance gate: every criterion runs and reports one pass/fail line."""
import pytest

from tensorloc.suites import CRITERIA, SUITES, run_criterion

LIMIT = 60.0
TIMES = {}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    result = run_criterion(n)
    TIMES[n] = result.seconds
    with capsys.disabled():
        print(f"\ncriterion {n} ({CRITERIA[n][0]}): {'PASS' if result.ok else 'FAIL'} ({result.seconds:.1f} s)")
    assert result.ok, result.detail
    assert result.seconds < LIMIT


@pytest.mark.parametrize("suite", sorted(s for s in SUITES if s != "acceptance"))
def test_suite_fits_the_time_limit(suite):
    missing = [n for n in SUITES[suite] if n not in TIMES]
    if missing:
        pytest.skip(f"criteria {missing} did not run in this session")
    assert sum(TIMES[n] for n in SUITES[suite]) < LIMIT
