"""The fourteen acceptance criteria at their stated sizes and tolerances.

Under pytest each criterion is one test and prints a PASS/FAIL line (shown
even without -s).  Run directly with ``python tests/test_acceptance.py``
for just the summary lines; the exit status is 0 only if all pass.
"""

import sys
import time

import pytest

from stonevn.verify import CRITERIA, Bounds, criterion_12

SEED = 0
TOLERANCE = 1e-9


def run_criterion(k, seed=SEED):
    if k == 12:
        return criterion_12(seed, Bounds(), tolerance=TOLERANCE)
    return CRITERIA[k](seed, Bounds())


def _line(rep, elapsed):
    return f"{rep.summary()} [{elapsed:.1f}s]"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    start = time.perf_counter()
    rep = run_criterion(k)
    with capsys.disabled():
        print("\n" + _line(rep, time.perf_counter() - start))
    assert rep.passed, rep.failures
    assert rep.checked > 0, "criterion checked nothing"


def main():
    ok = True
    total = time.perf_counter()
    for k in sorted(CRITERIA):
        start = time.perf_counter()
        rep = run_criterion(k)
        ok = ok and rep.passed and rep.checked > 0
        print(_line(rep, time.perf_counter() - start), flush=True)
        for msg in rep.failures[:5]:
            print(f"    {msg}")
    print(f"{'ALL PASS' if ok else 'FAILURES PRESENT'} in {time.perf_counter() - total:.1f}s")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
