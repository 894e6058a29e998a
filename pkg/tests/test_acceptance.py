"""Acceptance criteria, one test each, run on the full grid.

Each test prints a single ``PASS [n] ...`` or ``FAIL [n] ...`` line (visible with
``pytest -s`` and in the ``-v`` summary through the assertion message).
"""
import pytest

from akproj.verification import ACCEPTANCE

_results = {}


@pytest.mark.parametrize("key", sorted(ACCEPTANCE, key=int))
def test_criterion(key):
    r = ACCEPTANCE[key](grid="full")
    _results[key] = r
    print(r.line())
    if r.budget is not None:
        assert r.elapsed <= r.budget, f"over budget: {r.elapsed:.1f}s > {r.budget}s"
    assert r.passed, r.line() + "\n" + "\n".join(r.failures[:10])


def test_summary(capsys):
    with capsys.disabled():
        print()
        for key in sorted(_results, key=int):
            print(_results[key].line())
