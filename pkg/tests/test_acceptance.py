"""Acceptance suite: one pass/fail line per criterion (run with ``pytest -s`` to see them)."""

import pytest

from bigpolygon.acceptance import CRITERIA


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, check):
    passed, detail = check()
    print(f"\n[{'PASS' if passed else 'FAIL'}] {number}. {title}: {detail}")
    assert passed, detail
