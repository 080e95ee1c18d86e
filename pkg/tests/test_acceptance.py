"""Acceptance criteria: one PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) or through pytest, where
the lines are printed to the terminal and each criterion is its own test.
"""
import json
import subprocess
import sys

import pytest

from dampedqho.acceptance import CRITERIA, run_all


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run_all()}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(results, number, capsys):
    res = results[number]
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, json.dumps(res.to_dict()["details"], indent=1)[:4000]


def test_verify_json_is_byte_identical():
    cmd = [sys.executable, "-m", "dampedqho", "verify", "--json", "--only", "3,4,5,7,8,9,10"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    doc = json.loads(first.stdout)
    assert [c["criterion"] for c in doc["criteria"]] == [3, 4, 5, 7, 8, 9, 10]


if __name__ == "__main__":
    failed = 0
    for res in run_all():
        print(res.line())
        failed += not res.passed
    sys.exit(2 if failed else 0)
