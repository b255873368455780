"""Run every acceptance criterion at its pinned tolerance.

Each test prints one PASS/FAIL line (visible with ``pytest -s`` or in the
``walklab verify`` command, which shares this registry).
"""

import pytest

from walklab.acceptance import CRITERIA, SUITES, run_criteria


@pytest.mark.parametrize("cid", list(CRITERIA.keys()))
def test_criterion(cid):
    description, fn = CRITERIA[cid]
    ok, detail = fn()
    print(f"C{cid}: {'PASS' if ok else 'FAIL'}  {description}  [{detail}]")
    assert ok, f"criterion {cid} ({description}) failed: {detail}"


def test_suites_cover_all_criteria():
    covered = set()
    for name, cids in SUITES.items():
        if name != "all":
            covered.update(cids)
    assert covered == set(CRITERIA)
    assert SUITES["all"] == list(CRITERIA)


def test_run_criteria_returns_results_in_order():
    results = run_criteria(["3", "1"])
    assert [r.cid for r in results] == ["3", "1"]
    assert all(r.ok for r in results)
