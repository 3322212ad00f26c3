"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or
directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys

import pytest

from proxivor.acceptance import run_all
from proxivor.corpus import seed_from_env

TITLES = {
    1: "rgb_picture_points",
    2: "descriptive_connectedness",
    3: "angle_interval_chains",
    4: "strong_axioms_random_diagrams",
    5: "region_uniqueness",
    6: "cocircular_square",
    7: "nearest_site_oracle",
    8: "basic_open_inclusion_equivalence",
    9: "regular_set_lattice",
    10: "chart_witness_and_descriptive_audit",
    11: "split_diagram_charts",
}


@pytest.fixture(scope="module")
def results():
    return {c.number: c for c in run_all(seed_from_env())}


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(TITLES), ids=[f"{n:02d}_{t}" for n, t in sorted(TITLES.items())])
def test_criterion(results, number):
    c = results[number]
    print("\n" + c.line())
    assert c.ok, c.line()


def main() -> int:
    crits = run_all(seed_from_env())
    for c in crits:
        print(c.line())
    return 0 if all(c.ok for c in crits) else 1


if __name__ == "__main__":
    sys.exit(main())
