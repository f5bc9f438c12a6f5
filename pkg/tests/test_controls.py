from collections import Counter

import pytest

from thoma2.controls import FAMILIES, RUNNERS, control_suite


def test_suite_detects_every_perturbation():
    results = control_suite(20, seed=3)
    assert Counter(r.family for r in results) == Counter({f: 5 for f in FAMILIES})
    missed = [r.line() for r in results if not r.detected]
    assert not missed, missed
    assert all(r.where and r.where != "-" for r in results)


@pytest.mark.parametrize("family", FAMILIES)
def test_runners_are_deterministic(family):
    a, b = RUNNERS[family](17), RUNNERS[family](17)
    assert (a.description, a.where, a.detected) == (b.description, b.where, b.detected)


def test_seeds_vary_the_perturbation():
    descriptions = {RUNNERS["tables"](s).description for s in range(8)}
    assert len(descriptions) > 1
