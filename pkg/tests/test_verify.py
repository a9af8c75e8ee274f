import math

import numpy as np
import pytest

from pgacr.crossratio import Variant
from pgacr.sampling import flat_grades, sample, supported
from pgacr.verify import SUITES, SuiteResult, rel_err, run_suites


def test_rel_err():
    assert rel_err(1.0, 1.0) == 0.0
    assert rel_err(1e-20, 2e-20) == pytest.approx(1e-20)
    assert rel_err(100.0, 101.0) == pytest.approx(1 / 101)
    assert rel_err(math.inf, math.inf) == 0.0
    assert rel_err(math.inf, -math.inf) == math.inf


def test_suite_result():
    r = SuiteResult("oracle", "x", 1e-9)
    r.record(1e-12)
    r.record(1e-3)
    assert (r.passed, r.failed, r.ok) == (1, 1, False)
    r.fail("boom")
    assert r.worst == math.inf and r.errors == ["boom"]


def test_run_suites_small():
    res = run_suites(3, 5, seed=1)
    assert res and all(r.ok for r in res)
    assert {r.suite for r in res} == set(SUITES)


def test_run_suites_deterministic():
    a = run_suites(2, 4, seed=9, variants=[Variant.FinitePointsCollinear])
    b = run_suites(2, 4, seed=9, variants=[Variant.FinitePointsCollinear])
    assert [(r.suite, r.worst) for r in a] == [(r.suite, r.worst) for r in b]


def test_sampling_supported():
    assert not supported(Variant.FlatsThroughOrigin, 2)
    assert supported(Variant.FlatsThroughOrigin, 3)
    assert flat_grades(5) == [2, 3, 4]
    with pytest.raises(ValueError):
        sample(Variant.IdealFlatsSecant, 2, np.random.default_rng(0))
