"""Randomized verification suites shared by the CLI and the test-suite.

Every check compares two routes to the same number with a mixed
relative/absolute error ``|a - b| / max(1, |a|, |b|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .crossratio import (
    CrossRatioError,
    Variant,
    cross_ratio,
    pair_measure,
    wedge_form_measure,
)
from .duality import hodge_dual
from .ga_core import Signature
from .objects import as_object
from .oracle import OracleError, pencil_angles, sine_cr
from .sampling import Sample, sample, supported
from .transforms import random_motor, sandwich

__all__ = ["SuiteResult", "rel_err", "SUITES", "run_suites", "COLLAPSE_TOL", "REPRESENTATIVE_TOL"]

COLLAPSE_TOL = 1e-12
REPRESENTATIVE_TOL = 1e-12


def rel_err(a: float, b: float) -> float:
    if math.isinf(a) or math.isinf(b):
        return 0.0 if a == b else math.inf
    return abs(a - b) / max(1.0, abs(a), abs(b))


@dataclass
class SuiteResult:
    suite: str
    variant: str
    tol: float
    passed: int = 0
    failed: int = 0
    worst: float = 0.0
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, err: float) -> None:
        self.worst = max(self.worst, err)
        if err <= self.tol:
            self.passed += 1
        else:
            self.failed += 1

    def fail(self, message: str) -> None:
        self.failed += 1
        self.worst = math.inf
        if len(self.errors) < 5:
            self.errors.append(message)


# Checks take the sample, its cross-ratio ``value``, the tolerance and the rng.


def _oracle(s: Sample, value: float, tol: float, rng) -> float:
    return rel_err(value, s.truth)


def _angles(s: Sample, value: float, tol: float, rng) -> float | None:
    if s.kind != "sine":
        return None
    return rel_err(value, sine_cr(pencil_angles(s.objects, tol)))


def _duality(s: Sample, value: float, tol: float, rng) -> float:
    duals = [as_object(hodge_dual(o.mv), tol) for o in s.objects]
    return rel_err(value, cross_ratio(duals, tol).value)


def _motor(s: Sample, value: float, tol: float, rng) -> float:
    motor = random_motor(rng, s.objects[0].sig)
    moved = [sandwich(motor, o) for o in s.objects]
    return rel_err(value, cross_ratio(moved, tol).value)


def _representative(s: Sample, value: float, tol: float, rng) -> float:
    scales = rng.uniform(0.1, 10.0, 4) * rng.choice([-1.0, 1.0], 4)
    scaled = [o.scaled(float(c)) for o, c in zip(s.objects, scales)]
    return rel_err(value, cross_ratio(scaled, tol).value)


def _collapse(s: Sample, value: float, tol: float, rng) -> float:
    worst = 0.0
    objs = s.objects
    for i in range(4):
        for j in range(i + 1, 4):
            a = pair_measure(objs[i], objs[j], s.variant)
            b = wedge_form_measure(objs[i], objs[j], s.variant)
            scale = max(a.max_abs(), b.max_abs(), 1e-300)
            worst = max(worst, (a - b).max_abs() / scale)
    return worst


# name -> (check, fixed tolerance or None to use the caller's tol)
SUITES: dict[str, tuple[Callable, float | None]] = {
    "oracle": (_oracle, None),
    "angles": (_angles, None),
    "duality": (_duality, None),
    "motor": (_motor, None),
    "representative": (_representative, REPRESENTATIVE_TOL),
    "collapse": (_collapse, COLLAPSE_TOL),
}


def run_suites(
    dim: int,
    trials: int,
    seed: int,
    variants: Iterable[Variant] | None = None,
    tol: float = 1e-9,
    suites: Iterable[str] | None = None,
) -> list[SuiteResult]:
    """Run the selected suites on ``trials`` seeded samples per variant.

    Off-origin hyperplane trials alternate between secant and parallel
    pencils so both the sine and the distance reductions get exercised.
    """
    variants = list(Variant) if variants is None else list(variants)
    names = list(SUITES) if suites is None else list(suites)
    rng = np.random.default_rng(seed)
    Signature(dim)  # validates dim
    results = []
    for variant in variants:
        if not supported(variant, dim):
            continue
        rows = {name: SuiteResult(name, variant.value, SUITES[name][1] or tol) for name in names}
        for trial in range(trials):
            s = sample(variant, dim, rng, parallel=trial % 2 == 1)
            try:
                value = cross_ratio(s.objects, tol).value
            except CrossRatioError as exc:
                for name in names:
                    rows[name].fail(f"trial {trial}: {type(exc).__name__}: {exc}")
                continue
            for name in names:
                check = SUITES[name][0]
                try:
                    err = check(s, value, tol, rng)
                except (CrossRatioError, OracleError, ValueError) as exc:
                    rows[name].fail(f"trial {trial}: {type(exc).__name__}: {exc}")
                    continue
                if err is not None:
                    rows[name].record(err)
        results.extend(r for r in rows.values() if r.passed or r.failed)
    return results
