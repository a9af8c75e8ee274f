"""Seeded random configurations with known ground-truth cross-ratios.

Each sampler builds objects from explicit parameters (line positions or
pencil angles) and reports the classical cross-ratio of those parameters,
computed by :mod:`pgacr.oracle` without touching the PGA formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .crossratio import Variant
from .ga_core import Multivector, Signature, wedge
from .objects import GeometricObject, as_object, hyperplane, ideal_point, point
from .oracle import classical_cr_affine, sine_cr

__all__ = ["Sample", "sample", "SAMPLERS", "supported", "flat_grades"]


@dataclass
class Sample:
    variant: Variant
    objects: list[GeometricObject]
    truth: float
    params: list[float]
    kind: str  # "affine" (signed positions) or "sine" (pencil angles)
    extra: dict = field(default_factory=dict)


def _spread(rng: np.random.Generator, lo: float, hi: float, gap: float) -> list[float]:
    """Four values in [lo, hi] separated by at least ``gap``."""
    while True:
        t = rng.uniform(lo, hi, 4)
        if np.min(np.diff(np.sort(t))) >= gap:
            return [float(x) for x in t]


def _angles(rng: np.random.Generator, gap: float = 0.15) -> list[float]:
    """Four angles pairwise distinct modulo pi by at least ``gap``."""
    while True:
        a = rng.uniform(0.0, math.pi, 4)
        s = np.sort(a)
        d = np.diff(np.concatenate([s, [s[0] + math.pi]]))
        if d.min() >= gap:
            # random per-member pi flips: the pencil does not care
            flips = rng.integers(0, 2, 4) * math.pi
            return [float(x) for x in a + flips]


def _frame(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def _weights(rng: np.random.Generator, m: int = 4) -> list[float]:
    return [float(w) for w in rng.uniform(0.3, 3.0, m) * rng.choice([-1.0, 1.0], m)]


def _plane(normal: np.ndarray, offset: float, sig: Signature) -> Multivector:
    return Multivector.vector(sig, [offset, *normal])


def _wedge_all(blades: list[Multivector]) -> Multivector:
    acc = blades[0]
    for b in blades[1:]:
        acc = wedge(acc, b)
    return acc


def _finite_points(rng, n, k=None) -> Sample:
    x0 = rng.uniform(-3, 3, n)
    d = _frame(rng, n)[0]
    t = _spread(rng, -4, 4, 0.2)
    w = _weights(rng)
    objs = [point(x0 + ti * d, wi) for ti, wi in zip(t, w)]
    return Sample(Variant.FinitePointsCollinear, objs, classical_cr_affine(t), t, "affine",
                  {"origin": x0, "direction": d})


def _ideal_points(rng, n, k=None) -> Sample:
    q = _frame(rng, n)
    a = _angles(rng)
    s = _weights(rng)
    objs = [ideal_point(si * (math.cos(ai) * q[0] + math.sin(ai) * q[1])) for ai, si in zip(a, s)]
    return Sample(Variant.IdealPointsOnIdealLine, objs, sine_cr(a), a, "sine")


def _hyperplanes(rng, n, through_origin: bool) -> Sample:
    q = _frame(rng, n)
    a = _angles(rng)
    s = _weights(rng)
    if through_origin:
        c = np.zeros(n)
        variant = Variant.HyperplanesMeetThroughOrigin
    else:
        # common flat through c; c needs a component in the pencil plane
        while True:
            c = rng.uniform(-3, 3, n)
            if np.hypot(c @ q[0], c @ q[1]) > 0.5:
                break
        variant = Variant.HyperplanesMeetOffOrigin
    objs = []
    for ai, si in zip(a, s):
        nrm = math.cos(ai) * q[0] + math.sin(ai) * q[1]
        objs.append(hyperplane(si * nrm, -si * float(nrm @ c)))
    return Sample(variant, objs, sine_cr(a), a, "sine", {"center": c})


def _parallel_hyperplanes(rng, n, k=None) -> Sample:
    nrm = _frame(rng, n)[0]
    t = _spread(rng, -4, 4, 0.2)
    s = _weights(rng)
    objs = [hyperplane(si * nrm, si * ti) for ti, si in zip(t, s)]
    return Sample(Variant.HyperplanesMeetOffOrigin, objs, classical_cr_affine(t), t, "affine")


def _secant_flats(rng, n, k, through_origin: bool) -> Sample:
    sig = Signature(n)
    q = _frame(rng, n)
    a = _angles(rng)
    s = _weights(rng)
    if through_origin:
        c = np.zeros(n)
        variant = Variant.FlatsThroughOrigin
    else:
        # keep the rotation axis of the pencil away from the origin
        while True:
            c = rng.uniform(-3, 3, n)
            common = q[: k + 1]
            if np.linalg.norm(common @ c) > 0.5 and np.linalg.norm(q[2 : k + 1] @ c) > 0.3:
                break
        variant = Variant.FlatsMeetOffOrigin
    fixed = [_plane(q[j], -float(q[j] @ c), sig) for j in range(2, k + 1)]
    objs = []
    for ai, si in zip(a, s):
        nrm = math.cos(ai) * q[0] + math.sin(ai) * q[1]
        blades = [_plane(nrm, -float(nrm @ c), sig), *fixed]
        objs.append(as_object(_wedge_all(blades).scale(si)))
    return Sample(variant, objs, sine_cr(a), a, "sine", {"center": c, "k": k})


def _parallel_flats(rng, n, k) -> Sample:
    sig = Signature(n)
    q = _frame(rng, n)
    t = _spread(rng, -4, 4, 0.2)
    s = _weights(rng)
    offsets = rng.uniform(-2, 2, k)
    fixed = [_plane(q[j], float(offsets[j]), sig) for j in range(1, k)]
    objs = []
    for ti, si in zip(t, s):
        blades = [_plane(q[0], ti, sig), *fixed]
        objs.append(as_object(_wedge_all(blades).scale(si)))
    return Sample(Variant.FiniteFlatsParallel, objs, classical_cr_affine(t), t, "affine", {"k": k})


def _ideal_flats(rng, n, k) -> Sample:
    sig = Signature(n)
    q = _frame(rng, n)
    a = _angles(rng)
    s = _weights(rng)
    e0 = Multivector.basis_vector(sig, 0)
    fixed = [_plane(q[j], 0.0, sig) for j in range(2, k)]
    objs = []
    for ai, si in zip(a, s):
        nrm = math.cos(ai) * q[0] + math.sin(ai) * q[1]
        blades = [e0, _plane(nrm, 0.0, sig), *fixed]
        objs.append(as_object(_wedge_all(blades).scale(si)))
    return Sample(Variant.IdealFlatsSecant, objs, sine_cr(a), a, "sine", {"k": k})


SAMPLERS: dict[Variant, Callable[..., Sample]] = {
    Variant.FinitePointsCollinear: _finite_points,
    Variant.IdealPointsOnIdealLine: _ideal_points,
    Variant.HyperplanesMeetOffOrigin: lambda rng, n, k=None: _hyperplanes(rng, n, False),
    Variant.HyperplanesMeetThroughOrigin: lambda rng, n, k=None: _hyperplanes(rng, n, True),
    Variant.FlatsMeetOffOrigin: lambda rng, n, k: _secant_flats(rng, n, k, False),
    Variant.FlatsThroughOrigin: lambda rng, n, k: _secant_flats(rng, n, k, True),
    Variant.FiniteFlatsParallel: _parallel_flats,
    Variant.IdealFlatsSecant: _ideal_flats,
}

_FLATS = {
    Variant.FlatsMeetOffOrigin,
    Variant.FlatsThroughOrigin,
    Variant.FiniteFlatsParallel,
    Variant.IdealFlatsSecant,
}


def flat_grades(n: int) -> list[int]:
    return list(range(2, n))


def supported(variant: Variant, n: int) -> bool:
    """Flat variants need an intermediate grade, i.e. n >= 3."""
    return n >= 2 and (variant not in _FLATS or n >= 3)


def sample(
    variant: Variant,
    n: int,
    rng: np.random.Generator,
    k: int | None = None,
    parallel: bool = False,
) -> Sample:
    """Draw one configuration of ``variant`` in dimension ``n``.

    ``k`` picks the flat grade (random in ``2..n-1`` when omitted);
    ``parallel`` selects parallel rather than secant off-origin hyperplanes.
    """
    if not supported(variant, n):
        raise ValueError(f"{variant.value} needs n >= 3")
    if variant is Variant.HyperplanesMeetOffOrigin and parallel:
        return _parallel_hyperplanes(rng, n)
    if variant in _FLATS:
        if k is None:
            k = int(rng.integers(2, n))
        return SAMPLERS[variant](rng, n, k)
    return SAMPLERS[variant](rng, n)
