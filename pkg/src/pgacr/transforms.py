"""Motors built from reflections, and 1-D Mobius maps.

Projective maps other than isometries are not versors of R_{n,0,1}, so
projective invariance is exercised on line parameters through
:class:`Mobius1D` while motors cover rigid motions of whole objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ga_core import Multivector, Signature, geometric_product, reverse
from .objects import GeometricObject, Role, euclidean_split

__all__ = [
    "Versor",
    "Mobius1D",
    "VersorError",
    "reflect_compose",
    "sandwich",
    "random_motor",
    "mobius_apply",
]

UNIT_TOL = 1e-12


class VersorError(ValueError):
    pass


@dataclass(frozen=True)
class Versor:
    """Even unit versor acting by ``X -> V X ~V``."""

    mv: Multivector

    def __post_init__(self) -> None:
        if any(g % 2 for g in self.mv.grades()):
            raise VersorError("motor must be even-graded")
        norm = geometric_product(self.mv, reverse(self.mv))
        if not norm.allclose(Multivector.scalar(self.mv.sig, 1.0), rtol=0.0, atol=UNIT_TOL):
            raise VersorError(f"versor is not unit: V ~V = {norm!r}")

    @classmethod
    def identity(cls, sig: Signature) -> "Versor":
        return cls(Multivector.scalar(sig, 1.0))

    def __matmul__(self, other: "Versor") -> "Versor":
        """Composition: ``(self @ other)`` applies ``other`` first."""
        return Versor(geometric_product(self.mv, other.mv))


def _unit_plane(p: GeometricObject | Multivector) -> Multivector:
    mv = p.mv if isinstance(p, GeometricObject) else p
    if isinstance(p, GeometricObject) and p.role is not Role.HYPERPLANE:
        raise VersorError(f"reflections need hyperplanes, got {p.label()}")
    if mv.homogeneous_grade() != 1:
        raise VersorError("reflections need grade-1 hyperplanes")
    norm = euclidean_split(mv).euclid.norm2()
    if abs(norm - 1.0) > UNIT_TOL:
        raise VersorError(f"hyperplane normal has length {norm}, expected 1")
    return mv


def reflect_compose(planes: Sequence[GeometricObject | Multivector]) -> Versor:
    """Product of reflections, applied in list order.

    Two parallel planes a distance h apart give a translation by 2h from
    the first towards the second; two planes through a common flat at
    angle t give a rotation by 2t.
    """
    if not planes or len(planes) % 2:
        raise VersorError(f"need an even, nonzero number of reflections, got {len(planes)}")
    mvs = [_unit_plane(p) for p in planes]
    v = mvs[0]
    for p in mvs[1:]:
        v = geometric_product(p, v)
    return Versor(v)


def sandwich(v: Versor, x: GeometricObject) -> GeometricObject:
    out = geometric_product(geometric_product(v.mv, x.mv), reverse(v.mv))
    # The product is grade-preserving up to rounding; drop the stray grades.
    out = out.grade(x.grade)
    return GeometricObject(out, x.role, x.grade)


def random_motor(seed: int | np.random.Generator, sig: Signature) -> Versor:
    """Composition of 2 or 4 random unit reflections; deterministic in ``seed``."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    count = int(rng.choice([2, 4]))
    planes = []
    for _ in range(count):
        nrm = rng.normal(size=sig.n)
        nrm /= np.linalg.norm(nrm)
        offset = float(rng.uniform(-2.5, 2.5))
        planes.append(Multivector.vector(sig, [offset, *nrm]))
    # rescale exactly to unit length after float rounding
    planes = [p.scale(1.0 / euclidean_split(p).euclid.norm2()) for p in planes]
    return reflect_compose(planes)


@dataclass(frozen=True)
class Mobius1D:
    """``t -> (a t + b) / (c t + d)`` with ``ad - bc != 0``."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("singular Mobius map (ad - bc = 0)")

    def __call__(self, t: float) -> float:
        return mobius_apply(self, t)


def mobius_apply(m: Mobius1D, t: float) -> float:
    if math.isinf(t):
        if m.c == 0:
            return math.copysign(math.inf, t * m.a / m.d)
        return m.a / m.c
    num = m.a * t + m.b
    den = m.c * t + m.d
    if den == 0:
        return math.copysign(math.inf, num)
    return num / den
