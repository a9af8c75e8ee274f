"""Points, hyperplanes and intermediate flats, and the Euclidean split.

Conventions
-----------
* Hyperplane ``sum n_i e_i + d e_0`` is the set ``n . x + d = 0``.
* Point ``(a_1 e_1 + ... + a_n e_n + a_0 e_0)*``: ``a_0`` is the weight and
  the position is ``a_i / a_0``.  ``a_0 = 0`` gives an ideal point.
* A grade-k object (1 < k < n) is a flat of dimension n - k.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .duality import hodge_dual, hodge_undual, regressive
from .ga_core import Multivector, Signature, blade_name, wedge

__all__ = [
    "DEFAULT_TOL",
    "Role",
    "GeometricObject",
    "SplitPair",
    "ObjectClass",
    "Proportionality",
    "InvalidObject",
    "DegenerateConstruction",
    "euclidean_split",
    "as_object",
    "point",
    "ideal_point",
    "point_coords",
    "point_weight",
    "ideal_direction",
    "hyperplane",
    "ideal_hyperplane",
    "flat_from_join",
    "flat_from_meet",
    "classify_object",
    "proportional",
    "unitize",
    "incident",
]

DEFAULT_TOL = 1e-9


class InvalidObject(ValueError):
    """A multivector does not describe a geometric object of the stated role."""


class DegenerateConstruction(ValueError):
    """A constructor received dependent or zero input."""


class Role(enum.Enum):
    POINT = "point"
    HYPERPLANE = "hyperplane"
    FLAT = "flat"


class SplitPair(NamedTuple):
    euclid: Multivector
    ideal: Multivector

    def reassemble(self) -> Multivector:
        e0 = Multivector.basis_vector(self.euclid.sig, 0)
        return self.euclid + e0 * self.ideal


class ObjectClass(NamedTuple):
    finite: bool
    through_origin: bool

    @property
    def ideal(self) -> bool:
        return not self.finite


class Proportionality(NamedTuple):
    """``B ~= factor * A`` with relative ``residual``."""

    factor: float
    residual: float
    accepted: bool


def euclidean_split(a: Multivector) -> SplitPair:
    """``A = A_E + e_0 A_I``.

    e_0 is the lowest generator, so factoring it out on the left never
    reorders anything and the sign is always +1.
    """
    euclid: dict[int, float] = {}
    ideal: dict[int, float] = {}
    for m, c in a.terms.items():
        if m & 1:
            ideal[m ^ 1] = c
        else:
            euclid[m] = c
    return SplitPair(Multivector._trusted(a.sig, euclid), Multivector._trusted(a.sig, ideal))


def _self_wedge_is_zero(b: Multivector, tol: float) -> bool:
    scale = b.max_abs()
    return wedge(b, b).max_abs() <= tol * scale * scale


@dataclass(frozen=True)
class GeometricObject:
    """A homogeneous blade together with its geometric role."""

    mv: Multivector
    role: Role
    grade: int

    @property
    def sig(self) -> Signature:
        return self.mv.sig

    @property
    def n(self) -> int:
        return self.mv.sig.n

    def label(self) -> str:
        if self.role is Role.FLAT:
            return f"flat(k={self.grade})"
        return self.role.value

    def with_mv(self, mv: Multivector) -> "GeometricObject":
        return as_object(mv)

    def scaled(self, s: float) -> "GeometricObject":
        return GeometricObject(self.mv.scale(s), self.role, self.grade)


def _role_for_grade(grade: int, n: int) -> Role:
    if grade == n:
        return Role.POINT
    if grade == 1:
        return Role.HYPERPLANE
    if 1 < grade < n:
        return Role.FLAT
    raise InvalidObject(f"grade {grade} is not a geometric object in n={n}")


def as_object(mv: Multivector, tol: float = DEFAULT_TOL) -> GeometricObject:
    """Wrap a homogeneous blade, inferring its role from the grade."""
    n = mv.sig.n
    if n < 2:
        raise InvalidObject("geometric objects need n >= 2")
    if mv.is_zero():
        raise InvalidObject("zero multivector is not an object")
    grade = mv.homogeneous_grade()
    if grade is None:
        raise InvalidObject(f"multivector of grades {sorted(mv.grades())} is not homogeneous")
    role = _role_for_grade(grade, n)
    # Cheap factorizability checks; other grades are trusted as constructed.
    if grade == 2 and not _self_wedge_is_zero(mv, tol):
        raise InvalidObject("grade-2 element is not a blade (B ^ B != 0)")
    if grade == n - 1 and grade != 2 and not _self_wedge_is_zero(hodge_dual(mv), tol):
        raise InvalidObject(f"grade-{grade} element is not a blade (dual self-wedge != 0)")
    return GeometricObject(mv, role, grade)


def _vec(sig: Signature, a0: float, a: Sequence[float]) -> Multivector:
    return Multivector.vector(sig, [a0, *a])


def point(coords: Sequence[float], weight: float = 1.0) -> GeometricObject:
    """Finite point at ``coords`` with homogeneous ``weight``."""
    coords = [float(x) for x in coords]
    sig = Signature(len(coords))
    if weight == 0 or not math.isfinite(weight):
        raise DegenerateConstruction("finite point needs a nonzero weight; use ideal_point")
    return as_object(hodge_dual(_vec(sig, weight, [weight * x for x in coords])))


def ideal_point(direction: Sequence[float]) -> GeometricObject:
    direction = [float(x) for x in direction]
    if not any(direction):
        raise DegenerateConstruction("ideal point needs a nonzero direction")
    sig = Signature(len(direction))
    return as_object(hodge_dual(_vec(sig, 0.0, direction)))


def _point_vector(p: GeometricObject | Multivector) -> list[float]:
    mv = p.mv if isinstance(p, GeometricObject) else p
    a = hodge_undual(mv)
    if a.homogeneous_grade() != 1:
        raise InvalidObject("not a point (grade-n blade)")
    return [a[1 << i] for i in range(mv.sig.n + 1)]


def point_weight(p: GeometricObject | Multivector) -> float:
    return _point_vector(p)[0]


def point_coords(p: GeometricObject | Multivector) -> list[float]:
    a = _point_vector(p)
    if a[0] == 0.0:
        raise InvalidObject("ideal point has no finite coordinates")
    return [x / a[0] for x in a[1:]]


def ideal_direction(p: GeometricObject | Multivector) -> list[float]:
    """Euclidean vector part of the undualized point (direction for ideal points)."""
    return _point_vector(p)[1:]


def hyperplane(normal: Sequence[float], offset: float = 0.0) -> GeometricObject:
    normal = [float(x) for x in normal]
    if not any(normal):
        raise DegenerateConstruction("zero normal; use ideal_hyperplane for e_0")
    sig = Signature(len(normal))
    return as_object(_vec(sig, offset, normal))


def ideal_hyperplane(sig: Signature) -> GeometricObject:
    return as_object(Multivector.basis_vector(sig, 0))


def _nonzero_or_raise(result: Multivector, inputs: Sequence[Multivector], tol: float, what: str):
    scale = 1.0
    for m in inputs:
        scale *= m.max_abs()
    if result.max_abs() <= tol * scale:
        raise DegenerateConstruction(f"{what} of dependent objects is zero")
    return result


def flat_from_join(points: Sequence[GeometricObject], tol: float = DEFAULT_TOL) -> GeometricObject:
    """Smallest flat through the given points (iterated regressive product)."""
    if len(points) < 2:
        raise DegenerateConstruction("join needs at least two points")
    for p in points:
        if p.role is not Role.POINT:
            raise InvalidObject(f"join expects points, got {p.label()}")
    acc = points[0].mv
    for p in points[1:]:
        acc = regressive(acc, p.mv)
    _nonzero_or_raise(acc, [p.mv for p in points], tol, "join")
    return as_object(acc, tol)


def flat_from_meet(planes: Sequence[GeometricObject], tol: float = DEFAULT_TOL) -> GeometricObject:
    """Intersection of hyperplanes (iterated wedge)."""
    if len(planes) < 2:
        raise DegenerateConstruction("meet needs at least two hyperplanes")
    for h in planes:
        if h.role is not Role.HYPERPLANE:
            raise InvalidObject(f"meet expects hyperplanes, got {h.label()}")
    acc = planes[0].mv
    for h in planes[1:]:
        acc = wedge(acc, h.mv)
    _nonzero_or_raise(acc, [h.mv for h in planes], tol, "meet")
    return as_object(acc, tol)


def _mv(a: GeometricObject | Multivector) -> Multivector:
    return a.mv if isinstance(a, GeometricObject) else a


def classify_object(a: GeometricObject | Multivector, tol: float = DEFAULT_TOL) -> ObjectClass:
    mv = _mv(a)
    scale = mv.max_abs()
    if scale == 0.0:
        raise InvalidObject("zero object cannot be classified")
    split = euclidean_split(mv)
    return ObjectClass(
        finite=split.euclid.max_abs() > tol * scale,
        through_origin=split.ideal.max_abs() <= tol * scale,
    )


def proportional(
    a: GeometricObject | Multivector, b: GeometricObject | Multivector, tol: float = DEFAULT_TOL
) -> Proportionality:
    """Least-squares ``factor`` with ``B ~= factor * A``."""
    at, bt = _mv(a).terms, _mv(b).terms
    aa = sum(c * c for c in at.values())
    if aa == 0.0:
        raise InvalidObject("reference multivector is zero")
    factor = sum(c * bt.get(m, 0.0) for m, c in at.items()) / aa
    bmax = max(map(abs, bt.values()), default=0.0)
    if bmax == 0.0:
        return Proportionality(0.0, 0.0, True)
    gap = max(abs(bt.get(m, 0.0) - factor * at.get(m, 0.0)) for m in at.keys() | bt.keys())
    residual = gap / bmax
    return Proportionality(factor, residual, residual <= tol)


def _lex_key(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def unitize(a: GeometricObject | Multivector, tol: float = DEFAULT_TOL):
    """Scale to unit Euclidean (or, for ideal objects, ideal) coefficient norm.

    The sign is fixed so that the first significant coefficient, in
    lexicographic order of index tuples, is positive.  Returns the same
    type it was given.
    """
    mv = _mv(a)
    if mv.is_zero():
        raise InvalidObject("cannot unitize a zero object")
    split = euclidean_split(mv)
    if classify_object(mv, tol).finite:
        norm = split.euclid.norm2()
    else:
        norm = split.ideal.norm2()
    threshold = 1e-12 * mv.max_abs()
    lead = next(
        c for m, c in sorted(mv.terms.items(), key=lambda t: _lex_key(t[0])) if abs(c) > threshold
    )
    out = mv.scale((1.0 if lead > 0 else -1.0) / norm)
    if isinstance(a, GeometricObject):
        return GeometricObject(out, a.role, a.grade)
    return out


def incident(a: GeometricObject, b: GeometricObject, tol: float = DEFAULT_TOL) -> bool:
    """Whether a point lies in a flat or hyperplane (``X v P = 0``)."""
    if a.role is Role.POINT:
        a, b = b, a
    if b.role is not Role.POINT:
        raise InvalidObject("incidence test expects one point")
    j = regressive(a.mv, b.mv)
    return j.max_abs() <= tol * a.mv.max_abs() * b.mv.max_abs()


def describe(mv: Multivector) -> dict[str, float]:
    return {blade_name(m): c for m, c in mv}
