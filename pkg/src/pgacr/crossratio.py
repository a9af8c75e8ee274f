"""Configuration dispatch and the eight cross-ratio formulas.

Every configuration evaluates the same template

    {A1, A2; A3, A4} = <M13 M24>_0 / <M14 M23>_0

where ``Mij`` is the pairwise measure of the configuration: the commutator
``x`` or the commutator dual ``x*``, optionally applied to the Hodge duals
of the operands.  The operator is a pure function of the configuration
variant (:data:`OPERATORS`).

Classification decides finite/ideal status and where the common
intersection sits, then accepts the quadruple only if all six pairwise
measures are proportional to one common blade.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .duality import commutator_dual, hodge_dual, regressive
from .ga_core import Multivector, commutator, geometric_product, grade_select, inner, wedge
from .objects import (
    DEFAULT_TOL,
    GeometricObject,
    Role,
    classify_object,
    proportional,
    unitize,
)

__all__ = [
    "Product",
    "Operator",
    "Variant",
    "Configuration",
    "OPERATORS",
    "DUAL_PAIRS",
    "CrossRatioResult",
    "CrossRatioError",
    "MixedGrades",
    "NotDistinct",
    "NoCommonPencil",
    "AmbiguousConfiguration",
    "Indeterminate",
    "classify",
    "pair_measure",
    "wedge_form_measure",
    "cross_ratio",
    "affine_ratio",
    "inner_product_variant",
]


class Product(enum.Enum):
    COMMUTATOR = "×"
    COMMUTATOR_DUAL = "×⋆"


@dataclass(frozen=True)
class Operator:
    dualize_operands: bool
    product: Product

    def describe(self) -> str:
        if self.dualize_operands:
            return f"{self.product.value} on dualized operands"
        return f"{self.product.value} (no operand dual)"


class Variant(enum.Enum):
    FinitePointsCollinear = "FinitePointsCollinear"
    IdealPointsOnIdealLine = "IdealPointsOnIdealLine"
    HyperplanesMeetOffOrigin = "HyperplanesMeetOffOrigin"
    HyperplanesMeetThroughOrigin = "HyperplanesMeetThroughOrigin"
    FlatsMeetOffOrigin = "FlatsMeetOffOrigin"
    FlatsThroughOrigin = "FlatsThroughOrigin"
    FiniteFlatsParallel = "FiniteFlatsParallel"
    IdealFlatsSecant = "IdealFlatsSecant"


_X, _XD = Product.COMMUTATOR, Product.COMMUTATOR_DUAL

OPERATORS: dict[Variant, Operator] = {
    Variant.FinitePointsCollinear: Operator(False, _XD),
    Variant.IdealPointsOnIdealLine: Operator(True, _X),
    Variant.HyperplanesMeetOffOrigin: Operator(True, _XD),
    Variant.HyperplanesMeetThroughOrigin: Operator(False, _X),
    Variant.FlatsMeetOffOrigin: Operator(True, _XD),
    Variant.FlatsThroughOrigin: Operator(False, _X),
    Variant.FiniteFlatsParallel: Operator(False, _XD),
    Variant.IdealFlatsSecant: Operator(True, _X),
}

# Hodge duality exchanges the members of each pair.
DUAL_PAIRS: tuple[tuple[Variant, Variant], ...] = (
    (Variant.FinitePointsCollinear, Variant.HyperplanesMeetOffOrigin),
    (Variant.IdealPointsOnIdealLine, Variant.HyperplanesMeetThroughOrigin),
    (Variant.FlatsMeetOffOrigin, Variant.FiniteFlatsParallel),
    (Variant.FlatsThroughOrigin, Variant.IdealFlatsSecant),
)

# Human-readable rows: (object, grade label, support/configuration).
TABLE_ROWS: dict[Variant, tuple[str, str, str]] = {
    Variant.FinitePointsCollinear: ("Finite points", "n", "finite support L"),
    Variant.IdealPointsOnIdealLine: ("Ideal points", "n", "ideal support L_inf"),
    Variant.HyperplanesMeetOffOrigin: ("Hyperplanes", "1", "intersection not through origin"),
    Variant.HyperplanesMeetThroughOrigin: ("Hyperplanes", "1", "intersection through origin"),
    Variant.FlatsMeetOffOrigin: ("Flats", "k", "finite intersection not through origin"),
    Variant.FlatsThroughOrigin: ("Flats", "k", "intersection through origin"),
    Variant.FiniteFlatsParallel: ("Finite flats", "k", "ideal intersection (parallel)"),
    Variant.IdealFlatsSecant: ("Ideal flats", "k", "ideal intersection (secant)"),
}


@dataclass(frozen=True)
class Configuration:
    variant: Variant

    @property
    def operator(self) -> Operator:
        return OPERATORS[self.variant]

    @property
    def name(self) -> str:
        return self.variant.value

    @property
    def dual_partner(self) -> Variant:
        for a, b in DUAL_PAIRS:
            if self.variant is a:
                return b
            if self.variant is b:
                return a
        raise AssertionError(self.variant)


class CrossRatioError(ValueError):
    """Base class for classification and evaluation failures."""

    code = "CrossRatioError"


class MixedGrades(CrossRatioError):
    code = "MixedGrades"


class NotDistinct(CrossRatioError):
    code = "NotDistinct"


class NoCommonPencil(CrossRatioError):
    code = "NoCommonPencil"


class AmbiguousConfiguration(CrossRatioError):
    code = "AmbiguousConfiguration"


class Indeterminate(CrossRatioError):
    code = "Indeterminate"


@dataclass
class CrossRatioResult:
    value: float
    configuration: Configuration
    common_blade: Multivector
    max_residual: float
    permutation: tuple[int, ...] = (0, 1, 2, 3)
    numerator: float = 0.0
    denominator: float = 0.0
    residuals: dict[tuple[int, int], float] = field(default_factory=dict)

    def __float__(self) -> float:
        return self.value


def _apply_operator(a: Multivector, b: Multivector, op: Operator) -> Multivector:
    if op.dualize_operands:
        a, b = hodge_dual(a), hodge_dual(b)
    if op.product is Product.COMMUTATOR:
        return commutator(a, b)
    return commutator_dual(a, b)


def pair_measure(a: GeometricObject, b: GeometricObject, cfg: Configuration | Variant) -> Multivector:
    """Pairwise measurement ``Mij`` under the configuration's operator."""
    variant = cfg.variant if isinstance(cfg, Configuration) else cfg
    return _apply_operator(a.mv, b.mv, OPERATORS[variant])


def wedge_form_measure(a: GeometricObject, b: GeometricObject, cfg: Configuration | Variant) -> Multivector:
    """The per-row operator before unification (wedge/regressive forms)."""
    variant = cfg.variant if isinstance(cfg, Configuration) else cfg
    x, y = a.mv, b.mv
    if variant is Variant.FinitePointsCollinear:
        return regressive(x, y)
    if variant is Variant.IdealPointsOnIdealLine:
        return wedge(hodge_dual(x), hodge_dual(y))
    if variant is Variant.HyperplanesMeetOffOrigin:
        return regressive(hodge_dual(x), hodge_dual(y))
    if variant is Variant.HyperplanesMeetThroughOrigin:
        return wedge(x, y)
    # Flat rows use the same operator in both tables.
    return pair_measure(a, b, variant)


def _check_roles(objs: Sequence[GeometricObject]) -> None:
    if len(objs) != 4:
        raise CrossRatioError(f"expected four objects, got {len(objs)}")
    sig = objs[0].sig
    if any(o.sig != sig for o in objs):
        raise MixedGrades("objects live in different algebras")
    grades = {o.grade for o in objs}
    if len(grades) != 1 or len({o.role for o in objs}) != 1:
        raise MixedGrades(f"objects have mixed grades {sorted(o.grade for o in objs)}")


def _coincidences(objs: Sequence[GeometricObject], tol: float) -> set[tuple[int, int]]:
    same = set()
    for i, j in itertools.combinations(range(4), 2):
        a, b = objs[i].mv, objs[j].mv
        ref, other = (a, b) if a.max_abs() >= b.max_abs() else (b, a)
        if proportional(ref, other, tol).accepted:
            same.add((i, j))
    return same


def _guess_variant(
    objs: Sequence[GeometricObject], pair: tuple[int, int], tol: float
) -> Variant:
    role = objs[0].role
    classes = [classify_object(o, tol) for o in objs]
    n_ideal = sum(c.ideal for c in classes)
    a, b = objs[pair[0]].mv, objs[pair[1]].mv

    if role is Role.POINT:
        if n_ideal == 4:
            return Variant.IdealPointsOnIdealLine
        if n_ideal > 1:
            raise NoCommonPencil("a finite line carries at most one ideal point")
        return Variant.FinitePointsCollinear

    if role is Role.HYPERPLANE:
        meet = wedge(a, b)
        if classify_object(meet, tol).through_origin:
            return Variant.HyperplanesMeetThroughOrigin
        return Variant.HyperplanesMeetOffOrigin

    # intermediate flats
    if n_ideal == 4:
        return Variant.IdealFlatsSecant
    generator = commutator(a, b)
    if generator.is_zero() or generator.max_abs() <= tol * a.max_abs() * b.max_abs():
        raise NoCommonPencil("flats do not share a pencil (vanishing commutator)")
    if classify_object(generator, tol).ideal:
        return Variant.FiniteFlatsParallel
    if n_ideal:
        raise NoCommonPencil("a secant pencil of flats cannot contain an ideal flat")
    n_origin = sum(c.through_origin for c in classes)
    if n_origin == 4:
        return Variant.FlatsThroughOrigin
    if n_origin <= 1:
        return Variant.FlatsMeetOffOrigin
    # Two origin flats force the common intersection through the origin,
    # which puts all four through it.
    raise AmbiguousConfiguration(
        f"{n_origin} of 4 secant flats pass through the origin; expected 0, 1 or 4"
    )


@dataclass
class _Pencil:
    cfg: Configuration
    measures: dict[tuple[int, int], Multivector]
    common: Multivector
    residuals: dict[tuple[int, int], float]


def _pencil(objs: Sequence[GeometricObject], tol: float, allow_coincident: bool) -> _Pencil:
    _check_roles(objs)
    same = _coincidences(objs, tol)
    if same and not allow_coincident:
        raise NotDistinct(f"objects {sorted(same)} are proportional (not distinct)")
    distinct = [p for p in itertools.combinations(range(4), 2) if p not in same]
    if not distinct:
        raise NotDistinct("all four objects coincide")

    # Seed the guess with the best-conditioned distinct pair.
    seed = max(distinct, key=lambda p: objs[p[0]].mv.max_abs() * objs[p[1]].mv.max_abs())
    variant = _guess_variant(objs, seed, tol)
    cfg = Configuration(variant)

    measures: dict[tuple[int, int], Multivector] = {}
    for i, j in itertools.combinations(range(4), 2):
        if (i, j) in same:
            measures[(i, j)] = Multivector.zero(objs[0].sig)
        else:
            measures[(i, j)] = pair_measure(objs[i], objs[j], cfg)

    ref_pair = max(distinct, key=lambda p: measures[p].max_abs())
    ref = measures[ref_pair]
    scale = objs[ref_pair[0]].mv.max_abs() * objs[ref_pair[1]].mv.max_abs()
    if ref.max_abs() <= tol * scale:
        raise Indeterminate(
            f"{variant.value}: pairwise measures vanish; the operator has no signal here"
        )
    common = unitize(ref, tol)
    if abs(_scalar_product(common, common)) <= tol:
        # e.g. secant flats whose rotation axis passes through the origin
        raise Indeterminate(
            f"{variant.value}: the common blade is null (squares to zero); "
            "this operator cannot measure the configuration"
        )
    residuals = {}
    for p in distinct:
        pr = proportional(common, measures[p], tol)
        residuals[p] = pr.residual
        if not pr.accepted:
            raise NoCommonPencil(
                f"{variant.value}: measure {p} not proportional to the common blade "
                f"(residual {pr.residual:.3g} > tol {tol:g})"
            )
    return _Pencil(cfg, measures, common, residuals)


def classify(
    objs: Sequence[GeometricObject], tol: float = DEFAULT_TOL, allow_coincident: bool = False
) -> Configuration:
    return _pencil(objs, tol, allow_coincident).cfg


def _ratio(num: float, den: float) -> float:
    if den == 0.0:
        if num == 0.0:
            raise Indeterminate("cross-ratio is 0/0 (coincident objects)")
        return math.copysign(math.inf, num)
    return num / den


def _scalar_product(a: Multivector, b: Multivector) -> float:
    return grade_select(geometric_product(a, b), 0).scalar_part()


def cross_ratio(
    objs: Sequence[GeometricObject], tol: float = DEFAULT_TOL, allow_coincident: bool = False
) -> CrossRatioResult:
    """``{A1, A2; A3, A4}`` for four objects of one pencil.

    With ``allow_coincident`` repeated objects are tolerated; the affected
    measures are exactly zero, giving 0, a signed infinity, or
    :class:`Indeterminate` for 0/0.
    """
    pen = _pencil(objs, tol, allow_coincident)
    m = pen.measures
    num = _scalar_product(m[(0, 2)], m[(1, 3)])
    den = _scalar_product(m[(0, 3)], m[(1, 2)])
    used = [(0, 2), (1, 3), (0, 3), (1, 2)]
    return CrossRatioResult(
        value=_ratio(num, den),
        configuration=pen.cfg,
        common_blade=pen.common,
        max_residual=max((pen.residuals.get(p, 0.0) for p in used), default=0.0),
        numerator=num,
        denominator=den,
        residuals=pen.residuals,
    )


def inner_product_variant(objs: Sequence[GeometricObject], tol: float = DEFAULT_TOL) -> float:
    """Finite-point cross-ratio with inner products in place of geometric products."""
    pen = _pencil(objs, tol, False)
    if pen.cfg.variant is not Variant.FinitePointsCollinear:
        raise NoCommonPencil(f"expected collinear finite points, got {pen.cfg.name}")
    m = pen.measures
    num = inner(m[(0, 2)], m[(1, 3)]).scalar_part()
    den = inner(m[(0, 3)], m[(1, 2)]).scalar_part()
    return _ratio(num, den)


def affine_ratio(
    objs: Sequence[GeometricObject], tol: float = DEFAULT_TOL, allow_coincident: bool = False
) -> CrossRatioResult:
    """Cross-ratio with one ideal point, moved to the last slot first.

    The finite points keep their relative order; the applied permutation is
    reported on the result.  Inputs are unitized before evaluation.
    """
    if len(objs) != 4 or any(o.role is not Role.POINT for o in objs):
        raise MixedGrades("affine ratio expects four points")
    ideal = [i for i, o in enumerate(objs) if classify_object(o, tol).ideal]
    if len(ideal) != 1:
        raise NoCommonPencil(f"affine ratio needs exactly one ideal point, got {len(ideal)}")
    perm = tuple(i for i in range(4) if i != ideal[0]) + (ideal[0],)
    ordered = [unitize(objs[i], tol) for i in perm]
    res = cross_ratio(ordered, tol, allow_coincident)
    if res.configuration.variant is not Variant.FinitePointsCollinear:
        raise NoCommonPencil(f"expected a finite support line, got {res.configuration.name}")
    res.permutation = perm
    return res
