"""Classical cross-ratios and a brute-force Cayley oracle.

Nothing here calls the cross-ratio dispatch; the functions work on plain
numbers (or on objects only to read coordinates out of them) so they can
serve as independent ground truth.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .ga_core import Multivector, Signature, wedge
from .objects import DEFAULT_TOL, GeometricObject, Role, euclidean_split, point_coords, point_weight

__all__ = [
    "Homog2",
    "PencilAngles",
    "OracleError",
    "classical_cr_determinant",
    "classical_cr_affine",
    "affine_ratio_homogeneous",
    "sine_cr",
    "line_parameters",
    "pencil_angles",
    "naive_blade_product",
    "det3_cross_ratio",
]


class OracleError(ValueError):
    pass


class Homog2(NamedTuple):
    x: float
    w: float


class PencilAngles(NamedTuple):
    a1: float
    a2: float
    a3: float
    a4: float


def _extended_ratio(num: float, den: float) -> float:
    if den == 0.0:
        if num == 0.0:
            raise OracleError("indeterminate 0/0 cross-ratio")
        return math.copysign(math.inf, num)
    return num / den


def _det2(p: Homog2, q: Homog2) -> float:
    return p[0] * q[1] - q[0] * p[1]


def classical_cr_determinant(p: Sequence[Homog2 | tuple[float, float]]) -> float:
    """Cross-ratio on P^1 from 2x2 determinants ``|xi xj| = xi wj - xj wi``."""
    p = [Homog2(*q) for q in p]
    for q in p:
        if q.x == 0.0 and q.w == 0.0:
            raise OracleError("(0, 0) is not a projective point")
    num = _det2(p[0], p[2]) * _det2(p[1], p[3])
    den = _det2(p[0], p[3]) * _det2(p[1], p[2])
    return _extended_ratio(num, den)


def classical_cr_affine(t: Sequence[float]) -> float:
    t1, t2, t3, t4 = (float(x) for x in t)
    return _extended_ratio((t1 - t3) * (t2 - t4), (t1 - t4) * (t2 - t3))


def affine_ratio_homogeneous(p: Sequence[Homog2 | tuple[float, float]]) -> float:
    """``|x1 x3| / |x2 x3|`` on raw homogeneous coordinates.

    Equals the affine ratio only when every ``w_i = 1``; other
    representatives rescale it by ``w1 / w2``.
    """
    p = [Homog2(*q) for q in p]
    return _extended_ratio(_det2(p[0], p[2]), _det2(p[1], p[2]))


def sine_cr(a: Sequence[float]) -> float:
    a1, a2, a3, a4 = (float(x) for x in a)
    num = math.sin(a1 - a3) * math.sin(a2 - a4)
    den = math.sin(a1 - a4) * math.sin(a2 - a3)
    return _extended_ratio(num, den)


def det3_cross_ratio(x0, xs) -> float:
    """Pencil cross-ratio from 3x3 determinants ``|x0 xi xj|`` (homogeneous 2D)."""
    x0 = np.asarray(x0, float)
    d = lambda i, j: float(np.linalg.det(np.column_stack([x0, xs[i], xs[j]])))
    return _extended_ratio(d(0, 2) * d(1, 3), d(0, 3) * d(1, 2))


def line_parameters(objs: Sequence[GeometricObject], tol: float = DEFAULT_TOL) -> list[float]:
    """Signed positions ``t_i`` of four collinear finite points.

    Reference point is the first point, direction the unit vector to the
    farthest other point.
    """
    pts = np.array([point_coords(o) for o in objs], float)
    rel = pts - pts[0]
    far = int(np.argmax(np.linalg.norm(rel, axis=1)))
    span = np.linalg.norm(rel[far])
    if span == 0.0:
        raise OracleError("points coincide")
    d = rel[far] / span
    t = rel @ d
    off = np.linalg.norm(rel - np.outer(t, d), axis=1)
    if off.max() > tol * max(1.0, span, np.abs(pts).max()):
        raise OracleError(f"points are not collinear (offset {off.max():.3g})")
    return [float(x) for x in t]


# Euclidean blades as subspaces.


def _euclid_indices(sig: Signature) -> list[int]:
    return list(range(1, sig.n + 1))


def _blade_subspace(blade: Multivector) -> np.ndarray:
    """Orthonormal basis (rows) of ``{v : v ^ B = 0}`` for a Euclidean blade."""
    sig = blade.sig
    k = blade.homogeneous_grade()
    cols = []
    for i in _euclid_indices(sig):
        w = wedge(Multivector.basis_vector(sig, i), blade)
        cols.append(w)
    masks = sorted({m for w in cols for m in w.terms})
    mat = np.array([[w[m] for w in cols] for m in masks], float).reshape(len(masks), sig.n)
    if mat.size == 0:
        return np.eye(sig.n)
    _, s, vt = np.linalg.svd(mat)
    scale = s.max() if s.size else 1.0
    rank = int((s > 1e-9 * scale).sum())
    basis = vt[rank:]
    if k is not None and basis.shape[0] != k:
        raise OracleError(f"blade subspace has dimension {basis.shape[0]}, expected {k}")
    return basis


def _null_space(mat: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    if mat.shape[0] == 0:
        return np.eye(mat.shape[1])
    _, s, vt = np.linalg.svd(mat)
    rank = int((s > tol * (s.max() if s.size else 1.0)).sum())
    return vt[rank:]


def pencil_angles(objs: Sequence[GeometricObject], tol: float = DEFAULT_TOL) -> PencilAngles:
    """Angles of four members of an angular pencil.

    Uses the Euclidean parts (or the ideal parts when every object is ideal)
    as subspaces of R^n.  Their common subspace is removed; the remaining
    unit directions span a 2-plane in which the angles are measured.
    Angles are defined up to a common offset and per-member shifts by pi.
    """
    if len(objs) != 4:
        raise OracleError("need four objects")
    if objs[0].role is Role.POINT:
        # undualized points: vector part is the direction/position vector
        parts = []
        for o in objs:
            split = euclidean_split(o.mv)
            if split.euclid.max_abs() > tol * o.mv.max_abs():
                raise OracleError("angular point pencils must consist of ideal points")
        vecs = np.array([_ideal_point_direction(o) for o in objs])
        return _angles_from_directions(vecs)

    splits = [euclidean_split(o.mv) for o in objs]
    use_euclid = all(s.euclid.max_abs() > tol * o.mv.max_abs() for s, o in zip(splits, objs))
    if use_euclid:
        parts = [s.euclid for s in splits]
    elif all(s.euclid.max_abs() <= tol * o.mv.max_abs() for s, o in zip(splits, objs)):
        parts = [s.ideal for s in splits]
    else:
        raise OracleError("mixed finite and ideal members have no angular pencil")

    subspaces = [_blade_subspace(p) for p in parts]
    # common subspace: vectors lying in every member subspace
    projectors = [np.eye(p.sig.n) - b.T @ b for p, b in zip(parts, subspaces)]
    common = _null_space(np.vstack(projectors))
    dirs = []
    for b in subspaces:
        rest = b - (b @ common.T) @ common if common.size else b
        _, s, vt = np.linalg.svd(rest)
        if s.size == 0 or s[0] < 1e-9:
            raise OracleError("member subspace lies in the common subspace")
        dirs.append(vt[0])
    return _angles_from_directions(np.array(dirs))


def _ideal_point_direction(o: GeometricObject) -> np.ndarray:
    from .objects import ideal_direction

    if point_weight(o) != 0.0 and abs(point_weight(o)) > 1e-12 * o.mv.max_abs():
        raise OracleError("not an ideal point")
    return np.array(ideal_direction(o), float)


def _angles_from_directions(vecs: np.ndarray) -> PencilAngles:
    vecs = vecs / np.linalg.norm(vecs, axis=1, keepdims=True)
    u = vecs[0]
    rest = vecs - np.outer(vecs @ u, u)
    j = int(np.argmax(np.linalg.norm(rest, axis=1)))
    if np.linalg.norm(rest[j]) < 1e-9:
        raise OracleError("directions do not span a plane")
    v = rest[j] / np.linalg.norm(rest[j])
    resid = vecs - np.outer(vecs @ u, u) - np.outer(vecs @ v, v)
    if np.abs(resid).max() > 1e-7:
        raise OracleError("directions are not coplanar; no common pencil")
    return PencilAngles(*(float(math.atan2(x @ v, x @ u)) for x in vecs))


def naive_blade_product(j: Sequence[int], k: Sequence[int], sig: Signature | None = None):
    """Ordered-factor product of two ascending generator lists.

    Concatenate, bubble sort with a sign flip per adjacent swap, then
    contract equal neighbours through the metric (``e_0 e_0 = 0``).
    """
    factors = list(j) + list(k)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(factors) - 1):
            if factors[i] > factors[i + 1]:
                factors[i], factors[i + 1] = factors[i + 1], factors[i]
                sign = -sign
                changed = True
    out: list[int] = []
    i = 0
    while i < len(factors):
        if i + 1 < len(factors) and factors[i] == factors[i + 1]:
            metric = 0 if factors[i] == 0 else 1
            if sig is not None:
                metric = sig.metric(factors[i], factors[i])
            if metric == 0:
                return 0, []
            sign *= metric
            i += 2
        else:
            out.append(factors[i])
            i += 1
    return sign, out
