"""Hodge dual, its inverse and the dualized products.

The dual sends ``e_J`` to ``s_J e_{J^c}`` with the sign fixed by
``e_J ^ e_J* = I``.  Applying it twice multiplies a grade-``k`` blade by
``(-1)^(k(n+1-k))``, so the double dual is *not* the identity in general.
The dualized products below apply :func:`hodge_dual` on the outside
exactly as written and never substitute :func:`hodge_undual`.
"""

from __future__ import annotations

from functools import lru_cache

from .ga_core import (
    Multivector,
    Signature,
    commutator,
    geometric_product,
    grade_involution,
    inner,
    pseudoscalars,
    reorder_sign,
    reverse,
    wedge,
)

__all__ = [
    "dual_sign_table",
    "hodge_dual",
    "hodge_dual_closed_form",
    "hodge_undual",
    "double_dual_sign",
    "regressive",
    "inner_dual",
    "commutator_dual",
]


@lru_cache(maxsize=None)
def _dual_table(n: int) -> tuple[tuple[int, int], ...]:
    full = (1 << (n + 1)) - 1
    return tuple((reorder_sign(m, full ^ m), full ^ m) for m in range(full + 1))


@lru_cache(maxsize=None)
def _undual_table(n: int) -> tuple[tuple[int, int], ...]:
    # dual(s * e_{K^c}) = s * s_{K^c} * e_K, so s = s_{K^c}.
    full = (1 << (n + 1)) - 1
    table = _dual_table(n)
    return tuple((table[full ^ m][0], full ^ m) for m in range(full + 1))


def dual_sign_table(sig: Signature) -> dict[int, tuple[int, int]]:
    """``mask -> (sign, complement mask)`` for every basis blade."""
    return dict(enumerate(_dual_table(sig.n)))


def _apply(a: Multivector, table) -> Multivector:
    return Multivector._trusted(
        a.sig, {table[m][1]: table[m][0] * c for m, c in a.terms.items()}
    )


def hodge_dual(a: Multivector) -> Multivector:
    return _apply(a, _dual_table(a.sig.n))


def hodge_undual(a: Multivector) -> Multivector:
    return _apply(a, _undual_table(a.sig.n))


def double_dual_sign(k: int, n: int) -> int:
    """Constant ``c`` with ``(A*)* = c A`` for grade-``k`` A."""
    return -1 if (k * (n + 1 - k)) % 2 else 1


def hodge_dual_closed_form(a: Multivector) -> Multivector:
    """``rev(A_I) I_E + e_0 inv(rev(A_E)) I_E`` from the Euclidean split."""
    from .objects import euclidean_split

    split = euclidean_split(a)
    _, i_e = pseudoscalars(a.sig)
    e0 = Multivector.basis_vector(a.sig, 0)
    ideal_term = geometric_product(reverse(split.ideal), i_e)
    euclid_term = geometric_product(e0, geometric_product(grade_involution(reverse(split.euclid)), i_e))
    return ideal_term + euclid_term


def regressive(a: Multivector, b: Multivector) -> Multivector:
    """Join: ``(A* ^ B*)*``."""
    return hodge_dual(wedge(hodge_dual(a), hodge_dual(b)))


def inner_dual(a: Multivector, b: Multivector) -> Multivector:
    return hodge_dual(inner(hodge_dual(a), hodge_dual(b)))


def commutator_dual(a: Multivector, b: Multivector) -> Multivector:
    return hodge_dual(commutator(hodge_dual(a), hodge_dual(b)))
