"""Basis-blade arithmetic and the product family of R_{n,0,1}.

Blades are bitmasks over the generators ``e_0 .. e_n`` with bit 0 standing
for the null generator ``e_0``.  Canonical factor order is ascending index,
so ``0b0110`` is ``e_12`` and ``0b1011`` is ``e_013``.

A :class:`Multivector` is a sparse, immutable mapping ``mask -> float``.
Only exact zeros are pruned; no epsilon cleanup happens at this level.

``inner`` is the grade-``|r - s|`` part of each homogeneous pair (the
"fat dot" restricted to matched grades).  Callers in this package only
apply it to proportional same-grade blades, where every common inner
product convention agrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Signature",
    "Multivector",
    "SignatureMismatch",
    "grade_of",
    "blade_name",
    "parse_blade_name",
    "reorder_sign",
    "blade_geometric_product",
    "geometric_product",
    "grade_select",
    "wedge",
    "inner",
    "commutator",
    "commutator_direct",
    "involution",
    "reverse",
    "grade_involution",
    "pseudoscalars",
]

# Index characters for blade names; indices >= 10 use letters.
_INDEX_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"


class SignatureMismatch(ValueError):
    """Two multivectors from different algebras were combined."""


@dataclass(frozen=True)
class Signature:
    """The algebra R_{n,0,1}: ``n`` Euclidean generators plus ``e_0``."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"Euclidean dimension must be a positive integer, got {self.n!r}")

    @property
    def generators(self) -> int:
        return self.n + 1

    @property
    def max_grade(self) -> int:
        return self.n + 1

    @property
    def full_mask(self) -> int:
        return (1 << (self.n + 1)) - 1

    @property
    def euclidean_mask(self) -> int:
        return self.full_mask & ~1

    def metric(self, i: int, j: int) -> int:
        if i != j:
            return 0
        return 0 if i == 0 else 1

    def is_valid(self, mask: int) -> bool:
        return 0 <= mask <= self.full_mask

    def blades(self, grade: int | None = None) -> list[int]:
        """All basis blade masks, optionally restricted to one grade."""
        masks = range(self.full_mask + 1)
        if grade is None:
            return list(masks)
        return [m for m in masks if grade_of(m) == grade]


def grade_of(mask: int) -> int:
    return mask.bit_count()


def _indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def blade_name(mask: int) -> str:
    """``0b0110 -> 'e12'``; the scalar blade is ``'1'``."""
    if mask == 0:
        return "1"
    return "e" + "".join(_INDEX_CHARS[i] for i in _indices(mask))


def parse_blade_name(name: str, sig: Signature) -> int:
    """Inverse of :func:`blade_name`; indices must be strictly ascending."""
    if name == "1":
        return 0
    if len(name) < 2 or name[0] != "e":
        raise ValueError(f"blade name {name!r} must look like 'e012'")
    mask = 0
    last = -1
    for ch in name[1:]:
        idx = _INDEX_CHARS.find(ch.lower())
        if idx < 0:
            raise ValueError(f"bad index character {ch!r} in blade name {name!r}")
        if idx <= last:
            raise ValueError(f"blade name {name!r} is not strictly ascending")
        if idx > sig.n:
            raise ValueError(f"index {idx} in {name!r} exceeds dimension n={sig.n}")
        mask |= 1 << idx
        last = idx
    return mask


@lru_cache(maxsize=None)
def reorder_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenated factor lists of ``e_a e_b``."""
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_geometric_product(j: int, k: int, sig: Signature | None = None) -> tuple[int, int]:
    """Cayley rule: ``sign * e_result == e_j e_k``.

    The metric only enters through ``e_0^2 = 0`` (the other generators square
    to 1), so ``sig`` is accepted for validation and otherwise unused.
    """
    if sig is not None and not (sig.is_valid(j) and sig.is_valid(k)):
        raise ValueError(f"blade masks {j:#b}, {k:#b} invalid for n={sig.n}")
    if j & k & 1:
        return 0, 0
    return reorder_sign(j, k), j ^ k


class Multivector:
    """Immutable sparse multivector tied to a :class:`Signature`.

    Supports ``+ - *`` (geometric product), ``^`` (wedge), ``|`` (inner),
    ``~`` (reverse) and scalar multiplication/division.
    """

    __slots__ = ("sig", "_terms")

    def __init__(self, sig: Signature, terms: Mapping[int, float] | None = None):
        clean: dict[int, float] = {}
        if terms:
            full = sig.full_mask
            for mask, coeff in terms.items():
                if not (0 <= mask <= full):
                    raise ValueError(f"blade mask {mask:#b} invalid for n={sig.n}")
                c = float(coeff)
                if not math.isfinite(c):
                    raise ValueError(f"non-finite coefficient {c} on {blade_name(mask)}")
                if c != 0.0:
                    clean[mask] = c
        self.sig = sig
        self._terms = clean

    @classmethod
    def _trusted(cls, sig: Signature, terms: dict[int, float]) -> "Multivector":
        # Internal fast path: caller guarantees valid masks and no zeros.
        obj = cls.__new__(cls)
        obj.sig = sig
        obj._terms = terms
        if not all(map(math.isfinite, terms.values())):
            raise ValueError("operation produced a non-finite coefficient")
        return obj

    # construction helpers

    @classmethod
    def scalar(cls, sig: Signature, value: float = 1.0) -> "Multivector":
        return cls(sig, {0: value})

    @classmethod
    def blade(cls, sig: Signature, mask: int | str, coeff: float = 1.0) -> "Multivector":
        if isinstance(mask, str):
            mask = parse_blade_name(mask, sig)
        return cls(sig, {mask: coeff})

    @classmethod
    def basis_vector(cls, sig: Signature, i: int, coeff: float = 1.0) -> "Multivector":
        if not 0 <= i <= sig.n:
            raise ValueError(f"generator index {i} out of range for n={sig.n}")
        return cls(sig, {1 << i: coeff})

    @classmethod
    def vector(cls, sig: Signature, coeffs: Iterable[float]) -> "Multivector":
        """1-vector with coefficients listed as ``(a_0, a_1, ..., a_n)``."""
        coeffs = list(coeffs)
        if len(coeffs) != sig.n + 1:
            raise ValueError(f"expected {sig.n + 1} coefficients, got {len(coeffs)}")
        return cls(sig, {1 << i: c for i, c in enumerate(coeffs)})

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls._trusted(sig, {})

    # mapping-like access

    @property
    def terms(self) -> Mapping[int, float]:
        return MappingProxyType(self._terms)

    def __getitem__(self, mask: int | str) -> float:
        if isinstance(mask, str):
            mask = parse_blade_name(mask, self.sig)
        return self._terms.get(mask, 0.0)

    def __iter__(self) -> Iterator[tuple[int, float]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def grades(self) -> set[int]:
        return {m.bit_count() for m in self._terms}

    def homogeneous_grade(self) -> int | None:
        """The single grade of all terms, or None for mixed/zero."""
        g = self.grades()
        return g.pop() if len(g) == 1 else None

    def scalar_part(self) -> float:
        return self._terms.get(0, 0.0)

    def max_abs(self) -> float:
        return max(map(abs, self._terms.values()), default=0.0)

    def norm2(self) -> float:
        """Coefficient 2-norm (not a metric norm)."""
        return math.sqrt(sum(c * c for c in self._terms.values()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, float)):
            other = Multivector.scalar(self.sig, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def allclose(self, other: "Multivector", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        _check(self, other)
        scale = max(self.max_abs(), other.max_abs())
        diff = (self - other).max_abs()
        return diff <= atol + rtol * scale

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mask, c in self:
            name = blade_name(mask)
            parts.append(f"{c:g}" if mask == 0 else f"{c:g}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic

    def _coerce(self, other: object) -> "Multivector":
        if isinstance(other, Multivector):
            _check(self, other)
            return other
        if isinstance(other, (int, float)):
            return Multivector.scalar(self.sig, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0.0) + c
            if v == 0.0:
                out.pop(m, None)
            else:
                out[m] = v
        return Multivector._trusted(self.sig, out)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector._trusted(self.sig, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: float) -> "Multivector":
        s = float(s)
        if s == 0.0:
            return Multivector.zero(self.sig)
        return Multivector._trusted(
            self.sig, {m: v for m, c in self._terms.items() if (v := c * s) != 0.0}
        )

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(other)
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(1.0 / other)
        return NotImplemented

    def __xor__(self, other):
        return wedge(self, other)

    def __or__(self, other):
        return inner(self, other)

    def __invert__(self) -> "Multivector":
        return reverse(self)

    def grade(self, k: int) -> "Multivector":
        return grade_select(self, k)


def _check(a: Multivector, b: Multivector) -> None:
    if a.sig != b.sig:
        raise SignatureMismatch(f"cannot combine n={a.sig.n} with n={b.sig.n}")


# keep-filter -> {(j, k): signed factor, 0 when the pair is dropped}
_PAIR_CACHE: dict = {}


def _bilinear(a: Multivector, b: Multivector, keep) -> Multivector:
    """Distribute over term pairs; ``keep(j, k, result)`` filters blades."""
    _check(a, b)
    table = _PAIR_CACHE.setdefault(keep, {})
    out: dict[int, float] = {}
    bterms = b._terms.items()
    for j, cj in a._terms.items():
        for k, ck in bterms:
            sign = table.get((j, k))
            if sign is None:
                if j & k & 1 or (keep is not None and not keep(j, k, j ^ k)):
                    sign = 0
                else:
                    sign = reorder_sign(j, k)
                table[(j, k)] = sign
            if sign:
                r = j ^ k
                out[r] = out.get(r, 0.0) + sign * cj * ck
    return Multivector._trusted(a.sig, {m: c for m, c in out.items() if c != 0.0})


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return _bilinear(a, b, None)


def grade_select(a: Multivector, k: int) -> Multivector:
    return Multivector._trusted(a.sig, {m: c for m, c in a._terms.items() if m.bit_count() == k})


def _wedge_keep(j: int, k: int, r: int) -> bool:
    return not (j & k)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    # e_0 wedges like any other generator; no metric contraction here.
    return _bilinear(a, b, _wedge_keep)


def _inner_keep(j: int, k: int, r: int) -> bool:
    return r.bit_count() == abs(j.bit_count() - k.bit_count())


def inner(a: Multivector, b: Multivector) -> Multivector:
    return _bilinear(a, b, _inner_keep)


def _anticommuting(r: int, s: int, k: int) -> bool:
    return (k * (k - 1) // 2 + r * (r - 1) // 2 + s * (s - 1) // 2) % 2 == 1


def _commutator_keep(j: int, k: int, r: int) -> bool:
    return _anticommuting(j.bit_count(), k.bit_count(), r.bit_count())


def commutator(a: Multivector, b: Multivector) -> Multivector:
    """``A x B``: the grades of ``AB`` that fail the commuting-parity rule."""
    return _bilinear(a, b, _commutator_keep)


def commutator_direct(a: Multivector, b: Multivector) -> Multivector:
    """``(AB - BA) / 2`` evaluated literally."""
    return (geometric_product(a, b) - geometric_product(b, a)).scale(0.5)


def _grade_sign_map(a: Multivector, sign_of_grade) -> Multivector:
    return Multivector._trusted(
        a.sig, {m: c * sign_of_grade(m.bit_count()) for m, c in a._terms.items()}
    )


def _reverse_sign(k: int) -> int:
    return -1 if (k * (k - 1) // 2) % 2 else 1


def _involution_sign(k: int) -> int:
    return -1 if k % 2 else 1


def reverse(a: Multivector) -> Multivector:
    return _grade_sign_map(a, _reverse_sign)


def grade_involution(a: Multivector) -> Multivector:
    return _grade_sign_map(a, _involution_sign)


def involution(a: Multivector, kind: str) -> Multivector:
    if kind == "reverse":
        return reverse(a)
    if kind == "grade_involution":
        return grade_involution(a)
    raise ValueError(f"unknown involution {kind!r}")


def pseudoscalars(sig: Signature) -> tuple[Multivector, Multivector]:
    """``(I, I_E)`` with ``I = e_{01..n}`` and ``I_E = e_{1..n}``."""
    return (
        Multivector._trusted(sig, {sig.full_mask: 1.0}),
        Multivector._trusted(sig, {sig.euclidean_mask: 1.0}),
    )
