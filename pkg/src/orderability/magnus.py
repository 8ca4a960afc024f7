"""Truncated Magnus series and the bi-order they induce on free groups.

A free generator ``x`` maps to ``1 + X`` in the ring of noncommutative power
series with integer coefficients. Series are compared by the coefficient of
the first monomial at which they differ, monomials being ordered by degree and
then lexicographically in the variables. Restricted to the image of the free
group this is a bi-invariant total order.
"""

from __future__ import annotations

from enum import IntEnum
from math import comb
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .words import Word

__all__ = ["Cmp", "MagnusSeries", "magnus_embed", "series_compare", "magnus_compare", "magnus_sign"]

Monomial = tuple


class Cmp(IntEnum):
    """Three-way comparison result. For series, ``EQ`` means equal up to the truncation degree."""

    LT = -1
    EQ = 0
    GT = 1


def _binomial(e: int, k: int) -> int:
    if e >= 0:
        return comb(e, k)
    return (-1) ** k * comb(-e + k - 1, k)


class MagnusSeries:
    """Sparse series truncated at ``degree``; zero coefficients are never stored."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Mapping[Monomial, int] | None = None):
        if degree < 1:
            raise ValueError("truncation degree must be >= 1")
        self.degree = degree
        self.coeffs = {tuple(m): c for m, c in (coeffs or {}).items() if c and len(m) <= degree}

    @classmethod
    def one(cls, degree: int) -> "MagnusSeries":
        return cls(degree, {(): 1})

    def mul_power(self, var: Hashable, e: int) -> "MagnusSeries":
        """Right-multiply by ``(1 + var)^e``, truncating as we go."""
        out: dict = {}
        d = self.degree
        for mono, c in self.coeffs.items():
            for k in range(d - len(mono) + 1):
                b = _binomial(e, k)
                if not b:
                    break
                key = mono + (var,) * k
                out[key] = out.get(key, 0) + c * b
        return MagnusSeries(d, out)

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        if self.degree != other.degree:
            raise ValueError("truncation degree mismatch")
        d = self.degree
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            room = d - len(m1)
            for m2, c2 in other.coeffs.items():
                if len(m2) <= room:
                    key = m1 + m2
                    out[key] = out.get(key, 0) + c1 * c2
        return MagnusSeries(d, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MagnusSeries):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def terms(self) -> list[tuple[Monomial, int]]:
        """Terms in comparison order: ascending degree, then lexicographic."""
        return sorted(self.coeffs.items(), key=lambda mc: (len(mc[0]), mc[0]))

    def degree_part(self, k: int) -> dict[Monomial, int]:
        return {m: c for m, c in self.coeffs.items() if len(m) == k}

    def __repr__(self) -> str:
        parts = []
        for mono, c in self.terms():
            name = "".join(f"X{v}" if not isinstance(v, str) else v.upper() for v in mono) or "1"
            parts.append(f"{c:+d}*{name}" if mono else f"{c:+d}")
        return f"MagnusSeries(D={self.degree}: {' '.join(parts) or '0'})"


def _var_key(variables: Sequence[Hashable] | Mapping[Hashable, Hashable] | None) -> Callable:
    if variables is None:
        return lambda g: g
    if isinstance(variables, Mapping):
        return variables.__getitem__
    index = {g: i for i, g in enumerate(variables)}
    return index.__getitem__


def magnus_embed(w: Iterable[tuple[Hashable, int]], degree: int, variables=None) -> MagnusSeries:
    """Image of ``w`` under ``x -> 1 + X``, truncated at ``degree``.

    ``variables`` fixes the variable order: a sequence (position = rank), a
    mapping generator -> sortable id, or None to use the generators themselves.
    """
    key = _var_key(variables)
    s = MagnusSeries.one(degree)
    for gen, e in Word(w):
        s = s.mul_power(key(gen), e)
    return s


def series_compare(s1: MagnusSeries, s2: MagnusSeries) -> Cmp:
    """Compare by the sign of ``s1 - s2`` at the first differing monomial."""
    if s1.degree != s2.degree:
        raise ValueError(f"truncation degree mismatch: {s1.degree} vs {s2.degree}")
    first = None
    for mono in set(s1.coeffs) | set(s2.coeffs):
        diff = s1.coeffs.get(mono, 0) - s2.coeffs.get(mono, 0)
        if diff:
            k = (len(mono), mono)
            if first is None or k < first[0]:
                first = (k, diff)
    if first is None:
        return Cmp.EQ
    return Cmp.GT if first[1] > 0 else Cmp.LT


def magnus_sign(w: Iterable[tuple[Hashable, int]], variables=None, start_degree: int = 2) -> Cmp:
    """Sign of a free group element: ``GT`` when ``w > 1``.

    The truncation degree doubles until the series differs from 1, which
    terminates because the Magnus map is injective.
    """
    w = Word(w)
    if not w:
        return Cmp.EQ
    one = {(): 1}
    d = max(1, start_degree)
    while True:
        s = magnus_embed(w, d, variables)
        if s.coeffs != one:
            return series_compare(s, MagnusSeries.one(d))
        d *= 2


def magnus_compare(w1: Iterable[tuple[Hashable, int]], w2: Iterable[tuple[Hashable, int]],
                   variables=None) -> Cmp:
    """Bi-invariant comparison of two free group words: ``w1 < w2`` iff ``w1^-1 w2 > 1``."""
    d = Word(w1).inverse() * Word(w2)
    sign = magnus_sign(d, variables)
    return Cmp(-int(sign))
