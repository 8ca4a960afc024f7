"""Bi-order on the group of the connected sum of three projective planes.

``G = <a, b, c | a b a^-1 b^-1 = c^2>``. Exponent sums in ``a`` and ``b`` give
``psi: G -> Z^2`` whose kernel ``F`` is free on
``x_{i,j} = a^i b^j c b^-j a^-i``. Elements are compared by the lexicographic
order on ``Z^2`` first and, inside ``F``, by the Magnus order with the
variables ``X_{i,j}`` sorted lexicographically in ``(i, j)``.

Kernel words use the lattice pairs ``(i, j)`` themselves as generator ids.
"""

from __future__ import annotations

from typing import Iterable

from .magnus import Cmp, magnus_sign
from .words import Word, parse_word

__all__ = [
    "SURFACE_GENERATORS",
    "psi",
    "schreier_rewrite",
    "substitute_kernel",
    "normal_form",
    "surface_compare",
    "parse_surface_word",
]

SURFACE_GENERATORS = ("a", "b", "c")
RELATOR = parse_word("a*b*a^-1*b^-1*c^-2")


def parse_surface_word(text: str) -> Word:
    return parse_word(text, SURFACE_GENERATORS)


def _check(g: Iterable[tuple[str, int]]) -> Word:
    g = Word(g)
    bad = g.generators() - set(SURFACE_GENERATORS)
    if bad:
        raise ValueError(f"generators {sorted(bad)} not in {{a, b, c}}")
    return g


def psi(g: Iterable[tuple[str, int]]) -> tuple[int, int]:
    """Exponent sums of ``a`` and ``b``."""
    m = n = 0
    for gen, e in _check(g):
        if gen == "a":
            m += e
        elif gen == "b":
            n += e
    return m, n


def _a_edge(i: int, j: int) -> list[tuple[tuple[int, int], int]]:
    """Kernel word for ``a^i b^j a b^-j a^-(i+1)``.

    The relator conjugated by ``a^i b^j`` forces these to be products of squares
    of the ``x_{i,k}``.
    """
    if j > 0:
        return [((i, k), -2) for k in range(j - 1, -1, -1)]
    if j < 0:
        return [((i, k), 2) for k in range(j, 0)]
    return []


def schreier_rewrite(g: Iterable[tuple[str, int]]) -> Word:
    """Rewrite an element of ``ker psi`` as a word in the ``x_{i,j}``.

    Uses the transversal ``{a^i b^j}``; a ``c`` letter read at prefix
    coordinates ``(i, j)`` becomes ``x_{i,j}``.
    """
    g = _check(g)
    if psi(g) != (0, 0):
        raise ValueError(f"{g} is not in the kernel (psi = {psi(g)})")
    i = j = 0
    out: list = []
    for gen, sign in g.letters():
        if gen == "a":
            if sign > 0:
                out += _a_edge(i, j)
                i += 1
            else:
                i -= 1
                out += [(x, -e) for x, e in reversed(_a_edge(i, j))]
        elif gen == "b":
            j += sign
        else:
            out.append(((i, j), sign))
    return Word(out)


def substitute_kernel(k: Iterable[tuple[tuple[int, int], int]]) -> Word:
    """Map each ``x_{i,j}`` back to ``a^i b^j c b^-j a^-i``."""
    out: list = []
    for (i, j), e in Word(k):
        out += [("a", i), ("b", j), ("c", e), ("b", -j), ("a", -i)]
    return Word(out)


def normal_form(g: Iterable[tuple[str, int]]) -> tuple[Word, tuple[int, int]]:
    """``g = k * a^m b^n`` with ``k`` a reduced kernel word; returns ``(k, (m, n))``."""
    g = _check(g)
    m, n = psi(g)
    k = schreier_rewrite(g * Word([("b", -n), ("a", -m)]))
    return k, (m, n)


def surface_compare(g1: Iterable[tuple[str, int]], g2: Iterable[tuple[str, int]]) -> Cmp:
    """Bi-invariant comparison in ``G``: ``g1 < g2`` iff ``g1^-1 g2`` is positive."""
    d = _check(g1).inverse() * _check(g2)
    m, n = psi(d)
    if (m, n) != (0, 0):
        return Cmp.LT if (m, n) > (0, 0) else Cmp.GT
    sign = magnus_sign(schreier_rewrite(d))
    return Cmp(-int(sign))
