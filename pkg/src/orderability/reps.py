"""SL(2, R) representations of the figure-eight knot group.

The knot group is ``<x, y | w x = y w>`` with ``w = x y^-1 x^-1 y``. For
``s >= (1 + sqrt 5)/2`` the family ``phi_s`` sends ``x`` to ``diag(s, 1/s)``;
the longitude ``lambda = y x^-1 y^-1 x^2 y^-1 x^-1 y`` then maps to a diagonal
matrix whose (1,1) entry ``zeta_B(s)`` is given in closed form.

Slope convention: ``g(s) = ln zeta_B / ln zeta_A`` is nonnegative, vanishes at
the golden ratio and tends to 4. ``phi_s`` itself kills ``mu^p lambda^q`` for
``p/q = -g(s)``; composing with the amphicheiral symmetry (which inverts the
longitude) realizes ``+g(s)``. :func:`solve_slope` reports the meridian and
longitude eigenvalues of whichever representation factors through the
requested filling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .words import Word, parse_word

__all__ = [
    "GOLDEN",
    "t_of_s",
    "phi_matrices",
    "evaluate_word",
    "relation_residual",
    "meridian_matrix",
    "longitude_matrix",
    "commutator_residual",
    "zeta_values",
    "g_of_s",
    "is_reducible",
    "SlopeRoot",
    "solve_slope",
    "filling_residual",
]

GOLDEN = (1 + math.sqrt(5)) / 2
RADICAND_CLAMP = 1e-12

W = parse_word("x*y^-1*x^-1*y")
MERIDIAN = parse_word("x")
LONGITUDE = parse_word("y*x^-1*y^-1*x^2*y^-1*x^-1*y")


def _check_domain(s: float) -> None:
    if not math.isfinite(s) or s < GOLDEN:
        raise ValueError(f"s = {s} is below (1 + sqrt 5)/2")


def _radicand(s: float) -> float:
    # (s - 1/s)^4 + 2 (s - 1/s)^2 - 3, factored to stay accurate near the golden ratio
    d2 = (s - 1 / s) ** 2
    r = (d2 - 1) * (d2 + 3)
    if abs(r) < RADICAND_CLAMP:
        return 0.0
    if r < 0:
        raise ValueError(f"negative radicand at s = {s}")
    return r


def t_of_s(s: float) -> float:
    _check_domain(s)
    d = s - 1 / s
    return (1 + math.sqrt(_radicand(s))) / (2 * d)


def phi_matrices(s: float) -> tuple[np.ndarray, np.ndarray]:
    """Images of ``x`` and ``y``."""
    t = t_of_s(s)
    plus, minus = (s + 1 / s) / 2, (s - 1 / s) / 2
    X = np.array([[s, 0.0], [0.0, 1 / s]])
    Y = np.array([[plus + t, minus + t], [minus - t, plus - t]])
    return X, Y


def _sl2_inverse(m: np.ndarray) -> np.ndarray:
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) / det


def evaluate_word(w: Word, images: dict[str, np.ndarray]) -> np.ndarray:
    out = np.eye(2)
    for gen, e in w:
        m = images[gen] if e > 0 else _sl2_inverse(images[gen])
        for _ in range(abs(e)):
            out = out @ m
    return out


def relation_residual(s: float) -> float:
    """Frobenius norm of ``phi(w) phi(x) - phi(y) phi(w)``."""
    X, Y = phi_matrices(s)
    img = {"x": X, "y": Y}
    Wm = evaluate_word(W, img)
    return float(np.linalg.norm(Wm @ X - Y @ Wm))


def meridian_matrix(s: float) -> np.ndarray:
    X, Y = phi_matrices(s)
    return evaluate_word(MERIDIAN, {"x": X, "y": Y})


def longitude_matrix(s: float) -> np.ndarray:
    X, Y = phi_matrices(s)
    return evaluate_word(LONGITUDE, {"x": X, "y": Y})


def commutator_residual(s: float) -> float:
    """``|AB - BA| / (|A| |B|)`` for the meridian and longitude images (Frobenius).

    Scaled because ``B`` grows like ``s^4``: the group commutator
    ``ABA^-1B^-1 - I`` amplifies the rounding in ``B`` by ``|A^-1| |B^-1|``
    and is meaningless in double precision for large ``s``.
    """
    A, B = meridian_matrix(s), longitude_matrix(s)
    return float(np.linalg.norm(A @ B - B @ A) / (np.linalg.norm(A) * np.linalg.norm(B)))


def zeta_values(s: float) -> tuple[float, float]:
    """``(zeta_A, zeta_B)``: (1,1) entries of the meridian and longitude images.

    ``zeta_B`` is the closed form rewritten in ``u = s^2 + s^-2``:
    ``((u^2 - u - 4) + (s^2 - s^-2) sqrt(R)) / 2`` with ``R`` the radicand of
    :func:`t_of_s`; this equals the degree-8 expression divided by ``2 s^4``.
    """
    _check_domain(s)
    u = s * s + 1 / (s * s)
    zb = 0.5 * ((u * u - u - 4) + (s * s - 1 / (s * s)) * math.sqrt(_radicand(s)))
    return s, zb


def g_of_s(s: float) -> float:
    """Slope function ``ln|zeta_B| / ln|zeta_A|``; exactly 0 at the golden ratio."""
    _check_domain(s)
    if s == GOLDEN:
        return 0.0
    za, zb = zeta_values(s)
    return math.log(abs(zb)) / math.log(abs(za))


def is_reducible(s: float, tol: float = 1e-6) -> bool:
    """True when the images of ``x`` and ``y`` share an eigenvector (to ``tol``)."""
    X, Y = phi_matrices(s)
    _, vecs = np.linalg.eig(X)
    for k in range(2):
        v = vecs[:, k] / np.linalg.norm(vecs[:, k])
        Yv = Y @ v
        if np.linalg.norm(Yv - (v @ Yv) * v) < tol:
            return True
    return False


@dataclass(frozen=True)
class SlopeRoot:
    """A value of ``s`` whose representation factors through the ``p/q`` filling.

    ``zeta_a`` and ``zeta_b`` are the meridian and longitude eigenvalues of that
    representation; ``mirrored`` marks composition with the amphicheiral symmetry.
    """

    s: float
    g: float
    zeta_a: float
    zeta_b: float
    mirrored: bool


def filling_residual(root: SlopeRoot, p: int, q: int) -> float:
    """``| |zeta_a|^p |zeta_b|^q - 1 |``, evaluated in log space."""
    return abs(math.expm1(p * math.log(abs(root.zeta_a)) + q * math.log(abs(root.zeta_b))))


def solve_slope(p: int, q: int, grid: float = 1e-3, smax: float = 50.0,
                xtol: float = 1e-12) -> list[SlopeRoot]:
    """All bracketed roots of ``g(s) = |p/q|`` on ``[golden, smax]``, ascending.

    ``g`` is not known to be monotone, so the interval is scanned on a uniform
    grid and every sign change is refined by bisection.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    target = Fraction(p, q)
    if abs(target) >= 4:
        raise ValueError(f"slope {target} outside (-4, 4)")
    if grid <= 0 or smax <= GOLDEN:
        raise ValueError("need grid > 0 and smax > golden ratio")
    r = float(abs(target))

    def f(s):
        return g_of_s(s) - r

    roots: list[float] = []
    steps = int(math.ceil((smax - GOLDEN) / grid))
    prev_s, prev_f = GOLDEN, f(GOLDEN)
    if prev_f == 0:
        roots.append(GOLDEN)
    for k in range(1, steps + 1):
        s = min(GOLDEN + k * grid, smax)
        fs = f(s)
        if fs == 0:
            roots.append(s)
        elif prev_f != 0 and (prev_f < 0) != (fs < 0):
            lo, hi, flo = prev_s, s, prev_f
            while hi - lo > xtol:
                mid = 0.5 * (lo + hi)
                fm = f(mid)
                if fm == 0:
                    lo = hi = mid
                    break
                if (fm < 0) == (flo < 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
        prev_s, prev_f = s, fs

    mirrored = target > 0
    out = []
    for s in sorted(roots):
        za, zb = zeta_values(s)
        out.append(SlopeRoot(s, g_of_s(s), za, 1 / zb if mirrored else zb, mirrored))
    return out
