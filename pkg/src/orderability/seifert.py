"""Seifert fibred spaces: invariants, presentations, and orderability verdicts.

Closed oriented Seifert manifolds are given by EHN invariants
``M(g; b, beta_1/alpha_1, ..., beta_n/alpha_n)`` with ``0 < beta_j < alpha_j``;
``g >= 0`` is the genus of an orientable base and ``g < 0`` means ``|g|``
cross-caps. The Euler number is ``e = -(b + sum beta_j/alpha_j)``; reversing
orientation sends ``b`` to ``-n - b`` and each ``beta_j`` to ``alpha_j - beta_j``.

Manifolds outside that notation (non-orientable, bounded, a few named ones)
are described by :class:`Special`, :class:`CircleBundle` and
:class:`BoundedSeifert`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterator, Union

from .homology import AbelianInvariants, abelianization
from .words import Presentation, Word

__all__ = [
    "SeifertInvariants",
    "Special",
    "Surface",
    "CircleBundle",
    "BoundedSeifert",
    "FoliationWitness",
    "Verdict",
    "chi_orb",
    "euler_number",
    "seifert_presentation",
    "first_homology",
    "pi1_is_finite",
    "reverse_orientation",
    "has_horizontal_foliation",
    "check_foliation_witness",
    "is_left_orderable",
    "is_biorderable",
    "is_virtually_biorderable",
]


@dataclass(frozen=True)
class SeifertInvariants:
    g: int
    b: int
    cones: tuple[tuple[int, int], ...] = ()  # (alpha, beta) pairs

    def __post_init__(self):
        cones = tuple((int(a), int(be)) for a, be in self.cones)
        object.__setattr__(self, "cones", cones)
        for alpha, beta in cones:
            if alpha < 2 or not 0 < beta < alpha:
                raise ValueError(f"cone {beta}/{alpha}: need 0 < beta < alpha, alpha >= 2")
            if gcd(alpha, beta) != 1:
                raise ValueError(f"cone {beta}/{alpha}: alpha and beta must be coprime")

    @property
    def n(self) -> int:
        return len(self.cones)

    def __str__(self) -> str:
        cones = "".join(f", {be}/{a}" for a, be in self.cones)
        return f"M({self.g}; {self.b}{cones})"


class Special(Enum):
    S3 = "S3"
    S1xS2 = "S1xS2"
    S1twistS2 = "S1twistS2"
    SolidTorus = "SolidTorus"
    SolidKleinBottle = "SolidKleinBottle"
    P2xS1 = "P2xS1"


@dataclass(frozen=True)
class Surface:
    """Compact surface: ``genus`` handles if orientable, else ``genus`` cross-caps."""

    orientable: bool
    genus: int
    boundary: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0 or (not self.orientable and self.genus == 0):
            raise ValueError("invalid surface")

    @property
    def closed(self) -> bool:
        return self.boundary == 0

    @property
    def name(self) -> str | None:
        if not self.closed:
            return None
        if self.orientable:
            return "S2" if self.genus == 0 else ("T2" if self.genus == 1 else None)
        return {1: "P2", 2: "K"}.get(self.genus)


@dataclass(frozen=True)
class CircleBundle:
    """Locally trivial, orientable circle bundle over ``base`` with Euler number ``euler``.

    Over a non-orientable closed base only the parity of ``euler`` matters;
    over a bounded base it is ignored.
    """

    base: Surface
    euler: int = 0


@dataclass(frozen=True)
class BoundedSeifert:
    """Seifert space with nonempty boundary.

    ``exceptional`` counts exceptional fibres; with none, the fibration is a
    circle bundle, orientable as a bundle when ``orientable_bundle``.
    """

    base: Surface
    exceptional: int = 0
    orientable_bundle: bool = True

    def __post_init__(self):
        if self.base.closed:
            raise ValueError("a bounded Seifert space has a bounded base")


SeifertLike = Union[SeifertInvariants, Special, CircleBundle, BoundedSeifert]


@dataclass(frozen=True)
class FoliationWitness:
    """Numerators ``a_j`` over ``m`` with ``beta_j/alpha_j < a_j/m`` for every cone."""

    m: int
    a: int
    numerators: tuple[int, ...]
    complemented: bool = False  # True when checked against (alpha - beta)/alpha

    def __str__(self) -> str:
        nums = ",".join(map(str, self.numerators))
        return f"m={self.m} a={self.a} numerators={nums}" + (" complemented" if self.complemented else "")


@dataclass(frozen=True)
class Verdict:
    answer: bool
    reason: str
    witness: FoliationWitness | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.answer


# -- arithmetic ---------------------------------------------------------------


def chi_orb(inv: SeifertInvariants) -> Fraction:
    chi_base = 2 - 2 * inv.g if inv.g >= 0 else 2 - abs(inv.g)
    return chi_base - sum((1 - Fraction(1, a) for a, _ in inv.cones), Fraction(0))


def euler_number(inv: SeifertInvariants) -> Fraction:
    return -(inv.b + sum((Fraction(be, a) for a, be in inv.cones), Fraction(0)))


def reverse_orientation(inv: SeifertInvariants) -> SeifertInvariants:
    return SeifertInvariants(inv.g, -inv.n - inv.b, tuple((a, a - be) for a, be in inv.cones))


def _commutator(x: str, y: str) -> Word:
    return Word([(x, 1), (y, 1), (x, -1), (y, -1)])


def seifert_presentation(inv: SeifertInvariants) -> Presentation:
    """Standard presentation with ``h`` the regular fibre and cone generators ``g1, g2, ...``."""
    cone_gens = [f"g{j}" for j in range(1, inv.n + 1)]
    rels: list[Word] = []
    if inv.g >= 0:
        surf = [s for i in range(1, inv.g + 1) for s in (f"a{i}", f"b{i}")]
        rels += [_commutator(x, "h") for x in surf + cone_gens]
        product = Word()
        for i in range(1, inv.g + 1):
            product = product * _commutator(f"a{i}", f"b{i}")
    else:
        surf = [f"a{i}" for i in range(1, abs(inv.g) + 1)]
        rels += [Word([(x, 1), ("h", 1), (x, -1), ("h", 1)]) for x in surf]
        rels += [_commutator(x, "h") for x in cone_gens]
        product = Word([(x, 2) for x in surf])
    rels += [Word([(c, a), ("h", be)]) for c, (a, be) in zip(cone_gens, inv.cones)]
    product = product * Word([(c, 1) for c in cone_gens]) * Word([("h", -inv.b)])
    rels.append(product)
    return Presentation(tuple(surf + cone_gens + ["h"]), tuple(rels))


def first_homology(inv: SeifertInvariants) -> AbelianInvariants:
    return abelianization(seifert_presentation(inv))


def pi1_is_finite(inv: SeifertInvariants) -> bool:
    """Finite exactly for spherical base orbifold with nonzero Euler number."""
    return chi_orb(inv) > 0 and euler_number(inv) != 0


# -- horizontal foliations ----------------------------------------------------


def _assignments(n: int, m: int, a: int) -> Iterator[tuple[int, ...]]:
    for i in range(n):
        for j in range(n):
            if i != j:
                nums = [1] * n
                nums[i], nums[j] = a, m - a
                yield tuple(nums)


def _find_witness(fracs: list[Fraction], complemented: bool) -> FoliationWitness | None:
    n = len(fracs)
    bound = max(f.denominator for f in fracs)
    for m in range(2, bound + 1):
        for a in range(1, m):
            if gcd(a, m) != 1:
                continue
            for nums in _assignments(n, m, a):
                if all(f < Fraction(k, m) for f, k in zip(fracs, nums)):
                    return FoliationWitness(m, a, nums, complemented)
    return None


def check_foliation_witness(inv: SeifertInvariants, w: FoliationWitness) -> bool:
    """Replay a witness with exact rationals."""
    if inv.g != 0 or len(w.numerators) != inv.n or not 0 < w.a < w.m or gcd(w.a, w.m) != 1:
        return False
    expected = sorted([w.a, w.m - w.a] + [1] * (inv.n - 2))
    if sorted(w.numerators) != expected:
        return False
    b_needed = -(inv.n - 1) if w.complemented else -1
    if inv.b != b_needed:
        return False
    for (alpha, beta), k in zip(inv.cones, w.numerators):
        lhs = Fraction(alpha - beta if w.complemented else beta, alpha)
        if not lhs < Fraction(k, w.m):
            return False
    return True


def has_horizontal_foliation(inv: SeifertInvariants) -> Verdict:
    """Decide existence of a horizontal foliation for ``g = 0`` and ``n >= 3``."""
    if inv.g != 0 or inv.n < 3:
        raise ValueError("horizontal foliation decider needs g = 0 and at least 3 cones")
    n, b = inv.n, inv.b
    if -(n - 2) <= b <= -2:
        return Verdict(True, "condition-1")
    if b == -1:
        w = _find_witness([Fraction(be, a) for a, be in inv.cones], False)
        if w is not None:
            return Verdict(True, "condition-2", w)
    if b == -(n - 1):
        w = _find_witness([Fraction(a - be, a) for a, be in inv.cones], True)
        if w is not None:
            return Verdict(True, "condition-3", w)
    return Verdict(False, "no-condition")


# -- classification -----------------------------------------------------------


def _bundle_presentation(base: Surface, euler: int) -> Presentation:
    gens: list[str] = []
    rels: list[Word] = []
    product = Word()
    if base.orientable:
        for i in range(1, base.genus + 1):
            gens += [f"a{i}", f"b{i}"]
            product = product * _commutator(f"a{i}", f"b{i}")
    else:
        for i in range(1, base.genus + 1):
            gens.append(f"a{i}")
            product = product * Word([(f"a{i}", 2)])
    if not base.closed:
        # free base group: boundary curves make the surface relation vacuous
        gens += [f"d{i}" for i in range(1, base.boundary)]
    rels += [_commutator(x, "h") for x in gens]
    if base.closed:
        rels.append(product * Word([("h", -euler)]))
    return Presentation(tuple(gens + ["h"]), tuple(rels))


def _is_p2xs1(m: SeifertLike) -> bool:
    if m is Special.P2xS1:
        return True
    return isinstance(m, CircleBundle) and m.base.name == "P2" and m.euler % 2 == 0


def is_left_orderable(m: SeifertLike) -> Verdict:
    if isinstance(m, SeifertInvariants):
        h1 = first_homology(m)
        if m.g == 0 and m.n <= 2 and h1.is_trivial:
            return Verdict(True, "s3", detail="lens space with trivial H1")
        if pi1_is_finite(m):
            return Verdict(False, "finite-pi1", detail=f"H1 = {h1}")
        # base S^2 with >= 3 cones: M is irreducible with infinite pi1, so a
        # horizontal foliation certifies LO whatever b1 is; report it first
        fol = has_horizontal_foliation(m) if m.g == 0 and m.n >= 3 else None
        if fol is not None and fol.answer:
            return Verdict(True, "horizontal-foliation", fol.witness, detail=fol.reason)
        if h1.betti > 0:
            return Verdict(True, "b1-positive")
        if m.g != 0:
            return Verdict(False, "base-not-s2", detail="b1 = 0 with non-orientable base")
        if fol is None:
            # g = 0 and n <= 2 gives a lens space or S1xS2, both settled above
            raise AssertionError(f"unreachable for {m}")
        return Verdict(False, "no-horizontal-foliation")
    if isinstance(m, Special):
        if m is Special.P2xS1:
            return Verdict(False, "p2xs1")
        if m is Special.S3:
            return Verdict(True, "s3")
        return Verdict(True, "b1-positive")
    if isinstance(m, CircleBundle):
        if _is_p2xs1(m):
            return Verdict(False, "p2xs1")
        if m.base.name == "S2":
            if m.euler == 0:
                return Verdict(True, "b1-positive", detail="S1xS2")
            if abs(m.euler) == 1:
                return Verdict(True, "s3")
            return Verdict(False, "finite-pi1", detail=f"lens space L({abs(m.euler)},1)")
        if abelianization(_bundle_presentation(m.base, m.euler)).betti > 0:
            return Verdict(True, "b1-positive")
        return Verdict(False, "b1-zero")
    if isinstance(m, BoundedSeifert):
        return Verdict(True, "b1-positive", detail="nonempty boundary")
    raise TypeError(f"not a Seifert descriptor: {m!r}")


def is_biorderable(m: SeifertLike) -> Verdict:
    if isinstance(m, SeifertInvariants):
        if m.n > 0:
            return Verdict(False, "exceptional-fibres")
        if m.g < 0:
            return Verdict(False, "fibre-reversed", detail="non-orientable base: h conjugate to its inverse")
        if m.g >= 1:
            return Verdict(True, "circle-bundle")
        if m.b == 0:
            return Verdict(True, "listed", detail="S1xS2")
        if abs(m.b) == 1:
            return Verdict(True, "listed", detail="S3")
        return Verdict(False, "base-excluded", detail=f"lens space L({abs(m.b)},1)")
    if isinstance(m, Special):
        if m is Special.P2xS1:
            return Verdict(False, "base-excluded", detail="P2xS1")
        if m is Special.SolidTorus:
            return Verdict(True, "circle-bundle")
        return Verdict(True, "listed", detail=m.value)
    if isinstance(m, CircleBundle):
        name = m.base.name
        if name == "S2":
            if m.euler == 0:
                return Verdict(True, "listed", detail="S1xS2")
            if abs(m.euler) == 1:
                return Verdict(True, "listed", detail="S3")
            return Verdict(False, "base-excluded", detail="S2")
        if name == "P2":
            if m.euler % 2:
                return Verdict(True, "listed", detail="S1twistS2")
            return Verdict(False, "base-excluded", detail="P2")
        if name == "K":
            return Verdict(False, "base-excluded", detail="K")
        return Verdict(True, "circle-bundle")
    if isinstance(m, BoundedSeifert):
        if m.exceptional == 0:
            if m.orientable_bundle:
                return Verdict(True, "circle-bundle")
            return Verdict(False, "fibre-reversed")
        disk = m.base.orientable and m.base.genus == 0 and m.base.boundary == 1
        if disk and m.exceptional == 1:
            return Verdict(True, "circle-bundle", detail="solid torus")
        return Verdict(False, "exceptional-fibres")
    raise TypeError(f"not a Seifert descriptor: {m!r}")


def is_virtually_biorderable(m: SeifertLike) -> Verdict:
    if not isinstance(m, (SeifertInvariants, Special, CircleBundle, BoundedSeifert)):
        raise TypeError(f"not a Seifert descriptor: {m!r}")
    return Verdict(True, "virtually-biorderable")
