"""Sol manifolds and their orderability.

Every verdict here reduces to integer sign tests on the determinant and trace
of the monodromy; no eigensolver is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .seifert import Verdict

__all__ = [
    "GL2Z",
    "SolVariant",
    "BoundaryKind",
    "SolManifold",
    "is_sol_monodromy",
    "sol_is_left_orderable",
    "sol_is_biorderable",
    "sol_is_virtually_biorderable",
]


@dataclass(frozen=True)
class GL2Z:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if abs(self.det) != 1:
            raise ValueError(f"determinant {self.det} is not +-1")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: "GL2Z") -> "GL2Z":
        return GL2Z(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "GL2Z":
        k = self.det  # +-1, so 1/k == k
        return GL2Z(k * self.d, -k * self.b, -k * self.c, k * self.a)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]


class SolVariant(Enum):
    TORUS_BUNDLE = "torus-bundle"
    KLEIN_BOTTLE_BUNDLE = "klein-bottle-bundle"
    UNION_TORUS_GLUE = "union-torus-glue"  # orientable union of twisted I-bundles over K
    UNION_KLEIN_GLUE = "union-klein-glue"  # non-orientable union
    BOUNDARY = "boundary"


class BoundaryKind(Enum):
    BALL = "ball"
    SOLID_TORUS = "solid-torus"
    SOLID_KLEIN = "solid-klein"
    TORUS_X_INTERVAL = "torus-x-interval"
    TWISTED_I_BUNDLE_OVER_K = "twisted-i-bundle-over-k"


@dataclass(frozen=True)
class SolManifold:
    variant: SolVariant
    monodromy: GL2Z | None = None
    boundary: BoundaryKind | None = None

    def __post_init__(self):
        needs_matrix = self.variant in (SolVariant.TORUS_BUNDLE, SolVariant.UNION_TORUS_GLUE)
        if needs_matrix:
            if self.monodromy is None:
                raise ValueError(f"{self.variant.value} needs a monodromy matrix")
            if not is_sol_monodromy(self.monodromy):
                raise ValueError(f"{self.monodromy} does not give a Sol manifold")
        elif self.monodromy is not None:
            raise ValueError(f"{self.variant.value} carries no matrix")
        if (self.variant is SolVariant.BOUNDARY) != (self.boundary is not None):
            raise ValueError("boundary kind given iff variant is 'boundary'")

    @classmethod
    def torus_bundle(cls, a: int, b: int, c: int, d: int) -> "SolManifold":
        return cls(SolVariant.TORUS_BUNDLE, GL2Z(a, b, c, d))

    @property
    def orientable(self) -> bool | None:
        if self.variant is SolVariant.TORUS_BUNDLE:
            return self.monodromy.det == 1
        if self.variant is SolVariant.UNION_TORUS_GLUE:
            return True
        if self.variant is SolVariant.UNION_KLEIN_GLUE:
            return False
        return None


def is_sol_monodromy(A: GL2Z) -> bool:
    """Anosov test: ``|tr A| > 2`` when ``det = 1``, ``|tr A^2| > 2`` when ``det = -1``."""
    if A.det == 1:
        return abs(A.trace) > 2
    # tr(A^2) = tr(A)^2 - 2 det(A) = tr(A)^2 + 2
    return abs(A.trace ** 2 + 2) > 2


def sol_is_left_orderable(m: SolManifold) -> Verdict:
    if m.variant is SolVariant.BOUNDARY:
        return Verdict(True, "boundary")
    if m.variant is SolVariant.TORUS_BUNDLE:
        return Verdict(True, "torus-bundle")
    if m.variant in (SolVariant.KLEIN_BOTTLE_BUNDLE, SolVariant.UNION_KLEIN_GLUE):
        return Verdict(True, "non-orientable")
    return Verdict(False, "orientable-union-of-twisted-i-bundles")


def sol_is_biorderable(m: SolManifold) -> Verdict:
    if m.variant is SolVariant.BOUNDARY:
        if m.boundary is BoundaryKind.TWISTED_I_BUNDLE_OVER_K:
            return Verdict(False, "twisted-i-bundle-over-k")
        return Verdict(True, "boundary")
    if m.variant is SolVariant.TORUS_BUNDLE:
        A = m.monodromy
        if A.det == -1:
            # eigenvalues lambda, -1/lambda: one of them is positive
            return Verdict(True, "positive-eigenvalue", detail="det = -1")
        if A.trace > 2:
            return Verdict(True, "positive-eigenvalue", detail=f"trace = {A.trace}")
        return Verdict(False, "negative-eigenvalues", detail=f"trace = {A.trace}")
    return Verdict(False, "not-torus-bundle")


def sol_is_virtually_biorderable(m: SolManifold) -> Verdict:
    return Verdict(True, "virtually-biorderable")
