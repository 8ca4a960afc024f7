"""Smith normal form over the integers and abelianization of presentations."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .words import Presentation

__all__ = [
    "IntMatrix",
    "AbelianInvariants",
    "smith_normal_form",
    "relation_matrix",
    "abelianization",
    "BettiVerdict",
    "lo_via_betti",
]


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, Python ints throughout."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``U @ A @ V == D`` and ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``. Pivots are
    chosen as the smallest nonzero absolute value, ties broken row-major.
    """
    m, n = a.rows, a.cols
    d = a.to_rows()
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = abs(d[i][j])
                    if x and (best is None or x < best[0]):
                        best = (x, i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    dirty |= d[i][t] != 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    dirty |= d[t][j] != 0
            if dirty:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    return (IntMatrix.from_rows(d, n), IntMatrix.from_rows(u, m), IntMatrix.from_rows(v, n))


@dataclass(frozen=True)
class AbelianInvariants:
    """``Z^betti + Z/torsion[0] + ...`` with ``torsion[i] | torsion[i+1]``."""

    betti: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.betti < 0 or any(t < 2 for t in self.torsion):
            raise ValueError("invalid abelian invariants")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.betti:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = ["Z"] * (self.betti > 0)
        if self.betti > 1:
            parts = [f"Z^{self.betti}"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def relation_matrix(p: Presentation) -> IntMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    index = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for g, e in r:
            row[index[g]] += e
        rows.append(row)
    return IntMatrix.from_rows(rows, len(p.generators))


def abelianization(p: Presentation) -> AbelianInvariants:
    d, _, _ = smith_normal_form(relation_matrix(p))
    diag = d.diagonal()
    rank = sum(1 for x in diag if x)
    return AbelianInvariants(len(p.generators) - rank, tuple(x for x in diag if x > 1))


class BettiVerdict(str, Enum):
    LO_IF_P2_IRREDUCIBLE = "lo-if-p2-irreducible"
    INCONCLUSIVE = "inconclusive"


def lo_via_betti(p: Presentation) -> BettiVerdict:
    """Positive first Betti number gives left-orderability for P^2-irreducible M.

    The caller vouches that ``p`` presents the group of a compact, connected,
    P^2-irreducible 3-manifold; nothing here can check that.
    """
    if abelianization(p).betti >= 1:
        return BettiVerdict.LO_IF_P2_IRREDUCIBLE
    return BettiVerdict.INCONCLUSIVE
