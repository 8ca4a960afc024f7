"""Words, presentations, and exact equality oracles for a few group families.

A :class:`Word` is a freely reduced sequence of syllables ``(generator, exponent)``.
Text input uses the grammar ``term ("*" term)*`` with ``term = gen | gen^int``;
the single token ``1`` denotes the identity.

The oracles decide equality exactly for: free groups, finitely generated
abelian groups ``(Z/n)^k`` (``n = 0`` meaning ``Z``), the Klein bottle group
``<m, l | l m l^-1 = m^-1>``, the trefoil group ``<x, y | x^2 = y^3>`` and the
amalgam of two trefoil groups along their boundary tori with meridian and
fibre swapped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Hashable, Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "Word",
    "WordParseError",
    "Presentation",
    "free_reduce",
    "parse_word",
    "parse_presentation",
    "load_presentation",
    "klein_nf",
    "TorusKnotNF",
    "torus_knot_nf",
    "bsw_edge_membership",
    "AmalgamNF",
    "amalgam_nf",
    "amalgam_equal",
    "rss_presentation",
    "EqualityOracle",
    "FreeOracle",
    "FreeAbelianOracle",
    "KleinOracle",
    "TorusKnotOracle",
    "BswOracle",
    "BSW_GENERATORS",
    "BSW_PRESENTATION",
]


class WordParseError(ValueError):
    """Raised on malformed word text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _reduce_syllables(syllables: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    stack: list[list] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple((g, e) for g, e in stack)


class Word(tuple):
    """A freely reduced word, stored as a tuple of ``(generator, exponent)`` syllables.

    ``len(w)`` counts syllables; :attr:`length` counts letters.

    >>> Word([("a", 1), ("b", 1), ("b", -1), ("a", 1)])
    Word('a^2')
    >>> Word.parse("x*y^-1") * Word.parse("y*x")
    Word('x^2')
    """

    def __new__(cls, syllables: Iterable[tuple[str, int]] = ()):
        return super().__new__(cls, _reduce_syllables(syllables))

    @classmethod
    def parse(cls, text: str, generators: Sequence[str] | None = None) -> "Word":
        return parse_word(text, generators)

    @classmethod
    def letter(cls, gen: str, exp: int = 1) -> "Word":
        return cls([(gen, exp)])

    @property
    def length(self) -> int:
        return sum(abs(e) for _, e in self)

    def letters(self) -> Iterator[tuple[str, int]]:
        """Yield ``(generator, +1 | -1)`` one letter at a time."""
        for gen, exp in self:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield gen, step

    def generators(self) -> set[str]:
        return {g for g, _ in self}

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self))

    def __mul__(self, other: Iterable[tuple[str, int]]) -> "Word":  # type: ignore[override]
        return Word(tuple(self) + tuple(other))

    def __rmul__(self, other):  # type: ignore[override]
        return NotImplemented

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(tuple(base) * abs(n))

    def __add__(self, other):  # type: ignore[override]
        return NotImplemented

    def __str__(self) -> str:
        if not self:
            return "1"
        names = ((g if isinstance(g, str) else _lattice_name(g), e) for g, e in self)
        return "*".join(g if e == 1 else f"{g}^{e}" for g, e in names)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def _lattice_name(g) -> str:
    if isinstance(g, tuple):
        return "x(" + ",".join(map(str, g)) + ")"
    return str(g)


def free_reduce(w: Iterable[tuple[str, int]]) -> Word:
    """Freely reduce a syllable sequence (zero exponents are dropped)."""
    return Word(w)


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|1)\s*(?:\^\s*([+-]?\d+))?\s*")


def parse_word(text: str, generators: Sequence[str] | None = None) -> Word:
    """Parse ``"a^2*b^-1"`` style text into a reduced :class:`Word`.

    With ``generators`` given, any other identifier is rejected.
    """
    if not text.strip():
        raise WordParseError("empty word", 0)
    allowed = set(generators) if generators is not None else None
    syllables = []
    pos = 0
    n = len(text)
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise WordParseError("expected generator", pos)
        name, exp_text = m.group(1), m.group(2)
        if name == "1":
            if exp_text is not None:
                raise WordParseError("identity takes no exponent", m.start(2))
        else:
            if allowed is not None and name not in allowed:
                raise WordParseError(f"unknown generator {name!r}", m.start(1))
            exp = int(exp_text) if exp_text is not None else 1
            syllables.append((name, exp))
        pos = m.end()
        if pos == n:
            break
        if text[pos] != "*":
            if text[pos] == "^":
                raise WordParseError("malformed exponent", pos)
            raise WordParseError(f"unexpected character {text[pos]!r}", pos)
        pos += 1
        if pos == n:
            raise WordParseError("dangling '*'", pos)
    return Word(syllables)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation; relators are words equal to the identity."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(Word(r) for r in self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator")
        declared = set(self.generators)
        for r in self.relators:
            missing = r.generators() - declared
            if missing:
                raise ValueError(f"relator {r} uses undeclared generators {sorted(missing)}")

    def to_text(self) -> str:
        lines = ["gens: " + ", ".join(self.generators)]
        lines += [f"rel: {r}" for r in self.relators]
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return "<" + ", ".join(self.generators) + " | " + ", ".join(map(str, self.relators)) + ">"


def parse_presentation(text: str) -> Presentation:
    """Read the ``gens: ...`` / ``rel: ...`` text format."""
    generators = None
    relators = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep:
            raise ValueError(f"line {lineno}: expected 'gens:' or 'rel:'")
        if key == "gens":
            if generators is not None:
                raise ValueError(f"line {lineno}: generators declared twice")
            generators = [g.strip() for g in value.split(",") if g.strip()]
        elif key == "rel":
            if generators is None:
                raise ValueError(f"line {lineno}: 'rel:' before 'gens:'")
            try:
                relators.append(parse_word(value, generators))
            except WordParseError as exc:
                raise ValueError(f"line {lineno}: {exc}") from exc
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if generators is None:
        raise ValueError("missing 'gens:' line")
    return Presentation(tuple(generators), tuple(relators))


def load_presentation(path: str | Path) -> Presentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


# -- Klein bottle group ------------------------------------------------------


def klein_nf(w: Iterable[tuple[str, int]], m: str = "m", l: str = "l") -> tuple[int, int]:
    """Return ``(a, b)`` with ``w = m^a l^b`` in ``<m, l | l m l^-1 = m^-1>``."""
    a = b = 0
    for gen, exp in w:
        if gen == m:
            a += -exp if b % 2 else exp
        elif gen == l:
            b += exp
        else:
            raise ValueError(f"generator {gen!r} not in Klein bottle group")
    return a, b


# -- trefoil group <x, y | x^2 = y^3> -----------------------------------------


class TorusKnotNF(NamedTuple):
    """``h^h_exp * lift(syllables)`` with ``h = x^2 = y^3`` central.

    ``syllables`` alternates between ``("x", 1)`` and ``("y", 1 | 2)``.
    """

    h_exp: int
    syllables: tuple[tuple[str, int], ...]

    def to_word(self, x: str = "x", y: str = "y") -> Word:
        names = {"x": x, "y": y}
        return Word([(x, 2 * self.h_exp)] + [(names[g], e) for g, e in self.syllables])


def _tk_push(stack: list, k: int, gen: str) -> int:
    if stack and stack[-1][0] == gen:
        stack[-1][1] += 1
        order = 2 if gen == "x" else 3
        if stack[-1][1] == order:
            stack.pop()
            k += 1
    else:
        stack.append([gen, 1])
    return k


def _tk_reduce(k: int, syllables: Iterable[tuple[str, int]], letters: Iterable[tuple[str, int]]):
    """Right-multiply ``h^k * lift(syllables)`` by signed letters over {"x", "y"}."""
    stack = [[g, e] for g, e in syllables]
    for gen, sign in letters:
        if sign < 0:
            # x^-1 = h^-1 x and y^-1 = h^-1 y^2
            k -= 1
            k = _tk_push(stack, k, gen)
            if gen == "y":
                k = _tk_push(stack, k, gen)
        else:
            k = _tk_push(stack, k, gen)
    return TorusKnotNF(k, tuple((g, e) for g, e in stack))


def torus_knot_nf(w: Iterable[tuple[str, int]], x: str = "x", y: str = "y") -> TorusKnotNF:
    """Normal form of a word in ``<x, y | x^2 = y^3>``."""
    rename = {x: "x", y: "y"}
    letters = []
    for gen, sign in Word(w).letters():
        if gen not in rename:
            raise ValueError(f"generator {gen!r} not in the trefoil group")
        letters.append((rename[gen], sign))
    return _tk_reduce(0, (), letters)


def _tk_mul(u: TorusKnotNF, v: TorusKnotNF) -> TorusKnotNF:
    letters = []
    for g, e in v.syllables:
        letters += [(g, 1)] * e
    out = _tk_reduce(u.h_exp + v.h_exp, u.syllables, letters)
    return out


def _tk_inverse(u: TorusKnotNF) -> TorusKnotNF:
    letters = []
    for g, e in reversed(u.syllables):
        letters += [(g, -1)] * e
    return _tk_reduce(-u.h_exp, (), letters)


_C_NF = torus_knot_nf([("x", 1), ("y", -1)])  # c = x y^-1


@lru_cache(maxsize=None)
def _c_power(q: int) -> TorusKnotNF:
    if q == 0:
        return TorusKnotNF(0, ())
    base = _C_NF if q > 0 else _tk_inverse(_C_NF)
    out = TorusKnotNF(0, ())
    for _ in range(abs(q)):
        out = _tk_mul(out, base)
    return out


def _edge_coords(nf: TorusKnotNF) -> tuple[int, int] | None:
    """Local ``(p, q)`` with ``nf = h^p c^q``, or None outside ``<h, c>``."""
    if not nf.syllables:
        return nf.h_exp, 0
    q = len(nf.syllables) // 2
    if nf.syllables[0][0] == "y":
        q = -q
    bound = len(nf.syllables) // 2 + 1
    for cand in (q, -q):
        if cand == 0 or abs(cand) > bound:
            continue
        cp = _c_power(cand)
        if cp.syllables == nf.syllables:
            return nf.h_exp - cp.h_exp, cand
    return None


def bsw_edge_membership(nf: TorusKnotNF, which_side: int = 1) -> tuple[int, int] | None:
    """Coordinates of ``nf`` in the edge subgroup ``<h, c>`` (``c = x y^-1``).

    Returns ``(p, q)`` in the frame of the first vertex group, where
    ``h1^p c1^q`` is glued to ``c2^p h2^q``; ``None`` when ``nf`` lies outside.
    """
    if which_side not in (1, 2):
        raise ValueError("which_side must be 1 or 2")
    local = _edge_coords(nf)
    if local is None or which_side == 1:
        return local
    return local[1], local[0]


def _edge_word(p: int, q: int) -> TorusKnotNF:
    return _tk_mul(TorusKnotNF(p, ()), _c_power(q))


def _q_mul(u: tuple, v: tuple) -> tuple:
    """Product in Z/2 * Z/3 of alternating syllable tuples."""
    out = list(u)
    for g, e in v:
        order = 2 if g == "x" else 3
        if out and out[-1][0] == g:
            s = (out[-1][1] + e) % order
            if s:
                out[-1] = (g, s)
            else:
                out.pop()
        else:
            out.append((g, e))
    return tuple(out)


_ORDER_KEY = {("x", 1): 0, ("y", 1): 1, ("y", 2): 2}


@lru_cache(maxsize=1 << 16)
def _coset_rep(syllables: tuple) -> tuple:
    """Minimal ``(syllable count, lex)`` element of ``w <c>`` in Z/2 * Z/3."""
    c = _C_NF.syllables
    c_inv = _tk_inverse(_C_NF).syllables
    bound = len(syllables) + 2
    best = None
    for q in range(-bound, bound + 1):
        cand = syllables
        step = c if q > 0 else c_inv
        for _ in range(abs(q)):
            cand = _q_mul(cand, step)
        key = (len(cand), [_ORDER_KEY[s] for s in cand])
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1]


def _decompose(nf: TorusKnotNF) -> tuple[tuple, tuple[int, int]]:
    """Split a trefoil element as ``lift(t) * h^p c^q`` with ``t`` the coset transversal."""
    t = _coset_rep(nf.syllables)
    rest = _tk_mul(_tk_inverse(TorusKnotNF(0, t)), nf)
    coords = _edge_coords(rest)
    assert coords is not None, "coset decomposition left the edge subgroup"
    return t, coords


# -- BSW amalgam --------------------------------------------------------------

BSW_GENERATORS = ("x1", "y1", "x2", "y2")
_BSW_SIDE = {"x1": (1, "x"), "y1": (1, "y"), "x2": (2, "x"), "y2": (2, "y")}


class AmalgamNF(NamedTuple):
    """``t_1 ... t_k * h1^p c1^q`` with alternating transversal factors.

    ``factors`` holds ``(side, syllables)`` pairs; ``edge`` is ``(p, q)`` in the
    frame of the first vertex group.
    """

    factors: tuple[tuple[int, tuple], ...]
    edge: tuple[int, int]


_AMALGAM_ID = AmalgamNF((), (0, 0))


def _to_local(edge: tuple[int, int], side: int) -> tuple[int, int]:
    return edge if side == 1 else (edge[1], edge[0])


def _amalgam_push(nf: AmalgamNF, side: int, letters: list[tuple[str, int]]) -> AmalgamNF:
    factors = list(nf.factors)
    p, q = _to_local(nf.edge, side)
    e = _tk_mul(_edge_word(p, q), _tk_reduce(0, (), letters))
    if factors and factors[-1][0] == side:
        _, t = factors.pop()
        e = _tk_mul(TorusKnotNF(0, t), e)
    t, local = _decompose(e)
    if t:
        factors.append((side, t))
    return AmalgamNF(tuple(factors), _to_local(local, side))


def amalgam_nf(w: Iterable[tuple[str, int]]) -> AmalgamNF:
    """Normal form in the BSW amalgam over generators ``x1, y1, x2, y2``."""
    nf = _AMALGAM_ID
    for gen, exp in Word(w):
        if gen not in _BSW_SIDE:
            raise ValueError(f"generator {gen!r} not in {BSW_GENERATORS}")
        side, local = _BSW_SIDE[gen]
        sign = 1 if exp > 0 else -1
        nf = _amalgam_push(nf, side, [(local, sign)] * abs(exp))
    return nf


def amalgam_equal(w1: Iterable[tuple[str, int]], w2: Iterable[tuple[str, int]]) -> bool:
    return amalgam_nf(w1) == amalgam_nf(w2)


BSW_PRESENTATION = Presentation(
    BSW_GENERATORS,
    (
        parse_word("x1^2*y1^-3"),
        parse_word("x2^2*y2^-3"),
        parse_word("x1^2*y2*x2^-1"),
        parse_word("x2^2*y1*x1^-1"),
    ),
)


# -- emitted presentations ----------------------------------------------------


def rss_presentation(p: int, q: int, m: int) -> Presentation:
    """The three-relator presentation on ``t, a, b`` for parameters ``(p, q, m)``.

    Requires ``gcd(p, q) = 1``, ``p > q >= 1`` and ``m`` odd with ``m < -2``.
    """
    if not (isinstance(p, int) and isinstance(q, int) and isinstance(m, int)):
        raise TypeError("p, q, m must be integers")
    if q < 1 or p <= q:
        raise ValueError("need p > q >= 1")
    if gcd(p, q) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1")
    if m % 2 == 0 or m >= -2:
        raise ValueError("m must be odd and < -2")
    t, a, b = "t", "a", "b"
    r1 = Word([(t, -1), (a, 1), (t, 1)]) * Word([(a, 1), (b, 1), (a, m - 1)]).inverse()
    r2 = Word([(t, -1), (b, 1), (t, 1), (a, 1)])
    commutator = Word([(a, 1), (b, 1), (a, -1), (b, -1)])
    r3 = Word([(t, -p)]) * commutator ** (-q)
    return Presentation((t, a, b), (r1, r2, r3))


# -- equality oracles ---------------------------------------------------------


class EqualityOracle:
    """Exact normal forms for one group family.

    ``normal_form`` returns a hashable canonical value; ``push`` right-multiplies
    a normal form by one signed letter, which is what ball construction uses.
    """

    family = "abstract"

    def __init__(self, generators: Sequence[str]):
        self.generators = tuple(generators)

    def identity(self) -> Hashable:
        raise NotImplementedError

    def push(self, nf: Hashable, gen: str, sign: int) -> Hashable:
        raise NotImplementedError

    def normal_form(self, w: Iterable[tuple[str, int]]) -> Hashable:
        nf = self.identity()
        for gen, sign in Word(w).letters():
            if gen not in self.generators:
                raise ValueError(f"generator {gen!r} not in {self.generators}")
            nf = self.push(nf, gen, sign)
        return nf

    def equal(self, w1, w2) -> bool:
        return self.normal_form(w1) == self.normal_form(w2)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(self.generators)})"


class FreeOracle(EqualityOracle):
    family = "free"

    def identity(self):
        return ()

    def push(self, nf, gen, sign):
        if nf and nf[-1][0] == gen and nf[-1][1] * sign < 0:
            e = nf[-1][1] + sign
            return nf[:-1] + ((gen, e),) if e else nf[:-1]
        if nf and nf[-1][0] == gen:
            return nf[:-1] + ((gen, nf[-1][1] + sign),)
        return nf + ((gen, sign),)


class FreeAbelianOracle(EqualityOracle):
    """``Z^k`` for ``modulus == 0``, otherwise ``(Z/modulus)^k``."""

    family = "zn"

    def __init__(self, generators: Sequence[str], modulus: int = 0):
        super().__init__(generators)
        if modulus < 0 or modulus == 1:
            raise ValueError("modulus must be 0 or >= 2")
        self.modulus = modulus
        self._index = {g: i for i, g in enumerate(self.generators)}

    def identity(self):
        return (0,) * len(self.generators)

    def push(self, nf, gen, sign):
        i = self._index[gen]
        v = nf[i] + sign
        if self.modulus:
            v %= self.modulus
        return nf[:i] + (v,) + nf[i + 1:]


class KleinOracle(EqualityOracle):
    family = "klein"

    def __init__(self, generators: Sequence[str] = ("m", "l")):
        super().__init__(generators)
        self.m, self.l = self.generators

    def identity(self):
        return (0, 0)

    def push(self, nf, gen, sign):
        a, b = nf
        if gen == self.m:
            return (a - sign if b % 2 else a + sign, b)
        return (a, b + sign)


class TorusKnotOracle(EqualityOracle):
    family = "trefoil"

    def __init__(self, generators: Sequence[str] = ("x", "y")):
        super().__init__(generators)
        self._rename = dict(zip(self.generators, ("x", "y")))

    def identity(self):
        return TorusKnotNF(0, ())

    def push(self, nf, gen, sign):
        return _tk_reduce(nf.h_exp, nf.syllables, [(self._rename[gen], sign)])


class BswOracle(EqualityOracle):
    family = "bsw"

    def __init__(self):
        super().__init__(BSW_GENERATORS)

    def identity(self):
        return _AMALGAM_ID

    def push(self, nf, gen, sign):
        side, local = _BSW_SIDE[gen]
        return _amalgam_push(nf, side, [(local, sign)])
