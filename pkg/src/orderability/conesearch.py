"""Positive-cone search on a finite Cayley ball.

A left order on ``G`` restricts to a sign assignment on any finite ball that
respects the cone axioms: ``g > 1`` and ``h > 1`` imply ``gh > 1``, and exactly
one of ``g, g^-1`` is positive. A bi-order must in addition give conjugates the
same sign. If no assignment on the ball satisfies these constraints then ``G``
has no such order, and the failed search is a checkable certificate of that.
A satisfiable ball proves nothing about ``G``.

The search is plain DPLL with unit propagation and chronological backtracking
over one variable per inverse pair. Refutations are recorded as the full
search tree, every derived sign citing the group fact that forced it, so
:func:`verify_certificate` can replay them against the oracle without trusting
the solver.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Iterator, Union

from .words import EqualityOracle, Word

__all__ = [
    "Mode",
    "GroupBall",
    "build_ball",
    "TorsionWitness",
    "TraceNode",
    "ConsistentCone",
    "Refutation",
    "search_cone",
    "auto_search",
    "verify_certificate",
    "format_certificate",
]

log = logging.getLogger(__name__)


class Mode(Enum):
    LEFT = "left"
    BI = "bi"


# -- ball ---------------------------------------------------------------------


def _letter_key(oracle: EqualityOracle, gen: str, sign: int) -> tuple[int, int]:
    return oracle.generators.index(gen), 0 if sign > 0 else 1


@dataclass
class GroupBall:
    """Elements of word length at most ``radius`` with partial multiplication.

    ``table[(i, j)] = k`` whenever ``lengths[i] + lengths[j] <= radius``.
    Element 0 is the identity; ``words[i]`` is the shortlex-least word reaching it.
    """

    oracle: EqualityOracle
    radius: int
    elements: list[Hashable]
    words: list[Word]
    lengths: list[int]
    inverse: list[int]
    table: dict[tuple[int, int], int]
    index: dict[Hashable, int] = field(repr=False)
    keys: list[tuple] = field(repr=False)
    torsion: "TorsionWitness | None" = None

    def __len__(self) -> int:
        return len(self.elements)

    def lookup(self, w: Word) -> int | None:
        return self.index.get(self.oracle.normal_form(w))

    def name(self, i: int) -> str:
        return str(self.words[i])


def build_ball(oracle: EqualityOracle, radius: int, generators=None) -> GroupBall:
    """Breadth-first enumeration of the ball, then the product table.

    ``generators`` must match the oracle's, if given.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    if generators is not None and tuple(generators) != oracle.generators:
        raise ValueError(f"generators {tuple(generators)} do not match oracle {oracle.generators}")
    letters = [(g, s) for g in oracle.generators for s in (1, -1)]
    ident = oracle.identity()
    elements, words, lengths, keys = [ident], [Word()], [0], [(0, ())]
    index = {ident: 0}
    step: dict[tuple[int, int], int] = {}
    frontier = [0]
    for r in range(1, radius + 1):
        nxt = []
        for i in frontier:
            for li, (g, s) in enumerate(letters):
                nf = oracle.push(elements[i], g, s)
                k = index.get(nf)
                if k is None:
                    k = len(elements)
                    index[nf] = k
                    elements.append(nf)
                    words.append(words[i] * Word([(g, s)]))
                    lengths.append(r)
                    keys.append((r, keys[i][1] + (_letter_key(oracle, g, s),)))
                    nxt.append(k)
                step[i, li] = k
        frontier = nxt
    letter_index = {gs: li for li, gs in enumerate(letters)}

    inverse = [0] * len(elements)
    for i, w in enumerate(words):
        inv = index.get(oracle.normal_form(w.inverse()))
        assert inv is not None, "ball not closed under inversion"
        inverse[i] = inv

    table: dict[tuple[int, int], int] = {}
    by_length: list[list[int]] = [[] for _ in range(radius + 1)]
    for i, n in enumerate(lengths):
        by_length[n].append(i)
    paths = [[letter_index[gs] for gs in w.letters()] for w in words]
    for i in range(len(elements)):
        room = radius - lengths[i]
        for n in range(room + 1):
            for j in by_length[n]:
                k = i
                for li in paths[j]:
                    k = step[k, li]
                table[i, j] = k

    ball = GroupBall(oracle, radius, elements, words, lengths, inverse, table, index, keys)
    ball.torsion = _find_torsion(ball)
    log.debug("ball radius %d: %d elements, %d products", radius, len(elements), len(table))
    return ball


@dataclass(frozen=True)
class TorsionWitness:
    """``element^order`` is the identity, with ``element`` nontrivial."""

    element: int
    order: int


def _find_torsion(ball: GroupBall) -> TorsionWitness | None:
    best = None
    for g in range(1, len(ball)):
        p, n = g, 1
        while True:
            p = ball.table.get((p, g))
            if p is None:
                break
            n += 1
            if p == 0:
                cand = TorsionWitness(g, n)
                if best is None or (n, ball.keys[g]) < (best.order, ball.keys[best.element]):
                    best = cand
                break
    return best


# -- constraints ---------------------------------------------------------------

# A fact is ("prod", i, j, k) meaning g_i g_j = g_k, or ("conj", h, g, k) meaning
# g_h g_g g_h^-1 = g_k. Literals are 2*var (representative positive) or 2*var + 1.
Fact = tuple


class _Vars:
    def __init__(self, ball: GroupBall):
        reps = [i for i in range(1, len(ball)) if ball.keys[i] <= ball.keys[ball.inverse[i]]]
        reps.sort(key=lambda i: ball.keys[i])
        self.rep = reps
        self.var_of = {}
        for v, i in enumerate(reps):
            self.var_of[i] = v
            self.var_of[ball.inverse[i]] = v
        self.ball = ball

    def pos(self, i: int) -> int:
        """Literal asserting that element ``i`` is positive."""
        v = self.var_of[i]
        return 2 * v if self.rep[v] == i else 2 * v + 1


def _fact_clauses(vars_: _Vars, fact: Fact) -> list[tuple[int, ...]]:
    kind, a, b, k = fact
    pos = vars_.pos
    if kind == "prod":
        lits = {pos(a) ^ 1, pos(b) ^ 1}
        if k != 0:
            lits.add(pos(k))
        if any(l ^ 1 in lits for l in lits):
            return []
        return [tuple(sorted(lits))]
    out = []
    for c in ({pos(b) ^ 1, pos(k)}, {pos(b), pos(k) ^ 1}):
        if not any(l ^ 1 in c for l in c):
            out.append(tuple(sorted(c)))
    return out


def _facts(ball: GroupBall, mode: Mode) -> Iterator[Fact]:
    for (i, j), k in ball.table.items():
        if i and j and k:
            yield ("prod", i, j, k)
    if mode is Mode.BI:
        oracle = ball.oracle
        for h in range(1, len(ball)):
            for g in range(1, len(ball)):
                if 2 * ball.lengths[h] + ball.lengths[g] > ball.radius:
                    continue
                w = ball.words[h] * ball.words[g] * ball.words[h].inverse()
                k = ball.index[oracle.normal_form(w)]
                if k != g:
                    yield ("conj", h, g, k)


# -- certificates ----------------------------------------------------------------


@dataclass
class TraceNode:
    """One node of a refutation tree.

    ``derived`` lists ``(literal, fact)`` forced at this node; the node ends in
    either a ``conflict`` fact or a branch on ``var`` with two children.
    """

    derived: list[tuple[int, Fact]] = field(default_factory=list)
    conflict: Fact | None = None
    var: int | None = None
    plus: "TraceNode | None" = None
    minus: "TraceNode | None" = None

    def size(self) -> int:
        n, stack = 0, [self]
        while stack:
            node = stack.pop()
            n += 1
            stack += [c for c in (node.plus, node.minus) if c is not None]
        return n


@dataclass
class ConsistentCone:
    """A sign for every ball element; says nothing about the whole group."""

    mode: Mode
    radius: int
    signs: list[int]  # +1, -1, and 0 for the identity

    verdict = "no obstruction at radius"


@dataclass
class Refutation:
    mode: Mode
    radius: int
    trace: TraceNode | None = None
    torsion: TorsionWitness | None = None

    verdict = "no order exists"


ConeCertificate = Union[ConsistentCone, Refutation]


# -- solver ------------------------------------------------------------------------


def search_cone(ball: GroupBall, mode: Mode | str = Mode.LEFT) -> ConeCertificate:
    """Search for a sign assignment; return a cone or a refutation tree.

    Variables (inverse pairs) are tried in shortlex order of their
    representatives, positive first.
    """
    mode = Mode(mode)
    if ball.torsion is not None:
        return Refutation(mode, ball.radius, torsion=ball.torsion)
    vars_ = _Vars(ball)
    nvars = len(vars_.rep)
    clauses: list[list[int]] = []
    reasons: list[Fact] = []
    seen = set()
    for fact in _facts(ball, mode):
        for c in _fact_clauses(vars_, fact):
            if c in seen:
                continue
            seen.add(c)
            clauses.append(list(c))
            reasons.append(fact)
    log.debug("%d variables, %d clauses", nvars, len(clauses))

    assign: list[int] = [-1] * nvars  # -1 unassigned, 0 rep positive, 1 rep negative
    watches: list[list[int]] = [[] for _ in range(2 * nvars)]
    units: list[int] = []
    for ci, c in enumerate(clauses):
        if len(c) == 1:
            units.append(ci)
        else:
            watches[c[0]].append(ci)
            watches[c[1]].append(ci)

    def value(lit: int) -> int:
        a = assign[lit >> 1]
        return -1 if a < 0 else int(a == (lit & 1))  # 1 true, 0 false

    trail: list[int] = []

    def enqueue(lit: int) -> None:
        assign[lit >> 1] = lit & 1
        trail.append(lit)

    def propagate(start: int, node: TraceNode) -> Fact | None:
        qi = start
        while qi < len(trail):
            false_lit = trail[qi] ^ 1
            qi += 1
            ws = watches[false_lit]
            i = 0
            while i < len(ws):
                ci = ws[i]
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                other = c[0]
                if value(other) == 1:
                    i += 1
                    continue
                moved = False
                for t in range(2, len(c)):
                    if value(c[t]) != 0:
                        c[1], c[t] = c[t], c[1]
                        watches[c[1]].append(ci)
                        ws[i] = ws[-1]
                        ws.pop()
                        moved = True
                        break
                if moved:
                    continue
                if value(other) == 0:
                    return reasons[ci]
                enqueue(other)
                node.derived.append((other, reasons[ci]))
                i += 1
        return None

    root = TraceNode()
    conflict = None
    for ci in units:
        lit = clauses[ci][0]
        v = value(lit)
        if v == 0:
            conflict = reasons[ci]
            break
        if v < 0:
            enqueue(lit)
            root.derived.append((lit, reasons[ci]))
    if conflict is None:
        conflict = propagate(0, root)

    node = root
    stack: list[tuple[int, int, TraceNode, int]] = []  # (var, trail length, branch node, cursor)
    cursor = 0
    while True:
        if conflict is not None:
            node.conflict = conflict
            conflict = None
            while stack:
                var, tl, bnode, cur = stack.pop()
                for lit in trail[tl:]:
                    assign[lit >> 1] = -1
                del trail[tl:]
                if bnode.minus is None:
                    bnode.minus = node = TraceNode()
                    stack.append((var, tl, bnode, cur))
                    enqueue(2 * var + 1)
                    cursor = cur
                    conflict = propagate(tl, node)
                    break
            else:
                return Refutation(mode, ball.radius, trace=root)
            continue
        while cursor < nvars and assign[cursor] >= 0:
            cursor += 1
        if cursor == nvars:
            signs = [0] * len(ball)
            for v, i in enumerate(vars_.rep):
                s = 1 if assign[v] == 0 else -1
                signs[i] = s
                signs[ball.inverse[i]] = -s
            return ConsistentCone(mode, ball.radius, signs)
        node.var = cursor
        node.plus = child = TraceNode()
        stack.append((cursor, len(trail), node, cursor))
        tl = len(trail)
        enqueue(2 * cursor)
        node = child
        conflict = propagate(tl, node)


def auto_search(oracle: EqualityOracle, mode: Mode | str = Mode.LEFT, start: int = 3,
                cap: int = 10) -> tuple[GroupBall, ConeCertificate]:
    """Grow the radius from ``start`` until a refutation or ``cap``."""
    for r in range(start, cap + 1):
        ball = build_ball(oracle, r)
        cert = search_cone(ball, mode)
        log.info("radius %d: %s", r, type(cert).__name__)
        if isinstance(cert, Refutation):
            return ball, cert
    return ball, cert


# -- verification ---------------------------------------------------------------------


def _check_fact(ball: GroupBall, fact: Fact) -> bool:
    """Re-derive a cited fact from the oracle, independent of the solver."""
    if not (isinstance(fact, tuple) and len(fact) == 4):
        return False
    kind, a, b, k = fact
    n = len(ball)
    if not all(isinstance(x, int) and 0 <= x < n for x in (a, b, k)):
        return False
    oracle = ball.oracle
    if kind == "prod":
        if ball.table.get((a, b)) != k:
            return False
        return oracle.normal_form(ball.words[a] * ball.words[b]) == ball.elements[k]
    if kind == "conj":
        if 2 * ball.lengths[a] + ball.lengths[b] > ball.radius:
            return False
        w = ball.words[a] * ball.words[b] * ball.words[a].inverse()
        return oracle.normal_form(w) == ball.elements[k]
    return False


def verify_certificate(ball: GroupBall, cert: ConeCertificate) -> bool:
    """Check a certificate against ``ball`` using only the oracle and the cone axioms."""
    if cert.radius != ball.radius:
        return False
    if isinstance(cert, ConsistentCone):
        return _verify_cone(ball, cert)
    if isinstance(cert, Refutation):
        if cert.torsion is not None:
            t = cert.torsion
            if not (0 < t.element < len(ball)) or t.order < 2:
                return False
            return ball.oracle.normal_form(ball.words[t.element] ** t.order) == ball.elements[0]
        if cert.trace is None:
            return False
        return _verify_tree(ball, cert.mode, cert.trace)
    return False


def _verify_cone(ball: GroupBall, cert: ConsistentCone) -> bool:
    s = cert.signs
    if len(s) != len(ball) or s[0] != 0:
        return False
    for i in range(1, len(ball)):
        if s[i] not in (1, -1) or s[ball.inverse[i]] != -s[i]:
            return False
    oracle = ball.oracle
    for (i, j), k in ball.table.items():
        if i and j and s[i] > 0 and s[j] > 0:
            if k == 0 or s[k] < 0:
                return False
    if cert.mode is Mode.BI:
        for h in range(1, len(ball)):
            for g in range(1, len(ball)):
                if 2 * ball.lengths[h] + ball.lengths[g] <= ball.radius:
                    w = ball.words[h] * ball.words[g] * ball.words[h].inverse()
                    if s[ball.index[oracle.normal_form(w)]] != s[g]:
                        return False
    return True


def _verify_tree(ball: GroupBall, mode: Mode, root: TraceNode) -> bool:
    vars_ = _Vars(ball)
    nvars = len(vars_.rep)
    assign: dict[int, int] = {}

    def value(lit: int) -> int:
        a = assign.get(lit >> 1)
        return -1 if a is None else int(a == (lit & 1))

    def clause_for(fact: Fact, lit: int | None) -> tuple[int, ...] | None:
        if fact[0] == "conj" and mode is not Mode.BI:
            return None
        if not _check_fact(ball, fact):
            return None
        for c in _fact_clauses(vars_, fact):
            if lit is None or lit in c:
                if lit is None and not all(value(l) == 0 for l in c):
                    continue
                return c
        return None

    # explicit stack: (node, number of assignments made before entering it)
    stack: list[tuple[TraceNode, list[int]]] = [(root, [])]
    while stack:
        node, entry = stack.pop()
        assign.clear()
        for lit in entry:
            assign[lit >> 1] = lit & 1
        for lit, fact in node.derived:
            if not (0 <= lit < 2 * nvars) or value(lit) >= 0:
                return False
            c = clause_for(fact, lit)
            if c is None or any(value(l) != 0 for l in c if l != lit):
                return False
            assign[lit >> 1] = lit & 1
        path = entry + [lit for lit, _ in node.derived]
        if node.conflict is not None:
            if node.var is not None or clause_for(node.conflict, None) is None:
                return False
            continue
        if node.var is None or node.plus is None or node.minus is None:
            return False
        if not 0 <= node.var < nvars or node.var in assign:
            return False
        stack.append((node.plus, path + [2 * node.var]))
        stack.append((node.minus, path + [2 * node.var + 1]))
    return True


# -- text output ------------------------------------------------------------------------


def _lit_text(ball: GroupBall, vars_: _Vars, lit: int) -> str:
    i = vars_.rep[lit >> 1]
    if lit & 1:
        i = ball.inverse[i]
    return f"{ball.name(i)} > 1"


def _fact_text(ball: GroupBall, fact: Fact) -> str:
    kind, a, b, k = fact
    n = ball.name
    if kind == "prod":
        return f"({n(a)}) * ({n(b)}) = {n(k)}"
    return f"({n(a)}) * ({n(b)}) * ({n(a)})^-1 = {n(k)}"


def format_certificate(ball: GroupBall, cert: ConeCertificate) -> list[str]:
    """One line per sign (cone) or per trace step (refutation)."""
    lines = []
    if isinstance(cert, ConsistentCone):
        lines.append("certificate: consistent-cone")
        lines.append(f"radius: {cert.radius}")
        lines.append(f"verdict: {cert.verdict} {cert.radius}")
        for i in sorted(range(1, len(ball)), key=lambda i: ball.keys[i]):
            if cert.signs[i] > 0:
                lines.append(f"positive: {ball.name(i)}")
        return lines
    lines.append("certificate: refutation")
    lines.append(f"radius: {cert.radius}")
    if cert.torsion is not None:
        t = cert.torsion
        lines.append(f"torsion: ({ball.name(t.element)})^{t.order} = 1")
        return lines
    vars_ = _Vars(ball)
    stack = [(cert.trace, 0, None)]
    while stack:
        node, depth, label = stack.pop()
        pad = "  " * depth
        if label is not None:
            lines.append(f"{pad}assume: {label}")
        for lit, fact in node.derived:
            lines.append(f"{pad}derive: {_lit_text(ball, vars_, lit)} by {_fact_text(ball, fact)}")
        if node.conflict is not None:
            lines.append(f"{pad}conflict: {_fact_text(ball, node.conflict)}")
        else:
            plus = _lit_text(ball, vars_, 2 * node.var)
            minus = _lit_text(ball, vars_, 2 * node.var + 1)
            stack.append((node.minus, depth + 1, minus))
            stack.append((node.plus, depth + 1, plus))
    return lines
