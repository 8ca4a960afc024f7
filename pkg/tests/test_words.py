import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orderability.words import (
    BSW_PRESENTATION,
    BswOracle,
    FreeAbelianOracle,
    FreeOracle,
    KleinOracle,
    Presentation,
    TorusKnotOracle,
    Word,
    WordParseError,
    amalgam_equal,
    amalgam_nf,
    bsw_edge_membership,
    free_reduce,
    klein_nf,
    load_presentation,
    parse_presentation,
    parse_word,
    rss_presentation,
    torus_knot_nf,
)

from .conftest import words

# -- independent models ---------------------------------------------------------


def stack_reduce(letters):
    out = []
    for g, s in letters:
        if out and out[-1] == (g, -s):
            out.pop()
        else:
            out.append((g, s))
    return out


def klein_affine(w):
    """Deck action on the plane: m(x, y) = (x + 1, y), l(x, y) = (-x, y + 1).

    Returns the affine map as (sign, shift_x, shift_y), faithful on the group.
    """
    sign, sx, sy = 1, 0, 0  # current map: (x, y) -> (sign * x + sx, y + sy)
    for g, s in Word(w).letters():
        # compose on the right: f o letter
        if g == "m":
            sx += sign * s
        else:
            if s > 0:  # (x, y) -> (-x, y + 1)
                sign, sy = -sign, sy + 1
            else:  # (x, y) -> (-x, y - 1)
                sign, sy = -sign, sy - 1
    return sign, sx, sy


_SL2 = {"x": ((0, -1), (1, 0)), "y": ((0, -1), (1, 1))}


def _mm(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _minv(a):
    return ((a[1][1], -a[0][1]), (-a[1][0], a[0][0]))


def trefoil_invariant(w, x="x", y="y"):
    """SL(2, Z) image plus abelianization (x -> 3, y -> 2).

    The SL(2, Z) map kills only powers of x^4 = h^2, which the abelianization
    detects, so the pair is a faithful invariant of <x, y | x^2 = y^3>.
    """
    m = ((1, 0), (0, 1))
    ab = 0
    for g, s in Word(w).letters():
        base = _SL2["x" if g == x else "y"]
        m = _mm(m, base if s > 0 else _minv(base))
        ab += s * (3 if g == x else 2)
    return m, ab


# -- parsing ---------------------------------------------------------------------


def test_parse_examples():
    assert parse_word("a^2*b^-1") == Word([("a", 2), ("b", -1)])
    assert parse_word("a*a^-1") == Word()
    assert list(parse_word("x*y^-1*x^-1*y")) == [("x", 1), ("y", -1), ("x", -1), ("y", 1)]


@pytest.mark.parametrize("text", ["", "a^", "a^x", "a**b", "q", "a*"])
def test_parse_errors_carry_position(text):
    with pytest.raises(WordParseError) as exc:
        parse_word(text, ["a", "b"])
    assert exc.value.position >= 0


def test_identity_token_and_rendering():
    assert parse_word("1") == Word()
    assert str(Word()) == "1"
    assert str(parse_word("a^2*b^-1")) == "a^2*b^-1"


@given(words("abc", 12))
def test_render_parse_roundtrip(w):
    assert parse_word(str(w), "abc") == w


def test_free_reduce_examples():
    assert free_reduce([("x", 1), ("x", -1)]) == Word()
    assert free_reduce([("a", 1), ("b", 1), ("b", -1), ("a", 1)]) == Word([("a", 2)])


@given(st.lists(st.tuples(st.sampled_from("ab"), st.sampled_from([1, -1])), max_size=20))
def test_free_reduce_matches_stack(letters):
    assert list(free_reduce(letters).letters()) == stack_reduce(letters)


@given(words("ab", 10), words("ab", 10))
def test_word_group_laws(u, v):
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert u * u.inverse() == Word()
    assert free_reduce(u) == u


def test_presentation_text_roundtrip(tmp_path):
    p = parse_presentation("gens: a, b\nrel: a*b*a^-1*b^-1\n")
    assert p == Presentation(("a", "b"), (parse_word("a*b*a^-1*b^-1"),))
    f = tmp_path / "p.txt"
    f.write_text(p.to_text(), encoding="utf-8")
    assert load_presentation(f) == p


def test_presentation_rejects_undeclared_generator():
    with pytest.raises(ValueError):
        parse_presentation("gens: a\nrel: a*b\n")


# -- Klein bottle ------------------------------------------------------------------


def test_klein_examples():
    assert klein_nf(parse_word("l*m")) == (-1, 1)
    assert klein_nf(parse_word("m*l*m*l^-1")) == (0, 0)
    assert klein_nf(Word()) == (0, 0)


@given(words("ml", 10), words("ml", 10))
def test_klein_nf_agrees_with_affine_model(u, v):
    assert (klein_nf(u) == klein_nf(v)) == (klein_affine(u) == klein_affine(v))


@given(words("ml", 10))
def test_klein_nf_is_a_normal_form(w):
    a, b = klein_nf(w)
    assert klein_nf(Word([("m", a), ("l", b)])) == (a, b)


# -- trefoil ---------------------------------------------------------------------------


def test_torus_knot_examples():
    assert torus_knot_nf(parse_word("x^2")) == (1, ())
    assert torus_knot_nf(parse_word("y^-1")) == (-1, (("y", 2),))
    assert torus_knot_nf(parse_word("x*y^-1")) == (-1, (("x", 1), ("y", 2)))


@given(words("xy", 12), words("xy", 12))
def test_torus_knot_nf_agrees_with_faithful_invariant(u, v):
    assert (torus_knot_nf(u) == torus_knot_nf(v)) == (trefoil_invariant(u) == trefoil_invariant(v))


@given(words("xy", 12))
def test_torus_knot_nf_roundtrip(w):
    nf = torus_knot_nf(w)
    assert torus_knot_nf(nf.to_word("x", "y")) == nf
    assert trefoil_invariant(nf.to_word("x", "y")) == trefoil_invariant(w)


def test_edge_membership():
    assert bsw_edge_membership(torus_knot_nf(Word())) == (0, 0)
    # x*y^-1 is c itself
    assert bsw_edge_membership(torus_knot_nf(parse_word("x*y^-1"))) == (0, 1)
    assert bsw_edge_membership(torus_knot_nf(parse_word("y"))) is None


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_edge_membership_recovers_coordinates(p, q):
    w = Word([("x", 2 * p)]) * parse_word("x*y^-1") ** q
    assert bsw_edge_membership(torus_knot_nf(w)) == (p, q)
    assert bsw_edge_membership(torus_knot_nf(w), which_side=2) == (q, p)


# -- BSW amalgam ------------------------------------------------------------------------


def test_amalgam_examples():
    assert amalgam_equal(parse_word("x1^2"), parse_word("x2*y2^-1"))
    assert amalgam_equal(parse_word("x1"), parse_word("x1"))
    assert not amalgam_equal(parse_word("x1"), parse_word("y1"))


def test_amalgam_relators_trivial():
    for r in BSW_PRESENTATION.relators:
        assert amalgam_nf(r) == amalgam_nf(Word())


def _expand(nf):
    """Re-express an amalgam normal form as a word in x1, y1, x2, y2."""
    out = Word()
    for side, syllables in nf.factors:
        for gen, e in syllables:
            out = out * Word([(f"{gen}{side}", e)])
    p, q = nf.edge
    return out * Word([("x1", 2 * p)]) * parse_word("x1*y1^-1") ** q


BSW_GENS = ("x1", "y1", "x2", "y2")


@given(words(BSW_GENS, 12))
def test_amalgam_nf_reexpands_to_itself(w):
    nf = amalgam_nf(w)
    assert amalgam_nf(_expand(nf)) == nf


@given(words(BSW_GENS, 8), words(BSW_GENS, 8))
def test_amalgam_nf_is_multiplicative(u, v):
    assert amalgam_nf(_expand(amalgam_nf(u)) * v) == amalgam_nf(u * v)
    assert amalgam_nf(u * u.inverse()) == amalgam_nf(Word())


# every hom to H1 = Z/35, solved from the relators: x1 -> a fixes the rest
Z35_HOMS = [{"x1": a, "y1": -11 * a, "x2": 6 * a, "y2": 4 * a} for a in range(35)]


def _z35(img, w):
    return sum(img[g] * e for g, e in w) % 35


def test_z35_homs_kill_relators():
    for img in Z35_HOMS:
        assert all(_z35(img, r) == 0 for r in BSW_PRESENTATION.relators)


@given(words(BSW_GENS, 12))
def test_amalgam_nf_respects_abelianization(w):
    img = Z35_HOMS[1]
    assert _z35(img, w) == _z35(img, _expand(amalgam_nf(w)))


@given(words(("x1", "y1"), 10), words(("x1", "y1"), 10))
def test_vertex_group_embeds(u, v):
    inv = lambda w: trefoil_invariant(w, "x1", "y1")
    assert amalgam_equal(u, v) == (inv(u) == inv(v))


@given(words(("x2", "y2"), 10), words(("x2", "y2"), 10))
def test_second_vertex_group_embeds(u, v):
    inv = lambda w: trefoil_invariant(w, "x2", "y2")
    assert amalgam_equal(u, v) == (inv(u) == inv(v))


# -- oracles ---------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "oracle, gens",
    [
        (FreeOracle("ab"), "ab"),
        (FreeAbelianOracle("ab"), "ab"),
        (FreeAbelianOracle("ab", modulus=3), "ab"),
        (KleinOracle(), "ml"),
        (TorusKnotOracle(), "xy"),
        (BswOracle(), BSW_GENS),
    ],
)
def test_oracle_push_consistent_with_inverse(oracle, gens):
    rng = random.Random(7)
    for _ in range(200):
        w = Word([(rng.choice(gens), rng.choice([1, -1])) for _ in range(rng.randrange(10))])
        assert oracle.normal_form(w * w.inverse()) == oracle.identity()


def test_free_abelian_modulus():
    z2 = FreeAbelianOracle(["t"], modulus=2)
    assert z2.normal_form(parse_word("t^2")) == z2.identity()
    with pytest.raises(ValueError):
        FreeAbelianOracle(["t"], modulus=1)


def test_oracle_rejects_foreign_generator():
    with pytest.raises(ValueError):
        KleinOracle().normal_form(parse_word("z"))


# -- emitted presentations ---------------------------------------------------------------------


def test_rss_presentation():
    p = rss_presentation(2, 1, -3)
    assert p.generators == ("t", "a", "b")
    assert [str(r) for r in p.relators] == [
        "t^-1*a*t*a^4*b^-1*a^-1",
        "t^-1*b*t*a",
        "t^-2*b*a*b^-1*a^-1",
    ]
    r1 = rss_presentation(3, 1, -5).relators[0]
    assert ("a", 6) in list(r1)


@pytest.mark.parametrize("args", [(2, 2, -3), (2, 1, -4), (2, 1, -1), (1, 2, -3)])
def test_rss_rejects_bad_parameters(args):
    with pytest.raises(ValueError):
        rss_presentation(*args)
