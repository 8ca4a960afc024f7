"""Command-line entry point.

Output is line-oriented ``key: value`` text, or one JSON object per line with
``--format json-lines``. Exit status: 0 for a computed verdict, 2 for an
honest "inconclusive", 1 for usage and input errors.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from . import conesearch, reps, seifert, sol, surface
from .homology import BettiVerdict, abelianization, lo_via_betti
from .magnus import magnus_compare
from .words import (
    BswOracle,
    FreeAbelianOracle,
    FreeOracle,
    KleinOracle,
    WordParseError,
    load_presentation,
    parse_word,
    rss_presentation,
)

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2

QUESTIONS = ("lo", "biorder", "virtual-biorder")


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def line(self, key: str, value) -> None:
        if self.fmt == "json-lines":
            click.echo(json.dumps({key: value}, ensure_ascii=False))
        else:
            click.echo(f"{key}: {value}")

    def verdict(self, v, extra: dict | None = None) -> None:
        self.line("verdict", "yes" if v.answer else "no")
        self.line("reason", v.reason)
        if v.witness is not None:
            self.line("witness", str(v.witness))
        if v.detail:
            self.line("detail", v.detail)
        for k, val in (extra or {}).items():
            self.line(k, val)


def _out() -> Output:
    return click.get_current_context().find_root().obj


def _default_generators(rank: int) -> tuple[str, ...]:
    if rank < 1:
        raise click.BadParameter("rank must be >= 1")
    if rank <= 3:
        return ("x", "y", "z")[:rank]
    return tuple(f"x{i}" for i in range(1, rank + 1))


def _generators(rank: int, names: str | None) -> tuple[str, ...]:
    if names is None:
        return _default_generators(rank)
    gens = tuple(g.strip() for g in names.split(",") if g.strip())
    if len(gens) != rank:
        raise click.BadParameter(f"{len(gens)} generator names for rank {rank}")
    return gens


def _parse_cones(text: str) -> tuple[tuple[int, int], ...]:
    cones = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        try:
            alpha, beta = item.split("/")
            cones.append((int(alpha), int(beta)))
        except ValueError:
            raise click.BadParameter(f"cone {item!r} is not alpha/beta") from None
    return tuple(cones)


def _ask(question: str, lo, bo, vbo, m):
    return {"lo": lo, "biorder": bo, "virtual-biorder": vbo}[question](m)


@click.group()
@click.option("--format", "fmt", type=click.Choice(["text", "json-lines"]), default="text",
              show_default=True, help="Output format.")
@click.version_option(package_name="orderability")
@click.pass_context
def cli(ctx, fmt):
    """Orderability of 3-manifold groups and related group computations."""
    ctx.obj = Output(fmt)


# -- classify -------------------------------------------------------------------


@cli.group()
def classify():
    """Theorem-based verdicts for Seifert and Sol manifolds."""


@classify.command("seifert")
@click.option("--g", "genus", type=int, help="Base genus; negative for cross-caps.")
@click.option("--b", type=int, help="Obstruction integer b.")
@click.option("--cones", default="", help="Exceptional fibres as alpha/beta,...")
@click.option("--special", type=click.Choice([s.value for s in seifert.Special], case_sensitive=False),
              help="A named manifold outside the invariant notation.")
@click.option("--question", type=click.Choice(QUESTIONS), default="lo", show_default=True)
def classify_seifert(genus, b, cones, special, question):
    """Classify M(g; b, beta_1/alpha_1, ...) or a named special manifold."""
    out = _out()
    if special is not None:
        if genus is not None or b is not None or cones:
            raise click.UsageError("--special excludes --g, --b and --cones")
        m = next(s for s in seifert.Special if s.value.lower() == special.lower())
        out.line("manifold", m.value)
    else:
        if genus is None or b is None:
            raise click.UsageError("need --g and --b, or --special")
        try:
            m = seifert.SeifertInvariants(genus, b, _parse_cones(cones))
        except ValueError as exc:
            raise click.BadParameter(str(exc), param_hint="--cones") from None
        out.line("manifold", str(m))
    v = _ask(question, seifert.is_left_orderable, seifert.is_biorderable,
             seifert.is_virtually_biorderable, m)
    out.line("question", question)
    out.verdict(v)
    return EXIT_OK


@classify.command("sol")
@click.option("--variant", type=click.Choice([v.value for v in sol.SolVariant]), required=True)
@click.option("--matrix", help="Monodromy entries a,b,c,d (row-major).")
@click.option("--boundary", type=click.Choice([k.value for k in sol.BoundaryKind]),
              help="Kind, for --variant boundary.")
@click.option("--question", type=click.Choice(("sol",) + QUESTIONS), default="lo", show_default=True)
def classify_sol(variant, matrix, boundary, question):
    """Classify a Sol manifold; --question sol tests the monodromy only."""
    out = _out()
    A = None
    if matrix is not None:
        try:
            a, b_, c, d = (int(x) for x in matrix.split(","))
            A = sol.GL2Z(a, b_, c, d)
        except ValueError as exc:
            raise click.BadParameter(str(exc) or "need four integers", param_hint="--matrix") from None
    out.line("question", question)
    if question == "sol":
        if A is None:
            raise click.UsageError("--question sol needs --matrix")
        if sol.is_sol_monodromy(A):
            out.line("verdict", "yes")
            out.line("reason", "anosov")
        else:
            out.line("verdict", "no")
            out.line("reason", "not-anosov")
        out.line("detail", f"det = {A.det}, trace = {A.trace}")
        return EXIT_OK
    try:
        m = sol.SolManifold(sol.SolVariant(variant), A,
                            sol.BoundaryKind(boundary) if boundary else None)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    v = _ask(question, sol.sol_is_left_orderable, sol.sol_is_biorderable,
             sol.sol_is_virtually_biorderable, m)
    out.verdict(v)
    return EXIT_OK


# -- homology -------------------------------------------------------------------


@cli.command("homology")
@click.argument("path", type=click.Path(dir_okay=False))
def homology_cmd(path):
    """First homology of a presented group, and the b1 > 0 test."""
    out = _out()
    try:
        p = load_presentation(path)
    except FileNotFoundError:
        raise click.FileError(path, "not found") from None
    h1 = abelianization(p)
    out.line("generators", len(p.generators))
    out.line("relators", len(p.relators))
    out.line("betti", h1.betti)
    out.line("torsion", ",".join(map(str, h1.torsion)) or "none")
    out.line("h1", str(h1))
    v = lo_via_betti(p)
    out.line("lo-via-betti", v.value)
    return EXIT_OK if v is BettiVerdict.LO_IF_P2_IRREDUCIBLE else EXIT_INCONCLUSIVE


# -- order ------------------------------------------------------------------------

_SYMBOL = {-1: "<", 0: "=", 1: ">"}


@cli.group()
def order():
    """Compare elements under explicit bi-orders."""


@order.command("compare-free")
@click.option("--word1", required=True)
@click.option("--word2", required=True)
@click.option("--rank", type=int, required=True)
@click.option("--generators", help="Comma-separated names; default x,y,z or x1..xn.")
def compare_free(word1, word2, rank, generators):
    """Magnus order on a free group."""
    gens = _generators(rank, generators)
    w1, w2 = parse_word(word1, gens), parse_word(word2, gens)
    c = magnus_compare(w1, w2, gens)
    out = _out()
    out.line("compare", c.name)
    out.line("relation", f"{w1} {_SYMBOL[int(c)]} {w2}")
    return EXIT_OK


@order.command("compare-surface")
@click.option("--word1", required=True)
@click.option("--word2", required=True)
def compare_surface(word1, word2):
    """Bi-order on <a, b, c | aba^-1b^-1 = c^2>."""
    w1, w2 = surface.parse_surface_word(word1), surface.parse_surface_word(word2)
    c = surface.surface_compare(w1, w2)
    out = _out()
    out.line("compare", c.name)
    out.line("relation", f"{w1} {_SYMBOL[int(c)]} {w2}")
    return EXIT_OK


# -- cone search ----------------------------------------------------------------------


@cli.group()
def cone():
    """Finite positive-cone search on a Cayley ball."""


@cone.command("search")
@click.option("--family", type=click.Choice(["klein", "bsw", "free", "zn"]), required=True)
@click.option("--mode", type=click.Choice(["left", "bi"]), default="left", show_default=True)
@click.option("--radius", type=int, help="Ball radius (ignored with --auto).")
@click.option("--auto", "auto", is_flag=True, help="Grow the radius from 3 until a refutation.")
@click.option("--cap", type=int, default=10, show_default=True, help="Largest radius tried by --auto.")
@click.option("--rank", type=int, default=2, show_default=True, help="Rank for free and zn.")
@click.option("--modulus", type=int, default=0, show_default=True, help="zn only: 0 for Z^n, k for (Z/k)^n.")
def cone_search(family, mode, radius, auto, cap, rank, modulus):
    """Search for a sign assignment; print a certificate."""
    if family == "klein":
        oracle = KleinOracle()
    elif family == "bsw":
        oracle = BswOracle()
    elif family == "free":
        oracle = FreeOracle(_default_generators(rank))
    else:
        if modulus < 0 or modulus == 1:
            raise click.BadParameter("modulus must be 0 or >= 2", param_hint="--modulus")
        oracle = FreeAbelianOracle(_default_generators(rank), modulus)
    if auto:
        ball, cert = conesearch.auto_search(oracle, mode, cap=cap)
    else:
        if radius is None or radius < 1:
            raise click.UsageError("need --radius N >= 1, or --auto")
        ball = conesearch.build_ball(oracle, radius)
        cert = conesearch.search_cone(ball, mode)
    out = _out()
    out.line("family", family)
    out.line("mode", mode)
    out.line("elements", len(ball))
    for text in conesearch.format_certificate(ball, cert):
        key, _, value = text.partition(": ")
        out.line(key, value)
    out.line("verified", "yes" if conesearch.verify_certificate(ball, cert) else "no")
    return EXIT_OK if isinstance(cert, conesearch.Refutation) else EXIT_INCONCLUSIVE


# -- representations ---------------------------------------------------------------------


@cli.group()
def rep():
    """SL(2, R) representations."""


@rep.command("fig8")
@click.option("--slope", required=True, help="Filling slope p/q with |p/q| < 4.")
@click.option("--grid", type=float, default=1e-3, show_default=True)
@click.option("--smax", type=float, default=50.0, show_default=True)
def rep_fig8(slope, grid, smax):
    """Parameters s whose representation factors through the p/q filling."""
    try:
        f = Fraction(slope)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"{slope!r} is not p/q", param_hint="--slope") from None
    p, q = f.numerator, f.denominator
    try:
        roots = reps.solve_slope(p, q, grid=grid, smax=smax)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--slope") from None
    out = _out()
    out.line("slope", f"{p}/{q}")
    out.line("roots", len(roots))
    for r in roots:
        out.line("s", f"{r.s:.12g}")
        out.line("g(s)", f"{r.g:.12g}")
        out.line("mirrored", "yes" if r.mirrored else "no")
        out.line("residual", f"{reps.filling_residual(r, p, q):.3e}")
    return EXIT_OK if roots else EXIT_INCONCLUSIVE


# -- emit ------------------------------------------------------------------------------------


@cli.group()
def emit():
    """Print presentations in the gens:/rel: file format."""


def _emit(p):
    out = _out()
    for text in p.to_text().splitlines():
        key, _, value = text.partition(": ")
        out.line(key, value)
    return EXIT_OK


@emit.command("rss")
@click.option("--p", "p", type=int, required=True)
@click.option("--q", "q", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
def emit_rss(p, q, m):
    """The three-relator presentation with parameters p, q, m."""
    try:
        pres = rss_presentation(p, q, m)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    return _emit(pres)


@emit.command("seifert")
@click.option("--g", "genus", type=int, required=True)
@click.option("--b", type=int, required=True)
@click.option("--cones", default="")
def emit_seifert(genus, b, cones):
    """The standard presentation of M(g; b, ...)."""
    try:
        m = seifert.SeifertInvariants(genus, b, _parse_cones(cones))
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--cones") from None
    return _emit(seifert.seifert_presentation(m))


def main(argv: list[str] | None = None) -> int:
    """Run the CLI and return its exit code."""
    try:
        rv = cli.main(args=argv, prog_name="orderability", standalone_mode=False)
    except click.exceptions.Exit as exc:  # --help, --version
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_ERROR
    except WordParseError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    return EXIT_OK if rv is None else int(rv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
