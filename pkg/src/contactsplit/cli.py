"""Command-line front end: ``contactsplit <command> ...``."""

from __future__ import annotations

import json
import sys

import click

from . import vanishing
from .darboux import (
    DarbouxModel,
    certify,
    format_poly_multivector,
    parse_poly_multivector,
    splitting_section,
)
from .exalg import StructuralError, format_multivector, parse_multivector
from .symplectic import SymplecticModel, primitive_decompose
from .transforms import CoefficientFamily, IllDefinedFamily, Kind, NotInvertible, invert_T
from .verify import DEFAULT_SEED, N_MAX_LIMIT, SUITES, run_suites


def _emit(record: dict, as_json: bool, text: str) -> None:
    click.echo(json.dumps(record, sort_keys=True) if as_json else text)


@click.group()
def main():
    """Exact checks for symplectic exterior algebra and contact splittings."""


@main.command()
@click.option("--n-max", type=int, default=2, show_default=True,
              help=f"largest half-dimension swept (1..{N_MAX_LIMIT})")
@click.option("--suite", "suites", multiple=True, type=click.Choice(sorted(SUITES)),
              help="suite to run; repeatable; default all")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="one JSON record per line")
def verify(n_max, suites, seed, as_json):
    """Run verification suites; exit status 1 on any failure."""
    if not 1 <= n_max <= N_MAX_LIMIT:
        raise click.BadParameter(f"must lie in 1..{N_MAX_LIMIT}", param_hint="--n-max")
    failed = 0
    checks = 0
    for rec in run_suites(n_max, suites or None, seed):
        checks += rec.checks
        failed += rec.status != "pass"
        _emit(rec.as_dict(), as_json, str(rec))
    if not as_json:
        click.echo(f"{'FAIL' if failed else 'PASS'}: {checks} checks, {failed} failing cells")
    sys.exit(1 if failed else 0)


def _parse_vector(text: str, n: int, degree: int | None):
    try:
        return parse_multivector(text, 2 * n, degree)
    except (ValueError, StructuralError) as exc:
        raise click.BadParameter(str(exc), param_hint="X") from exc


@main.command()
@click.option("-n", "n", type=click.IntRange(1, 8), required=True)
@click.option("-k", "k", type=int, default=None, help="degree (needed only for X = 0)")
@click.option("--json", "as_json", is_flag=True)
@click.argument("x")
def decompose(n, k, as_json, x):
    """Lefschetz decomposition of X, e.g. '1*e{1,2}'."""
    model = SymplecticModel(n)
    xv = _parse_vector(x, n, k)
    for r, part in primitive_decompose(model, xv).parts:
        _emit({"r": r, "component": format_multivector(part)}, as_json,
              f"r={r}: {format_multivector(part)}")


_FAMILIES = {
    "default": Kind.DEFAULT,
    "twisted": Kind.TWISTED,
    "twisted-prime": Kind.TWISTED_PRIME,
    "half-twisted": Kind.HALF_TWISTED,
    "half-twisted-prime": Kind.HALF_TWISTED_PRIME,
}


@main.command()
@click.option("-n", "n", type=click.IntRange(1, 8), required=True)
@click.option("--family", type=click.Choice(sorted(_FAMILIES)), default="default",
              show_default=True)
@click.option("-m", "m", type=int, default=0, show_default=True)
@click.option("-k", "k", type=int, default=None)
@click.argument("y")
def tinvert(n, family, m, k, y):
    """Solve T(X) = Y for the chosen coefficient family."""
    model = SymplecticModel(n)
    yv = _parse_vector(y, n, k)
    fam = CoefficientFamily(_FAMILIES[family], yv.degree, m)
    try:
        xv = invert_T(fam, model, yv)
    except (IllDefinedFamily, NotInvertible) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(format_multivector(xv))


@main.command()
@click.option("--table", type=click.Choice(vanishing.TABLES), required=True)
@click.option("-n", "n", type=int, required=True)
@click.option("-k", "k", type=int, required=True)
@click.option("-m", "m", type=int, required=True)
@click.option("-i", "i", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
def vanish(table, n, k, m, i, as_json):
    """Certified vanishing verdict for H^i with twist m and degree k."""
    try:
        v = vanishing.query(table, n, k, m, i)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc
    _emit({"table": table, "n": n, "k": k, "m": m, "i": i, "verdict": v.label,
           "rules": list(v.rules)}, as_json, str(v))


@main.command()
@click.option("--table", type=click.Choice(vanishing.TABLES), required=True)
@click.option("-n", "n", type=click.IntRange(1, 8), required=True)
@click.option("-k", "ks", type=int, multiple=True, help="degree(s); default all")
@click.option("--m-min", type=int, default=-12, show_default=True)
@click.option("--m-max", type=int, default=4, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def table(table, n, ks, m_min, m_max, as_json):
    """Grid of verdicts over (k, m, i): V certified vanishing, . not covered."""
    bad = [k for k in ks if not 1 <= k <= 2 * n + 1]
    if bad:
        raise click.BadParameter(f"k must lie in 1..{2 * n + 1}", param_hint="-k")
    lines = vanishing.emit_table(table, n, ks or None, range(m_min, m_max + 1),
                                 "json" if as_json else "text")
    for line in lines:
        click.echo(line)


@main.command("split-demo")
@click.option("-n", "n", type=click.IntRange(1, 2), required=True)
@click.option("-k", "k", type=click.IntRange(1, 3), required=True)
@click.argument("s")
def split_demo(n, k, s):
    """Splitting section X with gamma(X) = s in the Darboux model.

    S is a polynomial (k-1)-vector on the frame X1..X2n, e.g. 'z1' for k=1
    or '(1/2)*z2*X1 - X3' for k=2.
    """
    model = DarbouxModel(n)
    try:
        sv = parse_poly_multivector(s, model, frame=True, degree=k - 1)
    except (ValueError, StructuralError) as exc:
        raise click.BadParameter(str(exc), param_hint="S") from exc
    if sv.degree != k - 1:
        raise click.BadParameter(f"section must have degree {k - 1}", param_hint="S")
    x = splitting_section(model, k, sv)
    cert = certify(model, k, sv, x)
    click.echo(f"X = {format_poly_multivector(x)}")
    click.echo(f"gamma(X) - s = {format_poly_multivector(cert.gamma_residual)}")
    click.echo(f"(F(X) + G(s))|_D = {format_poly_multivector(cert.splitting_residual, frame=True)}")
    sys.exit(0 if cert.ok else 1)


if __name__ == "__main__":
    main()
