"""Command-line interface.

Terms are described in small TOML files.  Either give the term directly:

    xi = "-1"
    theta = "-1"
    P = [[0, 0, "1", "0"]]            # entries [deg_n, deg_k, re, im]
    factors = [["1/2", "0", 1, 1]]    # entries [b_re, b_im, alpha, beta]

or give a hypergeometric description that is rewritten automatically:

    [pfq]
    upper = [["1/2", "0", 1], ["1/3", "0", 0]]   # [re, im, n-multiplier]
    lower = [["2", "0", 2]]
    argument = ["1", "0"]

Rational numbers are strings like "2/3" (plain integers also work).
Exit codes: 0 success (and, for check, accepted), 1 rejected, 2 bad input.
"""

from __future__ import annotations

import json
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

import click

from .core_arith import GaussianRational, as_fraction
from .decision import LimitClassificationError, Verdict, decide, limit_series
from .g_landscape import g_eval
from .invariants import structural_constants
from .oracle import empirical_verdict
from .term_model import (
    BivarPoly,
    PfqSpec,
    ProperTerm,
    TermValidationError,
    from_pfq,
    validate,
)


class TermFileError(ValueError):
    pass


def _gauss(re, im="0") -> GaussianRational:
    try:
        return GaussianRational(as_fraction(re), as_fraction(im))
    except (ValueError, ZeroDivisionError) as exc:
        raise TermFileError(f"bad rational value {re!r}/{im!r}: {exc}")


def parse_term_text(text: str) -> ProperTerm:
    """Parse a TOML term description; raises TermFileError with a message
    pointing at the offending field."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise TermFileError(f"TOML syntax error: {exc}")
    if "pfq" in doc:
        block = doc["pfq"]
        for key in ("upper", "lower", "argument"):
            if key not in block:
                raise TermFileError(f"pfq block is missing '{key}'")
        try:
            upper = [(_gauss(e[0], e[1]), int(e[2])) for e in block["upper"]]
            lower = [(_gauss(e[0], e[1]), int(e[2])) for e in block["lower"]]
            arg = _gauss(*block["argument"])
        except (IndexError, TypeError) as exc:
            raise TermFileError(f"malformed pfq entry: {exc}")
        try:
            return from_pfq(PfqSpec.of(upper, lower, arg))
        except TermValidationError as exc:
            raise TermFileError(f"inadmissible term: {exc}")
    for key in ("xi", "theta", "factors"):
        if key not in doc:
            raise TermFileError(f"missing required field '{key}'")
    xi = _gauss(*(doc["xi"] if isinstance(doc["xi"], list) else (doc["xi"],)))
    theta = _gauss(*(doc["theta"] if isinstance(doc["theta"], list)
                     else (doc["theta"],)))
    try:
        factors = [(_gauss(e[0], e[1]), int(e[2]), int(e[3]))
                   for e in doc["factors"]]
    except (IndexError, TypeError, ValueError) as exc:
        raise TermFileError(f"malformed factor entry: {exc}")
    p_entries = doc.get("P", [[0, 0, "1", "0"]])
    try:
        poly = BivarPoly.of({})
        mapping = {}
        for e in p_entries:
            dn, dk = int(e[0]), int(e[1])
            coeff = _gauss(e[2], e[3])
            mapping[(dn, dk)] = mapping.get((dn, dk), GaussianRational()) + coeff
        poly = BivarPoly.of(mapping)
    except (IndexError, TypeError, ValueError) as exc:
        raise TermFileError(f"malformed P entry: {exc}")
    try:
        return validate(ProperTerm.of(poly, xi, theta, factors))
    except TermValidationError as exc:
        raise TermFileError(f"inadmissible term: {exc}")


def parse_term_file(path: str) -> ProperTerm:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_term_text(fh.read())


def _load(path: str) -> ProperTerm:
    try:
        return parse_term_file(path)
    except (TermFileError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


@click.group()
def main():
    """Decide uniform dominated convergence of proper bivariate
    hypergeometric series families, compute their limits, and cross-check
    numerically."""


@main.command()
@click.argument("term_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["human", "json"]),
              default="human", show_default=True)
def check(term_file, fmt):
    """Exact convergence decision with per-condition diagnostics."""
    term = _load(term_file)
    verdict = decide(term)
    if fmt == "json":
        click.echo(json.dumps(verdict.to_dict(), indent=2))
    else:
        for line in verdict.human_lines():
            click.echo(line)
    sys.exit(0 if verdict.uniform else 1)


@main.command()
@click.argument("term_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["human", "json"]),
              default="human", show_default=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
def limit(term_file, fmt, tol):
    """Classify and evaluate the limit of the series family."""
    term = _load(term_file)
    verdict = decide(term)
    if not verdict.uniform:
        click.echo("error: the family is not uniformly dominated; "
                   "no limit is computed", err=True)
        sys.exit(1)
    try:
        res = limit_series(term, tol=tol)
    except LimitClassificationError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if fmt == "json":
        click.echo(json.dumps({
            "kind": res.kind,
            "value": [res.value.real, res.value.imag],
            "error_bound": res.error_bound,
            "detail": res.detail,
        }, indent=2))
    else:
        click.echo(f"limit kind: {res.kind}")
        click.echo(f"value: {res.value:.12g}")
        click.echo(f"error bound: {res.error_bound:.3g}")
        click.echo(res.detail)
    sys.exit(0)


@main.command("sample-g")
@click.argument("term_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--t-max", type=float, default=10.0, show_default=True)
@click.option("--points", type=int, default=200, show_default=True)
def sample_g(term_file, t_max, points):
    """Emit CSV samples t,g(t),region of the landscape function."""
    term = _load(term_file)
    constants = structural_constants(term)
    omega_pos = sorted(rho for rho, _, _, _ in constants.omega if rho > 0)
    first = float(omega_pos[0]) if omega_pos else None
    click.echo("t,g,region")
    for i in range(1, points + 1):
        t = t_max * i / points
        if first is None:
            region = "no-shear-points"
        else:
            region = "pre-shear" if t < first else "post-shear"
        click.echo(f"{t:.10g},{g_eval(term, t):.12g},{region}")
    sys.exit(0)


@main.command()
@click.argument("term_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--k-max", type=int, default=2000, show_default=True)
@click.option("--n-max", type=int, default=4000, show_default=True)
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["human", "json"]),
              default="human", show_default=True)
def oracle(term_file, k_max, n_max, tol, fmt):
    """Empirical convergence scan of sum_k sup_n |u(n, k)|."""
    term = _load(term_file)
    report = empirical_verdict(term, k_max=k_max, n_max=n_max, tol=tol)
    verdict = decide(term)
    agree = not (
        (report.classification == "converges" and not verdict.uniform)
        or (report.classification == "diverges" and verdict.uniform)
    )
    if fmt == "json":
        click.echo(json.dumps({
            "classification": report.classification,
            "detail": report.detail,
            "k_used": report.k_used,
            "sum_estimate": report.sum_estimate,
            "exact_uniform": verdict.uniform,
            "agrees_with_exact": agree,
        }, indent=2))
    else:
        click.echo(f"empirical: {report.classification} ({report.detail})")
        click.echo(f"exact decision: "
                   f"{'accepted' if verdict.uniform else 'rejected'}")
        click.echo(f"agreement: {'yes' if agree else 'NO'}")
    sys.exit(0 if agree else 1)


if __name__ == "__main__":
    main()
