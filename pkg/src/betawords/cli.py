"""Command-line front end.

Exit codes: 0 success, 1 verification summary failure (verify), 2 usage,
3 precision, 4 verification failure / oracle disagreement.
"""

from __future__ import annotations

import json
import sys

import click
from mpmath import mp, nstr, workdps

from .beta_numeration import (
    DEFAULT_PRECISION,
    QuadraticParams,
    RenyiExpansion,
    beta_expand,
    beta_integers,
    beta_of,
    beta_of_renyi,
    gap_distances,
    parry_check,
    renyi_of_quadratic,
)
from .complexity import factor_complexity, uv_tower
from .errors import (
    BetawordsError,
    InvalidInputError,
    PrecisionError,
    UnsupportedVariantError,
    VerificationError,
)
from .language import FactorLanguage
from .palindromes import (
    infinite_branches,
    palindromes_of_length,
    palindromic_complexity,
    reversal_closure_probe,
    verify_identities,
)
from .substitution import (
    fixed_point_prefix,
    parry_substitution,
    quadratic_substitution,
)

EXIT_PRECISION = 3
EXIT_VERIFICATION = 4

_FORMAT = click.option(
    "--format", "fmt", type=click.Choice(["text", "json", "csv"]),
    default="text", show_default=True,
)
_PRECISION = click.option(
    "--precision", type=int, envvar="BETAWORDS_PRECISION",
    default=DEFAULT_PRECISION, show_default=True,
)


def _params(a, b):
    if a is None or b is None:
        raise click.UsageError("both --a and --b are required")
    return QuadraticParams(a, b)


def _subject(a, b, digits):
    """Resolve (a, b) or --digits into (substitution, params-or-None, renyi)."""
    if digits is not None and (a is not None or b is not None):
        raise click.UsageError("give either --a/--b or --digits, not both")
    if digits is not None:
        renyi = RenyiExpansion.parse(digits)
        return parry_substitution(renyi), None, renyi
    params = _params(a, b)
    return quadratic_substitution(params), params, renyi_of_quadratic(params)


def _emit(fmt, payload, text_lines, csv_text=None):
    if fmt == "json":
        click.echo(json.dumps(payload, sort_keys=True))
    elif fmt == "csv":
        if csv_text is None:
            raise click.UsageError("csv output is not available for this command")
        click.echo(csv_text, nl=False)
    else:
        for line in text_lines:
            click.echo(line)


class _Fail(SystemExit):
    pass


@click.group()
def main():
    """Infinite words of beta-integers: complexity and palindromes."""


@main.command()
@click.option("--a", type=int)
@click.option("--b", type=int)
@click.option("--n-max", type=int, default=20, show_default=True)
@_FORMAT
def analyze(a, b, n_max, fmt):
    """Combined C(n), Delta C(n), P(n) table with oracle/closed-form agreement."""
    params = _params(a, b)
    sub = quadratic_substitution(params)
    sturmian = params.is_sturmian
    oracle_c = factor_complexity(sub, n_max, "oracle")
    oracle_p = palindromic_complexity(sub, n_max, "oracle")
    rows = []
    disagreement = False
    if sturmian:
        closed_c = closed_p = None
    else:
        closed_c = factor_complexity(params, n_max, "closed_form")
        closed_p = palindromic_complexity(params, n_max, "closed_form")
    for n in range(1, n_max + 1):
        row = {
            "n": n,
            "C": oracle_c.rows[n - 1]["C"],
            "deltaC": oracle_c.rows[n - 1]["deltaC"],
            "P": oracle_p.rows[n]["P"],
        }
        if sturmian:
            row["agree"] = ""
        else:
            agree = (
                row["C"] == closed_c.rows[n - 1]["C"]
                and row["P"] == closed_p.rows[n]["P"]
            )
            row["agree"] = "yes" if agree else "NO"
            disagreement = disagreement or not agree
        rows.append(row)
    payload = {
        "schema": 1, "a": params.a, "b": params.b,
        "sturmian": sturmian, "rows": rows,
    }
    lines = []
    if sturmian:
        lines.append(f"# Sturmian boundary b = a-1: oracle-only table, C(n) = n+1")
    lines.append("n,C,deltaC,P,agree")
    for row in rows:
        lines.append(f"{row['n']},{row['C']},{row['deltaC']},{row['P']},{row['agree']}")
    csv_text = "\n".join(["n,C,deltaC,P,agree"] +
                         [f"{r['n']},{r['C']},{r['deltaC']},{r['P']},{r['agree']}"
                          for r in rows]) + "\n"
    _emit(fmt, payload, lines, csv_text)
    if disagreement:
        sys.exit(EXIT_VERIFICATION)


@main.command()
@click.option("--a-max", type=int, default=6, show_default=True)
@click.option("--n-max", type=int, default=120, show_default=True)
@click.option("--digits", type=str, default=None,
              help='Renyi digits "t1 .. tm (tm+1 .. tm+p)" instead of a grid')
@_FORMAT
def verify(a_max, n_max, digits, fmt):
    """Run the invariant suite over the (a, b) grid, or probe one expansion."""
    if digits is not None:
        renyi = RenyiExpansion.parse(digits)
        sub = parry_substitution(renyi)
        probe = reversal_closure_probe(sub, min(n_max, 60))
        lang = FactorLanguage(sub)
        pal = [sum(1 for w in lang.factors(n) if w == w[::-1])
               for n in range(min(n_max, 60) + 1)]
        last_pal = max((n for n, c in enumerate(pal) if c > 0), default=0)
        payload = {
            "schema": 1, "digits": str(renyi),
            "reversal_witness": probe["witness"],
            "closed_up_to": probe["closed_up_to"],
            "last_palindrome_length": last_pal,
            "palindrome_counts": pal,
        }
        _emit(fmt, payload, [
            f"digits: {renyi}",
            f"reversal witness: {probe['witness']!r} "
            f"(closed up to n={probe['closed_up_to']})",
            f"no palindromes beyond length {last_pal}",
        ])
        return
    points = [(a, b) for a in range(3, a_max + 1) for b in range(1, a - 1)]
    if len(points) > 100:
        raise click.UsageError("grid guard: more than 100 parameter points")
    failures = []
    results = []
    for a, b in points:
        params = QuadraticParams(a, b)
        sub = quadratic_substitution(params)
        point = {"a": a, "b": b, "checks": {}}
        try:
            oc = factor_complexity(sub, n_max, "oracle").c_values()
            cc = factor_complexity(params, n_max, "closed_form").c_values()
            point["checks"]["factor_complexity"] = oc == cc
            op = palindromic_complexity(sub, n_max, "oracle").p_values()
            cp = palindromic_complexity(params, n_max, "closed_form").p_values()
            point["checks"]["palindromic_complexity"] = op == cp
            verify_identities(params, n_max)
            point["checks"]["identities"] = True
        except VerificationError as exc:
            point["checks"]["identities"] = False
            point["error"] = {"message": str(exc), "context": _plain(exc.context)}
        if not all(point["checks"].values()):
            failures.append(point)
        results.append(point)
    payload = {
        "schema": 1, "n_max": n_max,
        "points": results,
        "passed": len(results) - len(failures),
        "failed": len(failures),
    }
    lines = [
        f"({p['a']},{p['b']}): " + ", ".join(
            f"{name}={'ok' if ok else 'FAIL'}" for name, ok in p["checks"].items()
        )
        for p in results
    ]
    lines.append(f"passed {payload['passed']}/{len(results)} parameter points")
    _emit(fmt, payload, lines)
    if failures:
        click.echo(json.dumps({"schema": 1, "failures": failures}, sort_keys=True),
                   err=True)
        sys.exit(1)


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return obj


@main.command()
@click.option("--a", type=int)
@click.option("--b", type=int)
@click.option("--digits", type=str, default=None)
@click.option("--length", type=int, default=100, show_default=True)
@_FORMAT
def word(a, b, digits, length, fmt):
    """Prefix of the fixed point u_beta."""
    sub, _, renyi = _subject(a, b, digits)
    prefix = fixed_point_prefix(sub, length)
    payload = {"schema": 1, "digits": str(renyi), "length": length, "word": prefix}
    _emit(fmt, payload, [prefix])


@main.command()
@click.option("--a", type=int)
@click.option("--b", type=int)
@click.option("--n", type=int, required=True)
@click.option("--tower-depth", type=int, default=8, show_default=True)
@_FORMAT
def specials(a, b, n, tower_depth, fmt):
    """Left special factors of length n, plus the U/V towers."""
    params = _params(a, b)
    sub = quadratic_substitution(params)
    lang = FactorLanguage(sub)
    left = sorted(lang.left_special_factors(n))
    payload = {"schema": 1, "a": params.a, "b": params.b, "n": n,
               "left_special": left}
    lines = [f"left special ({len(left)}): " + " ".join(left)]
    if not params.is_sturmian:
        tower = uv_tower(params, tower_depth)
        payload["u_lengths"] = [str(tower.u_length(i))
                                for i in range(1, tower_depth + 1)]
        payload["v_lengths"] = [str(tower.v_length(i))
                                for i in range(1, tower_depth + 1)]
        payload["u_words"] = [w for w in tower.u_words if len(w) <= 64]
        payload["v_words"] = [w for w in tower.v_words if len(w) <= 64]
        lines.append("U lengths: " + " ".join(payload["u_lengths"]))
        lines.append("V lengths: " + " ".join(payload["v_lengths"]))
        for i, w in enumerate(payload["u_words"], start=1):
            lines.append(f"U({i}) = {w}")
        for i, w in enumerate(payload["v_words"], start=1):
            lines.append(f"V({i}) = {w}")
    _emit(fmt, payload, lines)


@main.command()
@click.option("--a", type=int)
@click.option("--b", type=int)
@click.option("--n", type=int, required=True)
@click.option("--branch-budget", type=int, default=2000, show_default=True)
@_FORMAT
def palindromes(a, b, n, branch_budget, fmt):
    """Palindromic factors of length n and the infinite branch structure."""
    params = _params(a, b)
    sub = quadratic_substitution(params)
    lang = FactorLanguage(sub)
    records = sorted(palindromes_of_length(lang, n), key=lambda r: r.word)
    payload = {
        "schema": 1, "a": params.a, "b": params.b, "n": n,
        "palindromes": [
            {"word": r.word, "center": r.center,
             "extensions": sorted(r.extensions)}
            for r in records
        ],
    }
    lines = [f"P({n}) = {len(records)}"]
    lines += [f"  {r.word}  center={r.center} ext={''.join(sorted(r.extensions)) or '-'}"
              for r in records]
    if not params.is_sturmian:
        branches = infinite_branches(params, branch_budget)
        payload["branches"] = [
            {"center": s.center, "generator": list(s.generator),
             "verified": s.verified,
             "materialized": len(s.central_factors)}
            for s in branches
        ]
        lines += [f"branch center={s.center} generator={s.generator} "
                  f"verified={s.verified}" for s in branches]
    _emit(fmt, payload, lines)


@main.command("parry-check")
@click.option("--digits", type=str, required=True)
@_FORMAT
def parry_check_cmd(digits, fmt):
    """Parry admissibility of a candidate Renyi expansion."""
    renyi = RenyiExpansion.parse(digits)
    ok, shift = parry_check(renyi)
    payload = {"schema": 1, "digits": str(renyi), "valid": ok,
               "violating_shift": shift, "minimal": renyi.is_minimal}
    lines = ["valid" if ok else f"invalid (shift {shift} not strictly smaller)"]
    _emit(fmt, payload, lines)
    if not ok:
        sys.exit(EXIT_VERIFICATION)


@main.command("beta-expand")
@click.option("--a", type=int)
@click.option("--b", type=int)
@click.option("--x", type=str, required=True)
@click.option("--digit-count", type=int, default=16, show_default=True)
@_PRECISION
@_FORMAT
def beta_expand_cmd(a, b, x, digit_count, precision, fmt):
    """Greedy beta-expansion digits of x."""
    params = _params(a, b)
    beta = beta_of(params, precision)
    with workdps(precision):
        k, digit_seq = beta_expand(x, beta, digit_count)
    rendered = _render_expansion(k, digit_seq)
    payload = {"schema": 1, "a": params.a, "b": params.b, "x": x,
               "exponent": k, "digits": list(digit_seq),
               "rendered": rendered}
    _emit(fmt, payload, [rendered])


def _render_expansion(k, digit_seq):
    integer = [str(d) for d in digit_seq[: k + 1]]
    frac = [str(d) for d in digit_seq[k + 1 :]]
    return "".join(integer) + ("." + "".join(frac) if frac else "")


@main.command("beta-integers")
@click.option("--a", type=int)
@click.option("--b", type=int)
@click.option("--digits", type=str, default=None)
@click.option("--count", type=int, default=10, show_default=True)
@_PRECISION
@_FORMAT
def beta_integers_cmd(a, b, digits, count, precision, fmt):
    """First beta-integers and their gap letter sequence."""
    _, params, renyi = _subject(a, b, digits)
    beta = beta_of(params, precision) if params else beta_of_renyi(renyi, precision)
    values, letters = beta_integers(renyi, beta, count)
    shown = [nstr(v, 12) for v in values]
    payload = {"schema": 1, "digits": str(renyi), "count": count,
               "values": shown, "gap_letters": letters}
    lines = [", ".join(shown), f"gaps: {letters}"]
    _emit(fmt, payload, lines)


def run():
    try:
        main(standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc}", err=True)
        sys.exit(2)
    except click.exceptions.Abort:
        sys.exit(2)
    except PrecisionError as exc:
        click.echo(f"precision error: {exc}", err=True)
        sys.exit(EXIT_PRECISION)
    except VerificationError as exc:
        click.echo(json.dumps({"schema": 1, "error": str(exc),
                               "context": _plain(exc.context)}), err=True)
        sys.exit(EXIT_VERIFICATION)
    except (InvalidInputError, UnsupportedVariantError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    run()
