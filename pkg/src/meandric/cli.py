"""Command-line front end.

Usage:
    meandric expectation --n 5 --sigma "2 3 4 5 1"
    meandric expectation --n 3 --sigma "1 2 3" --full --format json
    meandric meanders --n 5 --components 1
    meandric verify --suite theorem1 --max-n 6
    meandric sif --n 9 --vanishing --workers 4

Exit codes: 0 on success, 1 when a check or assertion fails, 2 on usage or
parse errors.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, Sequence

import click

from . import arch, factor, gauss, meander, perm, sequences, verify

__all__ = ["main"]

FORMATS = click.Choice(["text", "json", "csv"])


def _pmap(func: Callable[..., Any], arg_tuples: Sequence[tuple], workers: int) -> list[Any]:
    """Map in order; results never depend on the worker count."""
    if workers <= 1 or len(arg_tuples) <= 1:
        return [func(*args) for args in arg_tuples]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, *args) for args in arg_tuples]
        return [f.result() for f in futures]


def _prefix_length(n: int, workers: int) -> int:
    # Enough Dyck prefixes to keep every worker busy.
    if workers <= 1:
        return 0
    length = 1
    while length < 2 * n and len(arch.dyck_prefixes(n, length)) < 4 * workers:
        length += 1
    return length


def _emit(fmt: str | None, payload: dict[str, Any], text_lines: Iterable[str], rows: list[list[Any]]) -> None:
    if fmt is None:
        fmt = click.get_current_context().find_root().obj["format"]
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2))
    elif fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        click.echo(buf.getvalue(), nl=False)
    else:
        for line in text_lines:
            click.echo(line)


def _parse_perm(text: str, n: int | None, option: str) -> perm.Permutation:
    try:
        return perm.parse(text, n)
    except perm.PermutationError as exc:
        raise click.BadParameter(str(exc), param_hint=option) from exc


def _open_cache(path: str | None) -> factor.SifCache:
    try:
        return factor.SifCache.load(path) if path else factor.SifCache()
    except factor.CacheError as exc:
        raise click.BadParameter(str(exc), param_hint="--cache") from exc


workers_option = click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True,
                              help="Worker processes for the heavy loops.")
format_option = click.option("--format", "fmt", type=FORMATS, default=None,
                             help="Output format (overrides the group-level --format).")
cache_option = click.option("--cache", "cache_path", type=click.Path(dir_okay=False),
                            envvar=factor.CACHE_ENV, help="SIF value cache file "
                            f"(default from ${factor.CACHE_ENV}).")


@click.group()
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
@click.pass_context
def main(ctx: click.Context, fmt: str) -> None:
    """Large-N Gaussian expectations of permutation-labeled tensor invariants."""
    ctx.obj = {"format": fmt}


def _brute_slice(sw: tuple[int, ...], sb: tuple[int, ...], prefix: tuple[int, ...]) -> int:
    return gauss.expectation_leading(perm.Permutation(sw), perm.Permutation(sb), prefix)


def _expansion_slice(sw: tuple[int, ...], sb: tuple[int, ...], first: int, max_n: int) -> dict[int, int]:
    return gauss.full_expansion(perm.Permutation(sw), perm.Permutation(sb), max_n, first).coeffs


@main.command()
@click.option("--n", "n", type=click.IntRange(min=1), help="Order; required for cycle notation.")
@click.option("--sigma", required=True, help="Black labels, one-line or cycle notation.")
@click.option("--sigma-white", default=None, help="White labels (default: identity).")
@click.option("--method", type=click.Choice(["brute", "factor", "both"]), default=None,
              help="Leading-order method [default: both, or brute with white labels].")
@click.option("--full", is_flag=True, help="Also compute every 1/N coefficient.")
@click.option("--max-n", type=click.IntRange(min=1), default=gauss.DEFAULT_MAX_N, show_default=True,
              help="Size guard for the full expansion.")
@workers_option
@cache_option
@format_option
def expectation(n, sigma, sigma_white, method, full, max_n, workers, cache_path, fmt):
    """Leading-order expectation value, optionally with its full 1/N expansion."""
    sb = _parse_perm(sigma, n, "--sigma")
    sw = _parse_perm(sigma_white, sb.n, "--sigma-white") if sigma_white else perm.identity(sb.n)
    if sw.n != sb.n:
        raise click.BadParameter("white and black labels differ in size", param_hint="--sigma-white")
    n = sb.n
    white_trivial = sw == perm.identity(n)
    if method is None:
        method = "both" if white_trivial else "brute"
    if method != "brute" and not white_trivial:
        raise click.UsageError("--method factor/both needs trivial white labels")
    if full and n > max_n:
        raise click.UsageError(f"--full needs n <= --max-n ({max_n})")

    values: dict[str, int] = {}
    if method in ("brute", "both"):
        length = _prefix_length(n, workers)
        prefixes = arch.dyck_prefixes(n, length) if length else [()]
        parts = _pmap(_brute_slice, [(sw.images, sb.images, p) for p in prefixes], workers)
        values["brute"] = sum(parts)
    if method in ("factor", "both"):
        cache = _open_cache(cache_path)
        values["factor"] = factor.evaluate(sb, cache)
        if cache_path:
            cache.save(cache_path)
    leading = next(iter(values.values()))
    agree = len(set(values.values())) == 1

    expansion = None
    if full:
        slices = _pmap(_expansion_slice, [(sw.images, sb.images, v, max_n) for v in range(1, n + 1)],
                       workers)
        expansion = gauss.ExpansionCoefficients(n)
        for coeffs in slices:
            expansion = expansion.merge(gauss.ExpansionCoefficients(n, coeffs))
        agree = agree and expansion.leading == leading

    payload: dict[str, Any] = {
        "n": n,
        "sigma": perm.format_cycles(sb),
        "sigma_white": perm.format_cycles(sw),
        "method": method,
        "leading": str(leading),
        "values": {k: str(v) for k, v in values.items()},
        "consistent": agree,
    }
    lines = [f"<P> leading coefficient: {leading}"]
    if len(values) > 1:
        lines.append("  " + ", ".join(f"{k}={v}" for k, v in values.items()))
    rows: list[list[Any]] = [["n", "k", "count"]]
    if expansion is not None:
        payload["expansion"] = expansion.to_json()
        lines.append(f"1/N expansion (N^{expansion.omega} * sum C_k N^-k):")
        lines.extend(f"  C_{k} = {v}" for k, v in expansion.coeffs.items())
        rows.extend([n, k, v] for k, v in expansion.coeffs.items())
    else:
        rows.append([n, 0, leading])
    _emit(fmt, payload, lines, rows)
    if not agree:
        click.echo("error: methods disagree", err=True)
        sys.exit(1)


def _census_slice(n: int, prefix: tuple[int, ...], irreducible: bool) -> dict[int, int]:
    if not irreducible:
        return meander.count_by_components(n, prefix)
    census: dict[int, int] = {}
    for s in meander.enumerate_systems(n, prefix):
        if not meander.is_two_reducible(s):
            k = meander.components_trace(s)
            census[k] = census.get(k, 0) + 1
    return census


@main.command()
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--components", "k", type=click.IntRange(min=1), default=None,
              help="Report only systems with this many components.")
@click.option("--irreducible", is_flag=True, help="Count 2-irreducible systems only.")
@click.option("--check-closed-forms", is_flag=True,
              help="Fail unless the census matches the closed forms for k = n, n-1, n-2.")
@workers_option
@format_option
def meanders(n, k, irreducible, check_closed_forms, workers, fmt):
    """Census of meandric systems of order n by number of components."""
    length = _prefix_length(n, workers)
    prefixes = arch.dyck_prefixes(n, length) if length else [()]
    census: dict[int, int] = {}
    for part in _pmap(_census_slice, [(n, p, irreducible) for p in prefixes], workers):
        for key, value in part.items():
            census[key] = census.get(key, 0) + value
    census = dict(sorted(census.items(), reverse=True))
    total = sum(census.values())

    failures = []
    if not irreducible and total != sequences.catalan(n) ** 2:
        failures.append(f"total {total} != C_{n}^2 = {sequences.catalan(n) ** 2}")
    if check_closed_forms:
        if irreducible:
            raise click.UsageError("--check-closed-forms applies to the full census")
        top, second, third = sequences.meandric_top_counts(n)
        for kk, expected in ((n, top), (n - 1, second), (n - 2, third)):
            if expected is not None and kk >= 1 and census.get(kk, 0) != expected:
                failures.append(f"M_{n}^({kk}) = {census.get(kk, 0)}, closed form {expected}")

    shown = {k: census.get(k, 0)} if k is not None else census
    payload = {
        "n": n,
        "irreducible": irreducible,
        "census": {str(kk): str(v) for kk, v in shown.items()},
        "total": str(total),
        "ok": not failures,
    }
    if k is not None:
        lines = [str(shown[k])]
    else:
        lines = ["k\tcount"] + [f"{kk}\t{v}" for kk, v in census.items()] + [f"total\t{total}"]
    rows = [["n", "k", "count"]] + [[n, kk, v] for kk, v in shown.items()]
    _emit(fmt, payload, lines, rows)
    if failures:
        for f in failures:
            click.echo(f"error: {f}", err=True)
        sys.exit(1)


@main.command(name="verify")
@click.option("--suite", type=click.Choice(sorted(verify.SUITES) + ["all"]), required=True)
@click.option("--max-n", type=click.IntRange(min=1), default=None,
              help="Largest order to check (default: the suite's own).")
@workers_option
@format_option
def verify_cmd(suite, max_n, workers, fmt):
    """Run a verification suite; exit 0 only if every case passes."""
    names = sorted(verify.SUITES) if suite == "all" else [suite]
    cases = [c for name in names for c in verify.build_cases(name, max_n)]
    results = _pmap(verify.run_case, [(c,) for c in cases], workers)
    passed = all(r.passed for r in results)
    payload = {
        "passed": passed,
        "cases": [
            {"suite": r.suite, "case": r.label, "passed": r.passed, "detail": r.detail}
            for r in results
        ],
    }
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.suite} {r.label}: {r.detail}" for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} cases passed")
    rows = [["suite", "case", "passed", "detail"]] + [
        [r.suite, r.label, r.passed, r.detail] for r in results
    ]
    _emit(fmt, payload, lines, rows)
    sys.exit(0 if passed else 1)


def _sif_slice(n: int, first: int, vanishing: bool, cache_entries: list) -> tuple[int, list, list]:
    cache = factor.SifCache()
    for key, value in cache_entries:
        cache.put(key, value)
    count = 0
    zeros = []
    for sigma in perm.sif_permutations(n, first):
        count += 1
        if vanishing and factor.evaluate(sigma, cache) == 0:
            zeros.append(sigma.images)
    return count, zeros, cache.items()


@main.command()
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--count", "do_count", is_flag=True, help="Print the number of SIF permutations.")
@click.option("--list", "do_list", is_flag=True, help="List every SIF permutation.")
@click.option("--vanishing", is_flag=True, help="List SIF permutations with zero leading value.")
@workers_option
@cache_option
@format_option
def sif(n, do_count, do_list, vanishing, workers, cache_path, fmt):
    """Stabilized-interval-free permutations of [1, n]."""
    if not (do_count or do_list or vanishing):
        do_count = True
    cache = _open_cache(cache_path)
    firsts = list(range(1, n + 1))
    seed = cache.items()
    results = _pmap(_sif_slice, [(n, f, vanishing, seed) for f in firsts], workers)
    count = sum(r[0] for r in results)
    zeros = [perm.Permutation(z) for r in results for z in r[1]]
    for r in results:
        for key, value in r[2]:
            cache.put(key, value)
    if cache_path and vanishing:
        cache.save(cache_path)

    payload: dict[str, Any] = {"n": n}
    lines: list[str] = []
    rows: list[list[Any]] = [["n", "kind", "value"]]
    if do_count:
        payload["count"] = str(count)
        lines.append(str(count) if not (do_list or vanishing) else f"count\t{count}")
        rows.append([n, "count", count])
    if do_list:
        listed = [perm.format_cycles(s) for s in perm.sif_permutations(n)]
        payload["sif"] = listed
        lines.extend(listed)
        rows.extend([n, "sif", s] for s in listed)
    if vanishing:
        listed = [perm.format_cycles(s) for s in zeros]
        payload["vanishing"] = listed
        lines.append(f"vanishing\t{len(listed)}")
        lines.extend(listed)
        rows.extend([n, "vanishing", s] for s in listed)
    _emit(fmt, payload, lines, rows)


if __name__ == "__main__":
    main()
