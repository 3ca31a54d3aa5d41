"""Command-line interface.

Exit codes: 0 success, 1 a regenerated table differs from the stored one,
2 usage or domain error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction

import click

from . import bounds, search, tables
from .bounds import AmbiguousComparison
from .cycles import count_cycles_by_length, turan_cycle_count
from .graph import BlowupSpec, GraphError, gamma_blowup, labeled, make_blowup, make_gamma
from .io import read_graph, write_edge_list, write_graph6
from .permanent import BlockMatrixSpec, block_permanent, cycle_bound_blowup

EXIT_MISMATCH = 1
EXIT_USAGE = 2


class DomainError(click.ClickException):
    exit_code = EXIT_USAGE


def _fail(exc: Exception):
    raise DomainError(str(exc)) from None


def format_option(f):
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(["table", "csv", "json"]),
        default="table",
        show_default=True,
        help="Output format.",
    )(f)


def threads_option(f):
    return click.option(
        "--threads",
        type=click.IntRange(min=1),
        envvar="CYCLEMAX_THREADS",
        default=None,
        help="Worker threads for permanents (default: all cores).",
    )(f)


def _render_table(rows: list[list[str]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows
    )


def _render_csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def _emit_rows(rows: list[list[str]], fmt: str) -> None:
    """Header + rows as a table, CSV, or JSON lines keyed by the header."""
    if fmt == "table":
        click.echo(_render_table(rows))
    elif fmt == "csv":
        click.echo(_render_csv(rows))
    else:
        header = rows[0]
        for r in rows[1:]:
            click.echo(json.dumps(dict(zip(header, r)), sort_keys=True, ensure_ascii=False))


def _emit_value(value: int, note: str, fmt: str, name: str) -> None:
    if fmt == "json":
        click.echo(json.dumps({"bound": name, "note": note, "value": str(value)}, sort_keys=True))
    elif fmt == "csv":
        click.echo(_render_csv([["bound", "value", "note"], [name, str(value), note]]))
    else:
        click.echo(str(value))
        click.echo(f"# {note}")


def _sizes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Cycle counts and cycle-count bounds for triangle-free graphs."""
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(line_buffering=True)


# --- count ------------------------------------------------------------------


@main.command()
@click.argument("source", type=click.File("r", encoding="utf-8"), default="-")
@click.option("--by-length", is_flag=True, help="Also report counts per cycle length.")
@click.option(
    "--input-format",
    type=click.Choice(["auto", "edgelist", "graph6"]),
    default="auto",
    show_default=True,
)
@format_option
def count(source, by_length, input_format, fmt):
    """Exact number of cycles in a graph (edge list or graph6)."""
    try:
        g = read_graph(source.read(), input_format)
    except GraphError as exc:
        _fail(exc)
    lengths = count_cycles_by_length(g)
    total = sum(lengths.values())
    if not by_length:
        if fmt == "json":
            click.echo(json.dumps({"total": str(total)}))
        elif fmt == "csv":
            click.echo(_render_csv([["total"], [str(total)]]))
        else:
            click.echo(str(total))
        return
    rows = [["length", "count"]] + [[str(k), str(v)] for k, v in sorted(lengths.items())]
    rows.append(["total", str(total)])
    _emit_rows(rows, fmt)


# --- bound ------------------------------------------------------------------


@main.group()
def bound():
    """Upper bounds on cycle counts, and the exact Turan count."""


@bound.command("edge")
@click.option("--n", "n", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--g", "g", type=int, default=4, show_default=True, help="Girth lower bound.")
@format_option
def bound_edge(n, m, g, fmt):
    try:
        value = bounds.edge_bound(n, m, g)
    except GraphError as exc:
        _fail(exc)
    note = "floor(Pi(n-1, m) n^2 / (2g)); any graph with n vertices, m edges, girth >= g"
    _emit_value(value, note, fmt, "edge")


@bound.command("hmorph")
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "p", type=int, required=True, help="Vertices of the target graph.")
@click.option("--q", "q", type=int, required=True, help="Maximum degree of the target graph.")
@click.option("--g", "g", type=int, default=4, show_default=True)
@format_option
def bound_hmorph(n, p, q, g, fmt):
    try:
        value = bounds.hmorph_bound(n, p, q, g)
    except GraphError as exc:
        _fail(exc)
    note = "floor(q^n ((n/p)!)^p n / (2g)); graphs homomorphic to a p-vertex graph of max degree q"
    _emit_value(value, note, fmt, "hmorph")


@bound.command("perm")
@click.option("--gamma", "gamma_i", type=int, help="Blowup of the gamma graph with this index.")
@click.option("--t", "t", type=int, help="Uniform part size.")
@click.option("--sizes", help="Comma-separated part sizes (instead of --t).")
@click.option("--spec", "spec_file", type=click.File("r", encoding="utf-8"), help="Block spec JSON.")
@threads_option
@format_option
def bound_perm(gamma_i, t, sizes, spec_file, threads, fmt):
    """floor(perm / 2) of a blowup's block matrix."""
    try:
        if spec_file is not None:
            spec = BlockMatrixSpec.from_json(json.load(spec_file))
        elif gamma_i is not None and (t is None) != (sizes is None):
            spec = BlockMatrixSpec.from_blowup(gamma_blowup(gamma_i, t if t is not None else _sizes(sizes)))
        else:
            raise click.UsageError("give --spec, or --gamma with exactly one of --t / --sizes")
        value = cycle_bound_blowup(spec, threads)
    except (GraphError, json.JSONDecodeError) as exc:
        _fail(exc)
    note = "floor(perm(A + I) / 2) of the block matrix; any subgraph of the blowup"
    _emit_value(value, note, fmt, "perm")


@bound.command("turan-exact")
@click.option("--n", "n", type=int, required=True)
@format_option
def bound_turan(n, fmt):
    try:
        value = turan_cycle_count(n)
    except GraphError as exc:
        _fail(exc)
    _emit_value(value, "exact cycle count of K_{floor(n/2), ceil(n/2)}", fmt, "turan-exact")


# --- perm -------------------------------------------------------------------


@main.command()
@click.argument("spec_file", type=click.File("r", encoding="utf-8"), default="-")
@click.option("--cycles", is_flag=True, help="Print floor(perm / 2) instead.")
@threads_option
@format_option
def perm(spec_file, cycles, threads, fmt):
    """Permanent of a block matrix given as {"p": .., "sizes": [..], "h": [[..]]}."""
    try:
        spec = BlockMatrixSpec.from_json(json.load(spec_file))
        value = block_permanent(spec, threads)
    except (GraphError, json.JSONDecodeError) as exc:
        _fail(exc)
    if cycles:
        value //= 2
    name = "perm-cycles" if cycles else "perm"
    if fmt == "table":
        click.echo(str(value))
    else:
        _emit_value(value, "block permanent", fmt, name)


# --- graph construction -----------------------------------------------------


def _write_graph(g, output_format: str) -> None:
    if output_format == "graph6":
        click.echo(write_graph6(g))
    else:
        click.echo(write_edge_list(g), nl=False)


output_format_option = click.option(
    "--output-format",
    type=click.Choice(["edgelist", "graph6"]),
    default="edgelist",
    show_default=True,
)


@main.command()
@click.argument("i", type=int)
@click.option("--t", "t", type=int, default=1, show_default=True, help="Uniform blowup size.")
@output_format_option
def gamma(i, t, output_format):
    """The gamma graph on 3i-1 vertices (v_j ~ v_{j+i..j+2i-1}), optionally blown up."""
    try:
        g = make_gamma(i) if t == 1 else make_blowup(gamma_blowup(i, t))
    except GraphError as exc:
        _fail(exc)
    _write_graph(g, output_format)


@main.command()
@click.option("--gamma", "gamma_i", type=int, help="Use the gamma graph with this index as base.")
@click.option("--base", "base_file", type=click.File("r", encoding="utf-8"), help="Base graph file.")
@click.option("--sizes", required=True, help="Comma-separated part sizes, in label order.")
@click.option("--input-format", type=click.Choice(["auto", "edgelist", "graph6"]), default="auto")
@output_format_option
def blowup(gamma_i, base_file, sizes, input_format, output_format):
    """Blowup H(n_1, ..., n_p) of a base graph."""
    if (gamma_i is None) == (base_file is None):
        raise click.UsageError("give exactly one of --gamma / --base")
    try:
        base = make_gamma(gamma_i) if gamma_i is not None else labeled(read_graph(base_file.read(), input_format))
        g = make_blowup(BlowupSpec(base, _sizes(sizes)))
    except GraphError as exc:
        _fail(exc)
    _write_graph(g, output_format)


# --- tables -----------------------------------------------------------------


@main.command("tables")
@threads_option
@format_option
def tables_cmd(threads, fmt):
    """Regenerate the reference table of counts and bounds and diff it."""
    results = tables.regenerate(threads)
    rows = [["graph", "n", "c(G)", "kind"]]
    for row, got in results:
        shown = f"<={got}" if row.kind == "bound" and fmt == "table" else str(got)
        rows.append([row.label, str(row.n), shown, row.kind])
    _emit_rows(rows, fmt)
    problems = tables.diff(results)
    if problems:
        for line in problems:
            click.echo(f"MISMATCH {line}", err=True)
        sys.exit(EXIT_MISMATCH)
    click.echo(f"{len(results)} rows match", err=True)


# --- search -----------------------------------------------------------------


@main.command("search")
@click.argument(
    "which", type=click.Choice(["regular-gamma", "regular-degree", "near-regular", "gtwo", "verify"])
)
@click.option("--max-n", type=int, default=6, show_default=True, help="verify: largest n.")
@click.option("--allow-large", is_flag=True, help="verify: lift the desk-scale guard.")
@click.option("--maximal-only", is_flag=True, help="verify: only maximal triangle-free graphs.")
@click.option("--strict-pi", is_flag=True, help="near-regular: use Pi(n-1, m).")
@threads_option
@format_option
def search_cmd(which, max_n, allow_large, maximal_only, strict_pi, threads, fmt):
    """Run an elimination screen or the exhaustive small-n check."""
    try:
        if which == "verify":
            reports = search.verify_conjecture(max_n, allow_large=allow_large, maximal_only=maximal_only)
            _emit_verify(reports, fmt)
            if not all(r.ok for r in reports):
                sys.exit(EXIT_MISMATCH)
            return
        if which == "regular-gamma":
            records = search.regular_gamma_screen(threads)
        elif which == "regular-degree":
            records = search.regular_degree_screen()
        elif which == "near-regular":
            records = search.near_regular_screen(strict_pi)
        else:
            records = search.gtwo_blowup_screen()
    except (GraphError, AmbiguousComparison) as exc:
        _fail(exc)
    if fmt == "json":
        for r in records:
            click.echo(r.to_json())
    else:
        _emit_rows(search.records_table(records), fmt)
    if which != "near-regular":
        click.echo(search.summary(records), err=fmt != "table")


def _emit_verify(reports, fmt: str) -> None:
    if fmt == "table":
        for r in reports:
            relation = "turan" if r.max_cycles == r.turan else f"{r.max_cycles} != turan {r.turan}"
            click.echo(
                f"n={r.n}: max = {relation} ({r.max_cycles}), unique = {'yes' if r.unique else 'no'}, "
                f"graphs = {r.graphs}"
            )
        return
    rows = [["n", "graphs", "max_cycles", "turan", "maximizers", "unique", "maximal_only"]]
    for r in reports:
        rows.append(
            [str(r.n), str(r.graphs), str(r.max_cycles), str(r.turan), str(r.maximizers),
             str(r.unique).lower(), str(r.maximal_only).lower()]
        )
    _emit_rows(rows, fmt)


if __name__ == "__main__":
    main()
