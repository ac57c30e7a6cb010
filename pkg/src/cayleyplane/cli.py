"""Command-line front-end: ``cayleyplane analyze`` and ``cayleyplane fixtures``."""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

import click

from .fixtures import FIXTURES, lookup, mismatches
from .presentation import PresentationError, PresentationSyntaxError, parse_presentation
from .report import (
    EXIT_FAIL,
    EXIT_INCOMPLETE,
    EXIT_INPUT,
    Options,
    analyze,
    to_json,
    to_text,
    write_report,
)
from .wordproblem import Limits, ModelIncomplete


def _error(kind: str, message: str, code: int, **extra) -> None:
    click.echo(json.dumps({"error": kind, "message": message, **extra}, sort_keys=True), err=True)
    sys.exit(code)


def _read_source(source: str) -> str:
    if os.path.isfile(source):
        with open(source) as fh:
            return fh.read().strip()
    return source


def _options(radius, max_cosets, kb_max_rules, emit, budget, search, out, name) -> Options:
    base = Limits()
    limits = Limits(
        max_cosets=max_cosets or base.max_cosets,
        max_rules=kb_max_rules or base.max_rules,
        max_lhs_length=base.max_lhs_length,
    )
    return Options(
        radius=radius,
        limits=limits,
        vap_search=None if search == "none" else search,
        embedding_budget=budget,
        emit=emit,
        out=out,
        name=name,
    )


@click.group()
def main():
    """Cayley graphs, 2-bases and planarity checks for group presentations."""


@main.command("analyze")
@click.argument("source")
@click.option("--radius", default=4, show_default=True, help="Ball radius for infinite groups.")
@click.option("--max-cosets", type=int, default=None, help="Coset table cap.")
@click.option("--kb-max-rules", type=int, default=None, help="Knuth-Bendix rule cap.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.option("--emit", type=click.Choice(["dot", "svg", "none"]), default="none", show_default=True)
@click.option("--embedding-budget", default=10_000, show_default=True,
              help="Vertex rotations tried by --vap-search enumerate.")
@click.option("--vap-search", type=click.Choice(["apex", "enumerate", "none"]), default="apex", show_default=True)
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Directory for artifacts.")
@click.option("--name", default="cayley", show_default=True, help="Artifact file stem.")
def analyze_cmd(source, radius, max_cosets, kb_max_rules, fmt, emit, embedding_budget, vap_search, out, name):
    """Analyze SOURCE, a presentation like "<a,b | b^2, abAb>" or a file holding one."""
    if emit != "none" and out is None:
        out = "."
    opts = _options(radius, max_cosets, kb_max_rules, emit, embedding_budget, vap_search, out, name)
    try:
        p = parse_presentation(_read_source(source))
    except PresentationSyntaxError as exc:
        _error("syntax", str(exc), EXIT_INPUT, position=exc.position, expected=exc.expected)
    except PresentationError as exc:
        _error("presentation", str(exc), EXIT_INPUT)
    try:
        report, code, _ = analyze(p, opts)
    except ModelIncomplete as exc:
        _error("incomplete", str(exc), EXIT_INCOMPLETE,
               attempts=[{"backend": a.backend, "used": a.used} for a in exc.attempts])
    write_report(report)
    click.echo(to_json(report) if fmt == "json" else to_text(report), nl=fmt == "json")
    sys.exit(code)


def _run_fixture(args):
    fixture, opts = args
    try:
        report, _, _ = analyze(parse_presentation(fixture.text), replace(opts, radius=fixture.radius, name=fixture.name))
    except ModelIncomplete as exc:
        return fixture, None, str(exc)
    return fixture, report, None


@main.command("fixtures")
@click.option("--jobs", default=1, show_default=True, help="Worker processes.")
@click.option("--emit", type=click.Choice(["dot", "svg", "none"]), default="none", show_default=True)
@click.option("--out", type=click.Path(file_okay=False), default=None)
def fixtures_cmd(jobs, emit, out):
    """Run the built-in corpus and print a verdict table."""
    if emit != "none" and out is None:
        out = "."
    opts = Options(emit=emit, out=out)
    work = [(f, opts) for f in FIXTURES]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run_fixture, work))
    else:
        results = [_run_fixture(w) for w in work]
    cols = ["fixture", "scope", "vap", "flat", "planar", "kappa", "ball_vap", "expect"]
    click.echo("\t".join(cols))
    bad = 0
    for fixture, report, err in results:
        if report is None:
            bad += 1
            click.echo("\t".join([fixture.name, "-", "-", "-", "-", "-", "-", f"incomplete: {err}"]))
            continue
        write_report(report)
        miss = mismatches(fixture, report)
        bad += bool(miss)
        status = "ok" if not miss else "MISMATCH " + ", ".join(f"{k}={g!r}!={w!r}" for k, w, g in miss)

        def cell(key, yes="pass", no="fail"):
            v = lookup(report, key)
            return "-" if v is None else (yes if v else no) if isinstance(v, bool) else str(v)

        click.echo("\t".join([
            fixture.name,
            report["graph"]["scope"],
            cell("vap.overall"),
            cell("flatness.flat", "flat", "not-flat"),
            cell("planarity.planar", "yes", "no"),
            report["connectivity"]["label"],
            cell("ball_vap.consistent", "consistent", "inconsistent"),
            status,
        ]))
    sys.exit(EXIT_FAIL if bad else 0)


if __name__ == "__main__":
    main()
