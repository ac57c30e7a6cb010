"""End-to-end analysis of one presentation and its report."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, asdict
from typing import Optional

from .cayley import CayleyGraph, build_ball, build_graph
from .complexes import build_simplified_complex, flatness_verdict
from .embedding import (
    NonPlanarWitness,
    ball_vap_diagnostic,
    check_translate_faces,
    connectivity,
    test_planarity,
)
from .presentation import Presentation, parse_presentation
from .vapcheck import check_vap_presentation
from .wordproblem import Limits, solve_word_problem

SCHEMA = 1

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCOMPLETE = 2
EXIT_INPUT = 3


@dataclass
class Options:
    radius: int = 4
    limits: Limits = field(default_factory=Limits)
    vap_search: Optional[str] = "apex"
    embedding_budget: int = 10_000
    emit: str = "none"
    out: Optional[str] = None
    name: str = "cayley"


def _skipped(reason: str) -> dict:
    return {"skipped": reason}


def analyze(p: Presentation, opts: Options = Options()) -> tuple[dict, int, CayleyGraph]:
    """Run every check on ``p`` and return ``(report, exit_code, graph)``.

    Raises :class:`~cayleyplane.wordproblem.ModelIncomplete` if no backend
    solves the word problem.
    """
    m = solve_word_problem(p, opts.limits)
    g = build_graph(m, p) if m.order is not None else build_ball(m, p, opts.radius)
    ident = g.index[m.normal_form("")]
    report: dict = {
        "schema": SCHEMA,
        "presentation": {"text": p.to_text(), **p.to_dict()},
        "backend": {"kind": m.kind, "order": m.order, "limits": asdict(opts.limits)},
        "graph": {
            "scope": f"ball({g.ball.radius})" if g.is_ball else "full",
            "vertices": g.n_vertices,
            "edges": g.n_edges,
            "degree": g.degree(ident),
            "boundary": len(g.ball.boundary) if g.is_ball else 0,
        },
    }

    vap = check_vap_presentation(p, m, g)
    report["vap"] = vap.to_dict()

    planar = test_planarity(g)
    emb = None
    if isinstance(planar, NonPlanarWitness):
        report["planarity"] = {"planar": False, "witness": planar.to_dict()}
    else:
        emb = planar
        report["planarity"] = {"planar": True, "faces": len(emb.faces), "euler": emb.euler_characteristic()}

    report["connectivity"] = connectivity(g).to_dict()

    x = build_simplified_complex(g, p)
    flat = flatness_verdict(x)
    report["complex"] = {"cells": len(x.two_cells)}
    report["flatness"] = flat.to_dict()
    if flat.embedding is not None and not g.is_ball:
        emb = flat.embedding

    if not g.is_ball:
        report["ball_vap"] = _skipped("full graph")
    elif emb is None:
        report["ball_vap"] = _skipped("skeleton not planar")
    else:
        diag = ball_vap_diagnostic(g, emb, opts.vap_search, opts.embedding_budget)
        report["ball_vap"] = diag.to_dict()
        if diag.consistent and diag.embedding is not None:
            emb = diag.embedding

    if g.is_ball:
        report["translate_faces"] = _skipped("ball")
    elif not flat.flat:
        report["translate_faces"] = _skipped("no realized embedding")
    else:
        t = check_translate_faces(g, emb)
        report["translate_faces"] = {"ok": t.ok, "face": t.face, "element": t.element}

    report["artifacts"] = _emit(g, emb, opts, report)
    code = EXIT_PASS if vap.overall and flat.flat else EXIT_FAIL
    report["exit_code"] = code
    return report, code, g


def _emit(g: CayleyGraph, emb, opts: Options, report: dict) -> dict:
    paths: dict[str, str] = {}
    if opts.out is None:
        return paths
    os.makedirs(opts.out, exist_ok=True)
    base = os.path.join(opts.out, opts.name)
    if opts.emit == "dot":
        paths["dot"] = base + ".dot"
        with open(paths["dot"], "w") as fh:
            fh.write(g.to_dot())
    elif opts.emit == "svg":
        from .plotting import render_svg

        paths["svg"] = render_svg(g, emb, base + ".svg", report["presentation"]["text"])
    paths["json"] = base + ".json"
    return paths


def write_report(report: dict) -> None:
    path = report.get("artifacts", {}).get("json")
    if path:
        with open(path, "w") as fh:
            fh.write(to_json(report) + "\n")


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def _flatten(prefix: str, value, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], out)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, json.dumps(value) if not isinstance(value, str) else value))


def to_text(report: dict) -> str:
    """Tab-delimited ``key<TAB>value`` lines, keys dotted and sorted."""
    rows: list[tuple[str, str]] = []
    _flatten("", report, rows)
    return "\n".join(f"{k}\t{v}" for k, v in rows) + "\n"


def analyze_text(text: str, opts: Options = Options()) -> tuple[dict, int]:
    report, code, _ = analyze(parse_presentation(text), opts)
    return report, code
