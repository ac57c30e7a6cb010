"""Built-in corpus of presentations with expected verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class Fixture:
    name: str
    text: str
    radius: int = 4
    expect: dict = field(default_factory=dict)


# expectation keys are dotted report paths
FIXTURES = (
    Fixture("cyclic-5", "<a | a^5>", expect={"vap.overall": True, "flatness.flat": True, "complex.cells": 1}),
    Fixture("ladder", "<a,b | b^2, abAb>", expect={"vap.overall": True, "flatness.flat": True, "ball_vap.consistent": True}),
    Fixture("dihedral-inf", "<a,b | b^2, abab>", expect={"vap.overall": True, "flatness.flat": True}),
    Fixture("dihedral-inf+c", "<a,b,c | b^2, abab, Cab>", expect={"vap.overall": False, "vap.incidence_ok": False, "flatness.flat": False}),
    Fixture("dihedral-8", "<a,b | a^4, b^2, abab>", expect={"vap.overall": True, "flatness.flat": True, "complex.cells": 6, "translate_faces.ok": True}),
    Fixture("z4*z4", "<a,b | a^4, b^4>", radius=3, expect={"connectivity.kappa": 1, "planarity.planar": True}),
    Fixture(
        "z4*z4+cd",
        "<a,b,c,d | a^4, b^4, Cab, Daabbaa>",
        expect={"planarity.planar": True, "connectivity.kappa": 3, "ball_vap.consistent": False},
    ),
)


def lookup(report: dict, key: str):
    value = report
    for part in key.split("."):
        if not isinstance(value, dict) or part not in value:
            return None
        value = value[part]
    return value


def mismatches(fixture: Fixture, report: dict) -> list[tuple[str, object, Optional[object]]]:
    out = []
    for key, want in sorted(fixture.expect.items()):
        got = lookup(report, key)
        if got != want:
            out.append((key, want, got))
    return out
