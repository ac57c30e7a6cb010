"""Simplified Cayley complexes and the flatness verdict.

Cells are created already deduplicated: one 2-cell per distinct nonempty
circuit of a relator walk.  Walks of ``b^2`` cross the merged involution
edge twice and so bound nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .cayley import CayleyGraph
from .cyclespace import CircuitBasis, bits, generates_cycle_space, relator_circuits
from .embedding import (
    CannotRealize,
    NonPlanarWitness,
    RotationEmbedding,
    embedding_from_two_basis,
    test_planarity,
)
from .presentation import Presentation
from .vapcheck import scope_of


@dataclass
class ComplexModel:
    skeleton: CayleyGraph
    two_cells: list[int]
    provenance: list[tuple[str, int]]

    @property
    def basis(self) -> CircuitBasis:
        return CircuitBasis(list(self.two_cells), list(self.provenance), self.skeleton.n_edges)

    def to_dict(self) -> dict:
        g = self.skeleton
        return {
            "skeleton": g.to_dict(),
            "cells": [
                {"boundary": bits(c), "relator": r, "base": g.vertex_label(b)}
                for c, (r, b) in zip(self.two_cells, self.provenance)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def build_simplified_complex(g: CayleyGraph, p: Optional[Presentation] = None) -> ComplexModel:
    b = relator_circuits(g, p)
    return ComplexModel(g, list(b.circuits), list(b.provenance))


@dataclass(frozen=True)
class FlatnessVerdict:
    flat: bool
    reason: str
    witness: Optional[dict] = None
    scope: str = "full"
    embedding: Optional[RotationEmbedding] = None

    def __bool__(self):
        return self.flat

    def to_dict(self) -> dict:
        return {"flat": self.flat, "reason": self.reason, "witness": self.witness, "scope": self.scope}


def flatness_verdict(x: ComplexModel) -> FlatnessVerdict:
    """Flat iff the cells form a 2-basis that glues into a plane embedding.

    Checks in order: every edge on at most two cells, the cells span the
    cycle space, the skeleton is planar, and (finite skeletons only) the
    cells realize as the faces of an embedding.  On a ball the span test
    is restricted to the deep interior and no gluing is attempted.
    """
    g = x.skeleton
    scope = scope_of(g)
    basis = x.basis
    counts = basis.incidence()
    for e, c in enumerate(counts):
        if c > 2:
            cells = basis.containing(e)
            return FlatnessVerdict(False, "edge-over-incident", {"edge": e, "cells": cells}, scope)
    if not generates_cycle_space(basis, g):
        return FlatnessVerdict(False, "not-generating", None, scope)
    planar = test_planarity(g)
    if isinstance(planar, NonPlanarWitness):
        return FlatnessVerdict(False, "skeleton-nonplanar", planar.to_dict(), scope)
    if g.is_ball:
        return FlatnessVerdict(True, "two-basis-pass", None, scope, planar)
    try:
        emb = embedding_from_two_basis(g, basis)
    except CannotRealize as exc:
        return FlatnessVerdict(False, "gluing-failure", {"stage": exc.stage, "detail": exc.detail}, scope)
    return FlatnessVerdict(True, "two-basis-pass", None, scope, emb)
