from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayleyplane.complexes import build_simplified_complex, flatness_verdict
from cayleyplane.cyclespace import bits, relator_circuits
from cayleyplane.embedding import enumerate_faces

from helpers import BALLS, FINITE, PLANAR_FINITE, graph, named


@pytest.mark.parametrize("name, cells", [("z5", 1), ("d3", 5), ("d4", 6), ("cube", 6), ("klein3", 4)])
def test_cell_counts(name, cells):
    x = build_simplified_complex(named(name))
    assert len(x.two_cells) == cells


def test_ladder_ball_cells_are_squares():
    x = build_simplified_complex(graph("<a,b | b^2, abAb>", 3))
    assert len(x.two_cells) == 4
    assert all(len(bits(c)) == 4 for c in x.two_cells)


@pytest.mark.parametrize("name", sorted(FINITE))
def test_cells_are_distinct_relator_circuits(name):
    g = named(name)
    x = build_simplified_complex(g)
    assert len(set(x.two_cells)) == len(x.two_cells)
    assert 0 not in x.two_cells
    assert set(x.two_cells) == set(relator_circuits(g).circuits) - {0}


def test_build_is_idempotent():
    g = named("d5")
    a, b = build_simplified_complex(g), build_simplified_complex(g)
    assert a.two_cells == b.two_cells and a.provenance == b.provenance
    assert a.to_json() == b.to_json()


@pytest.mark.parametrize("name", PLANAR_FINITE)
def test_planar_finite_groups_are_flat(name):
    v = flatness_verdict(build_simplified_complex(named(name)))
    assert v.flat and v.reason == "two-basis-pass" and v.scope == "full"


@pytest.mark.parametrize("name", PLANAR_FINITE)
def test_flat_faces_are_cells_plus_at_most_one_more(name):
    x = build_simplified_complex(named(name))
    v = flatness_verdict(x)
    faces = enumerate_faces(v.embedding)
    n = len(x.two_cells)
    assert faces[:n] == x.two_cells
    # one extra face only when the cells fall one short of closing the sphere
    extra = faces[n:]
    assert len(extra) <= 1
    total = 0
    for c in x.two_cells:
        total ^= c
    assert extra == ([total] if total else [])


def test_cyclic_group_has_two_faces():
    v = flatness_verdict(build_simplified_complex(named("z5")))
    assert len(v.embedding.faces) == 2


def test_redundant_generator_is_over_incident():
    v = flatness_verdict(build_simplified_complex(named("dihedral-c")))
    assert not v.flat and v.reason == "edge-over-incident"
    assert len(v.witness["cells"]) > 2
    assert v.scope.startswith("ball")


def test_k5_group_is_over_incident():
    v = flatness_verdict(build_simplified_complex(named("z5-k5")))
    assert not v.flat and v.reason == "edge-over-incident"


def test_k33_group_is_not_flat():
    v = flatness_verdict(build_simplified_complex(named("z6-k33")))
    assert not v.flat and v.reason in ("edge-over-incident", "skeleton-nonplanar")


@pytest.mark.parametrize("name", ["ladder", "dihedral"])
def test_balls_pass_without_gluing(name):
    v = flatness_verdict(build_simplified_complex(named(name)))
    assert v.flat and v.reason == "two-basis-pass"
    assert v.embedding.is_valid()


def test_free_product_ball_is_flat_and_trivial():
    # every relator walk bounds a single cycle; nothing is shared
    x = build_simplified_complex(named("z4z4"))
    assert flatness_verdict(x).flat


def test_json_output():
    x = build_simplified_complex(named("d4"))
    data = json.loads(x.to_json())
    assert len(data["cells"]) == 6
    cell = data["cells"][0]
    assert set(cell) == {"boundary", "relator", "base"}
    assert len(cell["boundary"]) == 4
    v = flatness_verdict(x).to_dict()
    assert v == {"flat": True, "reason": "two-basis-pass", "witness": None, "scope": "full"}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(FINITE) + sorted(BALLS)))
def test_cell_boundaries_are_even(name):
    g = named(name)
    for c in build_simplified_complex(g).two_cells:
        degree = [0] * g.n_vertices
        for e in bits(c):
            u, v = g.endpoints(e)
            degree[u] += 1
            degree[v] += 1
        assert all(d % 2 == 0 for d in degree)
