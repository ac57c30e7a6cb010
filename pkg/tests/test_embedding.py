from __future__ import annotations

import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayleyplane.cyclespace import CircuitBasis, bits, relator_circuits
from cayleyplane.embedding import (
    CannotRealize,
    NonPlanarWitness,
    RotationEmbedding,
    ball_vap_diagnostic,
    check_translate_faces,
    connectivity,
    embedding_from_two_basis,
    enumerate_faces,
    head,
    search_rotation_systems,
    tail,
    test_planarity as planarity,
    trace_faces,
)

from helpers import BALLS, FINITE, PLANAR_FINITE, graph, named

AUGMENTED = "<a,b,c,d | a^4, b^4, Cab, Daabbaa>"


@pytest.mark.parametrize("name", sorted(FINITE))
def test_planarity_matches_networkx(name):
    g = named(name)
    result = planarity(g)
    expected = nx.check_planarity(nx.Graph(list(g.simple_edges())))[0]
    assert isinstance(result, RotationEmbedding) == expected == (name in PLANAR_FINITE)
    if expected:
        assert result.is_valid()


@pytest.mark.parametrize("name, kind", [("z5-k5", "K5"), ("z6-k33", "K3,3")])
def test_kuratowski_witness(name, kind):
    w = planarity(named(name))
    assert isinstance(w, NonPlanarWitness)
    assert w.kind == kind and w.to_dict()["kuratowski"] == kind
    assert len(w.edges) == (10 if kind == "K5" else 9)


def test_dihedral_faces():
    g = named("d4")
    e = planarity(g)
    sizes = sorted(len(f) for f in e.faces)
    assert sizes == [4, 4, 4, 4, 4, 4]
    assert e.euler_characteristic() == 2


def test_trace_faces_covers_every_dart_once():
    e = planarity(named("cube"))
    darts = sorted(d for f in trace_faces(e.graph, e.rotation) for d in f)
    assert darts == list(range(2 * e.graph.n_edges))


def test_embedding_json():
    e = planarity(named("z5"))
    data = json.loads(e.to_json())
    assert len(data["faces"]) == 2 and data["faces"][0] == [0, 1, 2, 3, 4]


# -- realizing a 2-basis ----------------------------------------------------

@pytest.mark.parametrize("name", ["z5", "d3", "d4", "d6", "klein3", "cube"])
def test_relator_basis_realizes(name):
    g = named(name)
    b = relator_circuits(g)
    e = embedding_from_two_basis(g, b)
    assert e.is_valid()
    faces = enumerate_faces(e)
    assert faces[: len(b)] == list(b.circuits)
    assert len(faces) - len(b) <= 1


def test_realized_embedding_has_translate_invariant_faces():
    g = named("d4")
    e = embedding_from_two_basis(g, relator_circuits(g))
    assert check_translate_faces(g, e)


def test_swapped_rotation_breaks_translate_invariance():
    g = named("d4")
    e = embedding_from_two_basis(g, relator_circuits(g))
    rotation = {v: list(ds) for v, ds in e.rotation.items()}
    rotation[0][0], rotation[0][1] = rotation[0][1], rotation[0][0]
    bent = RotationEmbedding(g, rotation)
    check = check_translate_faces(g, bent)
    assert not check and check.face is not None


def test_realize_stage_incidence():
    g = graph("<a,b,c | b^2, abab, Cab>", 2)
    with pytest.raises(CannotRealize) as info:
        embedding_from_two_basis(g, relator_circuits(g))
    assert info.value.stage == "incidence"


def test_realize_stage_not_a_cycle():
    g = named("d4")
    b = relator_circuits(g)
    # a square plus one stray edge is not a cycle
    odd = CircuitBasis([b.circuits[0] | (1 << bits(b.circuits[1])[0])], [], g.n_edges)
    with pytest.raises(CannotRealize) as info:
        embedding_from_two_basis(g, odd)
    assert info.value.stage == "gluing"


def test_realize_stage_euler():
    # two cells leave most of the graph uncovered
    g = named("d4")
    b = relator_circuits(g)
    with pytest.raises(CannotRealize) as info:
        embedding_from_two_basis(g, CircuitBasis(b.circuits[:2], b.provenance[:2], g.n_edges))
    assert info.value.stage in ("gluing", "euler")


# -- connectivity -----------------------------------------------------------

@pytest.mark.parametrize("text, radius, kappa", [
    ("<a | a^5>", None, 2),
    ("<a,b | a^4, b^2, abab>", None, 3),
    ("<a,b,c | a^2, b^2, c^2, abab, acac, bcbc>", None, 3),
    ("<a,b | a^4, b^4>", 3, 1),
    ("<a,b | b^2, abAb>", 3, 2),
])
def test_connectivity_values(text, radius, kappa):
    report = connectivity(graph(text, radius))
    assert report.kappa == kappa
    assert len(report.witness) == (kappa if kappa < 3 else 0)


@pytest.mark.parametrize("text, kappa", [("<a | a^2>", 1), ("<a | a^3>", 2)])
def test_connectivity_of_complete_graphs(text, kappa):
    # no separator exists, so there is no witness
    report = connectivity(graph(text))
    assert report.kappa == kappa and report.witness == ()


def test_connectivity_cut_vertex_of_free_product():
    g = graph("<a,b | a^4, b^4>", 3)
    report = connectivity(g)
    assert report.witness == (g.vertex_label(0),)
    assert report.scope.startswith("ball-interior")
    assert report.to_dict()["label"] == "1"


def test_connectivity_witness_separates():
    g = named("z7")
    report = connectivity(g)
    G = nx.Graph(list(g.simple_edges()))
    labels = {g.vertex_label(v): v for v in range(g.n_vertices)}
    G.remove_nodes_from(labels[w] for w in report.witness)
    assert not nx.is_connected(G)


# -- boundary diagnostic on balls -------------------------------------------

def test_full_graph_diagnostic_is_trivial():
    g = named("d4")
    assert ball_vap_diagnostic(g, planarity(g)).consistent


@pytest.mark.parametrize("name", ["ladder", "dihedral"])
def test_diagnostic_consistent(name):
    g = named(name)
    v = ball_vap_diagnostic(g, planarity(g))
    assert v.consistent and v.missing == 0
    assert g.ball.boundary <= v.embedding.face_vertices(v.face)


def test_diagnostic_inconsistent_on_augmented_ball():
    g = graph(AUGMENTED, 3)
    v = ball_vap_diagnostic(g, planarity(g), search="apex")
    assert not v.consistent and v.search_method == "apex"
    assert v.missing > 0 and v.witness is not None
    assert v.to_dict()["boundary_missing"] == v.missing


def test_diagnostic_without_search_judges_given_embedding():
    g = graph(AUGMENTED, 2)
    v = ball_vap_diagnostic(g, planarity(g), search=None)
    assert not v.consistent and not v.searched


def test_diagnostic_truncated_enumeration():
    g = graph(AUGMENTED, 2)
    v = ball_vap_diagnostic(g, planarity(g), search="enumerate", budget=50)
    assert not v.consistent and v.search_method == "enumerate-truncated"


def test_diagnostic_apex_repairs_given_embedding():
    # the planarity embedding misses part of the rim but another embedding does not
    g = graph(AUGMENTED, 2)
    assert not ball_vap_diagnostic(g, planarity(g), search=None).consistent
    v = ball_vap_diagnostic(g, planarity(g), search="apex")
    assert v.consistent and g.ball.boundary <= v.embedding.face_vertices(v.face)


def test_diagnostic_rejects_unknown_method():
    g = graph(AUGMENTED, 2)
    e = planarity(g)
    with pytest.raises(ValueError):
        ball_vap_diagnostic(g, e, search="guess")


@pytest.mark.parametrize("text, radius", [
    ("<a,b | b^2, abAb>", 2),
    ("<a,b | b^2, abAb>", 3),
    ("<a,b | b^2, abab>", 3),
    ("<a,b | a^4, b^4>", 2),
    ("<a,b | a^3, b^3>", 2),
    ("<a,b,c | a^2, b^2, c^2>", 3),
    ("<a,b,c | b^2, abab, Cab>", 2),
    (AUGMENTED, 1),
])
def test_enumeration_agrees_with_apex_search(text, radius):
    # brute force over rotation systems is an oracle for the apex construction
    g = graph(text, radius)
    found, exhausted, tried = search_rotation_systems(g, g.ball.boundary, budget=100_000)
    assert exhausted or found
    apex = ball_vap_diagnostic(g, planarity(g), search="apex")
    assert found == apex.consistent


def test_enumeration_on_tree_is_immediate():
    g = graph("<a,b,c | a^2, b^2, c^2>", 3)
    assert search_rotation_systems(g, g.ball.boundary) == (True, True, 0)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(BALLS)), st.data())
def test_planarity_embedding_of_balls_is_valid(name, data):
    g = named(name)
    e = planarity(g)
    assert e.is_valid()
    i = data.draw(st.integers(0, len(e.faces) - 1))
    assert all(head(g, d) == tail(g, e.faces[i][(k + 1) % len(e.faces[i])])
               for k, d in enumerate(e.faces[i]))

