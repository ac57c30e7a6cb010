"""Relabel a Cayley graph's vertices and edges at random."""

from __future__ import annotations

from cayleyplane.cayley import BallInfo, CayleyGraph, Edge


def shuffled(g: CayleyGraph, rnd) -> CayleyGraph:
    vperm = list(range(g.n_vertices))
    eperm = list(range(g.n_edges))
    rnd.shuffle(vperm)
    rnd.shuffle(eperm)
    # vperm[old] = new, eperm[old] = new
    vertices = [""] * g.n_vertices
    for old, new in enumerate(vperm):
        vertices[new] = g.vertices[old]
    edges: list = [None] * g.n_edges
    for old, edge in enumerate(g.edges):
        u, v = vperm[edge.u], vperm[edge.v]
        if not edge.directed and u > v:
            u, v = v, u
        edges[eperm[old]] = Edge(u, v, edge.label, edge.directed)
    step = {}
    for (x, letter), (e, forward) in g.step.items():
        edge = g.edges[e]
        new = edges[eperm[e]]
        if not edge.directed:
            forward = vperm[x] == new.u
        step[(vperm[x], letter)] = (eperm[e], forward)
    ball = None
    if g.ball is not None:
        dist = [0] * g.n_vertices
        for old, new in enumerate(vperm):
            dist[new] = g.ball.distance[old]
        ball = BallInfo(g.ball.radius, tuple(dist))
    index = {w: i for i, w in enumerate(vertices)}
    return CayleyGraph(g.presentation, g.model, vertices, edges, ball, index, step)
