"""Cayley graphs and balls with involution edges merged."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .presentation import Presentation
from .wordproblem import GroupModel


class BallUnsupported(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    label: str
    directed: bool


@dataclass(frozen=True)
class BallInfo:
    radius: int
    distance: tuple[int, ...]

    @property
    def boundary(self) -> frozenset[int]:
        return frozenset(i for i, d in enumerate(self.distance) if d == self.radius)

    @property
    def interior(self) -> frozenset[int]:
        return frozenset(i for i, d in enumerate(self.distance) if d < self.radius)


@dataclass
class CayleyGraph:
    """Labeled Cayley graph (or ball) on canonical words.

    A directed edge ``(u, v, s)`` joins ``u`` to ``u s``; an involution
    generator contributes one undirected edge per pair ``{g, g b}``.
    ``step`` maps ``(vertex, letter)`` to ``(edge, forward)``: following
    ``letter`` from ``vertex`` traverses ``edge`` in its stored direction
    iff ``forward``.
    """

    presentation: Presentation
    model: GroupModel
    vertices: list[str]
    edges: list[Edge]
    ball: Optional[BallInfo] = None
    index: dict[str, int] = field(default_factory=dict)
    step: dict[tuple[int, str], tuple[int, bool]] = field(default_factory=dict)

    @property
    def is_ball(self) -> bool:
        return self.ball is not None

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def follow(self, vertex: int, letter: str) -> Optional[tuple[int, int, bool]]:
        """Return ``(target, edge, forward)`` or ``None`` if the edge leaves the ball."""
        hit = self.step.get((vertex, letter))
        if hit is None:
            return None
        e, forward = hit
        edge = self.edges[e]
        if edge.directed:
            target = edge.v if forward else edge.u
        else:
            target = edge.v if edge.u == vertex else edge.u
        return target, e, forward

    def endpoints(self, e: int) -> tuple[int, int]:
        edge = self.edges[e]
        return edge.u, edge.v

    def degree(self, v: int) -> int:
        return sum(1 for x in self.presentation.alphabet if (v, x) in self.step)

    def neighbors(self, v: int) -> list[int]:
        out = []
        for x in self.presentation.alphabet:
            hit = self.follow(v, x)
            if hit is not None:
                out.append(hit[0])
        return out

    def simple_edges(self) -> list[tuple[int, int]]:
        """Distinct vertex pairs joined by a non-loop edge, in edge order."""
        seen: dict[tuple[int, int], None] = {}
        for edge in self.edges:
            if edge.u != edge.v:
                seen.setdefault((min(edge.u, edge.v), max(edge.u, edge.v)))
        return list(seen)

    def vertex_label(self, v: int) -> str:
        return self.vertices[v] or "e"

    def to_dict(self) -> dict:
        data = {
            "vertices": list(self.vertices),
            "edges": [
                {"u": e.u, "v": e.v, "label": e.label, "directed": e.directed}
                for e in self.edges
            ],
        }
        if self.ball is not None:
            data["ball"] = {
                "radius": self.ball.radius,
                "boundary": sorted(self.ball.boundary),
            }
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dot(self) -> str:
        lines = ["digraph cayley {"]
        for i in range(self.n_vertices):
            attrs = f'label="{self.vertex_label(i)}"'
            if self.ball is not None and i in self.ball.boundary:
                attrs += ", shape=box"
            lines.append(f"  {i} [{attrs}];")
        for e in self.edges:
            arrow = "" if e.directed else ", dir=none"
            lines.append(f'  {e.u} -> {e.v} [label="{e.label}"{arrow}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _assemble(p: Presentation, m: GroupModel, vertices: list[str], ball: Optional[BallInfo]) -> CayleyGraph:
    index = {w: i for i, w in enumerate(vertices)}
    edges: list[Edge] = []
    step: dict[tuple[int, str], tuple[int, bool]] = {}
    for u, w in enumerate(vertices):
        for g in p.generators:
            s = g.symbol
            v = index.get(m.normal_form(w + s))
            if v is None:
                continue
            if g.involution:
                if (u, s) in step:
                    continue
                e = len(edges)
                edges.append(Edge(min(u, v), max(u, v), s, False))
                step[(u, s)] = (e, u <= v)
                step[(v, s)] = (e, v < u)
            else:
                e = len(edges)
                edges.append(Edge(u, v, s, True))
                step[(u, s)] = (e, True)
                step[(v, s.upper())] = (e, False)
    return CayleyGraph(p, m, vertices, edges, ball, index, step)


def _bfs(m: GroupModel, p: Presentation, radius: Optional[int]) -> tuple[list[str], list[int]]:
    vertices = [m.normal_form("")]
    dist = [0]
    seen = {vertices[0]: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        if radius is not None and dist[i] >= radius:
            continue
        for x in p.alphabet:
            w = m.normal_form(vertices[i] + x)
            if w not in seen:
                seen[w] = len(vertices)
                vertices.append(w)
                dist.append(dist[i] + 1)
                queue.append(seen[w])
    return vertices, dist


def build_graph(m: GroupModel, p: Presentation) -> CayleyGraph:
    """Whole Cayley graph of a finite group."""
    if m.order is None:
        raise ValueError("build_graph needs a finite model; use build_ball")
    vertices, _ = _bfs(m, p, None)
    return _assemble(p, m, vertices, None)


def build_ball(m: GroupModel, p: Presentation, radius: int) -> CayleyGraph:
    """Induced subgraph on the elements of word length at most ``radius``."""
    if radius < 1:
        raise ValueError("radius must be at least 1")
    vertices, dist = _bfs(m, p, radius)
    return _assemble(p, m, vertices, BallInfo(radius, tuple(dist)))


@dataclass(frozen=True)
class Translation:
    element: str
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]


def translate(g: CayleyGraph, x: str) -> Translation:
    """Left multiplication ``v -> x v`` as a labeled-graph automorphism."""
    if g.is_ball:
        raise BallUnsupported("left translation does not preserve a ball")
    m = g.model
    x = m.normal_form(x)
    vmap = tuple(g.index[m.normal_form(x + w)] for w in g.vertices)
    emap = []
    for edge in g.edges:
        e, _ = g.step[(vmap[edge.u], edge.label)]
        if not edge.directed and g.edges[e].label != edge.label:
            raise AssertionError("label mismatch")
        emap.append(e)
    return Translation(x, vmap, tuple(emap))
