"""Barycentric drawings of Cayley graphs rendered to SVG with matplotlib."""

from __future__ import annotations

import math
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .cayley import CayleyGraph  # noqa: E402
from .embedding import RotationEmbedding, tail  # noqa: E402

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def tutte_layout(g: CayleyGraph, e: Optional[RotationEmbedding]) -> np.ndarray:
    """Pin the widest face on a circle and put every other vertex at the mean of its neighbours."""
    n = g.n_vertices
    if e is not None and e.faces:
        widest = max(range(len(e.faces)), key=lambda i: (len(e.face_vertices(i)), i == e.outer, -i))
        rim = []
        for d in e.faces[widest]:
            v = tail(g, d)
            if v not in rim:
                rim.append(v)
    else:
        rim = list(range(n)) if n <= 3 else []
        if not rim:
            # no embedding: fall back to a shell by distance from the identity
            far = max(range(n), key=lambda v: (len(g.vertices[v]), -v))
            rim = [v for v in range(n) if len(g.vertices[v]) == len(g.vertices[far])]
    pos = np.zeros((n, 2))
    for k, v in enumerate(rim):
        t = 2 * math.pi * k / len(rim)
        pos[v] = (math.cos(t), math.sin(t))
    inner = [v for v in range(n) if v not in set(rim)]
    if not inner:
        return pos
    slot = {v: i for i, v in enumerate(inner)}
    A = np.zeros((len(inner), len(inner)))
    rhs = np.zeros((len(inner), 2))
    for u, v in g.simple_edges():
        for a, b in ((u, v), (v, u)):
            if a not in slot:
                continue
            A[slot[a], slot[a]] += 1
            if b in slot:
                A[slot[a], slot[b]] -= 1
            else:
                rhs[slot[a]] += pos[b]
    pos[inner] = np.linalg.solve(A, rhs)
    return pos


def render_svg(g: CayleyGraph, e: Optional[RotationEmbedding], path: str, title: str = "") -> str:
    pos = tutte_layout(g, e)
    plt.rcParams["svg.hashsalt"] = "cayleyplane"
    fig, ax = plt.subplots(figsize=(6, 6))
    colors = {s: PALETTE[i % len(PALETTE)] for i, s in enumerate(g.presentation.symbols)}
    seen = set()
    for edge in g.edges:
        (x0, y0), (x1, y1) = pos[edge.u], pos[edge.v]
        label = edge.label if edge.label not in seen else None
        seen.add(edge.label)
        ax.plot([x0, x1], [y0, y1], color=colors[edge.label], lw=1.2, label=label, zorder=1)
        if edge.directed and edge.u != edge.v:
            ax.annotate("", xy=((x0 + 2 * x1) / 3, (y0 + 2 * y1) / 3), xytext=((2 * x0 + x1) / 3, (2 * y0 + y1) / 3),
                        arrowprops=dict(arrowstyle="->", color=colors[edge.label], lw=1.0))
    rim = g.ball.boundary if g.is_ball else frozenset()
    inside = [v for v in range(g.n_vertices) if v not in rim]
    ax.scatter(pos[inside, 0], pos[inside, 1], s=14, color="black", zorder=2)
    if rim:
        r = sorted(rim)
        ax.scatter(pos[r, 0], pos[r, 1], s=14, facecolor="white", edgecolor="black", zorder=2)
    if g.n_vertices <= 40:
        for v in range(g.n_vertices):
            ax.annotate(g.vertex_label(v), pos[v], fontsize=7, xytext=(3, 3), textcoords="offset points")
    ax.set_aspect("equal")
    ax.axis("off")
    ax.legend(loc="upper right", fontsize=8, frameon=False)
    if title:
        ax.set_title(title, fontsize=9)
    fig.savefig(path, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)
    return path
