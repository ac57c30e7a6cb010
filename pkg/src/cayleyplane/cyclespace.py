"""The finitary cycle space over GF(2).

Edge sets are Python ints used as bitsets over the graph's edge index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .cayley import CayleyGraph
from .presentation import Presentation


class LeavesBall(ValueError):
    def __init__(self, relator: str, base: int, prefix: str):
        self.relator = relator
        self.base = base
        self.prefix = prefix
        super().__init__(f"walk of {relator!r} from vertex {base} leaves the ball after {prefix!r}")


# -- GF(2) elimination -----------------------------------------------------

def lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


class Echelon:
    """Incremental row-echelon form keyed by lowest set bit."""

    def __init__(self):
        self.rows: dict[int, int] = {}

    def reduce(self, vec: int) -> int:
        while vec:
            pivot = lowest_bit(vec)
            row = self.rows.get(pivot)
            if row is None:
                return vec
            vec ^= row
        return 0

    def add(self, vec: int) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        self.rows[lowest_bit(vec)] = vec
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    @property
    def rank(self) -> int:
        return len(self.rows)


def gf2_rank(vectors) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def edge_set(indices) -> int:
    vec = 0
    for i in indices:
        vec |= 1 << i
    return vec


def is_even_subgraph(g: CayleyGraph, vec: int) -> bool:
    parity: dict[int, int] = {}
    for e in bits(vec):
        u, v = g.endpoints(e)
        parity[u] = parity.get(u, 0) ^ 1
        parity[v] = parity.get(v, 0) ^ 1
    return not any(parity.values())


def cycle_space_dimension(g: CayleyGraph) -> int:
    return g.n_edges - g.n_vertices + _components(g.n_vertices, [g.endpoints(e) for e in range(g.n_edges)])


def _components(n: int, pairs) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = n
    for u, v in pairs:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            count -= 1
    return count


def fundamental_cycles(n: int, pairs: list[tuple[int, int]], edge_ids: Optional[list[int]] = None) -> list[int]:
    """One cycle per non-tree edge of a BFS spanning forest."""
    if edge_ids is None:
        edge_ids = list(range(len(pairs)))
    adj: dict[int, list[tuple[int, int]]] = {}
    for (u, v), e in zip(pairs, edge_ids):
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    parent: dict[int, tuple[int, int]] = {}
    depth: dict[int, int] = {}
    tree: set[int] = set()
    for root in sorted(adj):
        if root in depth:
            continue
        depth[root] = 0
        queue = [root]
        for x in queue:
            for y, e in adj[x]:
                if y not in depth:
                    depth[y] = depth[x] + 1
                    parent[y] = (x, e)
                    tree.add(e)
                    queue.append(y)
    cycles = []
    for (u, v), e in zip(pairs, edge_ids):
        if e in tree:
            continue
        vec = 1 << e
        a, b = u, v
        while a != b:
            if depth[a] >= depth[b]:
                a, t = parent[a]
            else:
                b, t = parent[b]
            vec ^= 1 << t
        cycles.append(vec)
    return cycles


# -- walks and circuits ----------------------------------------------------

@dataclass(frozen=True)
class ClosedWalk:
    base: int
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    forward: tuple[bool, ...]
    relator: Optional[str] = None


def walk_of_relator(g: CayleyGraph, r: str, base: int) -> ClosedWalk:
    """Trace ``r`` letter by letter from ``base``."""
    r = g.presentation.normalize(r)
    verts = [base]
    edges = []
    fwd = []
    v = base
    for i, x in enumerate(r):
        hit = g.follow(v, x)
        if hit is None:
            raise LeavesBall(r, base, r[:i + 1])
        v, e, f = hit
        verts.append(v)
        edges.append(e)
        fwd.append(f)
    if v != base:
        raise ValueError(f"{r!r} does not close up at vertex {base}; not a relation")
    return ClosedWalk(base, tuple(verts), tuple(edges), tuple(fwd), r)


def circuit_of_walk(w: ClosedWalk) -> int:
    """Edges traversed an odd number of times."""
    vec = 0
    for e in w.edges:
        vec ^= 1 << e
    return vec


@dataclass
class CircuitBasis:
    circuits: list[int]
    provenance: list[tuple[str, int]] = field(default_factory=list)
    n_edges: int = 0

    @property
    def rank(self) -> int:
        return gf2_rank(self.circuits)

    def incidence(self) -> list[int]:
        counts = [0] * self.n_edges
        for c in self.circuits:
            for e in bits(c):
                counts[e] += 1
        return counts

    @property
    def max_incidence(self) -> int:
        return max(self.incidence(), default=0)

    def containing(self, e: int) -> list[int]:
        return [i for i, c in enumerate(self.circuits) if c >> e & 1]

    def __len__(self):
        return len(self.circuits)


def relator_circuits(g: CayleyGraph, p: Optional[Presentation] = None) -> CircuitBasis:
    """Distinct nonempty circuits of all relator-induced walks.

    On a ball only walks that stay inside the ball are used.
    """
    p = p or g.presentation
    seen: dict[int, tuple[str, int]] = {}
    for r in p.relators:
        for base in range(g.n_vertices):
            try:
                walk = walk_of_relator(g, r, base)
            except LeavesBall:
                continue
            c = circuit_of_walk(walk)
            if c and c not in seen:
                seen[c] = (r, base)
    return CircuitBasis(list(seen), list(seen.values()), g.n_edges)


def _safe_interior_cycles(g: CayleyGraph) -> list[int]:
    depth = g.presentation.max_relator_length
    keep = {i for i, d in enumerate(g.ball.distance) if g.ball.radius - d >= depth}
    pairs, ids = [], []
    for e, edge in enumerate(g.edges):
        if edge.u in keep and edge.v in keep:
            pairs.append((edge.u, edge.v))
            ids.append(e)
    return fundamental_cycles(g.n_vertices, pairs, ids)


def generates_cycle_space(b: CircuitBasis, g: CayleyGraph) -> bool:
    """Span test.

    Full graph: rank equals ``|E| - |V| + 1``.  Ball: every cycle of the
    subgraph at depth at least the longest relator length from the
    boundary lies in the span.
    """
    if not g.is_ball:
        return b.rank == cycle_space_dimension(g)
    ech = Echelon()
    for c in b.circuits:
        ech.add(c)
    return all(ech.contains(c) for c in _safe_interior_cycles(g))


@dataclass(frozen=True)
class TwoBasisVerdict:
    ok: bool
    generates: bool
    max_incidence: int
    rank: int
    cycle_space_dim: int
    witness_edge: Optional[int] = None
    witness_circuits: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        witness = None
        if self.witness_edge is not None:
            witness = {"edge": self.witness_edge, "circuits": list(self.witness_circuits)}
        return {
            "rank": self.rank,
            "cycle_space_dim": self.cycle_space_dim,
            "max_incidence": self.max_incidence,
            "generates": self.generates,
            "witness": witness,
        }


def is_two_basis(b: CircuitBasis, g: CayleyGraph) -> TwoBasisVerdict:
    counts = b.incidence()
    witness = next((e for e, c in enumerate(counts) if c > 2), None)
    generates = generates_cycle_space(b, g)
    return TwoBasisVerdict(
        ok=generates and witness is None,
        generates=generates,
        max_incidence=max(counts, default=0),
        rank=b.rank,
        cycle_space_dim=cycle_space_dimension(g),
        witness_edge=witness,
        witness_circuits=tuple(b.containing(witness)) if witness is not None else (),
    )


def circuit_to_json(c: int) -> str:
    return json.dumps(bits(c))
