"""Rotation systems, faces, 2-basis realization and connectivity.

A dart is ``2 * edge + side``: side 0 runs from ``edge.u`` to ``edge.v``,
side 1 runs back.  A rotation system stores, for every dart, the next dart
around its tail; faces are traced by ``next = rotation[reverse(dart)]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

import networkx as nx

from .cayley import CayleyGraph, translate
from .cyclespace import CircuitBasis, bits


def reverse(d: int) -> int:
    return d ^ 1


def tail(g: CayleyGraph, d: int) -> int:
    edge = g.edges[d >> 1]
    return edge.v if d & 1 else edge.u


def head(g: CayleyGraph, d: int) -> int:
    return tail(g, d ^ 1)


@dataclass
class RotationEmbedding:
    graph: CayleyGraph
    rotation: dict[int, list[int]]
    faces: list[list[int]] = field(default_factory=list)
    outer: int = 0

    def __post_init__(self):
        if not self.faces:
            self.faces = trace_faces(self.graph, self.rotation)
            self.outer = self._default_outer()

    def _default_outer(self) -> int:
        g = self.graph
        if not self.faces:
            return 0
        if g.ball is not None:
            boundary = g.ball.boundary
            return max(range(len(self.faces)),
                       key=lambda i: (len(self.face_vertices(i) & boundary), -i))
        return max(range(len(self.faces)), key=lambda i: (len(self.faces[i]), -i))

    def face_vertices(self, i: int) -> set[int]:
        return {tail(self.graph, d) for d in self.faces[i]}

    def face_circuit(self, i: int) -> int:
        vec = 0
        for d in self.faces[i]:
            vec ^= 1 << (d >> 1)
        return vec

    def euler_characteristic(self) -> int:
        return self.graph.n_vertices - self.graph.n_edges + len(self.faces)

    def is_valid(self) -> bool:
        """One face per dart and Euler's formula for a connected plane graph."""
        seen = [0] * (2 * self.graph.n_edges)
        for face in self.faces:
            for d in face:
                seen[d] += 1
        return all(c == 1 for c in seen) and self.euler_characteristic() == 2

    def to_dict(self) -> dict:
        return {
            "rotations": {str(v): list(ds) for v, ds in sorted(self.rotation.items())},
            "faces": [sorted(bits(self.face_circuit(i))) for i in range(len(self.faces))],
            "outer": self.outer,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def rotation_successor(rotation: dict[int, list[int]]) -> dict[int, int]:
    nxt = {}
    for darts in rotation.values():
        for i, d in enumerate(darts):
            nxt[d] = darts[(i + 1) % len(darts)]
    return nxt


def trace_faces(g: CayleyGraph, rotation: dict[int, list[int]]) -> list[list[int]]:
    nxt = rotation_successor(rotation)
    done = set()
    faces = []
    for start in range(2 * g.n_edges):
        if start in done:
            continue
        face = []
        d = start
        while d not in done:
            done.add(d)
            face.append(d)
            d = nxt[reverse(d)]
        faces.append(face)
    return faces


@dataclass(frozen=True)
class NonPlanarWitness:
    kind: str
    edges: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"kuratowski": self.kind, "edges": list(self.edges)}


def simple_graph(g: CayleyGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n_vertices))
    G.add_edges_from(g.simple_edges())
    return G


def _edge_lookup(g: CayleyGraph) -> dict[tuple[int, int], list[int]]:
    lookup: dict[tuple[int, int], list[int]] = {}
    for e, edge in enumerate(g.edges):
        lookup.setdefault((min(edge.u, edge.v), max(edge.u, edge.v)), []).append(e)
    return lookup


def _kuratowski_kind(H: nx.Graph) -> str:
    branch = [v for v in H if H.degree(v) > 2]
    if len(branch) == 5 and all(H.degree(v) == 4 for v in branch):
        return "K5"
    return "K3,3"


def rotation_from_cyclic_orders(g: CayleyGraph, orders: dict[int, list[int]]) -> dict[int, list[int]]:
    """Expand neighbor orders of the simple graph into a dart rotation.

    Parallel edges are placed side by side, in reverse order at the two
    ends; loops go in as adjacent dart pairs.
    """
    lookup = _edge_lookup(g)
    rotation: dict[int, list[int]] = {}
    for v in range(g.n_vertices):
        darts = []
        for w in orders.get(v, []):
            es = lookup[(min(v, w), max(v, w))]
            if v > w:
                es = list(reversed(es))
            for e in es:
                darts.append(2 * e + (0 if g.edges[e].u == v else 1))
        for e in lookup.get((v, v), []):
            darts.extend([2 * e, 2 * e + 1])
        rotation[v] = darts
    return rotation


def test_planarity(g: CayleyGraph):
    """Return a :class:`RotationEmbedding` or a :class:`NonPlanarWitness`."""
    G = simple_graph(g)
    planar, cert = nx.check_planarity(G, counterexample=True)
    if not planar:
        lookup = _edge_lookup(g)
        edges = sorted(lookup[(min(u, v), max(u, v))][0] for u, v in cert.edges())
        return NonPlanarWitness(_kuratowski_kind(cert), tuple(edges))
    orders = {v: list(cert.neighbors_cw_order(v)) for v in G}
    return RotationEmbedding(g, rotation_from_cyclic_orders(g, orders))


# Keep pytest from collecting the planarity test as a test function.
test_planarity.__test__ = False


def enumerate_faces(e: RotationEmbedding) -> list[int]:
    """One circuit per face walk (edges the walk uses an odd number of times)."""
    return [e.face_circuit(i) for i in range(len(e.faces))]


class CannotRealize(Exception):
    def __init__(self, stage: str, detail: str = ""):
        self.stage = stage
        self.detail = detail
        super().__init__(f"cannot realize 2-basis ({stage}){': ' + detail if detail else ''}")


def _cycle_darts(g: CayleyGraph, circuit: int) -> Optional[list[int]]:
    """Darts of ``circuit`` in cyclic order, or ``None`` if it is not a cycle."""
    edges = bits(circuit)
    if not edges:
        return None
    incident: dict[int, list[int]] = {}
    for e in edges:
        u, v = g.endpoints(e)
        if u == v:
            return [2 * e] if len(edges) == 1 else None
        incident.setdefault(u, []).append(e)
        incident.setdefault(v, []).append(e)
    if any(len(es) != 2 for es in incident.values()):
        return None
    first = edges[0]
    start = g.edges[first].u
    darts = []
    v, e = start, first
    while True:
        d = 2 * e + (0 if g.edges[e].u == v else 1)
        darts.append(d)
        v = head(g, d)
        if v == start:
            break
        a, b = incident[v]
        e = b if a == e else a
    return darts if len(darts) == len(edges) else None


def embedding_from_two_basis(g: CayleyGraph, b: CircuitBasis) -> RotationEmbedding:
    """Glue the circuits of ``b`` as faces and close up with one outer face.

    Edges on no circuit must be bridges; they are hung into a free corner.
    The result has the circuits of ``b`` as face circuits, in order, plus
    at most one more face whose circuit is their sum.

    Raises :class:`CannotRealize` if some circuit is not a cycle or an edge
    lies on more than two circuits (``incidence``), the faces cannot be
    oriented or pinch a vertex (``gluing``), or the result is not a sphere
    with at most one extra face (``euler``).
    """
    counts = b.incidence()
    if any(c > 2 for c in counts):
        raise CannotRealize("incidence", f"edge {counts.index(max(counts))} lies on {max(counts)} circuits")
    cycles = []
    for i, c in enumerate(b.circuits):
        darts = _cycle_darts(g, c)
        if darts is None:
            raise CannotRealize("gluing", f"circuit {i} is not a cycle")
        cycles.append(darts)

    # orient faces so that a shared edge is used in opposite directions
    by_edge: dict[int, list[int]] = {}
    for i, c in enumerate(b.circuits):
        for e in bits(c):
            by_edge.setdefault(e, []).append(i)
    flip: list[Optional[bool]] = [None] * len(cycles)

    def oriented(i: int) -> list[int]:
        if not flip[i]:
            return cycles[i]
        return [reverse(d) for d in reversed(cycles[i])]

    cycle_sets = [set(c) for c in cycles]

    def oriented_set(j: int) -> set[int]:
        return {reverse(d) for d in cycle_sets[j]} if flip[j] else cycle_sets[j]

    for root in range(len(cycles)):
        if flip[root] is not None:
            continue
        flip[root] = False
        stack = [root]
        while stack:
            i = stack.pop()
            for d in oriented(i):
                for j in by_edge[d >> 1]:
                    if j == i:
                        continue
                    if flip[j] is None:
                        flip[j] = reverse(d) not in cycle_sets[j]
                        stack.append(j)
                    if reverse(d) not in oriented_set(j):
                        raise CannotRealize("gluing", f"faces {i} and {j} cannot be oriented consistently")

    faces = [oriented(i) for i in range(len(cycles))]
    nxt: dict[int, int] = {}
    for face in faces:
        for k, d in enumerate(face):
            following = face[(k + 1) % len(face)]
            nxt[reverse(d)] = following

    darts_at: dict[int, list[int]] = {v: [] for v in range(g.n_vertices)}
    for d in range(2 * g.n_edges):
        darts_at[tail(g, d)].append(d)

    prev = {y: x for x, y in nxt.items()}
    used = {e for c in b.circuits for e in bits(c)}
    rotation: dict[int, list[int]] = {}
    for v, darts in darts_at.items():
        chains = []
        placed = set()
        for d in darts:
            if d in placed or d in prev:
                continue
            chain = [d]
            placed.add(d)
            while chain[-1] in nxt:
                chain.append(nxt[chain[-1]])
                placed.add(chain[-1])
            chains.append(chain)
        leftover = [d for d in darts if d not in placed]
        if leftover:
            # darts on a closed cycle of the partial rotation; only bridges
            # (edges on no circuit) may hang into one of its corners
            cyc = [leftover[0]]
            while nxt[cyc[-1]] != cyc[0]:
                cyc.append(nxt[cyc[-1]])
            rest = [d for d in darts if d not in set(cyc)]
            if any(d >> 1 in used for d in rest):
                raise CannotRealize("gluing", f"faces pinch at vertex {v}")
            rotation[v] = cyc + rest
        else:
            rotation[v] = [d for chain in chains for d in chain]

    traced = trace_faces(g, rotation)
    emb = RotationEmbedding(g, rotation, traced, 0)
    if emb.euler_characteristic() != 2:
        raise CannotRealize("euler", f"Euler characteristic {emb.euler_characteristic()}")
    pending: dict[int, list[int]] = {}
    for i in range(len(traced)):
        pending.setdefault(emb.face_circuit(i), []).append(i)
    order = []
    for c in b.circuits:
        if not pending.get(c):
            raise CannotRealize("euler", "a basis circuit does not bound a face")
        order.append(pending[c].pop(0))
    extra = [i for ids in pending.values() for i in ids]
    if len(extra) > 1:
        raise CannotRealize("euler", f"{len(extra)} faces beyond the basis")
    emb.faces = [traced[i] for i in order + extra]
    if extra:
        emb.outer = len(order)
        total = 0
        for c in b.circuits:
            total ^= c
        if emb.face_circuit(emb.outer) != total:
            raise CannotRealize("euler", "outer face is not the sum of the basis")
    else:
        emb.outer = emb._default_outer()
    return emb


# -- connectivity ----------------------------------------------------------

@dataclass(frozen=True)
class ConnectivityReport:
    kappa: int  # 1, 2 or 3 (meaning "at least 3")
    witness: tuple[str, ...] = ()
    scope: str = "full"

    @property
    def label(self) -> str:
        return ">=3" if self.kappa >= 3 else str(self.kappa)

    def to_dict(self) -> dict:
        return {"kappa": self.kappa, "label": self.label, "witness": list(self.witness), "scope": self.scope}


def _split_counts(adj: list[list[int]], removed: set[int], weight: list[int]) -> dict[int, list[int]]:
    """For each cut vertex ``y`` of ``G - removed``, weights of the pieces of ``G - removed - y``.

    Pieces in other components of ``G - removed`` are included, so the list
    describes every component of ``G - removed - y``.
    """
    n = len(adj)
    disc = [-1] * n
    low = [0] * n
    sub = [0] * n
    comp_of = [-1] * n
    comp_weight: list[int] = []
    splits: dict[int, list[int]] = {}
    roots = set()
    timer = 0
    for root in range(n):
        if root in removed or disc[root] >= 0:
            continue
        cid = len(comp_weight)
        comp_weight.append(0)
        roots.add(root)
        disc[root] = low[root] = timer
        timer += 1
        sub[root] = weight[root]
        comp_of[root] = cid
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w in removed:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    sub[w] = weight[w]
                    comp_of[w] = cid
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                sub[parent] += sub[v]
                if low[v] >= disc[parent]:
                    splits.setdefault(parent, []).append(sub[v])
        comp_weight[cid] = sub[root]
    result: dict[int, list[int]] = {}
    for y, pieces in splits.items():
        cid = comp_of[y]
        if y not in roots:
            pieces = pieces + [comp_weight[cid] - weight[y] - sum(pieces)]
        if len(pieces) < 2:
            continue
        result[y] = pieces + [wgt for k, wgt in enumerate(comp_weight) if k != cid]
    return result


def connectivity(g: CayleyGraph, margin: int = 2) -> ConnectivityReport:
    """Vertex connectivity class 1, 2 or >=3 with a separating witness.

    On a ball a separator counts only when at least two of the pieces it
    leaves contain core vertices (distance at most ``radius - margin``), so
    cuts that merely shave off part of the rim are discounted.  The result is labeled ``ball-interior`` and says nothing
    certain about the infinite graph.
    """
    n = g.n_vertices
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in g.simple_edges():
        adj[u].append(v)
        adj[v].append(u)
    if g.ball is not None:
        inner_radius = g.ball.radius - margin
        weight = [1 if d <= inner_radius else 0 for d in g.ball.distance]
        scope = f"ball-interior(r={g.ball.radius},core={inner_radius})"
    else:
        weight = [1] * n
        scope = "full"
    label = g.vertex_label

    def separating(pieces: list[int]) -> bool:
        return sum(1 for w in pieces if w > 0) >= 2

    for y, pieces in sorted(_split_counts(adj, set(), weight).items()):
        if separating(pieces):
            return ConnectivityReport(1, (label(y),), scope)
    if g.ball is None and n <= 3:
        return ConnectivityReport(max(n - 1, 1), (), scope)
    for x in range(n):
        for y, pieces in sorted(_split_counts(adj, {x}, weight).items()):
            if separating(pieces):
                return ConnectivityReport(2, (label(x), label(y)), scope)
    return ConnectivityReport(3, (), scope)


# -- translate-face invariance ---------------------------------------------

@dataclass(frozen=True)
class TranslateCheck:
    ok: bool
    face: Optional[int] = None
    element: Optional[str] = None

    def __bool__(self):
        return self.ok


def check_translate_faces(g: CayleyGraph, e: RotationEmbedding) -> TranslateCheck:
    """Every left translate of a face circuit must again be a face circuit."""
    faces = enumerate_faces(e)
    face_set = set(faces)
    for x in g.vertices:
        t = translate(g, x)
        for i, c in enumerate(faces):
            if not c:
                continue
            image = 0
            for edge in bits(c):
                image |= 1 << t.edge_map[edge]
            if image not in face_set:
                return TranslateCheck(False, i, x)
    return TranslateCheck(True)


# -- the finite VAP proxy on balls ------------------------------------------

@dataclass(frozen=True)
class BallVapVerdict:
    consistent: bool
    face: Optional[int] = None
    witness: Optional[str] = None
    missing: int = 0
    searched: bool = False
    search_method: str = ""
    embedding: Optional[RotationEmbedding] = None

    def __bool__(self):
        return self.consistent

    def to_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "face": self.face,
            "witness": self.witness,
            "boundary_missing": self.missing,
            "searched": self.searched,
            "search_method": self.search_method or None,
        }


def _apex_embedding(g: CayleyGraph, targets) -> Optional[RotationEmbedding]:
    """Embedding with every target vertex on one face, if one exists.

    Such an embedding exists iff adding a new vertex joined to all targets
    keeps the graph planar; deleting that vertex from an embedding of the
    augmented graph leaves its neighbours on a single face.
    """
    G = simple_graph(g)
    apex = g.n_vertices
    G.add_edges_from((apex, v) for v in sorted(targets))
    planar, cert = nx.check_planarity(G)
    if not planar:
        return None
    orders = {v: [w for w in cert.neighbors_cw_order(v) if w != apex] for v in range(g.n_vertices)}
    return RotationEmbedding(g, rotation_from_cyclic_orders(g, orders))


def _best_face(e: RotationEmbedding, targets) -> tuple[int, set[int]]:
    best, missing = 0, set(targets)
    for i in range(len(e.faces)):
        left = set(targets) - e.face_vertices(i)
        if len(left) < len(missing):
            best, missing = i, left
    return best, missing


def ball_vap_diagnostic(g: CayleyGraph, e: RotationEmbedding, search: Optional[str] = "apex",
                        budget: int = 10_000) -> BallVapVerdict:
    """Does some face carry the whole boundary sphere of the ball?

    The given embedding is checked first.  If it fails and ``search`` is
    ``"apex"`` every embedding is ruled in or out exactly; with
    ``"enumerate"`` rotation systems are searched by brute force, trying
    at most ``budget`` vertex rotations (an overrun is reported as
    inconsistent with ``search_method="enumerate-truncated"``).  ``search=None`` judges the
    given embedding alone.  Full graphs pass trivially.
    """
    if g.ball is None:
        return BallVapVerdict(True, e.outer, embedding=e)
    boundary = g.ball.boundary
    face, missing = _best_face(e, boundary)
    if not missing:
        return BallVapVerdict(True, face, embedding=e)
    witness = g.vertex_label(min(missing))
    if search is None:
        return BallVapVerdict(False, face, witness, len(missing), embedding=e)
    if search == "apex":
        alt = _apex_embedding(g, boundary)
        if alt is None:
            return BallVapVerdict(False, face, witness, len(missing), True, "apex", e)
        face, missing = _best_face(alt, boundary)
        assert not missing
        return BallVapVerdict(True, face, None, 0, True, "apex", alt)
    if search == "enumerate":
        found, exhausted, _ = search_rotation_systems(g, boundary, budget)
        if found:
            alt = _apex_embedding(g, boundary)
            face, _ = _best_face(alt, boundary)
            return BallVapVerdict(True, face, None, 0, True, "enumerate", alt)
        method = "enumerate" if exhausted else "enumerate-truncated"
        return BallVapVerdict(False, face, witness, len(missing), True, method, e)
    raise ValueError(f"unknown search method {search!r}")


class _BudgetExhausted(Exception):
    pass


def search_rotation_systems(g: CayleyGraph, targets, budget: int = 10_000) -> tuple[bool, bool, int]:
    """Brute-force search for a planar rotation system with ``targets`` on one face.

    Works on the simple graph.  Pendant vertices are peeled off first (a
    pendant tree can hang into any corner of its attachment vertex, so a
    target inside it is replaced by that vertex), then rotation systems are
    enumerated vertex by vertex in BFS order, pruned by the number of faces
    Euler's formula still requires.  ``budget`` caps the number of vertex
    rotations tried.

    Returns ``(found, exhausted, tried)``.
    """
    H = simple_graph(g)
    attach: dict[int, int] = {}
    changed = True
    while changed:
        changed = False
        for v in sorted(H):
            if H.degree(v) == 1 and H.number_of_nodes() > 2:
                (u,) = H.neighbors(v)
                attach[v] = u
                H.remove_node(v)
                changed = True

    def resolve(v):
        while v in attach:
            v = attach[v]
        return v

    need = {resolve(v) for v in targets}
    n, m = H.number_of_nodes(), H.number_of_edges()
    if len(need) <= 1 or m == n - 1:
        # a tree has a single face
        return True, True, 0
    order = list(nx.bfs_tree(H, min(H)).nodes())
    nbrs = {v: sorted(H.neighbors(v)) for v in H}
    faces_needed = 2 - n + m
    rot: dict[int, dict[int, int]] = {}
    tried = 0

    def closed_faces():
        done = set()
        closed = []
        for x in rot:
            for y in nbrs[x]:
                start = (x, y)
                if start in done:
                    continue
                walk = [start]
                while True:
                    a, b = walk[-1]
                    if b not in rot:
                        walk = None
                        break
                    nxt = (b, rot[b][a])
                    if nxt == start:
                        break
                    walk.append(nxt)
                if walk is not None:
                    done.update(walk)
                    closed.append(walk)
        return closed

    def rotations(v):
        ns = nbrs[v]
        for perm in permutations(ns[1:]):
            cyc = [ns[0], *perm]
            yield {w: cyc[(i + 1) % len(cyc)] for i, w in enumerate(cyc)}
            if len(ns) <= 2:
                return

    def recurse(k: int) -> bool:
        nonlocal tried
        closed = closed_faces()
        darts_left = 2 * m - sum(len(f) for f in closed)
        # faces of a simple graph with a cycle have at least three darts
        if len(closed) + darts_left // 3 < faces_needed:
            return False
        if k == len(order):
            return len(closed) == faces_needed and any(need <= {a for a, _ in f} for f in closed)
        v = order[k]
        for r in rotations(v):
            tried += 1
            if tried > budget:
                raise _BudgetExhausted
            rot[v] = r
            if recurse(k + 1):
                return True
        del rot[v]
        return False

    try:
        found = recurse(0)
    except _BudgetExhausted:
        return False, False, budget
    return found, True, tried
