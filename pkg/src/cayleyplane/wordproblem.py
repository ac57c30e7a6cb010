"""Solving the word problem: coset enumeration and shortlex Knuth-Bendix.

Both backends produce an immutable :class:`GroupModel` whose
``normal_form`` is canonical: two words are equal in the group iff their
normal forms coincide.  Words use the letters of
:attr:`Presentation.alphabet`.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, replace
from typing import Optional

from .presentation import Presentation, free_reduce


@dataclass(frozen=True)
class Limits:
    max_cosets: int = 200_000
    max_rules: int = 2000
    max_lhs_length: int = 24

    def __post_init__(self):
        for name in ("max_cosets", "max_rules", "max_lhs_length"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


class Incomplete(Exception):
    """A backend ran out of its resource budget."""

    def __init__(self, backend: str, used: int, detail: str = ""):
        self.backend = backend
        self.used = used
        self.detail = detail
        msg = f"{backend} incomplete after {used}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class ModelIncomplete(Exception):
    """No backend could solve the word problem within its limits."""

    def __init__(self, attempts: list[Incomplete]):
        self.attempts = attempts
        super().__init__("; ".join(str(a) for a in attempts) or "no backend succeeded")


def shortlex_key(alphabet):
    rank = {x: i for i, x in enumerate(alphabet)}

    def key(w: str):
        return (len(w), [rank[x] for x in w])

    return key


class GroupModel:
    kind: str = ""

    def __init__(self, presentation: Presentation):
        self.presentation = presentation
        self.alphabet = presentation.alphabet
        self._key = shortlex_key(self.alphabet)

    @property
    def order(self) -> Optional[int]:
        """Group order, or ``None`` when infinite or unknown."""
        return None

    def normal_form(self, w: str) -> str:
        raise NotImplementedError

    def is_relation(self, w: str) -> bool:
        return self.normal_form(w) == ""

    def multiply(self, u: str, v: str) -> str:
        return self.normal_form(u + v)

    def inverse(self, u: str) -> str:
        return self.normal_form(self.presentation.inverse(u))

    def sort_key(self, w: str):
        return self._key(w)

    def _check_letters(self, w: str) -> str:
        w = self.presentation.normalize(w)
        for x in w:
            if x not in self._key_alphabet:
                raise ValueError(f"letter {x!r} not in alphabet {self.alphabet}")
        return w

    @property
    def _key_alphabet(self):
        return set(self.alphabet)


class CosetTableModel(GroupModel):
    """Finite group as a closed coset table over the trivial subgroup.

    ``table[i][c]`` is the coset reached from coset ``i`` by alphabet
    letter ``c``; coset 0 is the identity.  Rows are numbered in shortlex
    order of their representatives.
    """

    kind = "finite"

    def __init__(self, presentation: Presentation, table, representatives):
        super().__init__(presentation)
        self.table = tuple(tuple(row) for row in table)
        self.representatives = tuple(representatives)
        self.column = {x: i for i, x in enumerate(self.alphabet)}
        self._index = {w: i for i, w in enumerate(self.representatives)}

    @property
    def order(self) -> int:
        return len(self.table)

    def trace(self, start: int, w: str) -> int:
        c = start
        col = self.column
        for x in self.presentation.normalize(w):
            c = self.table[c][col[x]]
        return c

    def element_index(self, w: str) -> int:
        return self.trace(0, w)

    def normal_form(self, w: str) -> str:
        self._check_letters(w)
        return self.representatives[self.trace(0, w)]


class RewritingModel(GroupModel):
    """Group given by a confluent shortlex rewriting system."""

    kind = "rewriting"

    def __init__(self, presentation: Presentation, rules: dict[str, str]):
        super().__init__(presentation)
        self.rules = dict(sorted(rules.items(), key=lambda kv: self._key(kv[0])))
        self._lengths = sorted({len(lhs) for lhs in self.rules})

    def normal_form(self, w: str) -> str:
        w = self._check_letters(w)
        return _rewrite(w, self.rules, self._lengths)


def _rewrite(w: str, rules: dict[str, str], lengths) -> str:
    """Rewrite to the irreducible form, scanning left to right with a stack."""
    out: list[str] = []
    todo = list(reversed(w))
    while todo:
        out.append(todo.pop())
        for n in lengths:
            if n > len(out):
                break
            lhs = "".join(out[-n:])
            rhs = rules.get(lhs)
            if rhs is not None:
                del out[-n:]
                todo.extend(reversed(rhs))
                break
    return "".join(out)


def coset_enumerate(p: Presentation, limits: Limits = Limits()) -> CosetTableModel:
    """HLT-style Todd-Coxeter enumeration of the cosets of the trivial subgroup.

    Raises :class:`Incomplete` once more than ``limits.max_cosets`` cosets
    have been allocated.
    """
    alphabet = p.alphabet
    col = {x: i for i, x in enumerate(alphabet)}
    inv = [col[p.inverse_letter(x)] for x in alphabet]
    ncols = len(alphabet)
    relators = [[col[x] for x in r] for r in p.relators]

    table: list[list[Optional[int]]] = [[None] * ncols]
    parent = [0]

    def rep(k: int) -> int:
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def define(a: int, x: int) -> None:
        if len(table) >= limits.max_cosets:
            raise Incomplete("coset-enumeration", len(table), "max_cosets exceeded")
        b = len(table)
        table.append([None] * ncols)
        parent.append(b)
        table[a][x] = b
        table[b][inv[x]] = a

    def merge(k: int, l: int, queue: list[int]) -> None:
        f, g = rep(k), rep(l)
        if f != g:
            lo, hi = min(f, g), max(f, g)
            parent[hi] = lo
            queue.append(hi)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(ncols):
                d = table[g][x]
                if d is None:
                    continue
                table[d][inv[x]] = None
                mu, nu = rep(g), rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x], queue)
                elif table[nu][inv[x]] is not None:
                    merge(mu, table[nu][inv[x]], queue)
                else:
                    table[mu][x] = nu
                    table[nu][inv[x]] = mu

    def scan_and_fill(a: int, word: list[int]) -> None:
        n = len(word)
        f, i = a, 0
        b, j = a, n - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != a:
                    coincidence(f, a)
                return
            while j >= i and table[b][inv[word[j]]] is not None:
                b = table[b][inv[word[j]]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][inv[word[i]]] = f
                return
            define(f, word[i])

    a = 0
    while a < len(table):
        if parent[a] == a:
            for r in relators:
                scan_and_fill(a, r)
                if parent[a] != a:
                    break
            if parent[a] == a:
                for x in range(ncols):
                    if table[a][x] is None:
                        define(a, x)
        a += 1

    # renumber live cosets in shortlex order of representatives
    order = {0: 0}
    reps = [""]
    queue = deque([0])
    while queue:
        c = queue.popleft()
        w = reps[order[c]]
        for x in range(ncols):
            d = rep(table[c][x])
            if d not in order:
                order[d] = len(reps)
                reps.append(w + alphabet[x])
                queue.append(d)
    new_table = [[0] * ncols for _ in reps]
    for old, new in order.items():
        for x in range(ncols):
            new_table[new][x] = order[rep(table[old][x])]
    return CosetTableModel(p, new_table, reps)


def kb_complete(p: Presentation, limits: Limits = Limits()) -> RewritingModel:
    """Shortlex Knuth-Bendix completion.

    Alphabet order is generator declaration order with each inverse letter
    right after its generator.  Raises :class:`Incomplete` when the rule
    count or a left-hand side length exceeds ``limits``.
    """
    key = shortlex_key(p.alphabet)
    rules: dict[str, str] = {}
    pending: list = []
    counter = 0

    def push(u: str, v: str) -> None:
        nonlocal counter
        heapq.heappush(pending, (max(len(u), len(v)), counter, u, v))
        counter += 1

    for x in p.alphabet:
        if x.isupper():
            push(x.lower() + x, "")
            push(x + x.lower(), "")
    for r in p.relators:
        push(r, "")

    def lengths():
        return sorted({len(l) for l in rules})

    while pending:
        _, _, u, v = heapq.heappop(pending)
        lens = lengths()
        u = _rewrite(u, rules, lens)
        v = _rewrite(v, rules, lens)
        if u == v:
            continue
        lhs, rhs = (u, v) if key(u) > key(v) else (v, u)
        if len(lhs) > limits.max_lhs_length:
            raise Incomplete("knuth-bendix", len(rules), f"left side of length {len(lhs)}")
        # interreduce: rules whose left side contains the new one are re-queued
        new_rules = {lhs: rhs}
        for l, r in rules.items():
            if lhs in l:
                push(l, r)
            else:
                new_rules[l] = r
        rules = new_rules
        lens = lengths()
        for l in list(rules):
            rules[l] = _rewrite(rules[l], rules, lens)
        if len(rules) > limits.max_rules:
            raise Incomplete("knuth-bendix", len(rules), "max_rules exceeded")
        for l, r in list(rules.items()):
            for a, b, c, d in ((lhs, rhs, l, r), (l, r, lhs, rhs)):
                # suffix of a overlapping a prefix of c
                for k in range(1, min(len(a), len(c))):
                    if a[-k:] == c[:k]:
                        push(b + c[k:], a[:-k] + d)
    return RewritingModel(p, rules)


class EliminatedModel(GroupModel):
    """Rewriting model of a presentation with redundant generators removed.

    Each eliminated generator is replaced by its defining word over the
    surviving generators before rewriting; normal forms are words over the
    reduced alphabet.
    """

    kind = "rewriting-eliminated"

    def __init__(self, presentation: Presentation, base: GroupModel, substitution: dict[str, str]):
        super().__init__(presentation)
        self.base = base
        self.substitution = dict(substitution)

    @property
    def rules(self):
        return self.base.rules

    def substitute(self, w: str) -> str:
        out = []
        for x in self.presentation.normalize(w):
            out.append(self.substitution.get(x, x))
        return "".join(out)

    def normal_form(self, w: str) -> str:
        self._check_letters(w)
        return self.base.normal_form(self.substitute(w))


def eliminate_generators(p: Presentation) -> tuple[Presentation, dict[str, str]]:
    """Drop generators that a relator defines in terms of the others.

    A relator in which a non-involution generator occurs exactly once
    expresses it as a word in the remaining letters.  Later-declared
    generators are eliminated first.  Returns the reduced presentation and
    the substitution for every letter (generator and inverse) that was
    removed.
    """
    from .presentation import cyclic_reduce, free_inverse, make_presentation

    symbols = list(p.symbols)
    relators = list(p.relators)
    subst: dict[str, str] = {}
    changed = True
    while changed:
        changed = False
        for x in reversed(symbols):
            if x in p.involutions:
                continue
            for k, r in enumerate(relators):
                hits = [i for i, y in enumerate(r) if y.lower() == x]
                if len(hits) != 1:
                    continue
                i = hits[0]
                rest = r[i + 1:] + r[:i]
                # x rest = 1  =>  x = rest^-1 ;  X rest = 1  =>  x = rest
                value = free_inverse(rest) if r[i] == x else rest
                repl = {x: value, x.upper(): free_inverse(value)}
                subst = {y: "".join(repl.get(z, z) for z in w) for y, w in subst.items()}
                subst.update(repl)
                del relators[k]
                relators = [
                    cyclic_reduce("".join(repl.get(z, z) for z in s)) for s in relators
                ]
                relators = [s for s in relators if s]
                symbols.remove(x)
                changed = True
                break
            if changed:
                break
    if not subst:
        return p, {}
    # expand with involution letters written as inverses, then renormalize
    reduced = make_presentation(symbols, relators)
    subst = {y: free_reduce(reduced.normalize(w)) for y, w in subst.items()}
    return reduced, subst


PROBE_COSETS = 4096


def solve_word_problem(p: Presentation, limits: Limits = Limits()) -> GroupModel:
    """Coset enumeration first, then Knuth-Bendix.

    Enumeration is first tried with a small table so that infinite groups
    reach completion quickly; the full coset budget is spent only if
    completion fails too.  When both fail and some generators are defined
    by a relator in terms of the others, completion is retried on the
    presentation with those generators eliminated.
    """
    attempts = []
    probe = min(PROBE_COSETS, limits.max_cosets)
    stages = [(coset_enumerate, replace(limits, max_cosets=probe)), (kb_complete, limits)]
    if probe < limits.max_cosets:
        stages.append((coset_enumerate, limits))
    for backend, lim in stages:
        try:
            return backend(p, lim)
        except Incomplete as exc:
            attempts.append(exc)
    reduced, subst = eliminate_generators(p)
    if subst:
        try:
            return EliminatedModel(p, kb_complete(reduced, limits), subst)
        except Incomplete as exc:
            attempts.append(exc)
    raise ModelIncomplete(attempts)


def bfs_equality_oracle(p: Presentation, u: str, v: str, length_cap: int,
                        max_states: int = 200_000) -> Optional[bool]:
    """Bounded search for a derivation of ``u = v`` from the relators.

    Explores words reachable from ``u v^-1`` by free cancellation, free
    insertion of ``xX`` and insertion or deletion of cyclic conjugates of
    relators and their inverses, never exceeding ``length_cap`` letters.
    Returns ``True`` when the empty word is reached (always sound),
    ``False`` when the whole bounded component was explored without
    reaching it ("bounded-false"), and ``None`` when ``max_states`` ran out.
    """
    start = p.normalize(free_reduce(u + p.inverse(v)))
    if len(start) > length_cap:
        return None
    pieces: set[str] = set()
    for r in p.relators:
        for w in (r, p.inverse(r)):
            for i in range(len(w)):
                pieces.add(w[i:] + w[:i])
    for x in p.alphabet:
        if x.isupper():
            pieces.add(x + x.lower())
            pieces.add(x.lower() + x)
    pieces_by_len: dict[int, set[str]] = {}
    for piece in pieces:
        pieces_by_len.setdefault(len(piece), set()).add(piece)
    seen = {start}
    frontier = [(len(start), start)]
    while frontier:
        _, w = heapq.heappop(frontier)
        if not w:
            return True
        nbrs = set()
        for n, group in pieces_by_len.items():
            for i in range(len(w) - n + 1):
                if w[i:i + n] in group:
                    nbrs.add(w[:i] + w[i + n:])
            if len(w) + n <= length_cap:
                for piece in group:
                    for i in range(len(w) + 1):
                        nbrs.add(w[:i] + piece + w[i:])
        for z in nbrs:
            if z not in seen:
                if len(seen) >= max_states:
                    return None
                seen.add(z)
                heapq.heappush(frontier, (len(z), z))
    return False
