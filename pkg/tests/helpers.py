"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

from functools import lru_cache

from cayleyplane import build_ball, build_graph, parse_presentation, solve_word_problem

FINITE = {
    "z5": "<a | a^5>",
    "z7": "<a | a^7>",
    "d3": "<a,b | a^3, b^2, abab>",
    "d4": "<a,b | a^4, b^2, abab>",
    "d5": "<a,b | a^5, b^2, abab>",
    "d6": "<a,b | a^6, b^2, abab>",
    "klein3": "<a,b,c | a^2, b^2, c^2, abc>",  # K4
    "cube": "<a,b,c | a^2, b^2, c^2, abab, acac, bcbc>",
    "a4": "<a,b | a^3, b^3, abab>",
    "z5-k5": "<a,b | a^5, Baa>",  # K5
    "z6-k33": "<a,b | a^6, b^2, bAAA>",  # K3,3
}

BALLS = {
    "ladder": ("<a,b | b^2, abAb>", 4),
    "dihedral": ("<a,b | b^2, abab>", 4),
    "z4z4": ("<a,b | a^4, b^4>", 3),
    "dihedral-c": ("<a,b,c | b^2, abab, Cab>", 3),
}

PLANAR_FINITE = ["z5", "z7", "d3", "d4", "d5", "d6", "klein3", "cube", "a4"]


@lru_cache(maxsize=None)
def presentation(text: str):
    return parse_presentation(text)


@lru_cache(maxsize=None)
def model(text: str):
    return solve_word_problem(presentation(text))


@lru_cache(maxsize=None)
def graph(text: str, radius=None):
    p = presentation(text)
    m = model(text)
    return build_graph(m, p) if radius is None else build_ball(m, p, radius)


def named(name: str):
    if name in FINITE:
        return graph(FINITE[name])
    text, r = BALLS[name]
    return graph(text, r)


# -- independent word-problem oracles ---------------------------------------

def _compose(p, q):
    return tuple(q[i] for i in p)


def _invert(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def dihedral_perms(n: int) -> dict[str, tuple]:
    """Rotation and reflection of a regular n-gon acting on its vertices."""
    a = tuple((i + 1) % n for i in range(n))
    b = tuple((-i) % n for i in range(n))
    return {"a": a, "A": _invert(a), "b": b, "B": b}


def cyclic_perms(n: int) -> dict[str, tuple]:
    a = tuple((i + 1) % n for i in range(n))
    return {"a": a, "A": _invert(a)}


def perm_of_word(gens: dict[str, tuple], w: str) -> tuple:
    n = len(next(iter(gens.values())))
    p = tuple(range(n))
    for x in w:
        p = _compose(p, gens[x])
    return p


def infinite_dihedral(w: str) -> tuple[int, int]:
    """Affine action on the integers: a is x+1, b is x -> -x.  Returns (sign, shift)."""
    sign, shift = 1, 0
    for x in w:
        if x in "aA":
            shift += sign * (1 if x == "a" else -1)
        else:
            sign = -sign
    return sign, shift


def ladder(w: str) -> tuple[int, int]:
    """Z x Z/2: a -> (1,0), b -> (0,1)."""
    s, t = 0, 0
    for x in w:
        if x in "aA":
            s += 1 if x == "a" else -1
        else:
            t ^= 1
    return s, t


def free_product_z4(w: str) -> tuple[tuple[str, int], ...]:
    """Reduced syllable form in Z4 * Z4."""
    out: list[list] = []
    for x in w:
        g, e = x.lower(), (1 if x.islower() else 3)
        if out and out[-1][0] == g:
            out[-1][1] = (out[-1][1] + e) % 4
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)
