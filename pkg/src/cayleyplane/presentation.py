"""Group presentations and free-group word algebra.

Words are plain strings over single letters: a lowercase letter is a
generator and the matching uppercase letter is its inverse.  A generator
``b`` with a literal ``b^2`` relator is an *involution*; inside a
presentation its inverse letter ``B`` is normalized to ``b``.

Grammar accepted by :func:`parse_presentation`::

    presentation := "<" gens "|" relators ">"
    gens         := letter ("," letter)*
    relators     := [ relator ("," relator)* ]
    relator      := product [ "=" product ]
    product      := factor*
    factor       := (letter | "(" product ")") [ "^" ["-"] digits ]

``u = v`` is read as the relator ``u v^-1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


class PresentationError(ValueError):
    """Base class for malformed presentations."""


class PresentationSyntaxError(PresentationError):
    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        self.text = text
        super().__init__(f"syntax error at position {position}: expected {expected}")


class UnknownGenerator(PresentationError):
    def __init__(self, letter: str, relator_index: int):
        self.letter = letter
        self.relator_index = relator_index
        super().__init__(f"relator {relator_index} uses undeclared generator {letter!r}")


class EmptyRelator(PresentationError):
    def __init__(self, relator_index: int):
        self.relator_index = relator_index
        super().__init__(f"relator {relator_index} is trivial after reduction")


def invert_letter(x: str) -> str:
    return x.lower() if x.isupper() else x.upper()


def free_reduce(w: str) -> str:
    """Cancel adjacent ``xX`` / ``Xx`` pairs until none remain."""
    out: list[str] = []
    for x in w:
        if out and out[-1] == invert_letter(x):
            out.pop()
        else:
            out.append(x)
    return "".join(out)


def cyclic_reduce(w: str) -> str:
    """Return a cyclically reduced conjugate of ``w``."""
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == invert_letter(w[j - 1]):
        i += 1
        j -= 1
    return w[i:j]


def free_inverse(w: str) -> str:
    return "".join(invert_letter(x) for x in reversed(w))


def proper_cyclic_subwords(r: str) -> list[str]:
    """All distinct contiguous subwords of the cyclic word ``r`` shorter than ``r``.

    Ordered by length, then by starting position.
    """
    n = len(r)
    doubled = r + r
    seen: dict[str, None] = {}
    for length in range(1, n):
        for start in range(n):
            seen.setdefault(doubled[start:start + length])
    return list(seen)


@dataclass(frozen=True)
class Generator:
    symbol: str
    involution: bool = False


@dataclass(frozen=True)
class Presentation:
    generators: tuple[Generator, ...]
    relators: tuple[str, ...]
    text: str = field(default="", compare=False)

    def __post_init__(self):
        symbols = [g.symbol for g in self.generators]
        if len(set(symbols)) != len(symbols):
            raise PresentationError(f"duplicate generators in {symbols}")
        for s in symbols:
            if len(s) != 1 or not s.isalpha() or not s.islower():
                raise PresentationError(f"generator {s!r} must be a lowercase letter")
        for i, r in enumerate(self.relators):
            if not r:
                raise EmptyRelator(i)
            for x in r:
                if x.lower() not in symbols:
                    raise UnknownGenerator(x, i)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(g.symbol for g in self.generators)

    @property
    def involutions(self) -> frozenset[str]:
        return frozenset(g.symbol for g in self.generators if g.involution)

    @property
    def alphabet(self) -> tuple[str, ...]:
        """Letters in shortlex order: each generator followed by its inverse.

        Involutions contribute a single letter.
        """
        letters: list[str] = []
        for g in self.generators:
            letters.append(g.symbol)
            if not g.involution:
                letters.append(g.symbol.upper())
        return tuple(letters)

    @property
    def max_relator_length(self) -> int:
        return max((len(r) for r in self.relators), default=0)

    def normalize(self, w: str) -> str:
        """Map inverse letters of involutions to the generator itself."""
        inv = self.involutions
        if not inv:
            return w
        return "".join(x.lower() if x.lower() in inv else x for x in w)

    def inverse(self, w: str) -> str:
        return self.normalize(free_inverse(w))

    def inverse_letter(self, x: str) -> str:
        return x if x in self.involutions else invert_letter(x)

    def to_text(self) -> str:
        return "<" + ",".join(self.symbols) + " | " + ", ".join(self.relators) + ">"

    def to_dict(self) -> dict:
        return {
            "generators": [{"symbol": g.symbol, "involution": g.involution} for g in self.generators],
            "relators": list(self.relators),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "Presentation":
        gens = tuple(Generator(g["symbol"], bool(g["involution"])) for g in data["generators"])
        return cls(gens, tuple(data["relators"]))

    @classmethod
    def from_json(cls, text: str) -> "Presentation":
        return cls.from_dict(json.loads(text))


def make_presentation(symbols, relators, text: str = "") -> Presentation:
    """Build a validated presentation from raw relator words.

    Relators are freely and cyclically reduced, involutions are detected
    from literal ``ss`` (or ``SS``) relators, and involution inverses are
    normalized.
    """
    symbols = [s.lower() for s in symbols]
    if len(set(symbols)) != len(symbols):
        raise PresentationError(f"duplicate generators in {symbols}")
    reduced: list[str] = []
    for i, raw in enumerate(relators):
        for x in raw:
            if x.lower() not in symbols:
                raise UnknownGenerator(x, i)
        r = cyclic_reduce(raw)
        if not r:
            raise EmptyRelator(i)
        reduced.append(r)
    involutions = {r[0].lower() for r in reduced if len(r) == 2 and r[0] == r[1]}
    gens = tuple(Generator(s, s in involutions) for s in symbols)
    norm = [
        "".join(x.lower() if x.lower() in involutions else x for x in r)
        for r in reduced
    ]
    return Presentation(gens, tuple(norm), text=text)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected: str):
        raise PresentationSyntaxError(self.pos, expected, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(repr(ch))
        self.pos += 1

    def parse(self) -> tuple[list[str], list[str]]:
        self.expect("<")
        gens = [self.letter()]
        while self.peek() == ",":
            self.pos += 1
            gens.append(self.letter())
        self.expect("|")
        relators: list[str] = []
        if self.peek() != ">":
            relators.append(self.relator())
            while self.peek() == ",":
                self.pos += 1
                relators.append(self.relator())
        self.expect(">")
        if self.peek():
            self.error("end of input")
        return gens, relators

    def letter(self) -> str:
        ch = self.peek()
        if not (ch.isascii() and ch.isalpha()):
            self.error("generator letter")
        self.pos += 1
        return ch

    def relator(self) -> str:
        self.skip()
        start = self.pos
        lhs = self.product()
        if self.peek() == "=":
            self.pos += 1
            lhs += free_inverse(self.product())
        if self.pos == start:
            self.error("relator word")
        # a consumed but empty word (e.g. "a^0") surfaces later as EmptyRelator
        return lhs

    def product(self) -> str:
        out = []
        while True:
            ch = self.peek()
            if ch.isascii() and ch.isalpha():
                self.pos += 1
                base = ch
            elif ch == "(":
                self.pos += 1
                base = self.product()
                self.expect(")")
            else:
                return "".join(out)
            out.append(self.power(base))

    def power(self, base: str) -> str:
        if self.peek() != "^":
            return base
        self.pos += 1
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("exponent")
        k = int(self.text[start:self.pos])
        return (base if sign > 0 else free_inverse(base)) * k


def parse_presentation(text: str) -> Presentation:
    """Parse ``"<a,b | b^2, abAb>"`` style text into a :class:`Presentation`."""
    gens, relators = _Parser(text).parse()
    for g in gens:
        if g.isupper():
            raise PresentationError(f"generator {g!r} must be declared in lowercase")
    return make_presentation(gens, relators, text=text)
