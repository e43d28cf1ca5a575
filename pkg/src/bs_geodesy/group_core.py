"""Exact arithmetic in BS(1,n) = <a, t | t a t^-1 = a^n>.

Every element has a unique normal form ``t^-u a^v t^w`` with ``u, w >= 0``
and the side condition that ``n | v`` forces ``u * w == 0``.  Elements are
stored as :class:`NormalForm` values with an arbitrary-precision ``v``.

Words over the generators are plain strings on the alphabet ``a A t T``
(capitals are inverses).  :func:`parse_word` accepts the exponent grammar
``a^-3 t^2 A`` and :func:`format_word` produces it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby

from .errors import InvalidArgument

LETTERS = "aAtT"
INVERSE_LETTER = {"a": "A", "A": "a", "t": "T", "T": "t"}

_TOKEN = re.compile(r"([aAtT])(?:\^([+-]?\d+))?")


@dataclass(frozen=True, slots=True)
class NormalForm:
    """The element ``t^-u a^v t^w`` of BS(1,n)."""

    n: int
    u: int
    v: int
    w: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidArgument(f"base n must be >= 2, got {self.n}")
        if self.u < 0 or self.w < 0:
            raise InvalidArgument(f"exponents must be non-negative, got u={self.u}, w={self.w}")
        if self.v % self.n == 0 and self.u * self.w != 0:
            raise InvalidArgument(
                f"({self.u},{self.v},{self.w}) is not a normal form: n | v requires u*w = 0"
            )

    @classmethod
    def identity(cls, n: int) -> NormalForm:
        return cls(n, 0, 0, 0)

    @property
    def is_identity(self) -> bool:
        return self.u == 0 and self.v == 0 and self.w == 0

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.u, self.v, self.w)

    def x_coordinate(self) -> Fraction:
        """The horizontal coordinate ``n^-u * v``."""
        return Fraction(self.v, self.n**self.u)

    def __str__(self) -> str:
        return f"t^-{self.u} a^{self.v} t^{self.w}"


def normalize(u: int, v: int, w: int, n: int) -> NormalForm:
    """Apply ``t^-1 a^(nk) t = a^k`` until the side condition holds."""
    if n < 2:
        raise InvalidArgument(f"base n must be >= 2, got {n}")
    if u < 0 or w < 0:
        raise InvalidArgument(f"exponents must be non-negative, got u={u}, w={w}")
    if v == 0:
        # t^-u t^w collapses completely
        m = min(u, w)
        return NormalForm(n, u - m, 0, w - m)
    while u > 0 and w > 0 and v % n == 0:
        u, v, w = u - 1, v // n, w - 1
    return NormalForm(n, u, v, w)


def multiply(g: NormalForm, h: NormalForm) -> NormalForm:
    """Product ``g * h`` using ``t a^v = a^(nv) t``."""
    if g.n != h.n:
        raise InvalidArgument(f"mismatched bases {g.n} and {h.n}")
    n = g.n
    d = g.w - h.u
    if d >= 0:
        # t^d a^v2 = a^(n^d v2) t^d
        return normalize(g.u, g.v + n**d * h.v, d + h.w, n)
    # a^v1 t^-e = t^-e a^(n^e v1)
    e = -d
    return normalize(g.u + e, n**e * g.v + h.v, h.w, n)


def invert(g: NormalForm) -> NormalForm:
    """``(t^-u a^v t^w)^-1 = t^-w a^-v t^u``."""
    return NormalForm(g.n, g.w, -g.v, g.u)


def generator(letter: str, n: int) -> NormalForm:
    """The normal form of a single generator letter."""
    if letter == "a":
        return NormalForm(n, 0, 1, 0)
    if letter == "A":
        return NormalForm(n, 0, -1, 0)
    if letter == "t":
        return NormalForm(n, 0, 0, 1)
    if letter == "T":
        return NormalForm(n, 1, 0, 0)
    raise InvalidArgument(f"unknown generator letter {letter!r}")


def right_multiply_letter(u: int, v: int, w: int, letter: str, n: int) -> tuple[int, int, int]:
    """Raw-triple version of ``g * s`` for a generator ``s``; the BFS inner step."""
    if letter == "t":
        w += 1
    elif letter == "T":
        if w > 0:
            w -= 1
        else:
            # a^v t^-1 = t^-1 a^(nv)
            return (u + 1, n * v, 0)
    elif letter == "a":
        v += n**w
    elif letter == "A":
        v -= n**w
    else:
        raise InvalidArgument(f"unknown generator letter {letter!r}")
    if v == 0:
        m = min(u, w)
        return (u - m, 0, w - m)
    while u > 0 and w > 0 and v % n == 0:
        u, v, w = u - 1, v // n, w - 1
    return (u, v, w)


def evaluate_word(word: str, n: int) -> NormalForm:
    """Normal form of the element spelled by ``word`` (letters ``aAtT``)."""
    u = v = w = 0
    for letter in word:
        u, v, w = right_multiply_letter(u, v, w, letter, n)
    return NormalForm(n, u, v, w)


def conjugate_by_generator(g: NormalForm, s: str) -> NormalForm:
    """``s g s^-1`` via the closed forms for each generator."""
    n, u, v, w = g.n, g.u, g.v, g.w
    if s == "t":
        if u * w > 0:
            return normalize(u - 1, v, w - 1, n)
        return normalize(u, n * v, w, n)
    if s == "T":
        if v % n != 0:
            return normalize(u + 1, v, w + 1, n)
        return normalize(u, v // n, w, n)
    if s == "a":
        return normalize(u, n**u + v - n**w, w, n)
    if s == "A":
        return normalize(u, -(n**u) + v + n**w, w, n)
    raise InvalidArgument(f"unknown generator letter {s!r}")


def conjugate(g: NormalForm, q: str) -> NormalForm:
    """``q g q^-1``; the innermost (last) letter of ``q`` acts first."""
    for s in reversed(q):
        g = conjugate_by_generator(g, s)
    return g


def inverse_word(word: str) -> str:
    return "".join(INVERSE_LETTER[c] for c in reversed(word))


def parse_word(text: str) -> str:
    """Parse ``"a t^2 A^-1"``-style input into a letter string.

    Whitespace is ignored; a negative exponent inverts the letter.
    """
    compact = "".join(text.split())
    out = []
    pos = 0
    while pos < len(compact):
        m = _TOKEN.match(compact, pos)
        if m is None:
            raise InvalidArgument(f"cannot parse word at position {pos}: {compact[pos:]!r}")
        letter, exp = m.group(1), m.group(2)
        k = 1 if exp is None else int(exp)
        if k < 0:
            letter, k = INVERSE_LETTER[letter], -k
        out.append(letter * k)
        pos = m.end()
    return "".join(out)


def format_word(word: str) -> str:
    """Render a letter string compactly, e.g. ``"atTaaa"`` -> ``"a t T a^3"``."""
    parts = []
    for letter, group in groupby(word):
        k = sum(1 for _ in group)
        parts.append(letter if k == 1 else f"{letter}^{k}")
    return " ".join(parts)


def parse_element(text: str, n: int) -> NormalForm:
    """Parse ``"u,v,w"`` into a normal form (normalizing if needed)."""
    try:
        u, v, w = (int(p) for p in text.split(","))
    except ValueError as exc:
        raise InvalidArgument(f"expected 'u,v,w', got {text!r}") from exc
    return normalize(u, v, w, n)
