"""Signed base-n digit vectors.

A digit vector ``x = (x_0, ..., x_k)`` represents ``sigma(x) = sum x_i n^i``.
Vectors are plain tuples of ints with trailing zeros trimmed, so the empty
tuple is the zero vector and ``k_x = len(x) - 1`` (``-1`` when empty).

All vectors with the same ``sigma`` differ by integer combinations of the
basis vectors ``w^(i) = -n e_i + e_{i+1}``.  The *box* for parameters
``(u, w)`` bounds every digit by ``n // 2`` except the last, which may reach
``n // 2 + 1`` (``+ 2`` when ``n == 2``) once ``k_x >= max(u, w)``.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .errors import InvalidArgument

DigitVector = tuple[int, ...]


class BoxParams(NamedTuple):
    u: int
    w: int
    n: int


def trim(digits: Sequence[int]) -> DigitVector:
    """Drop trailing zeros."""
    k = len(digits)
    while k and digits[k - 1] == 0:
        k -= 1
    return tuple(digits[:k])


def k_index(x: DigitVector) -> int:
    """Index of the last nonzero digit, ``-1`` for the zero vector."""
    return len(x) - 1


def l1_norm(x: DigitVector) -> int:
    return sum(abs(d) for d in x)


def sigma(x: Sequence[int], n: int) -> int:
    """Exact value ``sum x_i n^i`` (Horner from the top digit)."""
    total = 0
    for d in reversed(x):
        total = total * n + d
    return total


def basis_vector(i: int, n: int) -> DigitVector:
    """``w^(i)``: ``-n`` at index ``i`` and ``1`` at ``i + 1``."""
    if i < 0:
        raise InvalidArgument(f"basis index must be >= 0, got {i}")
    return (0,) * i + (-n, 1)


def add_multiple(x: DigitVector, i: int, alpha: int, n: int) -> DigitVector:
    """``x + alpha * w^(i)``, trimmed."""
    if alpha == 0:
        return x
    d = list(x)
    if len(d) < i + 2:
        d.extend([0] * (i + 2 - len(d)))
    d[i] -= alpha * n
    d[i + 1] += alpha
    return trim(d)


def add_vectors(x: DigitVector, y: DigitVector) -> DigitVector:
    m = max(len(x), len(y))
    return trim([(x[i] if i < len(x) else 0) + (y[i] if i < len(y) else 0) for i in range(m)])


def initial_digits(v: int, n: int) -> DigitVector:
    """Least-absolute-remainder base-n expansion of ``v``.

    Remainders are taken in ``[-((n - 1) // 2), n // 2]`` so that the
    expansion terminates for every base (``n = 2`` gives plain binary);
    negative ``v`` is the digitwise negation of ``-v``.
    """
    if n < 2:
        raise InvalidArgument(f"base n must be >= 2, got {n}")
    if v < 0:
        return tuple(-d for d in initial_digits(-v, n))
    half = n // 2
    out = []
    while v:
        r = v % n
        if r > half:
            r -= n
        out.append(r)
        v = (v - r) // n
    return tuple(out)


def last_digit_cap(k: int, u: int, w: int, n: int) -> int:
    """Largest allowed ``|x_k|`` for a final digit at index ``k``."""
    half = n // 2
    if k < max(u, w):
        return half
    return half + 2 if n == 2 else half + 1


def in_box(x: DigitVector, p: BoxParams) -> bool:
    u, w, n = p
    if not x:
        return True
    half = n // 2
    k = len(x) - 1
    for i in range(k):
        if abs(x[i]) > half:
            return False
    return abs(x[k]) <= last_digit_cap(k, u, w, n)


def reduce_to_box(x: DigitVector, p: BoxParams) -> DigitVector:
    """Move ``x`` into the box without lengthening its path.

    Repeatedly fix the lowest index that breaks a digit bound by adding
    ``sign * w^(i)``; a final digit of size ``>= 4`` in base 2 uses twice
    the basis vector so that the remaining digit stays small.
    """
    u, w, n = p
    half = n // 2
    m = max(u, w)
    d = list(trim(x))
    start = 0
    while d:
        k = len(d) - 1
        i = start
        while i < k and abs(d[i]) <= half:
            i += 1
        if i == k and abs(d[k]) <= last_digit_cap(k, u, w, n):
            break
        s = 1 if d[i] > 0 else -1
        alpha = s
        if i == k and k >= m and n == 2 and abs(d[k]) >= 4:
            alpha = 2 * s
        if i + 1 == len(d):
            d.append(0)
        d[i] -= alpha * n
        d[i + 1] += alpha
        while d and d[-1] == 0:
            d.pop()
        start = min(i, max(len(d) - 1, 0))
    return tuple(d)


def parse_digits(text: str) -> DigitVector:
    """Parse ``"1,-1,1"``; the empty string is the zero vector."""
    text = text.strip()
    if not text:
        return ()
    try:
        digits = [int(p) for p in text.split(",")]
    except ValueError as exc:
        raise InvalidArgument(f"expected comma-separated digits, got {text!r}") from exc
    return trim(digits)


def format_digits(x: DigitVector) -> str:
    return ",".join(str(d) for d in x)
