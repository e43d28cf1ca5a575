"""Geodesics and word length in BS(1,n) from minimal digit vectors.

For ``g = t^-u a^v t^w`` every digit vector ``x`` with ``sigma(x) = v``
spells a path ``eta(x)`` to ``g``, of one of four shapes::

    shape 1/3:  t^-u a^x0 t a^x1 t ... t a^xk t^(w-k)
    shape 2/4:  t^(k-u) a^xk T ... T a^x1 T a^x0 t^w

A geodesic is ``eta`` of a vector that is minimal for the order
``<_{u,w}``: shorter path first, then smaller absolute digits with low
indices most significant.  Minimality is decided digit-locally:

* odd ``n``: the box holds at most two vectors and the longer one ends in
  ``(d * (n // 2), -d)``;
* even ``n``: a vector is minimal unless some *run* reduction or the
  end-of-vector reduction produces a smaller vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator, NamedTuple

from .digit_lattice import (
    BoxParams,
    DigitVector,
    add_multiple,
    in_box,
    initial_digits,
    l1_norm,
    reduce_to_box,
    sigma,
)
from .errors import InternalConsistencyError, InvalidArgument
from .group_core import NormalForm


class ShapeTag(IntEnum):
    SHAPE1 = 1
    SHAPE2 = 2
    SHAPE3 = 3
    SHAPE4 = 4


@dataclass(frozen=True)
class Shape:
    tag: ShapeTag
    strict1: bool


class Run(NamedTuple):
    """Digits ``x_start .. x_end`` sharing the sign ``sign``."""

    start: int
    end: int
    sign: int


@dataclass(frozen=True)
class GeodesicResult:
    element: NormalForm
    vector: DigitVector
    shape: Shape
    word: str
    length: int


def _check_side_condition(x: DigitVector, u: int, w: int) -> None:
    if u < 0 or w < 0:
        raise InvalidArgument(f"u and w must be non-negative, got u={u}, w={w}")
    if (not x or x[0] == 0) and u * w > 0:
        raise InvalidArgument("a vector with x_0 = 0 needs u*w = 0 (n divides v)")


def _length(x: DigitVector, u: int, w: int) -> int:
    k = len(x) - 1
    norm = 0
    for d in x:
        norm += d if d > 0 else -d
    if k <= max(u, w):
        return norm + u + w
    return norm + 2 * k - abs(u - w)


def path_length(x: DigitVector, u: int, w: int) -> int:
    """Letter count of ``eta_{u,v,w}(x)``."""
    _check_side_condition(x, u, w)
    return _length(x, u, w)


def shape_of(x: DigitVector, u: int, w: int) -> Shape:
    k = len(x) - 1
    strict1 = k < max(u, w)
    if k <= w:
        tag = ShapeTag.SHAPE1
    elif k <= u:
        tag = ShapeTag.SHAPE2
    elif u <= w:
        tag = ShapeTag.SHAPE3
    else:
        tag = ShapeTag.SHAPE4
    return Shape(tag, strict1)


def _power(letter: str, k: int) -> str:
    return letter * k if k >= 0 else letter.swapcase() * (-k)


def path_from_vector(x: DigitVector, u: int, w: int) -> str:
    """The word ``eta_{u,v,w}(x)`` as a string over ``aAtT``."""
    _check_side_condition(x, u, w)
    if not x:
        return "T" * u + "t" * w
    k = len(x) - 1
    tag = shape_of(x, u, w).tag
    if tag in (ShapeTag.SHAPE1, ShapeTag.SHAPE3):
        body = "t".join(_power("a", d) for d in x)
        return "T" * u + body + _power("t", w - k)
    body = "T".join(_power("a", d) for d in reversed(x))
    return _power("t", k - u) + body + "t" * w


def order_key(x: DigitVector, u: int, w: int) -> tuple:
    """Sort key realising ``<_{u,w}``; signed digits break any leftover tie."""
    return (_length(x, u, w), tuple(abs(d) for d in x), x)


def compare(x: DigitVector, y: DigitVector, u: int, w: int, n: int) -> int:
    """Return -1, 0 or 1 as ``x`` is below, equal to or above ``y``."""
    if sigma(x, n) != sigma(y, n):
        raise InvalidArgument("compared vectors must have the same sigma")
    kx, ky = order_key(x, u, w), order_key(y, u, w)
    return (kx > ky) - (kx < ky)


def _sign(d: int) -> int:
    return (d > 0) - (d < 0)


def find_runs(x: DigitVector, u: int, w: int, n: int) -> list[Run]:
    """Every admissible ``(start, end)`` run of ``x``.

    Even ``n >= 4``: a run starts at a digit of size ``n/2`` and continues
    through digits of the same sign with sizes ``n/2 - 1 .. n/2 + 1``.
    ``n = 2``: a run starts at ``+-1`` and continues through ``0`` and the
    same sign, possibly closing on a final ``+-2`` or ``+-3``.
    """
    if n % 2:
        return []
    runs = []
    half = n // 2
    k = len(x) - 1
    for j in range(k + 1):
        if abs(x[j]) != half:
            continue
        eps = _sign(x[j])
        for end in range(j, k + 1):
            d = x[end]
            if n == 2:
                if d == 0 or d == eps:
                    runs.append(Run(j, end, eps))
                    continue
                if end == k and d * eps in (2, 3):
                    runs.append(Run(j, end, eps))
                break
            if _sign(d) == eps and half - 1 <= abs(d) <= half + 1:
                runs.append(Run(j, end, eps))
                continue
            break
    return runs


def _is_run(x: DigitVector, r: Run, n: int) -> bool:
    return 0 <= r.start <= r.end < len(x) and r in find_runs(x, 0, 0, n)


def run_weight(x: DigitVector, r: Run, n: int) -> int:
    """Size of the l1 saving from reducing at ``r`` (before the digit after it)."""
    digits = [abs(x[i]) for i in range(r.start, r.end + 1)]
    if n == 2:
        return (sum(1 for d in digits if d == 1) - 1) - digits.count(0)
    half = n // 2
    return 3 * digits.count(half + 1) + (digits.count(half) - 1) - digits.count(half - 1)


def _apply_run(x: DigitVector, j: int, end: int, eps: int, alpha: int, n: int) -> DigitVector:
    d = list(x)
    if len(d) < end + 2:
        d.extend([0] * (end + 2 - len(d)))
    for i in range(j, end):
        d[i] -= eps * n
        d[i + 1] += eps
    d[end] -= alpha * eps * n
    d[end + 1] += alpha * eps
    while d and d[-1] == 0:
        d.pop()
    return tuple(d)


def reduce_at_run(x: DigitVector, r: Run, alpha: int, n: int) -> DigitVector:
    """``x + sign * (w^(j) + ... + w^(l-1) + alpha * w^(l))``."""
    if alpha not in ((1, 2) if n == 2 else (1,)):
        raise InvalidArgument(f"final coefficient {alpha} not allowed for n={n}")
    if not _is_run(x, r, n):
        raise InvalidArgument(f"{r} is not a run of {x}")
    return _apply_run(x, r.start, r.end, r.sign, alpha, n)


def _end_pattern(x: DigitVector, u: int, w: int, n: int) -> bool:
    k = len(x) - 1
    if k < 1 or k <= max(u, w):
        return False
    last, prev = x[k], x[k - 1]
    if abs(last) != 1:
        return False
    if n == 2:
        # (0, d) and (d, d) both fold into a final 2d or 3d one index lower
        return prev == 0 or prev == last
    half = n // 2
    if n % 2:
        return prev == -last * half
    return prev in (-last * (half - 1), -last * half)


def end_reduction_applies(x: DigitVector, u: int, w: int, n: int) -> bool:
    """True when the tail of ``x`` certifies it is not minimal."""
    return _end_pattern(x, u, w, n)


def end_reduction(x: DigitVector, n: int) -> DigitVector:
    """The shorter vector witnessing :func:`end_reduction_applies`."""
    return add_multiple(x, len(x) - 2, -x[-1], n)


def _run_candidates(x: DigitVector, n: int) -> Iterator[DigitVector]:
    alphas = (1, 2) if n == 2 else (1,)
    for r in find_runs(x, 0, 0, n):
        for alpha in alphas:
            yield _apply_run(x, r.start, r.end, r.sign, alpha, n)


def _best_run_reduction(x: DigitVector, u: int, w: int, n: int) -> DigitVector | None:
    p = BoxParams(u, w, n)
    best = None
    best_key = order_key(x, u, w)
    for y in _run_candidates(x, n):
        key = order_key(y, u, w)
        if key < best_key and in_box(y, p):
            best, best_key = y, key
    return best


def _strict1_minimal(x: DigitVector, n: int) -> bool:
    if n % 2:
        return True
    half = n // 2
    for a, b in zip(x, x[1:]):
        if n == 2:
            if a != 0 and b != 0:
                return False
        elif abs(a) == half and (b == a or _sign(b) == -_sign(a)):
            return False
    return True


def is_minimal(x: DigitVector, u: int, w: int, n: int) -> bool:
    """Whether ``x`` is the ``<_{u,w}``-least vector of its box."""
    if not in_box(x, BoxParams(u, w, n)):
        raise InvalidArgument(f"{x} is not in the box for u={u}, w={w}, n={n}")
    if len(x) - 1 < max(u, w):
        return _strict1_minimal(x, n)
    if _end_pattern(x, u, w, n):
        return False
    if n % 2:
        return True
    return _best_run_reduction(x, u, w, n) is None


def is_minimal_by_runs(x: DigitVector, u: int, w: int, n: int) -> bool:
    """:func:`is_minimal` without the strict shape 1 shortcut."""
    if _end_pattern(x, u, w, n):
        return False
    if n % 2:
        return True
    return _best_run_reduction(x, u, w, n) is None


def minimal_vector(u: int, v: int, w: int, n: int) -> DigitVector:
    """The minimal digit vector of ``t^-u a^v t^w``."""
    if v % n == 0 and u * w > 0:
        raise InvalidArgument(f"({u},{v},{w}) violates the normal-form side condition")
    p = BoxParams(u, w, n)
    x = reduce_to_box(initial_digits(v, n), p)
    if n % 2:
        if _end_pattern(x, u, w, n):
            y = end_reduction(x, n)
            if _length(y, u, w) != _length(x, u, w) - 2:
                raise InternalConsistencyError(f"odd box pair {x}, {y} not two apart")
            x = y
        return x
    while True:
        if _end_pattern(x, u, w, n):
            x = end_reduction(x, n)
            continue
        y = _best_run_reduction(x, u, w, n)
        if y is None:
            return x
        x = y


def geodesic(g: NormalForm) -> GeodesicResult:
    x = minimal_vector(g.u, g.v, g.w, g.n)
    word = path_from_vector(x, g.u, g.w)
    return GeodesicResult(g, x, shape_of(x, g.u, g.w), word, len(word))


def word_length(g: NormalForm) -> int:
    return _length(minimal_vector(g.u, g.v, g.w, g.n), g.u, g.w)


def word_length_triple(u: int, v: int, w: int, n: int) -> int:
    return _length(minimal_vector(u, v, w, n), u, w)
