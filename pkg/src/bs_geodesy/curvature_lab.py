"""Conjugation curvature and the families that realise each sign.

For ``h != e`` and ``r >= 1``::

    kappa_r(h) = (l(h) - mean_{y in S(r)} l(y h y^-1)) / l(h)

where ``S(r)`` is the sphere of group elements at distance ``r``.  Values
are exact :class:`fractions.Fraction` objects.

The family constructors glue a fixed prefix and suffix around the digit
vector of a word ``xi`` from the language ``Q_n`` (strict shape 1, no
leading ``T``, a single trailing ``t``).  The glued vector is checked for
minimality instead of being assumed minimal.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cayley_oracle import bfs_ball, sphere_list
from .digit_lattice import BoxParams, DigitVector, in_box, reduce_to_box, sigma, trim
from .errors import (
    InternalConsistencyError,
    InvalidArgument,
    NotApplicable,
    UndefinedInput,
    VerificationFailed,
)
from .geodesic_engine import is_minimal, minimal_vector, path_length, word_length
from .group_core import NormalForm, invert, multiply, normalize, parse_word

FAMILY_KINDS = ("P", "Z", "N")


@dataclass(frozen=True)
class CurvatureReport:
    g: NormalForm
    r: int
    l_g: int
    conj_lengths: dict
    kappa: Fraction

    @property
    def histogram(self) -> dict[int, int]:
        """How many conjugates change the length by each amount."""
        return dict(sorted(Counter(l - self.l_g for l in self.conj_lengths.values()).items()))

    def to_json(self) -> dict:
        return {
            "g": {"u": self.g.u, "v": str(self.g.v) if abs(self.g.v) >= 2**53 else self.g.v, "w": self.g.w},
            "r": self.r,
            "l_g": self.l_g,
            "kappa": {"num": self.kappa.numerator, "den": self.kappa.denominator},
            "histogram": {str(k): v for k, v in self.histogram.items()},
        }


@lru_cache(maxsize=None)
def sphere_elements(n: int, r: int) -> tuple[NormalForm, ...]:
    """The sphere ``S_n(r)``, built once per ``(n, r)``."""
    return tuple(sphere_list(bfs_ball(n, r), r))


def kappa(g: NormalForm, r: int) -> CurvatureReport:
    """Exact ``kappa_r(g)`` with every length from the geodesic engine."""
    if g.is_identity:
        raise UndefinedInput("curvature of the identity is undefined")
    if r < 1:
        raise InvalidArgument(f"conjugation radius must be >= 1, got {r}")
    lg = word_length(g)
    conj = {y: word_length(multiply(multiply(y, g), invert(y))) for y in sphere_elements(g.n, r)}
    value = (lg - Fraction(sum(conj.values()), len(conj))) / lg
    return CurvatureReport(g, r, lg, conj, value)


def rho_shift(x: DigitVector, u: int, w: int, direction: int) -> DigitVector:
    """Digit vector of ``a g a^-1`` (``direction=+1``) or ``A g A^-1`` (``-1``).

    ``+1`` adds one at index ``u`` and subtracts one at index ``w``.
    """
    if direction not in (1, -1):
        raise InvalidArgument(f"direction must be +1 or -1, got {direction}")
    d = list(x) + [0] * (max(u, w) + 1 - len(x))
    d[u] += direction
    d[w] -= direction
    return trim(d)


def is_strongly_minimal(x: DigitVector, u: int, w: int, n: int) -> bool:
    """Both shifted vectors stay in their boxes and are minimal there."""
    p = BoxParams(u, w, n)
    for direction in (1, -1):
        y = rho_shift(x, u, w, direction)
        if not in_box(y, p):
            return False
        if (not y or y[0] == 0) and u * w > 0:
            # the shifted element is not a normal form with these u, w
            return False
        if not is_minimal(y, u, w, n):
            return False
    return True


def is_strongly_minimal_reboxed(x: DigitVector, u: int, w: int, n: int) -> bool:
    """Variant that moves each shifted vector back into the box first."""
    p = BoxParams(u, w, n)
    for direction in (1, -1):
        y = reduce_to_box(rho_shift(x, u, w, direction), p)
        if (not y or y[0] == 0) and u * w > 0:
            return False
        if not is_minimal(y, u, w, n):
            return False
    return True


def classify_kappa1_shape34(g: NormalForm) -> str:
    """Predicted sign class of ``kappa_1(g)``: ``"zero"`` or ``"negative"``.

    Applies when the minimal vector is strongly minimal and longer than
    ``max(u, w)``.  The curvature vanishes exactly when ``uw > 0`` or
    ``n | v``, and additionally ``u == w`` or both ``x_u`` and ``x_w`` are
    nonzero.
    """
    n, u, v, w = g.n, g.u, g.v, g.w
    x = minimal_vector(u, v, w, n)
    k = len(x) - 1
    if k <= max(u, w) or not is_strongly_minimal(x, u, w, n):
        raise NotApplicable(f"{g} does not have a strongly minimal vector longer than max(u,w)")
    blocked = u != w and (x[u] == 0 or x[w] == 0)
    if not blocked and (u * w > 0 or v % n == 0):
        return "zero"
    return "negative"


# ---------------------------------------------------------------- families


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int
    r: int
    xi: str

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise InvalidArgument(f"family kind must be one of {FAMILY_KINDS}, got {self.kind!r}")
        if self.n < 2:
            raise InvalidArgument(f"base n must be >= 2, got {self.n}")
        if not 1 <= self.r <= max_family_radius(self.kind, self.n):
            raise InvalidArgument(
                f"r={self.r} outside 1..{max_family_radius(self.kind, self.n)} for {self.kind}_{self.n}"
            )


def max_family_radius(kind: str, n: int) -> int:
    if kind == "P" or n == 2:
        return 1
    if kind == "Z":
        return max(1, n // 4 - 1)
    return max(1, n // 2 - 2)


def xi_vector(xi: str, n: int) -> DigitVector:
    """Digit vector of a ``Q_n`` word ``a^x0 t a^x1 t ... a^xk t``.

    Raises :class:`InvalidArgument` unless the word has that form, ends in a
    single ``t`` after a nonzero digit and its vector is minimal for
    ``u = 0, w = k + 1``.
    """
    word = parse_word(xi)
    if not word or word[-1] != "t":
        raise InvalidArgument(f"{xi!r} must end with t")
    digits = []
    for block in word[:-1].split("t"):
        if block and set(block) not in ({"a"}, {"A"}):
            raise InvalidArgument(f"{xi!r} is not of the form a^x0 t a^x1 t ... t")
        digits.append(block.count("a") - block.count("A"))
    x = tuple(digits)
    if not x or x[-1] == 0:
        raise InvalidArgument(f"{xi!r} must end with a single t after a nonzero digit")
    k = len(x) - 1
    if not in_box(x, BoxParams(0, k + 1, n)) or not is_minimal(x, 0, k + 1, n):
        raise InvalidArgument(f"{xi!r} is not a geodesic of strict shape 1")
    return x


def _prefix_suffix(kind: str, n: int, r: int) -> tuple[tuple, int, tuple, int]:
    """(prefix, u, suffix, k - w) for a family."""
    if n == 2:
        p1 = (1, 0, 0, 0, -1, 0, 1, 0)
        p2 = (1, 0, 1, 0, 0, -1, 0)
        s = (0, 0, -1, 0, 0, 1, 2)
        if kind == "P":
            return p2, 2, s, 1
        if kind == "Z":
            return p2, 2, s, 2
        return p1, 2, s, 2
    if kind == "P":
        return (1, n // 2, (-1) ** n, 0), 1, (0, 1, 0, 1), 2
    if kind == "Z":
        b = max(1, n // 4)
        return (b,) * (2 * r + 2) + (0,), r + 1, (0,) + (b,) * (2 * r + 5), r + 4
    return (1,) + (0,) * (2 * r + 2), r + 1, (0,) * (2 * r + 5) + (1,), r + 4


def family_vector(spec: FamilySpec) -> tuple[int, DigitVector, int]:
    """``(u, x, w)`` with ``x = p x' s`` for the given family."""
    core = xi_vector(spec.xi, spec.n)
    prefix, u, suffix, gap = _prefix_suffix(spec.kind, spec.n, spec.r)
    x = prefix + core + suffix
    return u, x, len(x) - 1 - gap


def build_family(spec: FamilySpec) -> NormalForm:
    """The family element, after confirming its glued vector is minimal."""
    n = spec.n
    u, x, w = family_vector(spec)
    if not in_box(x, BoxParams(u, w, n)) or not is_minimal(x, u, w, n):
        raise InternalConsistencyError(f"glued vector {x} is not minimal for u={u}, w={w}")
    g = normalize(u, sigma(x, n), w, n)
    if (g.u, g.w) != (u, w):
        raise InternalConsistencyError(f"family element {g} is not in normal form ({u}, *, {w})")
    return g


@dataclass
class FamilyReport:
    spec: FamilySpec
    element: NormalForm
    report: CurvatureReport
    expected: str
    deltas: dict = field(default_factory=dict)

    @property
    def sign(self) -> str:
        k = self.report.kappa
        return "positive" if k > 0 else ("zero" if k == 0 else "negative")

    @property
    def ok(self) -> bool:
        return self.sign == self.expected


EXPECTED_SIGN = {"P": "positive", "Z": "zero", "N": "negative"}


def verify_family_sign(spec: FamilySpec, raise_on_failure: bool = True) -> FamilyReport:
    """Compute ``kappa_r`` of the family element and check its sign."""
    g = build_family(spec)
    rep = kappa(g, spec.r)
    u, x, w = family_vector(spec)
    if rep.l_g != path_length(x, u, w):
        raise InternalConsistencyError(f"engine length {rep.l_g} differs from the glued path")
    deltas = {str(y): l - rep.l_g for y, l in rep.conj_lengths.items()}
    out = FamilyReport(spec, g, rep, EXPECTED_SIGN[spec.kind], deltas)
    if raise_on_failure and not out.ok:
        raise VerificationFailed(
            f"{spec.kind}_{spec.n} r={spec.r} xi={spec.xi!r}: kappa={rep.kappa} is {out.sign}",
            details=deltas,
        )
    return out
