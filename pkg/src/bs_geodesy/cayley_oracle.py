"""Brute-force ground truth: breadth-first search of the Cayley graph.

The BFS works one frontier at a time.  A layer's neighbours can only lie
in the previous layer, the same layer or the next one, so those two layers
are the only membership filter needed.  Elements are packed into int64 keys
(see :mod:`bs_geodesy._kernels`) while ``|v|`` stays small.  Past that
point the search falls back to exact Python integers.

Distances from this module never touch the digit-vector machinery, so they
serve as an independent check of :mod:`bs_geodesy.geodesic_engine`.
"""

from __future__ import annotations

import csv
import io
import os
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import _kernels
from .errors import OutOfRange, ResourceLimit, UndefinedInput
from .group_core import NormalForm, invert, multiply, right_multiply_letter

DEFAULT_CAP = 50_000_000


def element_cap(cap: int | None = None) -> int:
    """Explicit argument, else ``BS_GEODESY_CAP``, else the default."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("BS_GEODESY_CAP")
    return int(float(env)) if env else DEFAULT_CAP


def _fits_int64(n: int, R: int) -> bool:
    # |v| <= R * n^R for every element within distance R
    return R + 1 <= _kernels.MAX_FIELD and (R + 1) * n ** (R + 1) < _kernels.MAX_ABS_V


class Ball:
    """All elements within distance ``radius`` of the identity.

    ``layers[d]`` holds the packed keys of the sphere of radius ``d``.
    """

    def __init__(self, n: int, radius: int, layers: list):
        self.n = n
        self.radius = radius
        self.layers = layers
        self._index: dict[int, int] | None = None
        self._spheres: dict[int, list[NormalForm]] = {}

    def __len__(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def sphere_sizes(self) -> list[int]:
        return [len(layer) for layer in self.layers]

    def _lookup(self) -> dict[int, int]:
        if self._index is None:
            index = {}
            for d, layer in enumerate(self.layers):
                for key in layer:
                    index[int(key)] = d
            self._index = index
        return self._index

    def distance(self, g: NormalForm) -> int | None:
        """BFS distance of ``g``, or ``None`` when it lies outside the ball."""
        return self._lookup().get(_kernels.encode(g.u, g.v, g.w))

    def triples(self, d: int) -> Iterator[tuple[int, int, int]]:
        if not 0 <= d <= self.radius:
            raise OutOfRange(f"radius {d} outside 0..{self.radius}")
        for key in self.layers[d]:
            yield _kernels.decode(key)

    def items(self) -> Iterator[tuple[NormalForm, int]]:
        for d in range(self.radius + 1):
            for u, v, w in self.triples(d):
                yield NormalForm(self.n, u, v, w), d

    @property
    def distances(self) -> dict[NormalForm, int]:
        return dict(self.items())

    def to_csv(self) -> str:
        rows = sorted((u, v, w, d) for d in range(self.radius + 1) for u, v, w in self.triples(d))
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(rows)
        return buf.getvalue()


def _bfs_int64(n: int, R: int, cap: int) -> list[np.ndarray]:
    layers = [np.array([0], dtype=np.int64)]
    prev = np.empty(0, dtype=np.int64)
    stored = 1
    for d in range(1, R + 1):
        cur = layers[-1]
        if stored + 4 * len(cur) > cap:
            raise ResourceLimit(f"radius R={R} exceeds the element cap {cap} at layer {d}")
        cand = np.unique(_kernels.expand(cur, n))
        cand = cand[~np.isin(cand, cur, assume_unique=True)]
        if len(prev):
            cand = cand[~np.isin(cand, prev, assume_unique=True)]
        layers.append(cand)
        stored += len(cand)
        prev = cur
    return layers


def _bfs_bigint(n: int, R: int, cap: int) -> list[list[int]]:
    layers = [[0]]
    prev: set[int] = set()
    cur_set = {0}
    stored = 1
    for d in range(1, R + 1):
        if stored + 4 * len(cur_set) > cap:
            raise ResourceLimit(f"radius R={R} exceeds the element cap {cap} at layer {d}")
        nxt = set()
        for key in layers[-1]:
            u, v, w = _kernels.decode(key)
            for s in "aAtT":
                h = _kernels.encode(*right_multiply_letter(u, v, w, s, n))
                if h not in cur_set and h not in prev:
                    nxt.add(h)
        layers.append(sorted(nxt))
        stored += len(nxt)
        prev, cur_set = cur_set, nxt
    return layers


def bfs_ball(n: int, R: int, cap: int | None = None, exact: bool = False) -> Ball:
    """Exact distances for every element within distance ``R``.

    ``exact=True`` forces the arbitrary-precision path.
    """
    if R < 0:
        raise OutOfRange(f"radius must be >= 0, got {R}")
    limit = element_cap(cap)
    if not exact and _fits_int64(n, R):
        return Ball(n, R, _bfs_int64(n, R, limit))
    return Ball(n, R, _bfs_bigint(n, R, limit))


def sphere(ball: Ball, r: int) -> set[NormalForm]:
    """Elements at distance exactly ``r``."""
    if not 0 <= r <= ball.radius:
        raise OutOfRange(f"sphere radius {r} outside 0..{ball.radius}")
    return {NormalForm(ball.n, u, v, w) for u, v, w in ball.triples(r)}


def sphere_list(ball: Ball, r: int) -> list[NormalForm]:
    """Sphere as a deterministically ordered list (cached on the ball)."""
    if r not in ball._spheres:
        ball._spheres[r] = sorted(sphere(ball, r), key=lambda g: (g.u, g.v, g.w))
    return ball._spheres[r]


def oracle_length(h: NormalForm, ball: Ball) -> int:
    """Word length of ``h`` from BFS data alone, valid up to ``2 * radius``.

    If ``h`` is outside the ball, the smallest ``m`` for which some ``y`` in
    the sphere ``S(m)`` has ``h y^-1`` inside the ball is ``l(h) - R``.
    """
    d = ball.distance(h)
    if d is not None:
        return d
    R = ball.radius
    for m in range(1, R + 1):
        hits = [
            ball.distance(multiply(h, invert(y)))
            for y in sphere_list(ball, m)
        ]
        hits = [x for x in hits if x is not None]
        if hits:
            return m + min(hits)
    raise OutOfRange(f"{h} is farther than twice the ball radius {R}")


def oracle_kappa(g: NormalForm, r: int, ball: Ball) -> Fraction:
    """Conjugation curvature computed purely from BFS distances."""
    if g.is_identity:
        raise UndefinedInput("curvature of the identity is undefined")
    if r > ball.radius:
        raise OutOfRange(f"r={r} exceeds ball radius {ball.radius}")
    lg = oracle_length(g, ball)
    conj = [oracle_length(multiply(multiply(y, g), invert(y)), ball) for y in sphere_list(ball, r)]
    return (lg - Fraction(sum(conj), len(conj))) / lg
