"""Frontier-expansion kernels for the Cayley-graph BFS.

Elements are packed into one int64 key ``(v << 12) | (u << 6) | w`` which
is exact while ``u, w < 64`` and ``|v| < 2**50``.  The numba kernel and the
numpy fallback compute the same thing; set ``BS_GEODESY_NUMBA=0`` to force
the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

FIELD_BITS = 6
FIELD_MASK = (1 << FIELD_BITS) - 1
V_SHIFT = 2 * FIELD_BITS
MAX_FIELD = FIELD_MASK
MAX_ABS_V = 1 << 50

try:
    import numba
    from numba import njit, prange

    if "NUMBA_THREADING_LAYER" not in os.environ:
        # the TBB build shipped with some distributions is too old for numba
        numba.config.THREADING_LAYER = "workqueue"
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    return HAVE_NUMBA and os.environ.get("BS_GEODESY_NUMBA", "1") != "0"


def encode(u: int, v: int, w: int) -> int:
    return (v << V_SHIFT) | (u << FIELD_BITS) | w


def decode(key: int) -> tuple[int, int, int]:
    key = int(key)
    return ((key >> FIELD_BITS) & FIELD_MASK, key >> V_SHIFT, key & FIELD_MASK)


def expand_numpy(keys: np.ndarray, n: int) -> np.ndarray:
    """All right-multiples ``g*a, g*A, g*t, g*T`` of the packed elements."""
    w = keys & FIELD_MASK
    u = (keys >> FIELD_BITS) & FIELD_MASK
    v = keys >> V_SHIFT
    step = np.power(np.int64(n), w)
    us = [u, u, u, u.copy()]
    vs = [v + step, v - step, v.copy(), v.copy()]
    ws = [w, w, w + 1, w - 1]
    # g*T with w = 0 becomes t^-(u+1) a^(nv)
    low = w == 0
    us[3] = np.where(low, u + 1, u)
    vs[3] = np.where(low, n * v, v)
    ws[3] = np.where(low, 0, w - 1)
    out = []
    for uu, vv, ww in zip(us, vs, ws):
        uu, vv, ww = uu.copy(), vv.copy(), ww.copy()
        zero = vv == 0
        m = np.minimum(uu, ww)
        uu[zero] -= m[zero]
        ww[zero] -= m[zero]
        mask = (uu > 0) & (ww > 0) & (vv % n == 0)
        while mask.any():
            uu[mask] -= 1
            ww[mask] -= 1
            vv[mask] //= n
            mask = (uu > 0) & (ww > 0) & (vv % n == 0)
        out.append((vv << V_SHIFT) | (uu << FIELD_BITS) | ww)
    return np.concatenate(out)


if HAVE_NUMBA:

    @njit(cache=True)
    def _pack(u, v, w, n):
        if v == 0:
            m = min(u, w)
            u -= m
            w -= m
        while u > 0 and w > 0 and v % n == 0:
            u -= 1
            w -= 1
            v //= n
        return (v << V_SHIFT) | (u << FIELD_BITS) | w

    @njit(parallel=True, cache=True)
    def _expand_numba(keys, n):
        m = keys.shape[0]
        out = np.empty(4 * m, dtype=np.int64)
        for i in prange(m):
            key = keys[i]
            w = key & FIELD_MASK
            u = (key >> FIELD_BITS) & FIELD_MASK
            v = key >> V_SHIFT
            step = np.int64(1)
            for _ in range(w):
                step *= n
            out[i] = _pack(u, v + step, w, n)
            out[m + i] = _pack(u, v - step, w, n)
            out[2 * m + i] = _pack(u, v, w + 1, n)
            if w > 0:
                out[3 * m + i] = _pack(u, v, w - 1, n)
            else:
                out[3 * m + i] = _pack(u + 1, n * v, 0, n)
        return out


def expand_numba(keys: np.ndarray, n: int) -> np.ndarray:
    if not HAVE_NUMBA:  # pragma: no cover
        raise RuntimeError("numba is not installed")
    return _expand_numba(np.ascontiguousarray(keys, dtype=np.int64), np.int64(n))


def expand(keys: np.ndarray, n: int) -> np.ndarray:
    """Dispatch to the numba kernel or the numpy fallback."""
    if numba_enabled():
        return expand_numba(keys, n)
    return expand_numpy(keys, n)
