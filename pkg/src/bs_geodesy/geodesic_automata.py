"""Automata for geodesics of strict shape 1.

A strict shape 1 geodesic that ends in ``t`` reads::

    T^u a^x0 t a^x1 t ... a^xk t^(w - k),   k < w

and is accepted exactly when its digits form a minimal vector.  In that
regime minimality is a condition on adjacent digits only:

* odd ``n``: every digit of size at most ``n // 2`` is fine;
* ``n = 2``: no two neighbouring digits are both nonzero;
* even ``n >= 4``: a digit ``d * n/2`` may not be followed by ``d * n/2``
  or by a digit of the opposite sign.

The acceptor is built at letter level.  Digit states remember the signed
count of ``a`` letters read in the current block together with a class of
the previous digit, and every ``t`` closes a digit.  ``Q_n`` drops the
leading ``T`` state and keeps only the states reached by ``t`` right after
a nonzero digit, so accepted words end in a single ``t``.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument, UndefinedInput
from .group_core import format_word

LETTERS = "aAtT"


@dataclass
class Automaton:
    """Deterministic automaton over ``aAtT``; missing edges reject."""

    states: list[str]
    start: str
    accept: set[str]
    edges: dict[tuple[str, str], str] = field(default_factory=dict)

    def step(self, state: str | None, letter: str) -> str | None:
        if state is None:
            return None
        return self.edges.get((state, letter))

    def accepts(self, word: str) -> bool:
        state = self.start
        for letter in word:
            state = self.step(state, letter)
            if state is None:
                return False
        return state in self.accept

    def to_json(self) -> dict:
        return {
            "states": list(self.states),
            "start": self.start,
            "accept": sorted(self.accept),
            "edges": [[s, c, t] for (s, c), t in sorted(self.edges.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Automaton":
        edges = {(s, c): t for s, c, t in data["edges"]}
        return cls(list(data["states"]), data["start"], set(data["accept"]), edges)

    def trimmed(self) -> "Automaton":
        """Keep states that are reachable and can still reach an accept state."""
        reach = {self.start}
        frontier = [self.start]
        while frontier:
            s = frontier.pop()
            for c in LETTERS:
                t = self.edges.get((s, c))
                if t is not None and t not in reach:
                    reach.add(t)
                    frontier.append(t)
        back = {s for s in self.accept if s in reach}
        changed = True
        while changed:
            changed = False
            for (s, _), t in self.edges.items():
                if s in reach and s not in back and t in back:
                    back.add(s)
                    changed = True
        keep = [s for s in self.states if s in back or s == self.start]
        kept = set(keep)
        edges = {(s, c): t for (s, c), t in self.edges.items() if s in kept and t in kept}
        return Automaton(keep, self.start, self.accept & kept, edges)


# ------------------------------------------------------------- construction


def _pair_allowed(prev: int, d: int, n: int) -> bool:
    if n % 2:
        return True
    if n == 2:
        return prev == 0 or d == 0
    half = n // 2
    if abs(prev) != half:
        return True
    return d != prev and d * prev >= 0


def _prev_class(d: int, n: int) -> int:
    """Collapse a digit to what the adjacency rule needs to remember.

    Zero stays zero so that ``Q_n`` can tell a trailing ``tt`` apart; any
    other digit the rule ignores becomes ``n``, outside the digit range.
    """
    if d == 0 or n == 2 or (n % 2 == 0 and abs(d) == n // 2):
        return d
    return n


def _digit_name(c: int, p: int) -> str:
    return f"d[{c:+d}|{p:+d}]"


def _end_name(p: int) -> str:
    return f"e[{p:+d}]"


def build_strict1_acceptor(n: int) -> Automaton:
    """Acceptor for strict shape 1 geodesics ending in ``t``, any base."""
    if n < 2:
        raise InvalidArgument(f"base n must be >= 2, got {n}")
    half = n // 2
    classes = sorted({_prev_class(d, n) for d in range(-half, half + 1)})
    states = ["start", "sT"] + [_end_name(p) for p in classes]
    edges: dict[tuple[str, str], str] = {}
    for p in classes:
        for c in range(-half, half + 1):
            if c:
                states.append(_digit_name(c, p))

    def close(c: int, p: int) -> str | None:
        return _end_name(_prev_class(c, n)) if _pair_allowed(p, c, n) else None

    edges[("start", "T")] = "sT"
    edges[("start", "t")] = _end_name(0)
    edges[("start", "a")] = _digit_name(1, 0)
    edges[("start", "A")] = _digit_name(-1, 0)
    edges[("sT", "T")] = "sT"
    edges[("sT", "a")] = _digit_name(1, 0)
    edges[("sT", "A")] = _digit_name(-1, 0)
    for p in classes:
        e = _end_name(p)
        edges[(e, "a")] = _digit_name(1, p)
        edges[(e, "A")] = _digit_name(-1, p)
        nxt = close(0, p)
        if nxt:
            edges[(e, "t")] = nxt
        for c in range(-half, half + 1):
            if not c:
                continue
            s = _digit_name(c, p)
            letter = "a" if c > 0 else "A"
            if abs(c) < half:
                edges[(s, letter)] = _digit_name(c + (1 if c > 0 else -1), p)
            nxt = close(c, p)
            if nxt:
                edges[(s, "t")] = nxt
    accept = {_end_name(p) for p in classes}
    return Automaton(states, "start", accept, edges).trimmed()


def build_O2() -> Automaton:
    """The base-2 machine with the usual state names.

    ``s0,1`` / ``s0,-1`` hold a digit ``+-1`` waiting for its ``t``;
    ``s1,0`` / ``s2,0`` follow a closed digit ``+1`` / ``-1`` and only
    accept ``t``, since two neighbouring nonzero digits are never minimal
    in base 2.
    """
    states = ["start", "s_T", "s0,0", "s0,1", "s0,-1", "s1,0", "s2,0"]
    edges = {
        ("start", "T"): "s_T",
        ("start", "t"): "s0,0",
        ("start", "a"): "s0,1",
        ("start", "A"): "s0,-1",
        ("s_T", "T"): "s_T",
        ("s_T", "a"): "s0,1",
        ("s_T", "A"): "s0,-1",
        ("s0,0", "t"): "s0,0",
        ("s0,0", "a"): "s0,1",
        ("s0,0", "A"): "s0,-1",
        ("s0,1", "t"): "s1,0",
        ("s0,-1", "t"): "s2,0",
        ("s1,0", "t"): "s0,0",
        ("s2,0", "t"): "s0,0",
    }
    return Automaton(states, "start", {"s0,0", "s1,0", "s2,0"}, edges)


def restrict_to_Qn(aut: Automaton) -> Automaton:
    """Drop the leading-``T`` state and the state reached by a second ``t``.

    What remains accepts words that do not start with ``T`` and end in one
    ``t`` after a nonzero digit.
    """
    if "s_T" in aut.states:
        drop, repeat = "s_T", "s0,0"
    elif "sT" in aut.states:
        drop, repeat = "sT", _end_name(0)
    else:
        raise InvalidArgument("automaton was not built by this module")
    states = [s for s in aut.states if s != drop]
    edges = {(s, c): t for (s, c), t in aut.edges.items() if drop not in (s, t)}
    return Automaton(states, aut.start, aut.accept - {repeat, drop}, edges).trimmed()


# ----------------------------------------------------------------- counting


def _matrix(aut: Automaton) -> tuple[np.ndarray, dict[str, int]]:
    index = {s: i for i, s in enumerate(aut.states)}
    m = np.zeros((len(index), len(index)), dtype=object)
    for (s, _), t in aut.edges.items():
        m[index[s], index[t]] += 1
    return m, index


def count_by_length(aut: Automaton, N: int) -> list[int]:
    """Exact number of accepted words of each length ``0..N``."""
    if N < 0:
        raise InvalidArgument(f"N must be >= 0, got {N}")
    index = {s: i for i, s in enumerate(aut.states)}
    vec = [0] * len(index)
    vec[index[aut.start]] = 1
    acc = [index[s] for s in aut.accept]
    out = []
    for _ in range(N + 1):
        out.append(sum(vec[i] for i in acc))
        nxt = [0] * len(index)
        for (s, _), t in aut.edges.items():
            nxt[index[t]] += vec[index[s]]
        vec = nxt
    return out


def growth_rate(aut: Automaton, tol: float = 1e-10, max_iter: int = 1_000_000) -> float:
    """Dominant eigenvalue of the trimmed transition matrix.

    Power iteration runs on ``A + I`` so that periodic components still
    converge; the shift is removed at the end.
    """
    core = aut.trimmed()
    if not core.accept:
        raise UndefinedInput("the automaton accepts no words")
    m, _ = _matrix(core)
    a = m.astype(float) + np.eye(len(m))
    x = np.ones(len(m))
    lam = 0.0
    for _ in range(max_iter):
        y = a @ x
        new = float(np.max(y))
        y /= new
        if abs(new - lam) <= tol * new and np.max(np.abs(y - x)) <= tol:
            return new - 1.0
        x, lam = y, new
    raise UndefinedInput(f"power iteration did not converge in {max_iter} steps")


def counts_to_csv(counts: list[int]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["N", "count"])
    writer.writerows(enumerate(counts))
    return buf.getvalue()


# --------------------------------------------------------------- sampling


def _suffix_counts(aut: Automaton, L: int) -> list[dict[str, int]]:
    """``table[r][s]``: accepted continuations of length ``r`` from ``s``."""
    table = [{s: int(s in aut.accept) for s in aut.states}]
    for _ in range(L):
        prev = table[-1]
        cur = dict.fromkeys(aut.states, 0)
        for (s, _), t in aut.edges.items():
            cur[s] += prev[t]
        table.append(cur)
    return table


def sample_word(aut: Automaton, L: int, rng: random.Random) -> str:
    """Uniformly random accepted word of length ``L``."""
    table = _suffix_counts(aut, L)
    if table[L][aut.start] == 0:
        raise UndefinedInput(f"no accepted word of length {L}")
    state, word = aut.start, []
    for r in range(L, 0, -1):
        pick = rng.randrange(table[r][state])
        for c in LETTERS:
            t = aut.edges.get((state, c))
            if t is None:
                continue
            if pick < table[r - 1][t]:
                word.append(c)
                state = t
                break
            pick -= table[r - 1][t]
    return "".join(word)


def enumerate_words(aut: Automaton, max_len: int, min_len: int = 0) -> list[str]:
    """Every accepted word with ``min_len <= length <= max_len``, shortlex."""
    table = _suffix_counts(aut, max_len)
    out: list[str] = []
    for L in range(min_len, max_len + 1):
        stack = [(aut.start, "")]
        while stack:
            state, word = stack.pop()
            r = L - len(word)
            if r == 0:
                out.append(word)
                continue
            for c in reversed(LETTERS):
                t = aut.edges.get((state, c))
                if t is not None and table[r - 1][t]:
                    stack.append((t, word + c))
    return out


def qn_words(n: int, max_len: int) -> list[str]:
    """Formatted ``Q_n`` words up to ``max_len`` letters."""
    aut = restrict_to_Qn(build_O2() if n == 2 else build_strict1_acceptor(n))
    return [format_word(w) for w in enumerate_words(aut, max_len, 1)]
