"""End-to-end acceptance checks.

Each test records one ``PASS`` / ``FAIL`` line and then asserts.  The lines
are printed in an "acceptance criteria" section after the run.  The file
also runs as a script: ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bs_geodesy.cayley_oracle import bfs_ball
from bs_geodesy.curvature_lab import (
    FamilySpec,
    classify_kappa1_shape34,
    is_strongly_minimal,
    kappa,
    max_family_radius,
    verify_family_sign,
)
from bs_geodesy.digit_lattice import BoxParams, add_multiple, basis_vector, in_box, initial_digits, l1_norm, reduce_to_box, sigma, trim
from bs_geodesy.geodesic_automata import build_O2, build_strict1_acceptor, count_by_length, growth_rate, qn_words
from bs_geodesy.geodesic_engine import (
    end_reduction,
    end_reduction_applies,
    find_runs,
    geodesic,
    is_minimal,
    minimal_vector,
    order_key,
    path_length,
    reduce_at_run,
    run_weight,
    word_length,
)
from bs_geodesy.group_core import NormalForm, evaluate_word, normalize

from _oracles import box_vectors

pytestmark = pytest.mark.slow

BALL_RADII = {2: 12, 3: 10, 4: 9, 5: 9}
_balls: dict[int, object] = {}


def ball(n):
    if n not in _balls:
        _balls[n] = bfs_ball(n, BALL_RADII[n])
    return _balls[n]


def report(log, number, title, ok, detail, started):
    line = f"CRITERION {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail} [{time.perf_counter() - started:.1f}s]"
    log.append(line)
    print(line)
    assert ok, line


def test_criterion_01_oracle_equivalence(acceptance_log):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for n, R in BALL_RADII.items():
        for g, d in ball(n).items():
            checked += 1
            if word_length(g) != d:
                bad.append((n, g.u, g.v, g.w, d))
    report(acceptance_log, 1, "word length equals BFS distance", not bad, f"{checked} elements, {len(bad)} mismatches {bad[:3]}", t0)


def test_criterion_02_worked_examples(acceptance_log):
    t0 = time.perf_counter()
    failures = []

    def check(label, cond):
        if not cond:
            failures.append(label)

    check("n=2 (0,7,0) vector", minimal_vector(0, 7, 0, 2) == (1, 3))
    check("n=2 (0,7,0) length", word_length(NormalForm(2, 0, 7, 0)) == 6)
    check("n=2 (1,1,1) length", sigma((1, 1, 1), 2) == 7 and path_length((1, 1, 1), 0, 0) == 7)

    x = (7,)
    y = add_multiple(x, 0, 2, 3)
    z = add_multiple(y, 1, 1, 3)
    check("n=3 y = x + 2w0", y == (1, 2) and y == tuple(a + 2 * b for a, b in zip(x + (0,), basis_vector(0, 3))))
    check("n=3 z = y + w1", z == (1, -1, 1) and z == initial_digits(7, 3))
    check("n=3 sigma", {sigma(v, 3) for v in (x, y, z)} == {7})

    for u in range(3, 9):
        p = BoxParams(u, u, 4)
        check(f"n=4 u={u} lengths", path_length((2, 2, 1), u, u) == path_length((-2, -1, 2), u, u) == 5 + 2 * u)
        check(f"n=4 u={u} box", in_box((2, 2, 1), p) and in_box((-2, -1, 2), p))
        check(f"n=4 u={u} minimal", minimal_vector(u, 26, u, 4) == (-2, -1, 2))
        box = box_vectors(26, u, u, 4, u + 1)
        check(f"n=4 u={u} unique", [v for v in box if is_minimal(v, u, u, 4)] == [(-2, -1, 2)])
    report(acceptance_log, 2, "worked examples", not failures, f"failures {failures}" if failures else "all exact", t0)


def _kmax(v, u, w, n):
    # a vector with last index K > max(u, w) has length >= 2K - |u - w| + 1
    x0 = reduce_to_box(initial_digits(v, n), BoxParams(u, w, n))
    return max(u, w, (path_length(x0, u, w) + abs(u - w)) // 2 + 1)


def test_criterion_03_minimality_characterization(acceptance_log):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for n in (2, 3, 4, 5):
        for u in range(7):
            for w in range(7):
                for v in range(-200, 201):
                    if v % n == 0 and u * w > 0:
                        continue  # not a normal form
                    vectors = box_vectors(v, u, w, n, _kmax(v, u, w, n))
                    best = min(vectors, key=lambda x: order_key(x, u, w))
                    for x in vectors:
                        checked += 1
                        if is_minimal(x, u, w, n) != (x == best):
                            bad.append((n, u, v, w, x))
    report(acceptance_log, 3, "is_minimal equals brute-force argmin", not bad, f"{checked} box vectors, {len(bad)} disagreements {bad[:3]}", t0)


def test_criterion_04_family_signs(acceptance_log):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for n in (2, 3, 4, 5, 8):
        words = qn_words(n, 12)
        for kind in "PZN":
            radii = range(1, max_family_radius(kind, n) + 1)
            for xi in words:
                for r in radii:
                    rep = verify_family_sign(FamilySpec(kind, n, r, xi), raise_on_failure=False)
                    checked += 1
                    if not rep.ok:
                        bad.append((kind, n, r, xi, str(rep.report.kappa)))
    report(acceptance_log, 4, "family curvature signs", not bad, f"{checked} (family, xi, r) checks, {len(bad)} wrong {bad[:3]}", t0)


def test_criterion_05_zero_curvature(acceptance_log):
    t0 = time.perf_counter()
    rng = random.Random(5)
    checked, bad = 0, []
    for n in (2, 3, 4, 5):
        seen = 0
        while seen < 200:
            # u >= 1: with u = 0 the t^-1 conjugate can leave the box and the claim fails
            u = rng.randint(1, 10)
            v = rng.randint(-(10**6), 10**6)
            if v % n == 0:
                continue
            k = len(minimal_vector(u, v, u, n)) - 1
            if u in (k - 1, k, k + 1):
                continue
            seen += 1
            checked += 1
            value = kappa(NormalForm(n, u, v, u), 1).kappa
            if value != 0:
                bad.append((n, u, v, str(value)))
    report(acceptance_log, 5, "balanced elements have kappa_1 = 0", not bad, f"{checked} samples, {len(bad)} nonzero {bad[:3]}", t0)


def test_criterion_06_type1_classification(acceptance_log):
    t0 = time.perf_counter()
    rng = random.Random(6)
    checked, bad = 0, []
    for n in (3, 4, 5):
        seen = 0
        while seen < 500:
            u, w = rng.randint(0, 5), rng.randint(0, 5)
            v = rng.randint(-(n**9), n**9)
            if v == 0 or (v % n == 0 and u * w > 0):
                continue
            x = minimal_vector(u, v, w, n)
            if len(x) - 1 <= max(u, w) or not is_strongly_minimal(x, u, w, n):
                continue
            seen += 1
            checked += 1
            g = NormalForm(n, u, v, w)
            value = kappa(g, 1).kappa
            if value > 0 or classify_kappa1_shape34(g) != ("zero" if value == 0 else "negative"):
                bad.append((n, u, v, w, str(value)))
    report(acceptance_log, 6, "kappa_1 sign class prediction", not bad, f"{checked} strongly minimal samples, {len(bad)} wrong {bad[:3]}", t0)


def _strict1_sphere_counts(n, R):
    big = bfs_ball(n, R)
    out = []
    for d in range(R + 1):
        count = 0
        for u, v, w in big.triples(d):
            k = len(minimal_vector(u, v, w, n)) - 1
            count += w > 0 and k < w
        out.append(count)
    return out


def test_criterion_07_automaton_fidelity(acceptance_log):
    t0 = time.perf_counter()
    o2 = build_O2()
    brute = _strict1_sphere_counts(2, 14)
    counted = count_by_length(o2, 14)
    generic = count_by_length(build_strict1_acceptor(2), 20)
    ok = counted == brute and generic == count_by_length(o2, 20)
    report(acceptance_log, 7, "O_2 counts vs BFS, generic vs O_2", ok, f"N<=14 {counted} vs {brute}; N<=20 equal={generic == count_by_length(o2, 20)}", t0)


def test_criterion_08_sandwich(acceptance_log):
    t0 = time.perf_counter()
    bad, checked = [], 0
    for n, top, aut in ((2, 11, build_O2()), (3, 9, build_strict1_acceptor(3))):
        o = count_by_length(aut, top + 3)
        s = ball(n).sphere_sizes
        for N in range(top + 1):
            checked += 1
            if not o[N] <= s[N] <= 20 * o[N + 3]:
                bad.append((n, N, o[N], s[N], o[N + 3]))
    report(acceptance_log, 8, "|O(N)| <= |S(N)| <= 20|O(N+3)|", not bad, f"{checked} values of N, {len(bad)} violations {bad}", t0)


def test_criterion_09_growth_rate(acceptance_log):
    t0 = time.perf_counter()
    parts, ok = [], True
    for n, aut in ((2, build_O2()), (3, build_strict1_acceptor(3))):
        s = ball(n).sphere_sizes
        N = len(s) - 2
        ratio = s[N + 1] / s[N]
        rate = growth_rate(aut)
        rel = abs(rate - ratio) / ratio
        ok &= rel <= 0.05
        parts.append(f"n={n} rate {rate:.4f} vs S({N + 1})/S({N}) {ratio:.4f} ({100 * rel:.2f}%)")
    report(acceptance_log, 9, "growth rate within 5%", ok, "; ".join(parts), t0)


def _random_digits(rng, n, size):
    half = n // 2
    return trim([rng.randint(-half, half) for _ in range(size)])


def test_criterion_10_round_trip_and_laws(acceptance_log):
    t0 = time.perf_counter()
    rng = random.Random(10)
    failures = []

    for _ in range(100_000):
        n = rng.randint(2, 9)
        g = normalize(rng.randint(0, 30), rng.randint(-(n**30), n**30), rng.randint(0, 30), n)
        if evaluate_word(geodesic(g).word, n) != g:
            failures.append(("round trip", g))
            break

    reductions = 0
    for _ in range(20_000):
        n = rng.randint(2, 8)
        x = trim([rng.randint(-n - 2, n + 2) for _ in range(rng.randint(1, 10))])
        s = sigma(x, n)
        u, w = rng.randint(0, 6), rng.randint(0, 6)
        if s % n or u * w == 0:
            y = reduce_to_box(x, BoxParams(u, w, n))
            reductions += 1
            if sigma(y, n) != s:
                failures.append(("reduce_to_box", x))
        z = _random_digits(rng, n, rng.randint(1, 10))
        if n % 2 == 0 and z and rng.random() < 0.5:
            z = z[:-1] + ((n // 2 + 1) * (1 if z[-1] > 0 else -1),)
        for r in find_runs(z, 0, 0, n):
            for alpha in (1, 2) if n == 2 else (1,):
                reductions += 1
                if sigma(reduce_at_run(z, r, alpha, n), n) != sigma(z, n):
                    failures.append(("run", z, r))
        if end_reduction_applies(z, 0, 0, n):
            reductions += 1
            if sigma(end_reduction(z, n), n) != sigma(z, n):
                failures.append(("end", z))

    runs = 0
    while runs < 10_000:
        n = rng.choice((2, 4, 6, 8))
        x = _random_digits(rng, n, rng.randint(1, 10))
        if n > 2 and x and rng.random() < 0.5:
            x = x[:-1] + ((n // 2 + 1) * (1 if x[-1] > 0 else -1),)
        found = find_runs(x, 0, 0, n)
        if not found:
            continue
        r = rng.choice(found)
        runs += 1
        y = reduce_at_run(x, r, 1, n)
        nxt = x[r.end + 1] if r.end + 1 < len(x) else 0
        if l1_norm(y) != l1_norm(x) - run_weight(x, r, n) + abs(nxt + r.sign) - abs(nxt):
            failures.append(("l1 law", n, x, r))

    cases = {"max(u,w) > k": 0, "max(u,w) = k": 0, "max(u,w) < k": 0}
    for _ in range(20_000):
        n = rng.randint(2, 7)
        u, w = rng.randint(0, 8), rng.randint(0, 8)
        v = rng.randint(-(n**8), n**8)
        if v == 0 or (v % n == 0 and u * w > 0):
            continue
        x = minimal_vector(u, v, w, n)
        k = len(x) - 1
        m = max(u, w)
        cases["max(u,w) > k" if m > k else "max(u,w) = k" if m == k else "max(u,w) < k"] += 1
        if x[0] != 0 or u == 0:
            step = path_length(x, u, w + 1) - path_length(x, u, w)
            if step != (1 if m >= k or u > w else -1):
                failures.append(("increment w", n, u, v, w))
        if u >= 1 and (x[0] != 0 or w == 0):
            step = path_length(x, u - 1, w) - path_length(x, u, w)
            if step != (-1 if max(u - 1, w) >= k or u <= w else 1):
                failures.append(("decrement u", n, u, v, w))
    if min(cases.values()) == 0:
        failures.append(("ordinal case missing", cases))

    detail = f"1e5 round trips (|v| <= n^30), {reductions} reductions, {runs} runs, ordinal cases {cases}"
    report(acceptance_log, 10, "round trip and property laws", not failures, detail + (f", failures {failures[:3]}" if failures else ""), t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
