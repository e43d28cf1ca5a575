"""``bs``: command-line entry point.

Every subcommand is deterministic given its flags and ``--seed``.  Exit code
0 means every requested check passed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import cayley_oracle, curvature_lab, geodesic_automata
from .digit_lattice import format_digits
from .errors import GeodesyError, InvalidArgument, ResourceLimit
from .geodesic_engine import geodesic, word_length
from .group_core import NormalForm, evaluate_word, format_word, parse_element, parse_word

EXIT_FAIL = 1
EXIT_USAGE = 2


def _element(args) -> NormalForm:
    if args.element is not None and args.word is not None:
        raise InvalidArgument("give either --element or --word, not both")
    if args.element is not None:
        return parse_element(args.element, args.n)
    if args.word is not None:
        return evaluate_word(parse_word(args.word), args.n)
    raise InvalidArgument("one of --element or --word is required")


def _emit(args, payload, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _kappa_text(k: Fraction) -> str:
    return f"{k} ({float(k):.6g})"


def cmd_length(args) -> int:
    g = _element(args)
    res = geodesic(g)
    payload = {
        "g": {"u": g.u, "v": str(g.v), "w": g.w},
        "length": res.length,
        "word": format_word(res.word),
        "shape": int(res.shape.tag),
        "strict1": res.shape.strict1,
        "vector": list(res.vector),
    }
    text = "\n".join(
        [
            f"element  {g}",
            f"length   {res.length}",
            f"word     {format_word(res.word) or '(empty)'}",
            f"shape    {int(res.shape.tag)}{' (strict)' if res.shape.strict1 else ''}",
            f"vector   ({format_digits(res.vector)})",
        ]
    )
    _emit(args, payload, text)
    return 0


def cmd_curvature(args) -> int:
    g = _element(args)
    rep = curvature_lab.kappa(g, args.r)
    status = 0
    extra = ""
    if args.oracle:
        ball = cayley_oracle.bfs_ball(args.n, max(args.r, (rep.l_g + args.r + 1) // 2 + args.r), cap=args.cap)
        ok = cayley_oracle.oracle_kappa(g, args.r, ball) == rep.kappa
        extra = f"\noracle   {'agrees' if ok else 'DISAGREES'}"
        status = 0 if ok else EXIT_FAIL
    payload = rep.to_json()
    text = f"element  {g}\nl(g)     {rep.l_g}\nkappa_{args.r}  {_kappa_text(rep.kappa)}\ndeltas   {rep.histogram}{extra}"
    _emit(args, payload, text)
    return status


def _family_words(args) -> list[str]:
    if args.enumerate_xi is not None:
        return geodesic_automata.qn_words(args.n, args.enumerate_xi)
    aut = geodesic_automata.restrict_to_Qn(
        geodesic_automata.build_O2() if args.n == 2 else geodesic_automata.build_strict1_acceptor(args.n)
    )
    rng = random.Random(args.seed)
    return [
        format_word(geodesic_automata.sample_word(aut, rng.randint(2, args.length), rng))
        for _ in range(args.sample)
    ]


def cmd_family(args) -> int:
    radii = [args.r] if args.r is not None else range(1, curvature_lab.max_family_radius(args.kind, args.n) + 1)
    failures = 0
    rows = []
    for xi in _family_words(args):
        for r in radii:
            rep = curvature_lab.verify_family_sign(
                curvature_lab.FamilySpec(args.kind, args.n, r, xi), raise_on_failure=False
            )
            failures += not rep.ok
            rows.append(
                {
                    "xi": xi,
                    "r": r,
                    "g": {"u": rep.element.u, "v": str(rep.element.v), "w": rep.element.w},
                    "kappa": {"num": rep.report.kappa.numerator, "den": rep.report.kappa.denominator},
                    "sign": rep.sign,
                    "ok": rep.ok,
                }
            )
    summary = {
        "kind": args.kind,
        "n": args.n,
        "checked": len(rows),
        "failures": failures,
        "expected": curvature_lab.EXPECTED_SIGN[args.kind],
    }
    if args.format == "json":
        print(json.dumps({"summary": summary, "results": rows}, sort_keys=True))
    else:
        for row in rows:
            k = Fraction(row["kappa"]["num"], row["kappa"]["den"])
            print(f"{'ok  ' if row['ok'] else 'FAIL'} r={row['r']} kappa={_kappa_text(k)}  xi={row['xi']}")
        print(f"{summary['kind']}_{args.n}: {len(rows) - failures}/{len(rows)} {summary['expected']}")
    return EXIT_FAIL if failures else 0


def cmd_sphere(args) -> int:
    ball = cayley_oracle.bfs_ball(args.n, args.R, cap=args.cap)
    if args.format == "csv":
        sys.stdout.write(ball.to_csv())
    elif args.format == "json":
        print(json.dumps({"n": args.n, "R": args.R, "sphere_sizes": ball.sphere_sizes}))
    else:
        for d, size in enumerate(ball.sphere_sizes):
            print(f"{d}\t{size}")
    return 0


def cmd_automaton(args) -> int:
    aut = geodesic_automata.build_O2() if args.n == 2 else geodesic_automata.build_strict1_acceptor(args.n)
    if args.qn:
        aut = geodesic_automata.restrict_to_Qn(aut)
    if args.action == "count":
        counts = geodesic_automata.count_by_length(aut, args.N)
        if args.format == "json":
            print(json.dumps({"n": args.n, "counts": counts}))
        else:
            sys.stdout.write(geodesic_automata.counts_to_csv(counts))
    elif args.action == "growth":
        rate = geodesic_automata.growth_rate(aut)
        _emit(args, {"n": args.n, "rate": rate}, f"{rate:.12f}")
    else:
        print(json.dumps(aut.to_json(), sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    ball = cayley_oracle.bfs_ball(args.n, args.R, cap=args.cap)
    for g, d in ball.items():
        length = word_length(g)
        if length != d:
            print(f"MISMATCH: u={g.u} v={g.v} w={g.w} engine={length} bfs={d}")
            return EXIT_FAIL
    print(f"OK: {len(ball)} elements verified")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, required=True, help="base of BS(1,n)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--cap", type=int, default=None, help="element cap for BFS (else BS_GEODESY_CAP)")

    elem = argparse.ArgumentParser(add_help=False)
    elem.add_argument("--element", help="normal form as u,v,w")
    elem.add_argument("--word", help="word over a, A, t, T (exponents like a^-3 allowed)")

    parser = argparse.ArgumentParser(prog="bs", description="Geodesics and conjugation curvature in BS(1,n).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("length", parents=[common, elem], help="word length and a geodesic")
    p.set_defaults(func=cmd_length)

    p = sub.add_parser("curvature", parents=[common, elem], help="exact kappa_r")
    p.add_argument("-r", type=int, default=1)
    p.add_argument("--oracle", action="store_true", help="cross-check against BFS distances")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("family", parents=[common], help="check curvature signs of a family")
    p.add_argument("-k", "--kind", choices=curvature_lab.FAMILY_KINDS, required=True)
    p.add_argument("-r", type=int, default=None, help="single radius (default: every valid r)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--enumerate-xi", type=int, metavar="L", help="every Q_n word up to L letters")
    src.add_argument("--sample", type=int, metavar="K", help="K random Q_n words")
    p.add_argument("--length", type=int, default=12, help="maximum sampled word length")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("sphere", parents=[common], help="BFS sphere sizes or the full ball")
    p.add_argument("-R", type=int, required=True)
    p.set_defaults(func=cmd_sphere)

    p = sub.add_parser("automaton", parents=[common], help="strict shape 1 acceptor")
    p.add_argument("action", choices=("count", "growth", "export"))
    p.add_argument("-N", type=int, default=20, help="longest length for count")
    p.add_argument("--qn", action="store_true", help="restrict to Q_n")
    p.set_defaults(func=cmd_automaton)

    p = sub.add_parser("verify", parents=[common], help="engine lengths against BFS")
    p.add_argument("-R", type=int, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 2:
        parser.error(f"base n must be >= 2, got {args.n}")
    try:
        return args.func(args)
    except ResourceLimit as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (GeodesyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
