"""Command-line front end.

Thin client over the core package: every subcommand parses arguments,
calls the library, and prints text or JSON.  Exit codes: 0 success or
inconclusive-with-report, 1 property-sweep failure, 2 usage error, 10 a
non-discreteness certificate was found (so scripts can branch on it).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

import numpy as np

from . import numeric
from .discreteness import arithmeticity_screen, killer_search
from .exactpoly import RatPoly2, format_poly
from .quatalg import Quat, enumerate_units, qconj, qmul, qnorm, rho, rho_inv
from .words import GoodWord, NotGoodWordError, WordSyntaxError, parse_word
from .wordpoly import word_bundle, word_polys, word_to_quat
from .zeroset import classify_grid, export_raster, export_roots_csv, export_roots_json, scan_roots

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2
EXIT_CERTIFICATE = 10

# the worked examples of order-2 words with their published trace polynomials
TABLE1_WORDS = (
    "bab",
    "ba^2b",
    "babab",
    "babAb",
    "baba^2b",
    "ba^2ba^2b",
    "bababab",
    "bababAb",
    "baba^2bAb",
    "bA^2bababA^2bab",
)

_XZ_NAMES = ("β", "γ")  # beta, gamma


def _parse_complex(text: str) -> complex:
    text = text.strip()
    try:
        if "," in text:
            re_s, im_s = text.split(",")
            return complex(float(re_s), float(im_s))
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from exc


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.replace(" ", "").split(",") if tok]


def _print_poly_line(label: str, p: RatPoly2) -> None:
    names = _XZ_NAMES if p.basis == "xz" else None
    print(f"{label} = {format_poly(p, names)}")


def cmd_poly(args) -> int:
    if args.table1:
        for text in TABLE1_WORDS:
            w = parse_word(text, order2=True)
            p = word_polys(w).p
            if args.json:
                print(json.dumps({"word": text, "p": p.to_json()}))
            else:
                print(f"{text:18s}  p = {format_poly(p, _XZ_NAMES)}")
        return EXIT_OK
    if not args.word:
        print("poly needs a word or --table1", file=sys.stderr)
        return EXIT_USAGE
    w = parse_word(args.word, order2=args.order2)
    if w.is_identity:
        print("word reduces to the identity", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(word_bundle(w), indent=2))
        return EXIT_OK
    wp = word_polys(w)
    print(f"word: {w}   ({', '.join(_cls_strs(w))})")
    q = wp.core_quat
    print(f"core: {wp.core}")
    print(f"quaternion: {q}")
    for label, p in (("r", wp.r), ("s", wp.s), ("t", wp.t), ("w", wp.w), ("g", wp.g)):
        _print_poly_line(label, p)
    _print_poly_line("p", wp.p)
    return EXIT_OK


def _cls_strs(w: GoodWord):
    from .words import classify

    c = classify(w)
    return (c.parity, c.balance, c.regularity)


def cmd_verify(args) -> int:
    """Seeded random property sweeps; exit 1 with a reproduction recipe on failure."""
    rng = random.Random(args.seed)
    n = args.samples
    if n == 0:
        print("warning: --samples 0, all sweeps vacuous")
        print("VERIFY PASS (vacuous)")
        return EXIT_OK
    failures: list[str] = []

    def rnd_c(lo=0.4, hi=1.1):
        r = rng.uniform(lo, hi)
        th = rng.uniform(0, 2 * np.pi)
        return complex(r * np.cos(th), r * np.sin(th))

    def rnd_word(order2=False, balanced_even=True):
        m = rng.choice([2, 4])
        s0 = 1 if order2 else rng.choice([1, -1])
        syls = []
        for k in range(m):
            r = rng.choice([e for e in range(-2, 3) if e or k == m - 1])
            syls.append((s0 * (-1) ** k, r))
        w = GoodWord(tuple(syls), 0 if order2 else rng.choice([-1, 0, 1]), order2)
        if balanced_even and w.exponent_sum() % 2:
            syls[-1] = (syls[-1][0], syls[-1][1] + 1)
            w = GoodWord(tuple(syls), w.leading_a, order2)
        return w

    worst = {"trace": 0.0, "commutator": 0.0, "beta2-independence": 0.0, "norm": 0.0}
    one_uv = RatPoly2.one("uv")
    for i in range(n):
        w = rnd_word()
        if w.is_identity:
            continue
        wp = word_polys(w)
        beta, beta2, gamma = rnd_c(), rnd_c(), rnd_c()
        p = numeric.GroupParams(beta, beta2, gamma)
        cp = numeric.canonical_pair(p)
        Wm = numeric.eval_word_matrix(cp.A, cp.B, w)
        dev = abs(np.trace(Wm) - 2 * wp.r.eval(beta, gamma))
        worst["trace"] = max(worst["trace"], dev)
        if dev > 1e-9:
            failures.append(f"trace identity: word={w} beta={beta} beta'={beta2} gamma={gamma} dev={dev:.3e}")
        comm = cp.A @ Wm @ numeric.inv2(cp.A) @ numeric.inv2(Wm)
        dev = abs(np.trace(comm) - 2 - wp.p.eval(beta, gamma))
        worst["commutator"] = max(worst["commutator"], dev)
        if dev > 1e-9:
            failures.append(f"commutator identity: word={w} beta={beta} gamma={gamma} dev={dev:.3e}")
        traces = []
        for _ in range(3):
            cp2 = numeric.canonical_pair(numeric.GroupParams(beta, rnd_c(), gamma))
            traces.append(np.trace(numeric.eval_word_matrix(cp2.A, cp2.B, w)))
        dev = max(abs(t - traces[0]) for t in traces)
        worst["beta2-independence"] = max(worst["beta2-independence"], dev)
        if dev > 1e-10:
            failures.append(f"beta'-dependence: word={w} beta={beta} gamma={gamma} dev={dev:.3e}")
        from .quatalg import qnorm as _qn
        from .wordpoly import rstw_uv

        if (_qn(rstw_uv(w)) == one_uv) is False:
            worst["norm"] = 1.0
            failures.append(f"norm identity failed symbolically: word={w}")

    # parabolic limit sweep for the commutator generator
    gens = word_to_quat(parse_word("b a B A"))
    devs = numeric.verify_limits(gens, 0.0, 1.0, [10 ** -k for k in range(1, 7)])
    if not all(d2 < d1 for d1, d2 in zip(devs, devs[1:])):
        failures.append(f"limit deviations not decreasing: {devs}")

    for name, val in worst.items():
        print(f"sweep {name:22s} worst deviation {val:.3e}")
    print(f"limit sweep deviations: {['%.2e' % d for d in devs]}")
    if failures:
        print(f"VERIFY FAIL ({len(failures)} failures, seed {args.seed})")
        for f in failures[:20]:
            print("  " + f)
        return EXIT_PROPERTY_FAILURE
    print(f"VERIFY PASS ({n} samples, seed {args.seed})")
    return EXIT_OK


def cmd_scan(args) -> int:
    scan = scan_roots(args.beta, args.max_syllables, args.max_exp, budget=args.budget)
    print(f"scanned {scan.words_scanned} words, {len(scan.roots)} distinct roots, max |gamma| = {scan.max_modulus():.4f}")
    if args.out:
        export_roots_csv(scan, args.out)
        print(f"roots written to {args.out}")
    if args.json_out:
        export_roots_json(scan, args.json_out)
        print(f"roots written to {args.json_out}")
    if args.grid:
        window = tuple(float(t) for t in args.window.split(","))
        nx, ny = (int(t) for t in args.resolution.split("x"))
        grid = classify_grid(
            args.beta,
            window=window,  # type: ignore[arg-type]
            resolution=(nx, ny),
            max_depth=args.max_depth,
            scan=scan,
        )
        print(f"grid counts: {grid.counts()}")
        if args.raster:
            export_raster(grid, args.raster)
            print(f"raster written to {args.raster}")
    return EXIT_OK


def cmd_discrete(args) -> int:
    cert = killer_search(args.beta, args.gamma, max_depth=args.max_depth, word_budget=args.budget)
    if cert is None:
        msg = {"result": "inconclusive", "beta": [args.beta.real, args.beta.imag],
               "gamma": [args.gamma.real, args.gamma.imag]}
        print(json.dumps(msg) if args.json else
              "inconclusive: no violated necessary condition within budget (not a discreteness proof)")
        return EXIT_OK
    if args.json:
        print(json.dumps(cert.to_json(), indent=2))
    else:
        print(f"NON-DISCRETENESS certificate: {cert.violated} violated ({cert.lhs:.6f} < {cert.rhs:.6f})")
        print(f"  witness word: {cert.witness_word}  chain length {len(cert.chain)}")
        print(f"  gamma~ = {cert.gamma_tilde}")
    return EXIT_CERTIFICATE


def cmd_units(args) -> int:
    units = enumerate_units(args.max_degree, Fraction(args.bound))
    print(f"{len(units)} units of degree <= {args.max_degree} (coefficients bounded by {args.bound})")
    for q in units:
        if args.json:
            print(json.dumps(q.to_json()))
        else:
            print(f"  R={q.r}  S={q.s}  T={q.t}  W={q.w}")
    return EXIT_OK


def cmd_arith(args) -> int:
    result = arithmeticity_screen(args.minpoly, args.v_expr)
    if args.json:
        print(json.dumps({"passed": result.passed, "diagnostics": result.diagnostics}, indent=2))
    else:
        print("PASS" if result.passed else "FAIL")
        for key, val in result.diagnostics.items():
            print(f"  {key}: {val}")
    return EXIT_OK


def _load_quat(path: str) -> Quat:
    data = json.load(sys.stdin) if path == "-" else json.load(open(path))
    return Quat.from_json(data)


def cmd_quat(args) -> int:
    p = _load_quat(args.input)
    if args.op == "mul":
        if not args.second:
            print("mul needs --second", file=sys.stderr)
            return EXIT_USAGE
        out = qmul(p, _load_quat(args.second)).to_json()
    elif args.op == "conj":
        out = qconj(p).to_json()
    elif args.op == "norm":
        out = qnorm(p).to_json()
    elif args.op == "rho":
        out = rho(p).to_json()
    else:
        out = rho_inv(p).to_json()
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tracepoly",
        description="Exact trace polynomials of good words in two-generator Mobius groups",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="word polynomials and quaternions")
    p.add_argument("word", nargs="?", help="word in the a/b grammar, e.g. 'b a^2 B'")
    p.add_argument("--order2", action="store_true", help="treat b as an order-two letter")
    p.add_argument("--table1", action="store_true", help="print the standard table of examples")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("verify", help="randomized property sweeps against the matrix oracle")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="roots of word polynomials at fixed beta")
    p.add_argument("--beta", type=_parse_complex, required=True)
    p.add_argument("--max-syllables", type=int, default=5)
    p.add_argument("--max-exp", type=int, default=4)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--json-out", help="JSON output path")
    p.add_argument("--grid", action="store_true", help="also classify a grid of gamma values")
    p.add_argument("--window", default="-2,2,-2,2", help="re_min,re_max,im_min,im_max")
    p.add_argument("--resolution", default="50x50")
    p.add_argument("--max-depth", type=int, default=30)
    p.add_argument("--raster", help="raster output path (.pgm or .csv)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("discrete", help="killer-word search at (beta, gamma)")
    p.add_argument("--beta", type=_parse_complex, required=True)
    p.add_argument("--gamma", type=_parse_complex, required=True)
    p.add_argument("--max-depth", type=int, default=30)
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_discrete)

    p = sub.add_parser("units", help="enumerate bounded-degree norm-one quaternions")
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--bound", default="2", help="coefficient bound (rational)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_units)

    p = sub.add_parser("arith", help="arithmeticity screen")
    p.add_argument("--minpoly", type=_parse_int_list, required=True,
                   help="ascending integer coefficients of a monic polynomial, e.g. -1,0,1,1")
    p.add_argument("--v-expr", type=_parse_int_list, default=[0, 1],
                   help="v as an integer polynomial in u (ascending)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_arith)

    p = sub.add_parser("quat", help="raw quaternion operations on JSON values")
    p.add_argument("op", choices=["mul", "conj", "norm", "rho", "rho-inv"])
    p.add_argument("--input", default="-", help="JSON file (default stdin)")
    p.add_argument("--second", help="second operand for mul")
    p.set_defaults(func=cmd_quat, op_fix=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    if getattr(args, "op", None) == "rho-inv":
        args.op = "rho_inv"
    try:
        return args.func(args)
    except (WordSyntaxError, NotGoodWordError) as exc:
        print(f"word error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
