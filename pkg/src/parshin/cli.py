"""Command-line front end.

Subcommands: ``pair`` (compute the symbol by one or all methods, with a
cross-check), ``reduce`` (canonical representative plus witness check),
``normalize`` (canonical K2 product), ``ram`` (ramification levels,
profile, membership, duality column), ``selftest`` (built-in seeded
checks).  Exit codes: 0 success, 1 mathematical mismatch, 2 bad input.
The default window can be set with the WITT_PARSHIN_WINDOW environment
variable (a radius ``R`` or ``smin,smax,tmin,tmax``).
"""

import argparse
import json
import os
import random
import sys

from .canonical import reduce_witt, verify_reduction
from .errors import BadIndex, InputError, NotPrincipalUnit, UnsupportedPair, WindowTooSmall
from .fields import FieldParams
from .milnor import CanonicalK2, S_KIND, T_KIND, K2Generator, normalize_symbol
from .pairing import pair_closed_form, pair_parshin, pair_theorem1
from .parse import (
    format_canonical_asw,
    format_canonical_k2,
    format_coeff,
    parse_symbol,
    parse_witt,
)
from .ramification import INF_LEVEL, ell, phi_map, ram_profile, u_membership
from .series import Series, Window, expvec_key
from .witt import SeriesCoeffRing, WittRing

MAX_WINDOW = 2048


def _parse_window(text):
    parts = [p.strip() for p in text.split(",")]
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise InputError(f"bad window spec {text!r}") from None
    if len(nums) == 1:
        if nums[0] < 1:
            raise InputError("window radius must be >= 1")
        return Window.square(nums[0])
    if len(nums) == 4:
        try:
            return Window(*nums)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    raise InputError("window spec must be R or smin,smax,tmin,tmax")


def _window_from(args):
    if getattr(args, "window", None):
        return _parse_window(args.window)
    env = os.environ.get("WITT_PARSHIN_WINDOW")
    if env:
        return _parse_window(env)
    return Window.square(64)


def _field_from(args):
    modulus = None
    if getattr(args, "modulus", None):
        try:
            modulus = tuple(int(c) for c in args.modulus.split(","))
        except ValueError:
            raise InputError(f"bad modulus {args.modulus!r}") from None
    m = getattr(args, "m", 1)
    if m < 1:
        raise InputError("Witt length m must be >= 1")
    fp = FieldParams(args.p, args.d, modulus, zq_prec=max(m + 2, 4))
    return fp, fp.make_beta()


def _reduce_traced(x, fp, beta, window):
    """reduce_witt with the doubling retry; returns (canonical, witness,
    window, trace of attempted windows)."""
    trace = []
    while True:
        trace.append(repr(window))
        try:
            canonical, witness = reduce_witt(x, fp, beta, window)
            return canonical, witness, window, trace
        except WindowTooSmall:
            if max(window.s_max, window.t_max) * 2 > MAX_WINDOW:
                raise WindowTooSmall(
                    "window still too small after retries: " + " -> ".join(trace)
                ) from None
            window = window.doubled()


def _symbol_from(text, fp, m, bound=64):
    acc = CanonicalK2(fp.p, m)
    for f, g, n in parse_symbol(text, fp.ff):
        acc = acc.merge(normalize_symbol(f, g, fp, m, bound=bound).power(n))
    return acc


def _emit(args, doc, text_lines):
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# -- subcommands ------------------------------------------------------------


def _cmd_pair(args):
    fp, beta = _field_from(args)
    m = args.m
    window = _window_from(args)
    x = parse_witt(args.x, fp.ff, m)
    y = _symbol_from(args.y, fp, m)
    methods = (
        ["theorem1", "parshin", "closed"] if args.method == "all" else [args.method]
    )
    values = {}
    if "theorem1" in methods or "closed" in methods:
        xc, _, _, _ = _reduce_traced(x, fp, beta, window)
        if "theorem1" in methods:
            values["theorem1"] = pair_theorem1(xc, y, fp, beta)
        if "closed" in methods:
            values["closed"] = pair_closed_form(xc, y, fp, beta)
    if "parshin" in methods:
        values["parshin"] = pair_parshin(x, y, fp)
    agree = len(set(values.values())) == 1
    doc = {
        "p": fp.p,
        "d": fp.d,
        "m": m,
        "modulus": list(fp.modulus),
        "method": args.method,
        "values": values,
        "agree": agree,
        "value": next(iter(values.values())) if agree else None,
        "mod": fp.p**m,
    }
    lines = [f"{k}: {v} mod {fp.p**m}" for k, v in sorted(values.items())]
    if len(values) > 1:
        lines.append("methods agree" if agree else "METHOD MISMATCH")
    _emit(args, doc, lines)
    return 0 if agree else 1


def _asw_json(xc):
    return {
        "c": xc.c,
        "terms": [
            [[i, j], list(xc.terms[(i, j)])]
            for (i, j) in sorted(xc.terms, key=expvec_key)
        ],
    }


def _k2_json(y):
    return {
        "e": y.e,
        "gens": [
            {"kind": g.kind, "i": g.i, "j": g.j, "a": list(g.a), "n": g.n}
            for g in y.gens
        ],
    }


def _cmd_reduce(args):
    fp, beta = _field_from(args)
    m = args.m
    window = _window_from(args)
    x = parse_witt(args.x, fp.ff, m)
    canonical, witness, window, trace = _reduce_traced(x, fp, beta, window)
    verified = verify_reduction(x, canonical, witness, beta, window, fp)
    doc = {
        "p": fp.p,
        "d": fp.d,
        "m": m,
        "canonical": _asw_json(canonical),
        "canonical_text": format_canonical_asw(canonical),
        "verified": verified,
        "window": repr(window),
        "window_trace": trace,
    }
    lines = [f"canonical: {format_canonical_asw(canonical)}"]
    if len(trace) > 1:
        lines.append("window retries: " + " -> ".join(trace))
    lines.append(f"witness verified: {verified}")
    _emit(args, doc, lines)
    return 0 if verified else 1


def _cmd_normalize(args):
    fp, _ = _field_from(args)
    y = _symbol_from(args.y, fp, args.m)
    doc = {
        "p": fp.p,
        "d": fp.d,
        "m": args.m,
        "k2": _k2_json(y),
        "k2_text": format_canonical_k2(y),
    }
    _emit(args, doc, [format_canonical_k2(y)])
    return 0


def _pair_ints(text, what):
    try:
        a, b = (int(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"bad {what} {text!r}; expected two integers v1,v2") from None
    return a, b


def _cmd_ram(args):
    fp, _ = _field_from(args)
    m = args.m
    r = _pair_ints(args.r, "ramification vector")
    if r[0] < 0 or r[1] < 0:
        raise BadIndex("ramification vector entries must be >= 0")
    doc = {"p": fp.p, "d": fp.d, "m": m, "r": list(r)}
    lines = []
    if args.index:
        mvec = _pair_ints(args.index, "index")
        lv = ell(r, mvec, fp.p)
        doc["ell"] = None if lv is INF_LEVEL else lv
        lines.append(f"ell = {'inf' if lv is INF_LEVEL else lv}")
    if args.profile:
        prof = ram_profile(r, m, fp.p, bound=args.bound)
        doc["profile"] = [
            [[k[0], k[1]], prof[k]] for k in sorted(prof, key=expvec_key)
        ]
        lines.append(f"profile (exponents of p, indices up to {args.bound}):")
        for k in sorted(prof, key=expvec_key):
            lines.append(f"  ({k[0]},{k[1]}): {prof[k]}")
    if args.y:
        y = _symbol_from(args.y, fp, m)
        member = u_membership(y, r)
        ph = phi_map(y, fp, bound=args.bound)
        doc["u_membership"] = member
        doc["phi"] = [
            [[k[0], k[1]], list(ph[k])] for k in sorted(ph, key=expvec_key)
        ]
        lines.append(f"u_membership: {member}")
        lines.append("phi components (nonzero):")
        for k in sorted(ph, key=expvec_key):
            if any(ph[k]):
                lines.append(f"  ({k[0]},{k[1]}): {format_coeff(ph[k])}")
    _emit(args, doc, lines)
    return 0


# -- selftest ---------------------------------------------------------------


def _random_witt(rng, fp, m, nterms, emax):
    ff = fp.ff
    nontriv = [t for t in fp.all_ff() if any(t)]
    coords = []
    for _ in range(m):
        items = {}
        for _ in range(rng.randint(0, nterms)):
            e = (rng.randint(-emax, emax), rng.randint(-emax, emax))
            items[e] = rng.choice(nontriv)
        coords.append(Series.from_terms(ff, list(items.items())))
    return tuple(coords)


def _random_k2(rng, fp, m, ngens, emax):
    from math import gcd

    p = fp.p
    nontriv = [t for t in fp.all_ff() if any(t)]
    gens = []
    for _ in range(ngens):
        while True:
            i = rng.randint(0, emax)
            j = rng.randint(1 if i == 0 else -emax, emax)
            if (i, j) == (0, 0) or gcd(abs(i), abs(j)) % p == 0:
                continue
            break
        kind = S_KIND if j % p else T_KIND
        gens.append(K2Generator(kind, i, j, rng.choice(nontriv), rng.randint(1, p**m - 1)))
    return CanonicalK2(p, m, rng.randint(0, p**m - 1), gens)


def _cmd_selftest(args):
    rng = random.Random(20260823)
    window = Window.square(64)
    failures = 0
    configs = [(2, 1, 1), (3, 1, 1), (2, 1, 2), (2, 2, 2)]

    def report(name, ok):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures += 1

    ok = True
    for p, d, m in configs:
        fp = FieldParams(p, d, zq_prec=max(m + 2, 4))
        beta = fp.make_beta()
        for _ in range(args.trials):
            x = _random_witt(rng, fp, m, 3, 8)
            y = _random_k2(rng, fp, m, 2, 5)
            xc, wit, win, _ = _reduce_traced(x, fp, beta, window)
            ok &= verify_reduction(x, xc, wit, beta, win, fp)
            v1 = pair_theorem1(xc, y, fp, beta)
            v2 = pair_parshin(x, y, fp)
            v3 = pair_closed_form(xc, y, fp, beta)
            ok &= v1 == v2 == v3
    report("reduction soundness + three-way pairing agreement", ok)

    ok = True
    for p, d, m in configs:
        fp = FieldParams(p, d, zq_prec=max(m + 2, 4))
        beta = fp.make_beta()
        W = WittRing(p, m, SeriesCoeffRing(fp.ff))
        for _ in range(args.trials):
            x = _random_witt(rng, fp, m, 2, 6)
            z = _random_witt(rng, fp, m, 2, 4)
            y = _random_k2(rng, fp, m, 2, 4)
            xc1, _, _, _ = _reduce_traced(x, fp, beta, window)
            xc2, _, _, _ = _reduce_traced(W.add(x, W.wp(z)), fp, beta, window)
            ok &= pair_closed_form(xc1, y, fp, beta) == pair_closed_form(
                xc2, y, fp, beta
            )
    report("wp-kernel invariance", ok)

    ok = True
    for p, d, m in [(2, 1, 2), (3, 1, 1), (5, 1, 1)]:
        fp = FieldParams(p, d, zq_prec=max(m + 2, 4))
        ff = fp.ff
        nontriv = [t for t in fp.all_ff() if any(t)]
        for _ in range(args.trials):
            e = (rng.randint(-3, 3), rng.randint(-3, 3))
            f = Series.monomial(ff, rng.choice(nontriv), e)
            ok &= normalize_symbol(f, f.neg(), fp, m).is_trivial()
    report("Steinberg {f, -f} = 1 on monomials", ok)

    ok = ell((0, 5), (3, 1), 2) == 3 and ell((4, 0), (1, 0), 3) == 2
    ok &= ell((0, 0), (3, 1), 2) == 0
    fp = FieldParams(2, 2, zq_prec=4)
    for _ in range(5 * args.trials):
        z = tuple(rng.randrange(fp.zq.pe) for _ in range(fp.d))
        ok &= fp.digits_to_zq(fp.teich_digits(z, 4)) == tuple(
            c % fp.zq.pe for c in z
        )
    report("ramification levels + Teichmuller digits", ok)

    return 1 if failures else 0


# -- entry point ------------------------------------------------------------


def _add_common(sp, with_m=True):
    sp.add_argument("--p", type=int, required=True, help="residue characteristic")
    sp.add_argument("--d", type=int, default=1, help="residue field degree")
    sp.add_argument("--modulus", help="comma-separated monic modulus, low to high")
    if with_m:
        sp.add_argument("--m", type=int, default=1, help="Witt vector length")
    sp.add_argument("--window", help="window: radius R or smin,smax,tmin,tmax")
    sp.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )


def build_parser():
    ap = argparse.ArgumentParser(
        prog="parshin",
        description="Exact two-dimensional Artin-Schreier-Witt symbol calculator",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("pair", help="compute the symbol [x, y)")
    _add_common(sp)
    sp.add_argument("--x", required=True, help="Witt vector, e.g. \"[S^-1*T^-1]\"")
    sp.add_argument("--y", required=True, help="symbol product, e.g. \"{1+S*T, S}\"")
    sp.add_argument(
        "--method",
        choices=("theorem1", "parshin", "closed", "all"),
        default="all",
    )
    sp.set_defaults(func=_cmd_pair)

    sp = sub.add_parser("reduce", help="canonical representative mod wp")
    _add_common(sp)
    sp.add_argument("--x", required=True, help="Witt vector expression")
    sp.set_defaults(func=_cmd_reduce)

    sp = sub.add_parser("normalize", help="canonical K2 product")
    _add_common(sp)
    sp.add_argument("--y", required=True, help="symbol product expression")
    sp.set_defaults(func=_cmd_normalize)

    sp = sub.add_parser("ram", help="ramification levels / profile / duality")
    _add_common(sp)
    sp.add_argument("--r", required=True, help="ramification vector r1,r2")
    sp.add_argument("--index", help="single index m1,m2 for ell")
    sp.add_argument("--profile", action="store_true", help="print the full profile")
    sp.add_argument("--bound", type=int, default=8, help="index bound for profiles")
    sp.add_argument("--y", help="symbol product for membership and phi")
    sp.set_defaults(func=_cmd_ram)

    sp = sub.add_parser("selftest", help="run built-in seeded checks")
    sp.add_argument("--trials", type=int, default=5, help="trials per configuration")
    sp.set_defaults(func=_cmd_selftest)
    return ap


def run(argv):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except (InputError, BadIndex, NotPrincipalUnit, UnsupportedPair) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WindowTooSmall as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
