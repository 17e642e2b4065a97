"""ecpairing command line: contexts, pairings, verification suites, lattices, families."""

import argparse
import json
import math
import os
import sys

from . import pairings as pr
from .curve import make_curve
from .errors import PairingError
from .fields import make_field
from .ntheory import embedding_degree, euler_phi
from .optimal import FREEMAN_K10, CurveFamily, build_lattice, family_instantiate, lll_reduce, shortest_vector
from .presets import PRESETS, preset
from .rng import named_rng
from .serialize import context_to_json, load_context, parse_point, save_context
from .suites import SUITES, run_suite


class UsageError(Exception):
    pass


def _ints(text):
    return [int(x) for x in text.replace("[", "").replace("]", "").split(",") if x.strip()]


def _context(args):
    if not args.context:
        raise UsageError("--context is required")
    if os.path.exists(args.context):
        return load_context(args.context)
    if args.context in PRESETS:
        return preset(args.context, args.seed)
    raise UsageError(f"--context {args.context}: no such file or preset")


def _emit(args, record):
    if args.json:
        print(json.dumps(record, sort_keys=False))
        return
    for key, val in record.items():
        if isinstance(val, (list, dict)):
            val = json.dumps(val)
        print(f"{key}: {val}")


def _value(v):
    return v.to_list() if hasattr(v, "to_list") else v


# -- commands ---------------------------------------------------------------------------

def cmd_field_info(args):
    F = make_field(args.p, args.k, seed=args.seed)
    rec = {"p": F.p, "k": F.k, "order": F.order, "modulus": list(F.modulus)}
    if args.r:
        rec["embedding_degree"] = embedding_degree(F.order, args.r)
    _emit(args, rec)
    return 0


def _curve_from_args(args):
    F = make_field(args.p)
    a = _ints(args.a) if args.a else [0, 0, 0, args.a4, args.a6]
    if len(a) != 5:
        raise UsageError("--a takes five coefficients a1,a2,a3,a4,a6")
    return make_curve(F, *a, order=args.order)


def cmd_curve_info(args):
    E = _curve_from_args(args)
    rec = {"curve": E.descriptor()["a"], "q": E.q, "discriminant": int(E.discriminant().to_list()[0])}
    if E.order is None and E.q <= 1 << 20:
        E.order = len(E.enumerate_points())
    if E.order is not None:
        rec["order"] = E.order
        rec["trace"] = E.q + 1 - E.order
    if args.r:
        rec["embedding_degree"] = embedding_degree(E.q, args.r)
    _emit(args, rec)
    return 0


def cmd_context_new(args):
    if args.preset:
        ctx = preset(args.preset, args.seed)
    else:
        if args.r is None:
            raise UsageError("context-new needs --preset or --p/--a4/--a6/--order/--r")
        E = _curve_from_args(args)
        ctx = pr.make_context(E, args.r, order=args.order, twist_d=args.twist, ext=args.ext,
                              rng=named_rng(args.seed, "context-new"), name=args.name)
    data = context_to_json(ctx)
    if args.out:
        save_context(ctx, args.out)
        _emit(args, {"context": ctx.name, "file": args.out, "r": ctx.r, "k": ctx.k})
    else:
        print(json.dumps(data))
    return 0


def _pair_request(args):
    if args.request:
        with open(args.request) as fh:
            req = json.load(fh)
        for key, val in req.items():
            key = key.replace("-", "_")
            if key == "definition":
                key = "defn"
            if isinstance(val, (dict, list)) and key in ("P", "Q"):
                val = json.dumps(val)
            elif isinstance(val, list):
                val = ",".join(str(x) for x in val)
            setattr(args, key, val)
    return args


def cmd_pair(args):
    args = _pair_request(args)
    ctx = _context(args)
    P = parse_point(ctx, args.P) if args.P else ctx.G1_gen
    Q = parse_point(ctx, args.Q) if args.Q else ctx.G2_gen
    name = args.pairing
    rng = named_rng(args.seed, "pair")
    if name == "weil":
        v = pr.weil(ctx, P, Q, args.defn or 2, rng)
    elif name == "tate":
        v = pr.tate(ctx, P, Q, args.defn or 2, args.reduced, rng=rng)
    elif name in ("ate", "ate_i", "twisted_ate"):
        v = pr.ate_family(ctx, P, Q, i=args.i or 1, twisted=args.twisted or name == "twisted_ate",
                          reduced=args.reduced)
    elif name == "r_ate":
        if None in (args.t0, args.t1, args.lam0, args.lam1):
            raise UsageError("r_ate needs --t0 --t1 --lam0 --lam1")
        v = pr.r_ate(ctx, P, Q, int(args.t0), int(args.t1), int(args.lam0), int(args.lam1), args.reduced)
    elif name in ("hess", "vercauteren"):
        if not args.t:
            raise UsageError("hess needs --t (coefficients, constant first)")
        mode = "vercauteren" if name == "vercauteren" else ("twisted" if args.twisted else "generic")
        y = int(args.y) if args.y is not None else None
        v = pr.hess(ctx, P, Q, _ints(args.t), y=y, mode=mode, reduced=args.reduced)
    else:
        raise UsageError(f"unknown pairing {name}")
    rec = {"pairing": name, "reduced": v.reduced, "value": _value(v.value),
           "loop_bits": v.loop_bits, "miller_calls": v.miller_calls}
    for key in ("lambda", "M", "N", "degenerate", "chain_length"):
        if key in v.info:
            rec[key] = v.info[key]
    _emit(args, rec)
    return 0


def cmd_verify(args):
    ctx = _context(args)
    results = run_suite(args.suite, ctx, args.seed)
    ok = all(passed for _, passed in results)
    if args.json:
        print(json.dumps({"suite": args.suite, "passed": ok,
                          "properties": [{"name": n, "passed": p} for n, p in results]}))
    else:
        for name, passed in results:
            print(f"{'pass' if passed else 'FAIL'}: {name}")
        print(f"suite: {args.suite} {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_lattice(args):
    lat = build_lattice(args.r, args.y, k=args.k)
    red = lll_reduce(lat.basis)
    _emit(args, {"r": args.r, "y": args.y, "k": args.k, "dim": lat.dim, "basis": lat.basis,
                 "reduced": red, "shortest": shortest_vector(lat.basis)})
    return 0


def cmd_family(args):
    fam = FREEMAN_K10
    if args.file:
        with open(args.file) as fh:
            fam = CurveFamily.from_json(json.load(fh))
    x0, ctx = family_instantiate(fam, args.lo, args.hi, rng=named_rng(args.seed, "family"))
    y = ctx.q % ctx.r
    t = shortest_vector(build_lattice(ctx.r, y, k=ctx.k).basis)
    if args.out:
        save_context(ctx, args.out)
    _emit(args, {"x0": x0, "p": ctx.q, "r": ctx.r, "k": ctx.k, "order": ctx.order_base,
                 "curve": ctx.E.descriptor()["a"], "y": y, "t": t})
    return 0


def cmd_bench(args):
    ctx = _context(args)
    rec = {"context": ctx.name, "log2_r": round(math.log2(ctx.r), 3), "tate_bits": pr._loop_bits(ctx.r)}
    if ctx.strict:
        rec["ate_bits"] = pr._loop_bits(pr.ate_lambda(ctx))
        if ctx.twist is not None:
            rec["twisted_ate_bits"] = pr._loop_bits(pr.ate_lambda(ctx, twisted=True))
        y = ctx.q % ctx.r
        dim = euler_phi(ctx.k)
        t = shortest_vector(build_lattice(ctx.r, y, k=ctx.k).basis)
        rec["hess_t"] = t
        rec["hess_bits"] = max(pr._loop_bits(c) for c in t)
        rec["phi_k"] = dim
    _emit(args, rec)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="emit one JSON object")

    ap = argparse.ArgumentParser(prog="ecpairing", description="Elliptic curve pairings at desk scale.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", parents=[common])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_field_info)

    def curve_flags(p):
        p.add_argument("--p", type=int)
        p.add_argument("--a", help="a1,a2,a3,a4,a6")
        p.add_argument("--a4", type=int, default=0)
        p.add_argument("--a6", type=int, default=0)
        p.add_argument("--order", type=int)
        p.add_argument("--r", type=int)

    p = sub.add_parser("curve-info", parents=[common])
    curve_flags(p)
    p.set_defaults(func=cmd_curve_info)

    p = sub.add_parser("context-new", parents=[common])
    curve_flags(p)
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--twist", type=int)
    p.add_argument("--ext", type=int)
    p.add_argument("--name")
    p.add_argument("--out")
    p.set_defaults(func=cmd_context_new)

    p = sub.add_parser("pair", parents=[common])
    p.add_argument("--context")
    p.add_argument("--request", help="JSON pairing request file")
    p.add_argument("--pairing", default="weil",
                   choices=["weil", "tate", "ate", "twisted_ate", "ate_i", "r_ate", "hess", "vercauteren"])
    p.add_argument("--def", dest="defn", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--twisted", action="store_true")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--P")
    p.add_argument("--Q")
    p.add_argument("--t", help="hess polynomial coefficients, constant first")
    p.add_argument("--y")
    for name in ("t0", "t1", "lam0", "lam1"):
        p.add_argument(f"--{name}")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--context")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lattice", parents=[common])
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("family", parents=[common])
    p.add_argument("--file")
    p.add_argument("--lo", type=int, default=-64)
    p.add_argument("--hi", type=int, default=64)
    p.add_argument("--out")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("bench", parents=[common])
    p.add_argument("--context")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PairingError, ValueError, KeyError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
