"""Invariant suites run by ``ecpairing verify``; each yields (property, passed) pairs."""

from .curve import distortion_kind
from .divisors import LineProduct, weil_reciprocity_check
from .errors import UnsupportedCurve
from .pairings import (
    ate_family,
    hess,
    hess_tate_exponent,
    in_g1,
    in_g2,
    nondegeneracy_exponent,
    tate,
    weil,
)
from .rng import named_rng


def _torsion(ctx):
    E, L = ctx.E, ctx.L
    G1, G2 = ctx.G1_gen.lift(L), ctx.G2_gen.lift(L)
    out = []
    A = E.infinity
    for _ in range(ctx.r):
        B = A
        for _ in range(ctx.r):
            out.append(B)
            B = E.add_points(B, G2)
        A = E.add_points(A, G1)
    return out


def weil_equivalence(ctx, rng, trials=30):
    if ctx.r <= 5:
        pts = _torsion(ctx)
        pairs = [(P, Q) for P in pts for Q in pts]
    else:
        E = ctx.E
        pairs = [(E.scalar_mul(rng.randrange(ctx.r), ctx.G1_gen.lift(ctx.L)),
                  E.scalar_mul(rng.randrange(ctx.r), ctx.G2_gen)) for _ in range(trials)]
    defs = (1, 2, 3) if ctx.L.order <= 1 << 20 else (2, 3)
    ok = all(len({weil(ctx, P, Q, d, rng).value for d in defs}) == 1 for P, Q in pairs)
    yield f"weil defs {defs} agree on {len(pairs)} pairs", ok
    G1, G2 = ctx.G1_gen, ctx.G2_gen
    e = weil(ctx, G1, G2).value
    yield "weil non-degenerate (order r)", e != 1 and e ** ctx.r == 1
    yield "weil alternation", (weil(ctx, G1, G2) * weil(ctx, G2, G1)).value == 1


def reciprocity(ctx, rng, trials=100):
    E = ctx.E
    pts = E.enumerate_points()
    F = E.field

    def rand_f():
        f = LineProduct.one()
        for _ in range(rng.randrange(1, 4)):
            _, l, v = E.add(rng.choice(pts), rng.choice(pts))
            f = f * LineProduct({l: rng.choice([1, -1, 2]), v: rng.choice([1, -1])})
        return f * F(rng.randrange(1, F.p))

    ok = sum(weil_reciprocity_check(rand_f(), rand_f()) for _ in range(trials))
    yield f"weil reciprocity {ok}/{trials}", ok == trials


def ate_relation(ctx, rng):
    P, Q = ctx.G1_gen, ctx.G2_gen
    tq = tate(ctx, Q, P, reduced=True).value
    a = ate_family(ctx, P, Q, reduced=True)
    yield "ate^(k q^(k-1)) = tate(Q,P)^((T^k-1)/r)", \
        a.value ** a.info["relation_exponent"] == tq ** a.info["tate_exponent"]
    if ctx.twist is not None:
        tp = tate(ctx, P, Q, reduced=True).value
        a = ate_family(ctx, P, Q, twisted=True, reduced=True)
        yield "twisted ate^(d q^(e(d-1))) = tate(P,Q)^((T^k-1)/r)", \
            a.value ** a.info["relation_exponent"] == tp ** a.info["tate_exponent"]
    for i in range(1, ctx.k):
        a, b = rng.randrange(1, ctx.r), rng.randrange(1, ctx.r)
        lhs = ate_family(ctx, ctx.E.scalar_mul(a, P), ctx.E.scalar_mul(b, Q), i=i, reduced=True).value
        rhs = ate_family(ctx, P, Q, i=i, reduced=True).value ** (a * b)
        yield f"ate_{i} bilinear", lhs == rhs


def hess_relation(ctx, rng):
    P, Q = ctx.G1_gen, ctx.G2_gen
    r, k, q, T = ctx.r, ctx.k, ctx.q, ctx.T
    tq = tate(ctx, Q, P, reduced=True).value
    for t in ([r], [-T, 1]):
        h = hess(ctx, P, Q, t, y=T, reduced=True)
        yield f"hess t={t}: hess^(k q^(k-1)) = tate^N", \
            h.value ** (k * q ** (k - 1)) == tq ** nondegeneracy_exponent(t, T, q, k, r)
    t = [-(q % r), 1]
    a = hess(ctx, P, Q, t, y=q, mode="vercauteren").value
    b = hess(ctx, P, Q, t, y=q).value
    yield "vercauteren = generic", a == b
    M = hess_tate_exponent(t, q, q, k, r)
    yield "reduced hess = tate^M", a ** ctx.final_exp == tq ** M


def bkls(ctx, rng, trials=10):
    if distortion_kind(ctx.E) is None:
        raise UnsupportedCurve("bkls needs a curve with a distortion map")
    E = ctx.E
    ok = True
    for _ in range(trials):
        P = E.scalar_mul(rng.randrange(1, ctx.r), ctx.G1_gen)
        Q = E.distortion(E.scalar_mul(rng.randrange(1, ctx.r), ctx.G1_gen), ctx.L)
        ok &= tate(ctx, P, Q, reduced=True, skip_verticals=True) == tate(ctx, P, Q, reduced=True)
    yield f"denominator-free reduced tate = full ({trials} pairs)", ok


def trace(ctx, rng):
    G2 = ctx.G2_gen
    yield "G1 generator: r-torsion, Frobenius eigenvalue 1", in_g1(ctx, ctx.G1_gen)
    if ctx.strict:
        yield "G2 generator: Frobenius eigenvalue q", in_g2(ctx, G2)
        yield "G2 generator: trace zero", ctx.E.trace_map(G2, ctx.k).is_infinity
        yield "G1 generator: trace = k P", \
            ctx.E.trace_map(ctx.G1_gen.lift(ctx.L), ctx.k) == ctx.E.scalar_mul(ctx.k, ctx.G1_gen.lift(ctx.L))


SUITES = {
    "weil-equivalence": weil_equivalence,
    "reciprocity": reciprocity,
    "ate-relation": ate_relation,
    "hess-relation": hess_relation,
    "bkls": bkls,
    "trace": trace,
}


def run_suite(name, ctx, seed=0):
    return list(SUITES[name](ctx, named_rng(seed, "verify", name)))
