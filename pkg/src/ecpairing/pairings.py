"""Pairing contexts and every pairing map: Weil (three definitions), Tate (two, plus the
reduced form), ate / ate_i and their twisted versions, R-ate, Hess and Vercauteren.
"""

from math import gcd

from .curve import Curve, Point, clear_to_r_torsion, make_twist, project_to_g2, twist_classes
from .divisors import Divisor, evaluate, function_from_divisor
from .errors import (
    BadDecomposition,
    Def1Infeasible,
    DivisibilityViolation,
    InvalidParameters,
    MissingTwist,
    NotInjective,
    NotInLatticeKernel,
    NotRootOfUnity,
    NotTorsion,
    SupportCollision,
    RandomizationExhausted,
    UnsupportedShape,
    BadResidueStructure,
)
from .fields import embed_field, make_field
from .miller import MAX_TRIES, build_chain, miller, miller_multi
from .ntheory import embedding_degree, is_prime, order_over_extension, poly_eval, valuation
from .rng import ensure, named_rng

DEF1_LIMIT = 1 << 20


class PairingContext:
    """Immutable parameter bundle: curve over F_q, r, k, L = F_{q^k}, G1/G2 generators."""

    def __init__(self, E, r, k, L, G1_gen, G2_gen, strict=True, twist=None, name=None):
        self.E = E
        self.q = E.q
        self.p = E.field.p
        self.r = r
        self.k = k
        self.order_base = E.order
        self.t = E.q + 1 - E.order
        self.T = self.t - 1
        self.L = L
        self.ext = L.k
        self.G1_gen = G1_gen
        self.G2_gen = G2_gen
        self.strict = strict
        self.twist = twist
        self.name = name
        self.h1 = E.order // r
        self.order_L = order_over_extension(self.t, self.q, L.k)
        self.h2 = self.order_L // (r * r) if self.order_L % (r * r) == 0 else self.order_L // r
        self.final_exp = (L.order - 1) // r
        self._structure = None
        self._def1_cache = {}

    @property
    def d(self):
        return self.twist.d if self.twist else None

    @property
    def e(self):
        return self.k // self.twist.d if self.twist else None

    def group_structure(self):
        """(r1, r2) with E(L) = Z/r1 x Z/r2."""
        if self._structure is None:
            self._structure = self.E.group_structure(self.L, named_rng(0, "structure", self.name))
        return self._structure

    def lift(self, P: Point) -> Point:
        return P.lift(self.L)

    def __repr__(self):
        return f"PairingContext({self.name or ''} q={self.q}, r={self.r}, k={self.k})"


def make_context(curve: Curve, r: int, k: int = None, order: int = None, G1=None, G2=None,
                 twist_d: int = None, ext: int = None, rng=None, name=None, L=None) -> PairingContext:
    """Validate parameters and find generators.

    When r | q - 1 (embedding degree 1) a non-strict context over F_{q^ext} is built;
    only the Weil and Tate pairings are available on it.
    """
    E = curve
    if order is not None:
        E.order = order
    if E.order is None:
        raise InvalidParameters("#E(F_q) is required")
    q = E.q
    if E.field.k != 1:
        raise InvalidParameters("the base field must be a prime field")
    if not is_prime(r):
        raise InvalidParameters(f"r = {r} is not prime")
    if E.order % r:
        raise InvalidParameters("r does not divide #E(F_q)")
    if gcd(r, E.field.p) != 1:
        raise InvalidParameters("gcd(r, p) != 1")
    k_min = embedding_degree(q, r)
    strict = k_min is not None and k_min >= 2
    if k is None:
        k = k_min
    if k_min is None or (q ** k - 1) % r:
        raise InvalidParameters("r does not divide q^k - 1")
    if strict and k != k_min:
        raise InvalidParameters(f"embedding degree is {k_min}, not {k}")
    if not strict:
        if ext is None:
            raise InvalidParameters("r divides q - 1; pass ext for a non-strict context")
    if L is None:
        L = make_field(E.field.p, ext or k)
    elif L.p != E.field.p or L.k != (ext or k):
        raise InvalidParameters("torsion field does not match the context")
    rng = ensure(rng, "make_context", name)
    if strict:
        G1 = _find_g1(E, r, G1, rng)
        G2 = _find_g2(E, r, k, L, G2, rng)
    else:
        G1, G2 = _find_basis(E, r, L, G1, G2, rng)
    ctx = PairingContext(E, r, k, L, G1, G2, strict=strict, name=name)
    if twist_d is not None:
        ctx.twist = _select_twist(ctx, twist_d)
    return ctx


def _find_g1(E, r, G1, rng):
    if G1 is not None:
        if G1.is_infinity or not E.scalar_mul(r, G1).is_infinity or not G1.x.in_prime_field():
            raise InvalidParameters("G1 generator must be a nonzero r-torsion point over F_q")
        return Point(E, E.field(_base_coeff(G1.x)), E.field(_base_coeff(G1.y)))
    for _ in range(256):
        P = clear_to_r_torsion(E, E.random_point(rng=rng), E.order, r)
        if not P.is_infinity:
            return P
    raise InvalidParameters("no point of order r found in E(F_q)")


def _base_coeff(a):
    c = a.to_list()
    return c[0] if c else 0


def _find_g2(E, r, k, L, G2, rng):
    q = E.q
    if G2 is not None:
        G2 = G2.lift(L)
        if G2.is_infinity or not E.scalar_mul(r, G2).is_infinity:
            raise InvalidParameters("G2 generator must be a nonzero r-torsion point")
        if E.frobenius(G2) != E.scalar_mul(q % r, G2):
            raise InvalidParameters("G2 generator is not in the eigenvalue-q subspace")
        return G2
    N = order_over_extension(q + 1 - E.order, q, k)

    class _Tmp:
        pass

    tmp = _Tmp()
    tmp.E, tmp.order_L, tmp.r, tmp.k = E, N, r, k
    for _ in range(256):
        R = project_to_g2(tmp, E.random_point(L, rng))
        if not R.is_infinity:
            if E.frobenius(R) != E.scalar_mul(q % r, R):
                raise InvalidParameters("trace-zero projection left the eigenvalue-q subspace")
            return R
    raise InvalidParameters("could not find a G2 generator")


def _find_basis(E, r, L, G1, G2, rng):
    """Two independent r-torsion points, the first over F_q if possible."""
    N = order_over_extension(E.q + 1 - E.order, E.q, L.k)
    if N % (r * r):
        raise InvalidParameters("E[r] is not contained in E(L)")
    if G1 is None:
        G1 = _find_g1(E, r, None, rng)
    G1 = G1.lift(L)
    span = {E.scalar_mul(i, G1) for i in range(r)}
    if G2 is not None:
        G2 = G2.lift(L)
        if G2 in span or not E.scalar_mul(r, G2).is_infinity:
            raise InvalidParameters("G2 must be r-torsion and independent of G1")
        return G1, G2
    for _ in range(512):
        R = clear_to_r_torsion(E, E.random_point(L, rng), N, r)
        if not R.is_infinity and R not in span:
            return G1, R
    raise InvalidParameters("could not find an independent r-torsion point")


def _select_twist(ctx, d):
    if ctx.k % d:
        raise InvalidParameters(f"twist degree {d} does not divide k = {ctx.k}")
    e = ctx.k // d
    E = ctx.E
    try:
        classes = twist_classes(E, d)
    except (UnsupportedShape, BadResidueStructure) as exc:
        raise MissingTwist(str(exc))
    for which in range(len(classes)):
        tw = make_twist(E, d, which, field=ctx.L)
        Qp = tw.psi_inverse(ctx.G2_gen)
        if tw.curve_prime.frobenius(Qp, e) == Qp:
            n_e = order_over_extension(ctx.q + 1 - len_or_order(tw.curve_prime), ctx.q, e)
            if n_e % ctx.r == 0:
                return tw
    raise MissingTwist(f"no degree-{d} twist carries G2 over F_q^{e}")


def len_or_order(C: Curve) -> int:
    if C.order is None:
        if C.q <= 1 << 16:
            C.order = len(C.enumerate_points())
        else:
            C.order = _order_by_points(C)
    return C.order


def _order_by_points(C: Curve) -> int:
    """#E'(F_q) from the Hasse interval by random-point annihilation (desk scale)."""
    import math

    q = C.q
    lo = q + 1 - 2 * math.isqrt(q) - 2
    hi = q + 1 + 2 * math.isqrt(q) + 2
    rng = named_rng(0, "order_by_points", q)
    cands = list(range(max(lo, 1), hi + 1))
    for _ in range(40):
        P = C.random_point(rng=rng)
        cands = [n for n in cands if C.scalar_mul(n, P).is_infinity]
        if len(cands) == 1:
            return cands[0]
    raise InvalidParameters("could not pin down the twist order")


# -- pairing values ----------------------------------------------------------------------

class PairingValue:
    """A pairing value with its metadata; compares and multiplies like its field value."""

    def __init__(self, value, reduced=False, loop_bits=None, miller_calls=0, info=None):
        self.value = value
        self.reduced = reduced
        self.loop_bits = loop_bits
        self.miller_calls = miller_calls
        self.info = info or {}

    def _v(self, other):
        return other.value if isinstance(other, PairingValue) else other

    def __eq__(self, other):
        return self.value == self._v(other)

    def __hash__(self):
        return hash(self.value)

    def __mul__(self, other):
        return PairingValue(self.value * self._v(other), self.reduced)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return PairingValue(self.value / self._v(other), self.reduced)

    def __pow__(self, e):
        return PairingValue(self.value ** e, self.reduced)

    def to_list(self):
        return self.value.to_list()

    def __repr__(self):
        return f"PairingValue({self.value}, reduced={self.reduced})"


def _wrap(ctx, value, reduced, **meta):
    value = ctx.L(value) if not isinstance(value, int) else ctx.L(value)
    if reduced:
        value = value ** ctx.final_exp
    return PairingValue(value, reduced, **meta)


def _loop_bits(n: int) -> int:
    n = abs(n)
    return n.bit_length() - 1 if n else 0


def _check_torsion(ctx, P, label="P"):
    if not ctx.E.scalar_mul(ctx.r, P).is_infinity:
        raise NotTorsion(f"{label} is not r-torsion")


def _f_at(n, P, Q, L, skip_verticals=False, chain=None):
    """f_{n,P}(Q) with Q outside {P, O}; exact even when intermediate lines meet Q."""
    try:
        return miller(n, P, Q, chain=chain, skip_verticals=skip_verticals, field=L).value
    except SupportCollision:
        if skip_verticals:
            raise
        res = miller(n, P, chain=chain)
        return L(evaluate(res.function, Q))


def _f_div(n, A, B, D, L):
    """(f_{n,A} / f_{n,B}) evaluated at the divisor D."""
    num = miller(n, A, D, field=L).value
    den = miller(n, B, D, field=L).value
    return num / den


# -- Weil -----------------------------------------------------------------------------

def weil(ctx: PairingContext, P: Point, Q: Point, definition: int = 2, rng=None) -> PairingValue:
    E, r, L = ctx.E, ctx.r, ctx.L
    P, Q = P.lift(L), Q.lift(L)
    _check_torsion(ctx, P, "P")
    _check_torsion(ctx, Q, "Q")
    if P.is_infinity or Q.is_infinity or P == Q:
        return PairingValue(L.one, True, loop_bits=_loop_bits(r))
    rng = ensure(rng, "weil", definition)
    if definition == 2:
        val = _f_at(r, P, Q, L) / _f_at(r, Q, P, L)
        if r % 2:
            val = -val
        return PairingValue(val, True, loop_bits=_loop_bits(r), miller_calls=2)
    if definition == 3:
        for _ in range(MAX_TRIES):
            R1 = E.random_point(L, rng)
            R2 = E.random_point(L, rng)
            DP = Divisor([(E.add_points(P, R1), 1), (R1, -1)])
            DQ = Divisor([(E.add_points(Q, R2), 1), (R2, -1)])
            if set(DP.coeffs) & set(DQ.coeffs) or len(DP.coeffs) < 2 or len(DQ.coeffs) < 2:
                continue
            try:
                num = _f_div(r, E.add_points(P, R1), R1, DQ, L)
                den = _f_div(r, E.add_points(Q, R2), R2, DP, L)
            except SupportCollision:
                continue
            return PairingValue(num / den, True, loop_bits=_loop_bits(r), miller_calls=4)
        raise RandomizationExhausted("weil def 3: no disjoint divisors found")
    if definition == 1:
        return PairingValue(_weil_def1(ctx, P, Q, rng), True, loop_bits=_loop_bits(r))
    raise ValueError("definition must be 1, 2 or 3")


def _r_torsion_points(ctx):
    E, r = ctx.E, ctx.r
    G1, G2 = ctx.G1_gen.lift(ctx.L), ctx.G2_gen.lift(ctx.L)
    pts = []
    A = E.infinity
    for _ in range(r):
        B = A
        for _ in range(r):
            pts.append(B)
            B = E.add_points(B, G2)
        A = E.add_points(A, G1)
    return pts


def _sylow_closure(E, field, N, r, rng):
    """All points of the r-Sylow subgroup of E(field)."""
    v = valuation(N, r)
    size = r ** v
    c = N // size
    elems = {E.infinity}
    while len(elems) < size:
        g = E.scalar_mul(c, E.random_point(field, rng))
        if g in elems:
            continue
        multiples = [E.infinity]
        m = g
        while not m.is_infinity:
            multiples.append(m)
            m = E.add_points(m, g)
        elems = {E.add_points(s, mg) for s in elems for mg in multiples}
    return elems


def _def1_field(ctx, P, rng):
    """(L', embed, preimage, P0) with r P0 = P in E(L')."""
    E, r, L = ctx.E, ctx.r, ctx.L
    j = 1
    while ctx.p ** (ctx.ext * j) <= DEF1_LIMIT:
        key = j
        if key not in ctx._def1_cache:
            Lp = make_field(ctx.p, ctx.ext * j)
            emb, pre = embed_field(L, Lp)
            N = order_over_extension(ctx.t, ctx.q, ctx.ext * j)
            syl = _sylow_closure(E, Lp, N, r, rng)
            halving = {}
            for Z in syl:
                halving.setdefault(E.scalar_mul(r, Z), Z)
            ctx._def1_cache[key] = (Lp, emb, pre, halving)
        Lp, emb, pre, halving = ctx._def1_cache[key]
        Pl = _embed_point(E, P, emb)
        if Pl in halving:
            return Lp, emb, pre, halving[Pl]
        j += 1
    raise Def1Infeasible("no extension of at most 2^20 elements contains a P0 with r P0 = P")


def _embed_point(E, P, emb):
    if P.is_infinity:
        return P
    return Point(E, emb(P.x), emb(P.y))


def _weil_def1(ctx, P, Q, rng):
    E, r = ctx.E, ctx.r
    if ctx.L.order > DEF1_LIMIT:
        raise Def1Infeasible("torsion field too large to enumerate")
    Lp, emb, pre, P0 = _def1_field(ctx, P, rng)
    key = ("g", P)
    if key not in ctx._def1_cache:
        torsion = [_embed_point(E, R, emb) for R in _r_torsion_points(ctx)]
        D = Divisor([(E.add_points(P0, R), 1) for R in torsion] + [(R, -1) for R in torsion])
        ctx._def1_cache[key] = function_from_divisor(D, E)
    g = ctx._def1_cache[key]
    Ql = _embed_point(E, Q, emb)
    for _ in range(MAX_TRIES):
        X = E.random_point(Lp, rng)
        try:
            val = evaluate(g, E.add_points(X, Ql)) / evaluate(g, X)
        except SupportCollision:
            continue
        return pre(val)
    raise RandomizationExhausted("weil def 1: evaluation point kept hitting the support")


# -- Tate -----------------------------------------------------------------------------

def tate(ctx: PairingContext, P: Point, Q: Point, definition: int = 2, reduced: bool = False,
         skip_verticals: bool = False, rng=None) -> PairingValue:
    E, r, L = ctx.E, ctx.r, ctx.L
    _check_torsion(ctx, P, "P")
    P, Q = P.lift(L), Q.lift(L)
    if P.is_infinity or Q.is_infinity:
        return _wrap(ctx, L.one, reduced, loop_bits=_loop_bits(r))
    rng = ensure(rng, "tate", definition)
    if definition == 2:
        if P == Q or skip_verticals and Q in {E.scalar_mul(i, P) for i in range(1, min(r, 64))}:
            Q = _shift_q(ctx, P, Q, rng)
        chain = build_chain(r)
        val = _f_at(r, P, Q, L, skip_verticals, chain)
        return _wrap(ctx, val, reduced, loop_bits=_loop_bits(r), miller_calls=1)
    if definition == 1:
        for _ in range(MAX_TRIES):
            R1 = E.random_point(L, rng)
            R2 = E.random_point(L, rng)
            A = E.add_points(P, R1)
            DQ = Divisor([(E.add_points(Q, R2), 1), (R2, -1)])
            if len(DQ.coeffs) < 2 or {A, R1} & set(DQ.coeffs):
                continue
            try:
                val = _f_div(r, A, R1, DQ, L)
            except SupportCollision:
                continue
            return _wrap(ctx, val, reduced, loop_bits=_loop_bits(r), miller_calls=2)
        raise RandomizationExhausted("tate def 1: no disjoint divisors found")
    raise ValueError("definition must be 1 or 2")


def _shift_q(ctx, P, Q, rng):
    """Q + rR with rR outside {O, -Q}; random first, then a deterministic scan."""
    E, r = ctx.E, ctx.r
    for _ in range(MAX_TRIES):
        rR = E.scalar_mul(r, E.random_point(ctx.L, rng))
        if not rR.is_infinity and rR != E.neg(Q):
            return E.add_points(Q, rR)
    if ctx.L.order <= DEF1_LIMIT:
        for R in E.enumerate_points(ctx.L):
            rR = E.scalar_mul(r, R)
            if not rR.is_infinity and rR != E.neg(Q):
                return E.add_points(Q, rR)
    raise RandomizationExhausted("no shift Q + rR available")


def reduce_value(ctx, value):
    return ctx.L(value) ** ctx.final_exp


def torsion_representative(ctx: PairingContext, Q: Point) -> Point:
    """(r2 / r) Q, which maps E(L)/rE(L) injectively into E[r] when gcd(r2/r1, r) = 1."""
    r1, r2 = ctx.group_structure()
    r = ctx.r
    if r2 % r or gcd(r2 // r1, r) != 1:
        raise NotInjective(f"gcd(r2/r1, r) = {gcd(r2 // r1, r)} for (r1, r2) = ({r1}, {r2})")
    return ctx.E.scalar_mul(r2 // r, Q.lift(ctx.L))


# -- ate family -------------------------------------------------------------------------

def ate_lambda(ctx, i: int = 1, twisted: bool = False) -> int:
    if twisted:
        e = ctx.e
        return ctx.T ** e if i == 1 else pow(ctx.T, e * i, ctx.r)
    return ctx.T if i == 1 else pow(ctx.T, i, ctx.r)


def _require_strict(ctx):
    if not ctx.strict:
        raise InvalidParameters("this pairing needs a context with k >= 2 (r not dividing q - 1)")


def ate_family(ctx: PairingContext, P: Point, Q: Point, i: int = 1, twisted: bool = False,
               reduced: bool = False) -> PairingValue:
    """ate_i (f_{lambda,Q}(P)) or twisted ate_i (f_{lambda,P}(Q)); i = 1 gives (twisted) ate."""
    _require_strict(ctx)
    L, r, k = ctx.L, ctx.r, ctx.k
    if i < 1:
        raise InvalidParameters("i must be >= 1")
    if twisted:
        if ctx.twist is None:
            raise MissingTwist("context has no twist")
        d, e = ctx.d, ctx.e
        lam = ate_lambda(ctx, i, True)
        dp = d // gcd(d, i)
        base, at = P, Q.lift(L)
        rel_exp = dp * ctx.q ** (e * i * (dp - 1))
    else:
        lam = ate_lambda(ctx, i)
        dp = k // gcd(k, i)
        base, at = Q.lift(L), P.lift(L)
        rel_exp = dp * ctx.q ** (i * (dp - 1))
    if P.is_infinity or Q.is_infinity or lam % r == 0 and lam == 0:
        val = L.one
    else:
        val = _f_at(lam, base, at, L)
    tate_exp = (lam ** dp - 1) // r
    info = {"lambda": lam, "relation_exponent": rel_exp, "tate_exponent": tate_exp,
            "degenerate": (lam ** dp - 1) % (r * r) == 0, "tate_order": "PQ" if twisted else "QP"}
    return _wrap(ctx, val, reduced, loop_bits=_loop_bits(lam), miller_calls=1, info=info)


# -- R-ate ------------------------------------------------------------------------------

def _power_index(ctx, t):
    """a with t = T^a mod r, 0 <= a < k."""
    for a in range(ctx.k):
        if (t - ctx.T ** a) % ctx.r == 0:
            return a
    raise InvalidParameters(f"{t} is not a power of T modulo r")


def tate_power_of_f(ctx, t: int) -> int:
    """c with reduced f_{t,Q}(P) = reduced tate(Q, P)^c, for t = T^a mod r."""
    r, k, q, T = ctx.r, ctx.k, ctx.q, ctx.T
    a = _power_index(ctx, t)
    s = (t - T ** a) // r
    base = (T ** (a * k) - 1) // r
    return (s + base * pow(k * q ** (a * (k - 1)), -1, r)) % r


def r_ate(ctx: PairingContext, P: Point, Q: Point, t0: int, t1: int, lam0: int, lam1: int,
          reduced: bool = False) -> PairingValue:
    """f_{lam1, t0 Q} f_{lam0, Q} l_{t0 lam1 Q, lam0 Q} / v_{t1 Q} at P."""
    _require_strict(ctx)
    if t1 != t0 * lam1 + lam0:
        raise BadDecomposition(f"{t1} != {t0} * {lam1} + {lam0}")
    E, L, r = ctx.E, ctx.L, ctx.r
    P, Q = P.lift(L), Q.lift(L)
    t0Q = E.scalar_mul(t0, Q)
    calls = 0
    val = L.one
    if lam1 and not t0Q.is_infinity:
        val = val * _f_at(lam1, t0Q, P, L)
        calls += 1
    if lam0:
        val = val * _f_at(lam0, Q, P, L)
        calls += 1
    A = E.scalar_mul(lam1, t0Q)
    B = E.scalar_mul(lam0, Q)
    _, l, v = E.add(A, B)
    lv = l(P) if not l.is_one else 1
    vv = v(P) if not v.is_one else 1
    val = val * lv / vv if not isinstance(vv, int) else val * lv
    M = (tate_power_of_f(ctx, t1) - lam1 * tate_power_of_f(ctx, t0)) % r
    info = {"M": M, "degenerate": M % r == 0}
    return _wrap(ctx, val, reduced, loop_bits=_loop_bits(lam0) + _loop_bits(lam1),
                 miller_calls=calls, info=info)


# -- Hess / Vercauteren -------------------------------------------------------------------

def nondegeneracy_exponent(t, y: int, q: int, k: int, r: int) -> int:
    """N = (k q^(k-1) t(y) - (t(y^k) - t(1))) / r."""
    ty = poly_eval(t, y)
    if ty % r:
        raise DivisibilityViolation("r does not divide t(y)")
    num = k * q ** (k - 1) * ty - (poly_eval(t, y ** k) - poly_eval(t, 1))
    if num % r:
        raise DivisibilityViolation("y is not a k-th root of unity modulo r")
    return num // r


def hess_tate_exponent(t, y: int, q: int, k: int, r: int) -> int:
    """M mod r with reduced hess(P, Q) = reduced tate(Q, P)^M, term by term."""
    ty = poly_eval(t, y)
    if ty % r:
        raise DivisibilityViolation("r does not divide t(y)")
    M = ty // r
    for i, ti in enumerate(t):
        if not ti:
            continue
        yi = y ** i
        j = next((j for j in range(k) if (yi - q ** j) % r == 0), None)
        if j is None:
            raise NotRootOfUnity("y^i is not a power of q modulo r")
        c = ((yi ** k - 1) // r) * pow(k * q ** (j * (k - 1)), -1, r)
        M -= ti * c
    return M % r


def _hess_terms(E, base, at, t, mults, L, frob=None, base_results=None):
    """prod f_{t_i, R_i}(at) * prod l_{S_{i-1}, t_i R_i} / v_{S_i} (at)."""
    num = L.one
    den = L.one
    S = E.infinity
    calls = 0
    for i, ti in enumerate(t):
        Ri = mults[i]
        if base_results is not None:
            res = base_results[ti]
            f = res.value if ti else L.one
            f = f ** (frob ** i) if ti else f
            end = E.frobenius(res.endpoint, i) if ti else E.infinity
        else:
            if ti and not Ri.is_infinity:
                f = _f_at(ti, Ri, at, L)
                calls += 1
            else:
                f = L.one
            end = E.scalar_mul(ti, Ri)
        num = num * f
        S, l, v = E.add(S, end)
        if not l.is_one:
            num = num * l(at)
        if not v.is_one:
            den = den * v(at)
    if not S.is_infinity:
        raise NotInLatticeKernel("sum t_i R_i is not O")
    return num / den, calls


def hess(ctx: PairingContext, P: Point, Q: Point, t, y: int = None, mode: str = "generic",
         reduced: bool = False) -> PairingValue:
    """Hess pairing f_{t,y,Q}(P); vercauteren mode takes y = q, twisted mode uses base P."""
    _require_strict(ctx)
    E, L, r, k, q = ctx.E, ctx.L, ctx.r, ctx.k, ctx.q
    t = list(t)
    P, Q = P.lift(L), Q.lift(L)
    if mode == "vercauteren":
        y = q if y is None else y
        if y != q:
            raise InvalidParameters("vercauteren mode needs y = q")
    if y is None:
        y = ctx.T
    if mode == "twisted":
        if ctx.twist is None:
            raise MissingTwist("context has no twist")
        d, e = ctx.d, ctx.e
        if pow(y, d, r) != 1:
            raise NotRootOfUnity(f"{y} is not a {d}-th root of unity mod r")
        if poly_eval(t, y) % r:
            raise NotInLatticeKernel("r does not divide t(y)")
        N = _twisted_exponent(t, y, q ** e, d, r)
        base, at = P, Q
    else:
        if pow(y, k, r) != 1:
            raise NotRootOfUnity(f"{y} is not a {k}-th root of unity mod r")
        if poly_eval(t, y) % r:
            raise NotInLatticeKernel("r does not divide t(y)")
        N = nondegeneracy_exponent(t, y, q, k, r)
        base, at = Q, P
    bits = max((_loop_bits(ti) for ti in t), default=0)
    info = {"N": N, "degenerate": N % r == 0, "y": y, "t": t}
    if P.is_infinity or Q.is_infinity:
        return _wrap(ctx, L.one, reduced, loop_bits=bits, info=info)
    if mode == "vercauteren":
        targets = sorted({ti for ti in t if ti})
        chain = build_chain(targets=targets) if targets else None
        results = miller_multi(targets, base, at, chain=chain, field=L) if targets else {}
        results[0] = None
        mults = [E.frobenius(base, i) for i in range(len(t))]
        val, _ = _hess_terms(E, base, at, t, mults, L, frob=q, base_results=results)
        info["chain_length"] = len(chain) - 1 if chain else 0
        return _wrap(ctx, val, reduced, loop_bits=bits, miller_calls=1, info=info)
    mults = [E.scalar_mul(pow(y, i, r), base) for i in range(len(t))]
    val, calls = _hess_terms(E, base, at, t, mults, L)
    return _wrap(ctx, val, reduced, loop_bits=bits, miller_calls=calls, info=info)


def _twisted_exponent(t, y, qe, d, r):
    num = d * qe ** (d - 1) * poly_eval(t, y) - (poly_eval(t, y ** d) - poly_eval(t, 1))
    if num % r:
        raise DivisibilityViolation("y is not a d-th root of unity modulo r")
    return num // r


# -- misc -------------------------------------------------------------------------------

def in_g1(ctx, P) -> bool:
    E = ctx.E
    P = P.lift(ctx.L)
    return E.scalar_mul(ctx.r, P).is_infinity and E.frobenius(P) == P


def in_g2(ctx, Q) -> bool:
    E = ctx.E
    Q = Q.lift(ctx.L)
    return E.scalar_mul(ctx.r, Q).is_infinity and E.frobenius(Q) == E.scalar_mul(ctx.q % ctx.r, Q)
