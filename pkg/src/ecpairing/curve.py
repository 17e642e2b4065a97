"""Elliptic curves in long Weierstrass form, affine coordinates.

The group law returns the two lines it used (the chord/tangent and the vertical through
the sum) so that Miller's algorithm can consume them directly.
"""

import hashlib
from math import gcd

from .errors import (
    BadResidueStructure,
    CurveMismatch,
    FieldMismatch,
    FieldTooLarge,
    HashFailure,
    NoRoot,
    NotOnCurve,
    SingularCurve,
    UnsupportedCurve,
    UnsupportedShape,
)
from .fields import Field, FieldElement, make_field
from .ntheory import factor, order_over_extension
from .rng import ensure

ENUMERATION_LIMIT = 1 << 20


class Curve:
    """Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X + a6 over ``field``.

    Points may have coordinates in any extension of the prime field; ``order`` is the
    optional externally supplied #E(field).
    """

    def __init__(self, field: Field, a1=0, a2=0, a3=0, a4=0, a6=0, order=None):
        self.field = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = (field(c) for c in (a1, a2, a3, a4, a6))
        if not self.discriminant():
            raise SingularCurve(f"singular curve {self.coefficients()}")
        self.order = order
        self.infinity = Point(self, None, None)

    # -- invariants -------------------------------------------------------------

    def coefficients(self):
        return [self.a1, self.a2, self.a3, self.a4, self.a6]

    def discriminant(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def is_short(self) -> bool:
        return not (self.a1 or self.a2 or self.a3)

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def trace(self):
        if self.order is None:
            return None
        return self.q + 1 - self.order

    def order_over(self, k: int) -> int:
        """#E(F_{q^k}) from the trace recurrence; needs ``order``."""
        if self.order is None:
            self.order = len(self.enumerate_points())
        return order_over_extension(self.trace, self.q, k)

    def __eq__(self, other):
        return isinstance(other, Curve) and self.field == other.field and \
            self.coefficients() == other.coefficients()

    def __hash__(self):
        return hash((self.field, tuple(c.coeffs for c in self.coefficients())))

    def __repr__(self):
        return f"Curve({self.field}, {self.coefficients()})"

    def descriptor(self) -> dict:
        desc = {"field": self.field.descriptor(), "a": [int(c) if c.in_prime_field() and self.field.k == 1
                                                        else c.to_list() for c in self.coefficients()]}
        if self.order is not None:
            desc["order"] = self.order
        return desc

    @classmethod
    def from_descriptor(cls, desc: dict) -> "Curve":
        field = Field.from_descriptor(desc["field"])
        order = desc.get("order")
        return cls(field, *[field(c) if isinstance(c, list) else int(c) for c in desc["a"]],
                   order=int(order) if order is not None else None)

    # -- equation -----------------------------------------------------------------

    def rhs(self, x):
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def contains(self, x, y) -> bool:
        return y * y + (self.a1 * x + self.a3) * y == self.rhs(x)

    def point(self, x, y, field: Field = None) -> "Point":
        if field is not None:
            x, y = field(x), field(y)
        elif not isinstance(x, FieldElement) or not isinstance(y, FieldElement):
            x, y = self.field(x), self.field(y)
        if x.field != y.field:
            if x.field.contains_prime_field_of(y.field):
                y = x.field(y)
            elif y.field.contains_prime_field_of(x.field):
                x = y.field(x)
            else:
                raise FieldMismatch("coordinates in different fields")
        if not self.contains(x, y):
            raise NotOnCurve(f"({x}, {y}) is not on {self}")
        return Point(self, x, y)

    def lift_x(self, x):
        """Both points with X-coordinate x (sorted), or [] if none."""
        b = self.a1 * x + self.a3
        disc = b * b + 4 * self.rhs(x)
        try:
            s = disc.sqrt()
        except NoRoot:
            return []
        inv2 = x.field(2).inverse()
        ys = {(-b + s) * inv2, (-b - s) * inv2}
        return [Point(self, x, y) for y in sorted(ys, key=lambda e: e.coeffs)]

    def enumerate_points(self, field: Field = None):
        """All points of E(field), infinity first, then by X index and Y."""
        field = field or self.field
        if field.order > ENUMERATION_LIMIT:
            raise FieldTooLarge(f"{field} has more than 2^20 elements")
        pts = [self.infinity]
        for x in field.elements():
            pts.extend(self.lift_x(x))
        return pts

    def random_point(self, field: Field = None, rng=None) -> "Point":
        field = field or self.field
        rng = ensure(rng, "random_point")
        while True:
            cands = self.lift_x(field.random(rng))
            if cands:
                return rng.choice(cands)

    # -- group law ------------------------------------------------------------------

    def _check(self, P):
        if P.curve is not self and P.curve != self:
            raise CurveMismatch("point lies on a different curve")

    def neg(self, P: "Point") -> "Point":
        if P.is_infinity:
            return P
        return Point(self, P.x, -P.y - self.a1 * P.x - self.a3)

    def _slope(self, P, Q):
        """(lambda, nu) of the line through P and Q, or None if it is vertical."""
        if P.x == Q.x:
            if P.y != Q.y:
                return None
            den = 2 * P.y + self.a1 * P.x + self.a3
            if not den:
                return None
            num = 3 * P.x * P.x + 2 * self.a2 * P.x + self.a4 - self.a1 * P.y
            lam = num / den
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        return lam, P.y - lam * P.x

    def _third(self, P, Q, lam, nu):
        x3 = lam * lam + self.a1 * lam - self.a2 - P.x - Q.x
        y3 = -(lam + self.a1) * x3 - nu - self.a3
        return Point(self, x3, y3)

    def add_points(self, P: "Point", Q: "Point") -> "Point":
        self._check(P)
        self._check(Q)
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        sl = self._slope(P, Q)
        if sl is None:
            return self.infinity
        return self._third(P, Q, *sl)

    def add(self, P: "Point", Q: "Point"):
        """(P + Q, l, v) with div(l / v) = [P] + [Q] - [P+Q] - [O]."""
        self._check(P)
        self._check(Q)
        if P.is_infinity:
            return Q, Line.ONE, Line.ONE
        if Q.is_infinity:
            return P, Line.ONE, Line.ONE
        sl = self._slope(P, Q)
        if sl is None:
            return self.infinity, Line.vertical(P, self.neg(P)), Line.ONE
        lam, nu = sl
        R = self._third(P, Q, lam, nu)
        negR = self.neg(R)
        return R, Line.chord(lam, nu, (P, Q, negR)), Line.vertical(R, negR)

    def scalar_mul(self, n: int, P: "Point") -> "Point":
        if n < 0:
            return self.scalar_mul(-n, self.neg(P))
        result = self.infinity
        for bit in bin(n)[2:] if n else "":
            result = self.add_points(result, result)
            if bit == "1":
                result = self.add_points(result, P)
        return result

    # -- Frobenius, trace, orders --------------------------------------------------

    def frobenius(self, P: "Point", i: int = 1) -> "Point":
        """Apply (x, y) -> (x^q, y^q) i times, q = #field."""
        if P.is_infinity or i == 0:
            return P
        if self.field.k == 1:
            return Point(self, P.x.frobenius(i), P.y.frobenius(i))
        e = self.q ** i
        return Point(self, P.x ** e, P.y ** e)

    def trace_map(self, P: "Point", k: int) -> "Point":
        acc = self.infinity
        conj = P
        for _ in range(k):
            acc = self.add_points(acc, conj)
            conj = self.frobenius(conj)
        return acc

    def order_of(self, P: "Point", multiple: int) -> int:
        """Exact order of P given some N with N*P = O."""
        if not self.scalar_mul(multiple, P).is_infinity:
            raise ValueError("multiple does not annihilate the point")
        n = multiple
        for prime in factor(multiple):
            while n % prime == 0 and self.scalar_mul(n // prime, P).is_infinity:
                n //= prime
        return n

    def group_structure(self, field: Field, rng=None):
        """(r1, r2) with E(field) = Z/r1 x Z/r2, r1 | r2, by sampling point orders."""
        k = field.k // self.field.k
        N = self.order_over(k)
        rng = ensure(rng, "group_structure")
        exp = 1
        for attempt in range(200):
            P = self.random_point(field, rng)
            o = self.order_of(P, N)
            exp = exp * o // gcd(exp, o)
            r1 = N // exp
            if attempt >= 20 and exp % r1 == 0 and (field.order - 1) % r1 == 0:
                return r1, exp
        raise RuntimeError("could not determine group structure")

    # -- twists and distortion -------------------------------------------------------

    def distortion(self, P: "Point", field: Field = None) -> "Point":
        """(-x, iy) on Y^2 = X^3 + aX with p = 3 mod 4, (zeta3 x, y) on Y^2 = X^3 + b, p = 2 mod 3."""
        kind = distortion_kind(self)
        if kind is None:
            raise UnsupportedCurve("no distortion map for this curve")
        if P.is_infinity:
            return P
        field = field or make_field(self.field.p, 2)
        if kind == "i":
            i = field(-1).sqrt()
            return Point(self, -field(P.x), i * field(P.y))
        zeta = (field(-1) + field(-3).sqrt()) / 2
        return Point(self, zeta * field(P.x), field(P.y))


def distortion_kind(E: Curve):
    p = E.field.p
    if E.field.k != 1 or not E.is_short():
        return None
    if not E.a6 and E.a4 and p % 4 == 3:
        return "i"
    if not E.a4 and E.a6 and p % 3 == 2:
        return "zeta"
    return None


class Point:
    __slots__ = ("curve", "x", "y")

    def __init__(self, curve, x, y):
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def field(self):
        return None if self.x is None else self.x.field

    def lift(self, field: Field) -> "Point":
        if self.is_infinity:
            return self
        return Point(self.curve, field(self.x), field(self.y))

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if self.x is None or other.x is None:
            return self.x is None and other.x is None
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.x is None:
            return hash("O")
        return hash((self.x, self.y))

    def __neg__(self):
        return self.curve.neg(self)

    def __add__(self, other):
        return self.curve.add_points(self, other)

    def __sub__(self, other):
        return self.curve.add_points(self, self.curve.neg(other))

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return self.curve.scalar_mul(n, self)

    __rmul__ = __mul__

    def sort_key(self):
        if self.x is None:
            return (0,)
        return (1, self.x.coeffs, self.y.coeffs)

    def __repr__(self):
        if self.x is None:
            return "O"
        return f"({self.x}, {self.y})"

    def to_json(self):
        if self.x is None:
            return "infinity"
        return {"x": self.x.to_list(), "y": self.y.to_list()}


def point_from_json(curve: Curve, data, field: Field = None) -> Point:
    if data == "infinity" or data is None:
        return curve.infinity
    field = field or curve.field
    return curve.point(field(data["x"]), field(data["y"]))


class Line:
    """A monic line function: the constant 1, X - x0, or Y - lam X - nu.

    ``zeros`` lists the affine zeros with multiplicity; the pole is at O of order
    len(zeros).
    """

    __slots__ = ("kind", "x0", "lam", "nu", "zeros")

    def __init__(self, kind, x0=None, lam=None, nu=None, zeros=()):
        self.kind = kind
        self.x0 = x0
        self.lam = lam
        self.nu = nu
        self.zeros = tuple(zeros)

    @staticmethod
    def vertical(R: Point, negR: Point) -> "Line":
        return Line("vertical", x0=R.x, zeros=(R, negR))

    @staticmethod
    def chord(lam, nu, zeros) -> "Line":
        return Line("chord", lam=lam, nu=nu, zeros=zeros)

    @property
    def is_one(self):
        return self.kind == "one"

    def pole_order(self) -> int:
        return len(self.zeros)

    def key(self):
        if self.kind == "vertical":
            return ("v", self.x0)
        if self.kind == "chord":
            return ("l", self.lam, self.nu)
        return ("1",)

    def __eq__(self, other):
        return isinstance(other, Line) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def value(self, x, y):
        if self.kind == "vertical":
            return x - self.x0
        if self.kind == "chord":
            return y - self.lam * x - self.nu
        return 1

    def __call__(self, P: Point):
        if P.is_infinity:
            if self.kind == "one":
                return 1
            raise ZeroDivisionError("line has a pole at O")
        return self.value(P.x, P.y)

    def __repr__(self):
        if self.kind == "vertical":
            return f"X - {self.x0}"
        if self.kind == "chord":
            return f"Y - {self.lam}*X - {self.nu}"
        return "1"


Line.ONE = Line("one")


def make_curve(field: Field, a1=0, a2=0, a3=0, a4=0, a6=0, order=None) -> Curve:
    return Curve(field, a1, a2, a3, a4, a6, order=order)


# -- twists -------------------------------------------------------------------------

_TWIST_M = {2: 2, 3: 6, 4: 4, 6: 6}


class TwistData:
    """A degree-d twist E' of E with psi: E' -> E, (x, y) -> (x / u^2, y / u^3)."""

    def __init__(self, E: Curve, d: int, D, curve_prime: Curve, psi_field: Field, u, which: int):
        self.E = E
        self.d = d
        self.D = D
        self.curve_prime = curve_prime
        self.psi_field = psi_field
        self.u = u
        self.which = which
        self.scale_x = (u * u).inverse()
        self.scale_y = (u * u * u).inverse()

    def psi(self, P: Point) -> Point:
        if P.is_infinity:
            return self.E.infinity
        f = self.psi_field
        return Point(self.E, f(P.x) * self.scale_x, f(P.y) * self.scale_y)

    def psi_inverse(self, P: Point) -> Point:
        """Map back to E' (coordinates stay in psi_field)."""
        if P.is_infinity:
            return self.curve_prime.infinity
        f = self.psi_field
        u = self.u
        return Point(self.curve_prime, f(P.x) * u * u, f(P.y) * u * u * u)

    def __repr__(self):
        return f"TwistData(d={self.d}, D={self.D}, E'={self.curve_prime})"


def twist_classes(E: Curve, d: int):
    """(key, D) per twist class of degree d, D the first valid element in enumeration order."""
    if d not in _TWIST_M:
        raise UnsupportedShape(f"unsupported twist degree {d}")
    F = E.field
    if F.p < 5 or not E.is_short():
        raise UnsupportedShape("twists need a short Weierstrass curve in characteristic >= 5")
    if d == 4 and (E.a6 or F.order % 4 != 1):
        raise UnsupportedShape("quartic twists need Y^2 = X^3 + aX and q = 1 mod 4")
    if d in (3, 6) and (E.a4 or F.order % 3 != 1):
        raise UnsupportedShape("sextic/cubic twists need Y^2 = X^3 + b and q = 1 mod 3")
    m = _TWIST_M[d]
    if (F.order - 1) % m:
        raise BadResidueStructure(f"q - 1 is not divisible by {m}")
    e = (F.order - 1) // m
    classes = []
    seen = set()
    for i in range(2, F.order):
        D = F.element(i)
        key = D ** e
        if key in seen:
            continue
        seen.add(key)
        try:
            order = key.unity_order(m)
        except Exception:
            continue
        if order == d:
            classes.append((key, D))
        if len(seen) == m:
            break
    if not classes:
        raise BadResidueStructure(f"no twist coefficient of degree {d}")
    return classes


def make_twist(E: Curve, d: int, which: int = 0, field: Field = None, rng=None) -> TwistData:
    """Degree-d twist; ``which`` selects the class (order of first appearance)."""
    classes = twist_classes(E, d)
    if not 0 <= which < len(classes):
        raise BadResidueStructure(f"twist class {which} out of range ({len(classes)} classes)")
    D = classes[which][1]
    if d == 2:
        cp = Curve(E.field, a4=D * D * E.a4, a6=D ** 3 * E.a6)
    elif d == 4:
        cp = Curve(E.field, a4=D * E.a4)
    else:
        cp = Curve(E.field, a6=D * E.a6)
    psi_field = field or make_field(E.field.p, d * E.field.k)
    u = psi_field(D).nth_root(_TWIST_M[d])
    tw = TwistData(E, d, D, cp, psi_field, u, which)
    # sanity: psi maps sample points of E' onto E
    rng = ensure(rng, "make_twist")
    for _ in range(4):
        P = cp.random_point(rng=rng)
        img = tw.psi(P)
        if not E.contains(img.x, img.y):
            raise BadResidueStructure("psi does not map E' into E")
    return tw


# -- hashing --------------------------------------------------------------------------

def _digest_int(tag: bytes, msg: bytes, counter: int, j: int = 0) -> int:
    h = hashlib.sha256(tag + b"|" + counter.to_bytes(2, "big") + j.to_bytes(2, "big") + b"|" + msg)
    return int.from_bytes(h.digest(), "big")


def hash_to_subgroup(msg: bytes, target: str, ctx) -> Point:
    """Try-and-increment hash into G1 (cofactor clearing) or G2 (trace-zero projection)."""
    if isinstance(msg, str):
        msg = msg.encode()
    E = ctx.E
    if target == "G1":
        F = E.field
        for counter in range(256):
            x = F(_digest_int(b"ecpairing-G1", msg, counter) % F.p)
            pts = E.lift_x(x)
            if not pts:
                continue
            P = pts[(_digest_int(b"ecpairing-G1-sign", msg, counter) & 1) % len(pts)]
            H = E.scalar_mul(ctx.h1, P)
            if not H.is_infinity:
                return H
        raise HashFailure("no G1 point after 256 counters")
    if target == "G2":
        L = ctx.L
        for counter in range(256):
            x = L([_digest_int(b"ecpairing-G2", msg, counter, j) % L.p for j in range(L.k)])
            pts = E.lift_x(x)
            if not pts:
                continue
            P = pts[(_digest_int(b"ecpairing-G2-sign", msg, counter) & 1) % len(pts)]
            R = project_to_g2(ctx, P)
            if not R.is_infinity:
                return R
        raise HashFailure("no G2 point after 256 counters")
    raise ValueError("target must be G1 or G2")


def clear_to_r_torsion(E: Curve, P: Point, N: int, r: int) -> Point:
    """A point of order r in <P> (via the r-part of N), or O."""
    c = N
    while c % r == 0:
        c //= r
    R = E.scalar_mul(c, P)
    if R.is_infinity:
        return R
    while True:
        S = E.scalar_mul(r, R)
        if S.is_infinity:
            return R
        R = S


def project_to_g2(ctx, P: Point) -> Point:
    E = ctx.E
    R = clear_to_r_torsion(E, P, ctx.order_L, ctx.r)
    if R.is_infinity:
        return R
    return E.add_points(E.scalar_mul(ctx.k, R), E.neg(E.trace_map(R, ctx.k)))
