"""Divisors and factored rational functions on an elliptic curve.

Functions are products of lines with integer exponents times a constant; they are never
expanded. Valuations and leading coefficients at a point come from short local power
series of the coordinates in a canonical local parameter: X - x_P at ordinary points,
Y - y_P where the curve has a vertical tangent, and X/Y at O.
"""

from .curve import Curve, Line, Point, point_from_json
from .errors import CurveMismatch, NotPrincipal, SupportCollision, ZeroFunction

_PREC = 4  # a line vanishes to order at most 3 at an affine point


class Divisor:
    """Finite formal sum of points; zero coefficients are dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        for P, n in (coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())):
            if n:
                self.coeffs[P] = self.coeffs.get(P, 0) + n
                if not self.coeffs[P]:
                    del self.coeffs[P]

    @classmethod
    def point(cls, P, n=1):
        return cls({P: n})

    def __add__(self, other):
        out = dict(self.coeffs)
        for P, n in other.coeffs.items():
            out[P] = out.get(P, 0) + n
        return Divisor({P: n for P, n in out.items() if n})

    def __neg__(self):
        return Divisor({P: -n for P, n in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c: int):
        return Divisor({P: c * n for P, n in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def degree(self) -> int:
        return sum(self.coeffs.values())

    def support(self):
        return sorted(self.coeffs, key=lambda P: P.sort_key())

    def items(self):
        return [(P, self.coeffs[P]) for P in self.support()]

    def positive(self):
        return Divisor({P: n for P, n in self.coeffs.items() if n > 0})

    def negative(self):
        return Divisor({P: -n for P, n in self.coeffs.items() if n < 0})

    def sum_on_curve(self, curve: Curve = None) -> Point:
        curve = curve or self._curve()
        acc = curve.infinity
        for P, n in self.coeffs.items():
            if P.curve != curve:
                raise CurveMismatch("divisor mixes curves")
            acc = curve.add_points(acc, curve.scalar_mul(n, P))
        return acc

    def translate(self, R: Point) -> "Divisor":
        return Divisor([(P + R, n) for P, n in self.coeffs.items()])

    def _curve(self):
        for P in self.coeffs:
            return P.curve
        raise ValueError("empty divisor has no curve")

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{n}[{P}]" for P, n in self.items())

    def to_json(self):
        return [[P.to_json(), n] for P, n in self.items()]

    @classmethod
    def from_json(cls, curve, data, field=None):
        return cls([(point_from_json(curve, P, field), int(n)) for P, n in data])


def degree(D: Divisor) -> int:
    return D.degree()


def support(D: Divisor):
    return D.support()


def sum_on_curve(D: Divisor, curve: Curve = None) -> Point:
    return D.sum_on_curve(curve)


def is_principal(D: Divisor, curve: Curve = None) -> bool:
    if not D:
        return True
    return D.degree() == 0 and D.sum_on_curve(curve).is_infinity


class LineProduct:
    """const * prod(line ** e) with the lines kept as a dict."""

    __slots__ = ("factors", "const")

    def __init__(self, factors=None, const=1):
        self.factors = {}
        for line, e in (factors.items() if isinstance(factors, dict) else (factors or ())):
            if e and not line.is_one:
                self.factors[line] = self.factors.get(line, 0) + e
                if not self.factors[line]:
                    del self.factors[line]
        self.const = const

    @classmethod
    def one(cls):
        return cls()

    @classmethod
    def line(cls, line: Line, e: int = 1):
        return cls({line: e})

    def __mul__(self, other):
        if not isinstance(other, LineProduct):
            return LineProduct(self.factors, _mul(self.const, other))
        out = dict(self.factors)
        for line, e in other.factors.items():
            out[line] = out.get(line, 0) + e
        return LineProduct(out, _mul(self.const, other.const))

    __rmul__ = __mul__

    def inverse(self):
        if not self.const:
            raise ZeroFunction("inverse of the zero function")
        return LineProduct({l: -e for l, e in self.factors.items()}, _inv(self.const))

    def __truediv__(self, other):
        if not isinstance(other, LineProduct):
            return LineProduct(self.factors, _mul(self.const, _inv(other)))
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return LineProduct({l: n * e for l, e in self.factors.items()}, _pow(self.const, n))

    def __eq__(self, other):
        return isinstance(other, LineProduct) and self.factors == other.factors and \
            self.const == other.const

    def is_constant(self) -> bool:
        return not self.factors

    def lines(self):
        return list(self.factors.items())

    def num_factors(self) -> int:
        return len(self.factors)

    def dump(self) -> str:
        rows = [f"{e:+d}: {line!r}" for line, e in sorted(self.factors.items(), key=lambda t: repr(t[0]))]
        rows.append(f"const: {self.const}")
        return "\n".join(rows)

    def __repr__(self):
        return f"LineProduct({len(self.factors)} lines, const={self.const})"


def _mul(a, b):
    if isinstance(a, int) and a == 1:
        return b
    if isinstance(b, int) and b == 1:
        return a
    return a * b


def _inv(a):
    if isinstance(a, int):
        if a in (1, -1):
            return a
        raise ZeroDivisionError("integer constants other than +-1 cannot be inverted")
    return a.inverse()


def _pow(a, e):
    if isinstance(a, int) and a in (1, -1):
        return a ** abs(e)
    return a ** e


# -- local expansions --------------------------------------------------------------------

def _ser_mul(a, b):
    out = [0] * _PREC
    for i, ai in enumerate(a):
        if ai:
            for j in range(_PREC - i):
                if j < len(b) and b[j]:
                    out[i + j] = out[i + j] + ai * b[j]
    return out


def _ser_add(*terms):
    out = [0] * _PREC
    for t in terms:
        for i, c in enumerate(t):
            out[i] = out[i] + c
    return out


def _ser_scale(a, c):
    return [c * x for x in a]


def _curve_eq_series(E, X, Y):
    """F(X, Y) = Y^2 + a1 XY + a3 Y - X^3 - a2 X^2 - a4 X - a6 on truncated series."""
    X2 = _ser_mul(X, X)
    return _ser_add(_ser_mul(Y, Y), _ser_scale(_ser_mul(X, Y), E.a1), _ser_scale(Y, E.a3),
                    _ser_scale(_ser_mul(X2, X), -1), _ser_scale(X2, -E.a2),
                    _ser_scale(X, -E.a4), [-E.a6])


def local_expansion(P: Point):
    """(X(u), Y(u)) as truncated series in the canonical local parameter u at affine P."""
    E = P.curve
    x0, y0 = P.x, P.y
    fy = 2 * y0 + E.a1 * x0 + E.a3
    zero = x0 - x0
    if fy:
        X = [x0, x0.field.one, zero, zero]
        Y = [y0, zero, zero, zero]
        for n in range(1, _PREC):
            c = _curve_eq_series(E, X, Y)[n]
            Y[n] = -c / fy
        return X, Y
    fx = E.a1 * y0 - 3 * x0 * x0 - 2 * E.a2 * x0 - E.a4
    X = [x0, zero, zero, zero]
    Y = [y0, y0.field.one, zero, zero]
    for n in range(1, _PREC):
        c = _curve_eq_series(E, X, Y)[n]
        X[n] = -c / fx
    return X, Y


def line_local(line: Line, P: Point):
    """(ord_P(line), leading coefficient at P)."""
    if line.is_one:
        return 0, 1
    if P.is_infinity:
        return -line.pole_order(), 1
    val = line.value(P.x, P.y)
    if val:
        return 0, val
    X, Y = local_expansion(P)
    if line.kind == "vertical":
        ser = _ser_add(X, [-line.x0])
    else:
        ser = _ser_add(Y, _ser_scale(X, -line.lam), [-line.nu])
    for i, c in enumerate(ser):
        if c:
            return i, c
    raise AssertionError("line vanishes to order >= 4; local expansion too short")


def _check_nonzero(f: LineProduct):
    if not f.const:
        raise ZeroFunction("the zero function has no valuation")


def ord_at(f, P: Point) -> int:
    if isinstance(f, Line):
        f = LineProduct.line(f)
    _check_nonzero(f)
    return sum(e * line_local(line, P)[0] for line, e in f.factors.items())


def lc_at(f, P: Point):
    """Leading coefficient of f at P in the canonical local parameter."""
    if isinstance(f, Line):
        f = LineProduct.line(f)
    _check_nonzero(f)
    acc = f.const
    for line, e in f.factors.items():
        acc = _mul(acc, _pow(line_local(line, P)[1], e))
    return acc


def local_data(f, P: Point):
    """(ord_P f, lc_P f) in a single pass."""
    if isinstance(f, Line):
        f = LineProduct.line(f)
    _check_nonzero(f)
    o = 0
    acc = f.const
    for line, e in f.factors.items():
        ol, c = line_local(line, P)
        o += e * ol
        acc = _mul(acc, _pow(c, e))
    return o, acc


def lc_at_infinity(f):
    if isinstance(f, Line):
        f = LineProduct.line(f)
    _check_nonzero(f)
    return f.const


def make_monic(f: LineProduct) -> LineProduct:
    return LineProduct(f.factors, 1)


def divisor_of(f) -> Divisor:
    """div(f) read off the stored zeros of each line."""
    if isinstance(f, Line):
        f = LineProduct.line(f)
    _check_nonzero(f)
    out = {}
    for line, e in f.factors.items():
        for Z in line.zeros:
            out[Z] = out.get(Z, 0) + e
        if line.zeros:
            O = line.zeros[0].curve.infinity
            out[O] = out.get(O, 0) - e * len(line.zeros)
    return Divisor({P: n for P, n in out.items() if n})


def evaluate(f, at):
    """f at a point or at a divisor (product of f(P)^n_P).

    At a point where the total valuation is zero the value is the product of the local
    leading coefficients, so cancelling zeros and poles of individual lines are handled.
    At O the normalized value lc(f) is used whatever the order, so for monic f a point of
    the divisor at O contributes 1.
    """
    if isinstance(f, Line):
        f = LineProduct.line(f)
    if isinstance(at, Point):
        o, c = local_data(f, at)
        if o and not at.is_infinity:
            raise SupportCollision(f"function has {'zero' if o > 0 else 'pole'} of order {abs(o)} at {at}",
                                   point=at)
        return c
    acc = 1
    for P, n in at.items():
        acc = _mul(acc, _pow(evaluate(f, P), n))
    return acc


def tame_symbol(f, g, P: Point):
    """<f, g>_P = (-1)^(ab) lc_P(f)^b / lc_P(g)^a with a = ord_P f, b = ord_P g."""
    a, cf = local_data(f, P)
    b, cg = local_data(g, P)
    val = _mul(_pow(cf, b), _inv(_pow(cg, a)))
    return -val if (a * b) % 2 else val


def _is_one(v):
    return v == 1


def reciprocity_points(f, g):
    pts = set(divisor_of(f).coeffs) | set(divisor_of(g).coeffs)
    for line in list(f.factors) + list(g.factors):
        if line.zeros:
            pts.add(line.zeros[0].curve.infinity)
    return sorted(pts, key=lambda P: P.sort_key())


def reciprocity_product(f, g):
    acc = 1
    for P in reciprocity_points(f, g):
        acc = _mul(acc, tame_symbol(f, g, P))
    return acc


def weil_reciprocity_check(f, g) -> bool:
    """prod_P <f, g>_P == 1, plus f(div g) == g(div f) when supports are disjoint."""
    if not _is_one(reciprocity_product(f, g)):
        return False
    df, dg = divisor_of(f), divisor_of(g)
    if df and dg and not (set(df.coeffs) & set(dg.coeffs)):
        return evaluate(f, dg) == evaluate(g, df)
    return True


def function_from_divisor(D: Divisor, curve: Curve = None) -> LineProduct:
    """Monic factored f with div(f) = D."""
    from .miller import miller

    if not D:
        return LineProduct.one()
    curve = curve or D._curve()
    if not is_principal(D, curve):
        raise NotPrincipal(f"{D} is not principal")
    f = LineProduct.one()
    S = curve.infinity
    for P, n in D.items():
        if P.is_infinity:
            continue
        res = miller(n, P)
        f = f * res.function
        S, l, v = curve.add(S, res.endpoint)
        f = f * LineProduct({l: 1, v: -1})
    f = make_monic(f)
    if divisor_of(f) != D:
        raise AssertionError("function_from_divisor produced the wrong divisor")
    return f
