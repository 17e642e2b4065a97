"""Root lattices, exact LLL, and polynomial curve families (Freeman k = 10)."""

from fractions import Fraction

from .curve import make_curve
from .errors import CurveSearchFailed, InvalidParameters, NoInstanceInRange, NotRootOfUnity, RankDeficient
from .fields import make_field
from .ntheory import euler_phi, is_prime, poly_eval
from .rng import ensure

DELTA = Fraction(99, 100)


class RootLattice:
    """Integer lattice of polynomials t (constant term first) with r | t(y)."""

    def __init__(self, r, y, basis):
        self.r = r
        self.y = y
        self.basis = [list(row) for row in basis]

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, t) -> bool:
        return poly_eval(t, self.y) % self.r == 0

    def reduced(self):
        return lll_reduce(self.basis)

    def shortest(self):
        return shortest_vector(self.basis)

    def __repr__(self):
        return f"RootLattice(r={self.r}, y={self.y}, dim={self.dim})"


def build_lattice(r: int, y: int, k: int = None, dim: int = None) -> RootLattice:
    """Rows r e_0 and e_i - (y^i mod r) e_0, i = 1..dim-1, with dim = phi(k)."""
    if k is not None:
        if pow(y, k, r) != 1:
            raise NotRootOfUnity(f"{y} is not a {k}-th root of unity modulo {r}")
        dim = dim or euler_phi(k)
    if not dim or dim < 1:
        raise InvalidParameters("lattice dimension must be positive")
    rows = [[r] + [0] * (dim - 1)]
    for i in range(1, dim):
        row = [0] * dim
        row[0] = -pow(y, i, r)
        row[i] = 1
        rows.append(row)
    return RootLattice(r, y, rows)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _gram_schmidt(b):
    n = len(b)
    bstar = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms = []
    for i in range(n):
        v = [Fraction(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = _dot(b[i], bstar[j]) / norms[j]
            v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(_dot(v, v))
    return bstar, mu, norms


def lll_reduce(basis, delta=DELTA):
    """LLL with exact rational Gram-Schmidt (textbook form; dimensions are tiny)."""
    b = [list(map(int, row)) for row in basis]
    n = len(b)
    if n == 0:
        return []
    bstar, mu, norms = _gram_schmidt(b)
    if any(nm == 0 for nm in norms):
        raise RankDeficient("basis vectors are linearly dependent")
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bstar, mu, norms = _gram_schmidt(b)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu, norms = _gram_schmidt(b)
            k = max(k - 1, 1)
    return b


def lovasz_ok(basis, delta=DELTA) -> bool:
    """Size-reduction and Lovasz conditions, checked after the fact."""
    _, mu, norms = _gram_schmidt([list(r) for r in basis])
    n = len(basis)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    return all(norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1] for i in range(1, n))


def _normalize(v):
    lead = next((x for x in v if x), 0)
    return [-x for x in v] if lead < 0 else list(v)


def shortest_vector(basis):
    """First row of the reduced basis; ties in norm among reduced rows broken by sign
    normalization (leading nonzero entry positive) and then lexicographically."""
    red = lll_reduce(basis)
    best = min(_dot(v, v) for v in red)
    cands = sorted(_normalize(v) for v in red if _dot(v, v) == best)
    return cands[0]


# -- curve families ---------------------------------------------------------------------

class CurveFamily:
    """p(X), u(X), r(X) with integer coefficients, constant term first."""

    def __init__(self, k, p, u, r, name=None):
        self.k = k
        self.p = list(p)
        self.u = list(u)
        self.r = list(r)
        self.name = name

    def at(self, x0):
        return poly_eval(self.p, x0), poly_eval(self.u, x0), poly_eval(self.r, x0)

    def to_json(self):
        return {"k": self.k, "p": self.p, "u": self.u, "r": self.r}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["k"]), data["p"], data["u"], data["r"], data.get("name"))

    def __repr__(self):
        return f"CurveFamily(k={self.k}, p={self.p}, u={self.u}, r={self.r})"


FREEMAN_K10 = CurveFamily(10, [3, 10, 25, 25, 25], [3, 5, 10], [1, 5, 15, 25, 25], name="freeman-k10")


def freeman_t(x0):
    """x0 Y^3 + x0 Y^2 - x0 Y - (x0 + 1), constant term first."""
    return [-(x0 + 1), -x0, x0, x0]


def family_candidates(family: CurveFamily, lo: int, hi: int):
    """x0 in [lo, hi] by increasing |x0| (negative first on ties) with p, r prime and the
    divisibility identities holding."""
    xs = sorted(range(lo, hi + 1), key=lambda x: (abs(x), x))
    for x0 in xs:
        p, u, r = family.at(x0)
        if p < 5 or r < 2 or not is_prime(p) or not is_prime(r):
            continue
        if (p + 1 - u) % r or (pow(p, family.k, r) != 1):
            continue
        yield x0, p, u, r


def find_curve_with_order(p: int, n: int, rng=None, tries: int = 200000):
    """Random Y^2 = X^3 + aX + b over F_p with exactly n points.

    A point P != O with nP = O pins the order when n is the only multiple of ord(P)
    in the Hasse interval; otherwise the candidate is discarded.
    """
    import math

    F = make_field(p)
    rng = ensure(rng, "find_curve_with_order", p, n)
    lo, hi = p + 1 - 2 * math.isqrt(p) - 1, p + 1 + 2 * math.isqrt(p) + 1
    for _ in range(tries):
        a, b = rng.randrange(p), rng.randrange(p)
        if (4 * a ** 3 + 27 * b ** 2) % p == 0:
            continue
        E = make_curve(F, a4=a, a6=b)
        P = E.random_point(rng=rng)
        if P.is_infinity or not E.scalar_mul(n, P).is_infinity:
            continue
        o = E.order_of(P, n)
        if sum(1 for m in range(lo, hi + 1) if m % o == 0) == 1:
            E.order = n
            return E
    raise CurveSearchFailed(f"no curve of order {n} over F_{p} after {tries} tries")


def family_instantiate(family: CurveFamily, lo: int = -64, hi: int = 64, rng=None, max_p: int = 1 << 32):
    """(x0, PairingContext) for the smallest usable |x0| in [lo, hi]."""
    from .pairings import make_context

    for x0, p, u, r in family_candidates(family, lo, hi):
        if p > max_p:
            continue
        n = p + 1 - u
        E = find_curve_with_order(p, n, rng=rng)
        ctx = make_context(E, r, k=family.k, rng=rng, name=f"{family.name or 'family'}-x{x0}")
        ctx.x0 = x0
        return x0, ctx
    raise NoInstanceInRange(f"no x0 in [{lo}, {hi}] gives prime p and r")
