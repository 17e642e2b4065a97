"""Exact arithmetic in F_p and in extensions F_p[w]/(m(w)).

Every field is a single polynomial quotient ring; there are no towers. Elements are
immutable and carry a reference to their parent field.
"""

from functools import lru_cache
from math import gcd

from . import _poly
from .errors import (
    CompositeModulus,
    DivisionByZero,
    FieldMismatch,
    IrreducibleSearchExhausted,
    NoRoot,
    NotARoot,
    ZeroInput,
)
from .ntheory import factor, is_prime

_SEARCH_BOUND = 1_000_000


class Field:
    """The finite field F_p[w]/(modulus) of order p**k."""

    def __init__(self, p: int, k: int, modulus=None, check: bool = True):
        if p < 5 or not is_prime(p):
            raise CompositeModulus(f"{p} is not a prime >= 5")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            if k != 1:
                raise ValueError("a modulus is required for k > 1")
            modulus = (0, 1)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if check and not _poly.is_irreducible(list(modulus), p):
            raise ValueError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p ** k
        # X^k = -(m_0 + ... + m_{k-1} X^{k-1})
        self._tail = tuple((-c) % p for c in modulus[:-1])
        self._roots_cache = {}

    # -- construction of elements -------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            if value.field.k == 1 and value.field.p == self.p:
                return self._from_int(value.coeffs[0])
            raise FieldMismatch(f"cannot coerce element of {value.field} into {self}")
        if isinstance(value, int):
            return self._from_int(value)
        if isinstance(value, (list, tuple)):
            if len(value) > self.k:
                raise ValueError("too many coefficients")
            coeffs = [int(c) % self.p for c in value] + [0] * (self.k - len(value))
            return FieldElement(self, tuple(coeffs))
        raise TypeError(f"cannot build a field element from {type(value).__name__}")

    def _from_int(self, n: int) -> "FieldElement":
        return FieldElement(self, (n % self.p,) + (0,) * (self.k - 1))

    @property
    def zero(self):
        return self._from_int(0)

    @property
    def one(self):
        return self._from_int(1)

    @property
    def gen(self):
        """The class of w; for k = 1 this is the root of the linear modulus."""
        if self.k == 1:
            return self._from_int(-self.modulus[0])
        return self([0, 1])

    def element(self, index: int) -> "FieldElement":
        """Element number ``index`` in the fixed enumeration (base-p digits, constant first)."""
        coeffs = []
        for _ in range(self.k):
            index, c = divmod(index, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))

    def index(self, a: "FieldElement") -> int:
        idx = 0
        for c in reversed(a.coeffs):
            idx = idx * self.p + c
        return idx

    def elements(self):
        for i in range(self.order):
            yield self.element(i)

    def random(self, rng) -> "FieldElement":
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def random_nonzero(self, rng) -> "FieldElement":
        while True:
            a = self.random(rng)
            if a:
                return a

    # -- structure ----------------------------------------------------------

    def contains_prime_field_of(self, other: "Field") -> bool:
        return other.k == 1 and other.p == self.p

    def descriptor(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_descriptor(cls, desc: dict) -> "Field":
        return cls(int(desc["p"]), int(desc["k"]), [int(c) for c in desc["modulus"]])

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.k}"

    # -- internal arithmetic --------------------------------------------------

    def _reduce(self, prod):
        """Reduce a coefficient list of length <= 2k-1 modulo the modulus and p."""
        k, p, tail = self.k, self.p, self._tail
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i] % p
            if c:
                base = i - k
                for j, t in enumerate(tail):
                    if t:
                        prod[base + j] += c * t
        return tuple(c % p for c in prod[:k])

    def _nonresidue(self, ell: int):
        """Deterministic element that is not an ell-th power (first in enumeration order)."""
        key = ("nr", ell)
        if key not in self._roots_cache:
            e = (self.order - 1) // ell
            for i in range(2, self.order):
                z = self.element(i)
                if z and z ** e != self.one:
                    self._roots_cache[key] = z
                    break
        return self._roots_cache[key]


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    # -- coercion -------------------------------------------------------------

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            if self.field.contains_prime_field_of(other.field):
                return self.field(other)
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if isinstance(other, int):
            return self.field._from_int(other)
        return NotImplemented

    def _lift_self(self, other):
        # self lives in a prime field that sits inside other's field
        if isinstance(other, FieldElement) and other.field.contains_prime_field_of(self.field) \
                and other.field != self.field:
            return other.field(self)
        return None

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        lifted = self._lift_self(other)
        if lifted is not None:
            return lifted + other
        o = self._other(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        lifted = self._lift_self(other)
        if lifted is not None:
            return lifted - other
        o = self._other(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        lifted = self._lift_self(other)
        if lifted is not None:
            return lifted * other
        o = self._other(other)
        if o is NotImplemented:
            return o
        f = self.field
        if f.k == 1:
            return FieldElement(f, (self.coeffs[0] * o.coeffs[0] % f.p,))
        a, b = self.coeffs, o.coeffs
        if not any(b[1:]):
            c = b[0]
            return FieldElement(f, tuple(x * c % f.p for x in a))
        if not any(a[1:]):
            c = a[0]
            return FieldElement(f, tuple(x * c % f.p for x in b))
        prod = [0] * (2 * f.k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        return FieldElement(f, f._reduce(prod))

    __rmul__ = __mul__

    def inverse(self):
        f = self.field
        if not self:
            raise DivisionByZero("inverse of zero")
        if f.k == 1:
            return FieldElement(f, (pow(self.coeffs[0], -1, f.p),))
        # extended Euclid in F_p[X] against the modulus
        p = f.p
        r0, r1 = list(f.modulus), _poly.trim(self.coeffs)
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _poly.divmod_(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly.sub(s0, _poly.mul(q, s1, p), p)
        inv_c = pow(r1[0], -1, p)
        s1 = [c * inv_c % p for c in s1]
        return f(s1)

    def __truediv__(self, other):
        lifted = self._lift_self(other)
        if lifted is not None:
            return lifted / other
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        f = self.field
        if f.k == 1:
            return FieldElement(f, (pow(self.coeffs[0], e, f.p),))
        result = f.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == self.field._from_int(other).coeffs
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field == self.field:
            return self.coeffs == other.coeffs
        if self.field.contains_prime_field_of(other.field):
            return self.coeffs == self.field(other).coeffs
        if other.field.contains_prime_field_of(self.field):
            return other.field(self).coeffs == other.coeffs
        return False

    def __hash__(self):
        if any(self.coeffs[1:]):
            return hash((self.field.p, self.coeffs))
        # constants hash alike in F_p and its extensions
        return hash((self.field.p, self.coeffs[0]))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.coeffs[0]}"
        return f"{list(self.coeffs)}"

    def __int__(self):
        if any(self.coeffs[1:]):
            raise ValueError("element is not in the prime field")
        return self.coeffs[0]

    def to_list(self):
        return list(self.coeffs)

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def sort_key(self):
        return self.coeffs

    # -- number theory --------------------------------------------------------

    def frobenius(self, i: int = 1):
        """self ** (p ** i)."""
        f = self.field
        i %= f.k
        return self ** (f.p ** i) if i else self

    def is_square(self) -> bool:
        if not self:
            return True
        return self ** ((self.field.order - 1) // 2) == 1

    def residue_class(self, n: int) -> bool:
        """True iff self is an n-th power in its field."""
        if not self:
            raise ZeroInput("residue test of zero")
        m = self.field.order
        return self ** ((m - 1) // gcd(n, m - 1)) == 1

    def unity_order(self, bound: int) -> int:
        """Smallest d <= bound with self**d = 1."""
        if not self:
            raise ZeroInput("order of zero")
        acc = self
        for d in range(1, bound + 1):
            if acc == 1:
                return d
            acc = acc * self
        raise NotARoot(f"{self} is not a root of unity of order <= {bound}")

    def multiplicative_order(self) -> int:
        if not self:
            raise ZeroInput("order of zero")
        order = self.field.order - 1
        for prime in factor(order):
            while order % prime == 0 and self ** (order // prime) == 1:
                order //= prime
        return order

    def sqrt(self):
        """Square root with the lexicographically smaller coefficient vector."""
        if not self:
            return self
        s = _prime_root(self, 2)
        t = -s
        return s if s.coeffs <= t.coeffs else t

    def nth_root(self, n: int):
        """Some x with x**n = self (deterministic choice); raises NoRoot if none exists."""
        if n < 1:
            raise ValueError("root index must be positive")
        if not self or n == 1:
            return self
        primes = []
        for prime, e in factor(n).items():
            primes.extend([prime] * e)
        found = _root_chain(self, primes)
        if found is None:
            raise NoRoot(f"{self} has no {n}-th root in {self.field}")
        return found


def _roots_of_unity(field, ell):
    """All ell-th roots of unity in ``field`` (ell prime)."""
    key = ("mu", ell)
    if key not in field._roots_cache:
        m = field.order
        if (m - 1) % ell:
            field._roots_cache[key] = [field.one]
        else:
            zeta = field._nonresidue(ell) ** ((m - 1) // ell)
            field._roots_cache[key] = [zeta ** j for j in range(ell)]
    return field._roots_cache[key]


def _root_chain(a, primes):
    if not primes:
        return a
    ell, rest = primes[0], primes[1:]
    try:
        x0 = _prime_root(a, ell)
    except NoRoot:
        return None
    for zeta in _roots_of_unity(a.field, ell):
        found = _root_chain(x0 * zeta, rest)
        if found is not None:
            return found
    return None


def _dlog_prime_power(h, c, ell, s):
    """L with c**L == h, where c generates a cyclic group of order ell**s."""
    gamma = c ** (ell ** (s - 1))
    c_inv = c.inverse()
    L = 0
    for i in range(s):
        probe = (h * c_inv ** L) ** (ell ** (s - 1 - i))
        acc = probe.field.one
        for d in range(ell):
            if acc == probe:
                break
            acc = acc * gamma
        else:
            raise NotARoot("element outside the cyclic subgroup")
        L += d * ell ** i
    return L


def _prime_root(a, ell):
    """An ell-th root of a nonzero a (generalised Tonelli-Shanks)."""
    field = a.field
    m1 = field.order - 1
    s, t = 0, m1
    while t % ell == 0:
        t //= ell
        s += 1
    if s == 0:
        return a ** pow(ell, -1, m1)
    if a ** (m1 // ell) != 1:
        raise NoRoot(f"{a} is not an {ell}-th power")
    u = pow(ell, -1, t) if t > 1 else 0
    x = a ** u
    err = x ** ell / a
    if err == 1:
        return x
    c = field._nonresidue(ell) ** t
    L = _dlog_prime_power(err.inverse(), c, ell, s)
    return x * c ** (L // ell)


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1, seed: int = 0) -> Field:
    """F_{p^k} with the first irreducible monic modulus in the fixed enumeration.

    Candidates are X^k + c_{k-1} X^{k-1} + ... + c_0 with (c_0, ..., c_{k-1}) the base-p
    digits of seed, seed + 1, ...; the same arguments always give the same modulus.
    """
    if p < 5 or not is_prime(p):
        raise CompositeModulus(f"{p} is not a prime >= 5")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k == 1:
        return Field(p, 1, (0, 1), check=False)
    for idx in range(seed, seed + _SEARCH_BOUND):
        coeffs, n = [], idx
        for _ in range(k):
            n, c = divmod(n, p)
            coeffs.append(c)
        if n:
            break
        cand = coeffs + [1]
        if _poly.is_irreducible(cand, p):
            return Field(p, k, cand, check=False)
    raise IrreducibleSearchExhausted(f"no irreducible of degree {k} over F_{p} found (internal error)")


def prime_field(p: int) -> Field:
    return make_field(p, 1)


def embed_field(src: Field, dst: Field):
    """Return (embed, preimage) between src = F_{p^a} and dst = F_{p^b} with a | b.

    ``embed`` maps src elements into dst; ``preimage`` inverts it on the image and raises
    ValueError outside it.
    """
    if src == dst:
        return (lambda x: x), (lambda y: y)
    if src.p != dst.p or dst.k % src.k:
        raise FieldMismatch(f"{src} does not embed into {dst}")
    p = src.p
    if src.k == 1:
        return (lambda x: dst(x)), (lambda y: _prime_preimage(src, y))
    rho = _subfield_root(src, dst)
    basis = [dst.one]
    for _ in range(src.k - 1):
        basis.append(basis[-1] * rho)

    def embed(x):
        acc = dst.zero
        for c, b in zip(x.coeffs, basis):
            if c:
                acc = acc + b * c
        return acc

    matrix = [list(b.coeffs) for b in basis]  # rows: images of w^i

    def preimage(y):
        sol = _solve_mod_p(matrix, list(y.coeffs), p)
        if sol is None:
            raise ValueError("element not in the embedded subfield")
        return src(sol)

    return embed, preimage


def _prime_preimage(src, y):
    if not y.in_prime_field():
        raise ValueError("element not in the prime field")
    return src(y.coeffs[0])


def _subfield_root(src, dst):
    """A root in dst of src's modulus, searched inside the subfield of order |src|."""
    m_src, m_dst = src.order, dst.order
    exp = (m_dst - 1) // (m_src - 1)
    mod = src.modulus
    for i in range(1, dst.order):
        g = dst.element(i) ** exp
        if not g or g.multiplicative_order() != m_src - 1:
            continue
        acc = g
        for _ in range(m_src - 1):
            val = dst.zero
            for c in reversed(mod):
                val = val * acc + c
            if not val:
                return acc
            acc = acc * g
    raise FieldMismatch("no embedding found")


def _solve_mod_p(rows, target, p):
    """Solve sum_i x_i * rows[i] == target over F_p (rows may be overdetermined)."""
    n = len(rows)
    m = len(target)
    # augmented system: columns are unknowns, one equation per coordinate
    aug = [[rows[i][j] % p for i in range(n)] + [target[j] % p] for j in range(m)]
    piv_cols = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][col], -1, p)
        aug[r] = [v * inv % p for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[r])]
        piv_cols.append(col)
        r += 1
    if any(aug[i][n] for i in range(r, m)):
        return None
    sol = [0] * n
    for i, col in enumerate(piv_cols):
        sol[col] = aug[i][n]
    return sol
