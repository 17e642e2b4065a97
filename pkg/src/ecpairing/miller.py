"""Addition-negation chains and Miller's algorithm.

f_{n,P} has divisor n[P] - [nP] - (n-1)[O]. The loop either keeps the numerator and
denominator as factored line products or evaluates them on the fly at a divisor, keeping
two accumulators and dividing once at the end.
"""

from .curve import Line, Point
from .divisors import Divisor, LineProduct
from .errors import RandomizationExhausted, SupportCollision, UnreachableTarget
from .rng import ensure

MAX_TRIES = 64


class Chain:
    """Entries (value, rule) with rule ('init',), ('neg', j) or ('add', j, k); 1-based refs."""

    def __init__(self, entries=None):
        self.entries = list(entries or [(1, ("init",))])
        self._index = {}
        for i, (v, _) in enumerate(self.entries, 1):
            self._index.setdefault(v, i)

    @property
    def values(self):
        return [v for v, _ in self.entries]

    def __len__(self):
        return len(self.entries)

    def index_of(self, value):
        return self._index.get(value)

    def __contains__(self, value):
        return value in self._index

    def _push(self, value, rule):
        if value in self._index:
            return self._index[value]
        self.entries.append((value, rule))
        self._index[value] = len(self.entries)
        return len(self.entries)

    def add(self, j, k):
        return self._push(self.entries[j - 1][0] + self.entries[k - 1][0], ("add", j, k))

    def neg(self, j):
        return self._push(-self.entries[j - 1][0], ("neg", j))

    def validate(self, targets=None, forbidden=None) -> bool:
        if not self.entries or self.entries[0] != (1, ("init",)):
            return False
        for i, (v, rule) in enumerate(self.entries, 1):
            if i == 1:
                continue
            if rule[0] == "neg":
                j = rule[1]
                if not 1 <= j < i or v != -self.entries[j - 1][0]:
                    return False
            elif rule[0] == "add":
                j, k = rule[1], rule[2]
                if not (1 <= j < i and 1 <= k < i):
                    return False
                if v != self.entries[j - 1][0] + self.entries[k - 1][0]:
                    return False
            else:
                return False
            if forbidden is not None and _is_forbidden(forbidden, v):
                return False
        if targets is not None and not all(t in self for t in targets):
            return False
        return True

    def dump(self) -> str:
        rows = []
        for i, (v, rule) in enumerate(self.entries, 1):
            if rule[0] == "init":
                rows.append(f"{i}: {v} = init")
            elif rule[0] == "neg":
                rows.append(f"{i}: {v} = neg {rule[1]}")
            else:
                rows.append(f"{i}: {v} = add {rule[1]} {rule[2]}")
        return "\n".join(rows)

    @classmethod
    def parse(cls, text: str) -> "Chain":
        entries = []
        for line in text.strip().splitlines():
            head, rule = line.split("=", 1)
            _, value = head.split(":")
            parts = rule.split()
            if parts[0] == "init":
                r = ("init",)
            elif parts[0] == "neg":
                r = ("neg", int(parts[1]))
            else:
                r = ("add", int(parts[1]), int(parts[2]))
            entries.append((int(value), r))
        chain = cls(entries)
        if not chain.validate():
            raise ValueError("chain does not replay")
        return chain

    def __repr__(self):
        return f"Chain({self.values})"


def _is_forbidden(forbidden, v):
    return forbidden(v) if callable(forbidden) else v in forbidden


def _extend_double_and_add(chain: Chain, n: int, unit: int = 1) -> int:
    """Append a big-endian double-and-add path to n built from the unit +1 or -1.

    With unit -1 the path runs through negative multiples (and ends with a negation
    when n > 0)."""
    if n == 0:
        raise UnreachableTarget("0 is not reachable by an addition-negation chain")
    u_idx = 1 if unit == 1 else chain.neg(1)
    m = abs(n)
    idx = u_idx
    for bit in bin(m)[3:]:
        idx = chain.add(idx, idx)
        if bit == "1":
            idx = chain.add(idx, u_idx)
    if (n < 0) != (unit < 0):
        idx = chain.neg(idx)
    return idx


def _naf(n):
    digits = []
    while n:
        if n & 1:
            d = 2 - (n % 4)
            n -= d
        else:
            d = 0
        digits.append(d)
        n //= 2
    return digits[::-1]


def _extend_naf(chain: Chain, n: int) -> int:
    m = abs(n)
    digits = _naf(m)
    idx = 1
    neg1 = None
    for d in digits[1:]:
        idx = chain.add(idx, idx)
        if d == 1:
            idx = chain.add(idx, 1)
        elif d == -1:
            if neg1 is None:
                neg1 = chain.neg(1)
            idx = chain.add(idx, neg1)
    if n < 0:
        idx = chain.neg(idx)
    return idx


def _extend_from(chain: Chain, base: int, n: int, unit: int = 1) -> int:
    """Reach n from the existing value ``base`` as base + (n - base)."""
    d = n - base
    if d == 0:
        return chain.index_of(base)
    j = _extend_double_and_add(chain, d, unit)
    return chain.add(chain.index_of(base), j)


def build_chain(n=None, mode: str = "double_and_add", avoid=None, targets=None, rng=None) -> Chain:
    """Addition-negation chain reaching n (or every element of ``targets`` in multi mode).

    ``avoid`` is a set of forbidden values or a predicate; in avoid mode several chain
    shapes are tried, then random splits.
    """
    if mode == "multi" or targets is not None:
        return _multi_chain(targets if targets is not None else [n])
    if n is None or n == 0:
        raise UnreachableTarget("chains need a nonzero target")
    if mode == "naf":
        chain = Chain()
        _extend_naf(chain, n)
        return chain
    if mode == "double_and_add" and avoid is None:
        chain = Chain()
        _extend_double_and_add(chain, n)
        return chain
    if mode not in ("avoid", "double_and_add"):
        raise ValueError(f"unknown chain mode {mode}")
    forbidden = avoid if avoid is not None else set()
    if _is_forbidden(forbidden, 1) or _is_forbidden(forbidden, n):
        raise UnreachableTarget("1 or the target itself is forbidden")
    candidates = []
    for extend in (_extend_double_and_add, _extend_naf):
        c = Chain()
        extend(c, n)
        candidates.append(c)
    # negative side: run through negative multiples
    c = Chain()
    _extend_double_and_add(c, n, unit=-1)
    candidates.append(c)
    for c in candidates:
        if c.validate([n], forbidden):
            return c
    rng = ensure(rng, "build_chain", n)
    for _ in range(MAX_TRIES):
        c = Chain()
        span = max(abs(n), 2)
        base = rng.choice([-1, 1]) * rng.randrange(2, 2 * span + 2)
        if base == n:
            continue
        try:
            _extend_double_and_add(c, base, rng.choice([-1, 1]))
            _extend_from(c, base, n, rng.choice([-1, 1]))
        except UnreachableTarget:
            continue
        if c.validate([n], forbidden):
            return c
    raise UnreachableTarget(f"no chain to {n} avoiding the forbidden values")


def _multi_chain(targets) -> Chain:
    """Greedy chain through every nonzero target: each new target is reached from the
    closest value already present, by double-and-add on the difference."""
    chain = Chain()
    for t in sorted({t for t in targets if t}, key=abs):
        if t in chain:
            continue
        if -t in chain:
            chain.neg(chain.index_of(-t))
            continue
        base = min(chain.values, key=lambda v: (abs(t - v), -v))
        if abs(t - base) >= abs(t):
            _extend_double_and_add(chain, t)
        else:
            _extend_from(chain, base, t)
    return chain


class MillerResult:
    """Outcome of a Miller loop: factored (num, den) or an evaluated field value."""

    def __init__(self, n, P, endpoint, chain, num=None, den=None, value=None, numer=None, denom=None):
        self.n = n
        self.P = P
        self.endpoint = endpoint
        self.chain = chain
        self.num = num
        self.den = den
        self.value = value
        self.numer = numer
        self.denom = denom

    @property
    def mode(self):
        return "factored" if self.num is not None else "evaluated"

    @property
    def function(self) -> LineProduct:
        return self.num / self.den

    @property
    def loop_length(self) -> int:
        return len(self.chain) - 1

    def __repr__(self):
        return f"MillerResult(n={self.n}, mode={self.mode}, endpoint={self.endpoint})"


def _line_at(line: Line, D: Divisor, multiple):
    """Product of line(P)^n over the support of D (points at O contribute 1)."""
    num = 1
    den = 1
    for P, n in D.coeffs.items():
        if line.is_one or P.is_infinity:
            continue
        val = line.value(P.x, P.y)
        if not val:
            raise SupportCollision(f"a line of the Miller loop vanishes at {P}", point=P, multiple=multiple)
        if n > 0:
            num = val ** n * num
        else:
            den = val ** (-n) * den
    return num, den


def _run(chain: Chain, P: Point, eval_at=None, skip_verticals=False, want=None):
    """Replay the chain; returns per-entry (point, state) for the requested entries."""
    E = P.curve
    pts = [P]
    evaluated = eval_at is not None
    if evaluated:
        D = eval_at if isinstance(eval_at, Divisor) else Divisor.point(eval_at)
        states = [(1, 1)]
    else:
        states = [(LineProduct.one(), LineProduct.one())]
    for i, (value, rule) in enumerate(chain.entries[1:], 2):
        if rule[0] == "neg":
            j = rule[1]
            Pj = pts[j - 1]
            R = E.neg(Pj)
            v = Line.ONE if (R.is_infinity or skip_verticals) else Line.vertical(R, Pj)
            a, b = states[j - 1]
            if evaluated:
                vp, vm = _line_at(v, D, value)
                states.append((b * vm, a * vp))
            else:
                states.append((b, a * LineProduct.line(v)))
        else:
            j, k = rule[1], rule[2]
            R, l, v = E.add(pts[j - 1], pts[k - 1])
            if skip_verticals:
                v = Line.ONE
            aj, bj = states[j - 1]
            ak, bk = states[k - 1]
            if evaluated:
                lp, lm = _line_at(l, D, value)
                vp, vm = _line_at(v, D, value)
                states.append((aj * ak * lp * vm, bj * bk * lm * vp))
            else:
                states.append((aj * ak * LineProduct.line(l), bj * bk * LineProduct.line(v)))
        pts.append(R)
    return pts, states


def _result(n, P, chain, idx, pts, states, evaluated, field=None):
    endpoint = pts[idx - 1]
    a, b = states[idx - 1]
    if evaluated:
        if isinstance(a, int) and isinstance(b, int):
            value = field.one if field is not None else 1
        elif isinstance(b, int):
            value = a
        else:
            value = b.inverse() * a
        return MillerResult(n, P, endpoint, chain, value=value, numer=a, denom=b)
    return MillerResult(n, P, endpoint, chain, num=a, den=b)


def miller(n: int, P: Point, eval_at=None, chain: Chain = None, skip_verticals: bool = False,
           field=None) -> MillerResult:
    """f_{n,P}, factored or evaluated at ``eval_at`` (a point or a divisor)."""
    if n == 0 or P.is_infinity:
        # f_{0,P} and f_{n,O} are the constant 1
        E = P.curve
        chain = chain or Chain()
        if eval_at is not None:
            return MillerResult(n, P, E.infinity if n == 0 else P, chain,
                                value=field.one if field is not None else 1, numer=1, denom=1)
        return MillerResult(n, P, E.infinity if n == 0 else P, chain,
                            num=LineProduct.one(), den=LineProduct.one())
    chain = chain or build_chain(n)
    idx = chain.index_of(n)
    if idx is None:
        raise UnreachableTarget(f"chain does not reach {n}")
    pts, states = _run(chain, P, eval_at, skip_verticals)
    return _result(n, P, chain, idx, pts, states, eval_at is not None, field)


def miller_multi(targets, P: Point, eval_at=None, chain: Chain = None, skip_verticals=False, field=None):
    """One pass through a chain containing every target; returns {target: MillerResult}."""
    nonzero = [t for t in targets if t]
    chain = chain or build_chain(targets=nonzero)
    out = {}
    if nonzero and not P.is_infinity:
        pts, states = _run(chain, P, eval_at, skip_verticals)
    for t in targets:
        if not t or P.is_infinity:
            out[t] = miller(t, P, eval_at, field=field)
            continue
        out[t] = _result(t, P, chain, chain.index_of(t), pts, states, eval_at is not None, field)
    return out


def eval_with_avoidance(n: int, P: Point, D, strategy: str, field=None, rng=None):
    """f_{n,P} at D, re-randomizing according to ``strategy`` when a line hits the support.

    shift_divisor evaluates at sum n_S [S + R]; shift_by_nR moves every point S of D to
    S + nR; avoid_chain keeps D and uses a chain whose intermediate multiples stay off
    the support (up to sign).
    """
    if isinstance(D, Point):
        D = Divisor.point(D)
    E = P.curve
    rng = ensure(rng, "eval_with_avoidance", strategy)
    if field is None:
        field = next((S.field for S in D.coeffs if not S.is_infinity), E.field)
    try:
        return miller(n, P, D, field=field).value
    except SupportCollision:
        pass
    if strategy == "avoid_chain":
        bad = set()
        for S in D.coeffs:
            if not S.is_infinity:
                bad.add(S)
                bad.add(E.neg(S))
        forbidden = lambda v: E.scalar_mul(v, P) in bad
        for _ in range(MAX_TRIES):
            try:
                chain = build_chain(n, mode="avoid", avoid=forbidden, rng=rng)
                return miller(n, P, D, chain=chain, field=field).value
            except (SupportCollision, UnreachableTarget):
                continue
        raise RandomizationExhausted("no avoiding chain found")
    for _ in range(MAX_TRIES):
        R = E.random_point(field, rng)
        if strategy == "shift_divisor":
            D2 = D.translate(R)
        elif strategy == "shift_by_nR":
            D2 = D.translate(E.scalar_mul(n, R))
        else:
            raise ValueError(f"unknown strategy {strategy}")
        try:
            return miller(n, P, D2, field=field).value
        except SupportCollision:
            continue
    raise RandomizationExhausted(f"{strategy}: support collisions in {MAX_TRIES} tries")
