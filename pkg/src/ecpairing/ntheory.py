"""Integer number theory: primality, factoring, orders modulo m."""

import math
import random
from functools import reduce

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Miller-Rabin with the first 13 prime bases is deterministic below this bound.
_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981


def _mr_round(n, d, s, a):
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _DETERMINISTIC_BOUND:
        bases = _SMALL_PRIMES
    else:
        # fixed seed: the answer for a given n must not vary between runs
        rnd = random.Random(n)
        bases = [rnd.randrange(2, n - 1) for _ in range(64)]
    return all(_mr_round(n, d, s, a) for a in bases)


def _pollard_rho(n):
    if n % 2 == 0:
        return 2
    rnd = random.Random(n)
    while True:
        c = rnd.randrange(1, n)
        f = lambda v: (v * v + c) % n
        x = y = rnd.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factor(n: int) -> dict:
    """Prime factorisation of |n| as a dict prime -> exponent."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = {}
    for sp in _SMALL_PRIMES + (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97):
        while n % sp == 0:
            out[sp] = out.get(sp, 0) + 1
            n //= sp
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))
    return dict(sorted(out.items()))


def euler_phi(n: int) -> int:
    result = n
    for prime in factor(n):
        result -= result // prime
    return result


def valuation(n: int, prime: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % prime == 0:
        n //= prime
        v += 1
    return v


def multiplicative_order_mod(x: int, m: int, bound=None):
    """Smallest d >= 1 with x**d == 1 (mod m), or None if none exists up to ``bound``."""
    x %= m
    if math.gcd(x, m) != 1:
        return None
    if bound is not None:
        acc = x
        for d in range(1, bound + 1):
            if acc == 1 % m:
                return d
            acc = acc * x % m
        return None
    # full order: divide the group exponent (Carmichael-free: use phi)
    order = euler_phi(m)
    for prime in factor(order):
        while order % prime == 0 and pow(x, order // prime, m) == 1:
            order //= prime
    return order


def embedding_degree(q: int, r: int, bound: int = 10_000):
    """Smallest k >= 1 with r | q**k - 1."""
    return multiplicative_order_mod(q, r, bound)


def lcm(*values):
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def poly_eval(coeffs, x):
    """Evaluate an integer polynomial given constant-term-first."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def frobenius_traces(t: int, q: int, k: int):
    """Traces t_1..t_k of q**i-power Frobenius from t = t_1 (t_0 = 2)."""
    traces = [2, t]
    for _ in range(k - 1):
        traces.append(t * traces[-1] - q * traces[-2])
    return traces[1:]


def order_over_extension(t: int, q: int, k: int) -> int:
    """#E(F_{q^k}) for a curve with #E(F_q) = q + 1 - t."""
    return q ** k + 1 - frobenius_traces(t, q, k)[-1]
