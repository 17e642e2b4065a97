"""Dense polynomials over F_p as lists of ints, constant term first.

All functions return trimmed lists (no trailing zeros); the zero polynomial is [].
"""


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return trim([c % p for c in out])


def divmod_(a, b, p):
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [c % p for c in trim(a)]
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = trim(a)
    return trim(q), a


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def monic(a, p):
    a = trim(a)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def powmod(a, e, m, p):
    result = [1]
    base = mod(a, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = mod(mul(base, base, p), m, p)
    return result


def is_irreducible(f, p):
    """Ben-Or test: f is irreducible iff gcd(X^(p^d) - X, f) = 1 for d <= deg f / 2."""
    f = trim(f)
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    h = [0, 1]
    for _ in range(deg // 2):
        h = powmod(h, p, f, p)
        if len(gcd(sub(h, [0, 1], p), f, p)) > 1:
            return False
    return True
