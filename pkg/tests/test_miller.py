import random

import pytest

from ecpairing.curve import Line, make_curve
from ecpairing.divisors import Divisor, LineProduct, divisor_of, evaluate, ord_at
from ecpairing.errors import SupportCollision, UnreachableTarget
from ecpairing.fields import make_field
from ecpairing.miller import Chain, build_chain, eval_with_avoidance, miller, miller_multi

F13 = make_field(13)
E13 = make_curve(F13, a4=2, a6=3)
PTS13 = E13.enumerate_points()
E7 = make_curve(make_field(7), a4=1)


def test_build_chain_examples():
    assert build_chain(1).values == [1]
    assert build_chain(6).values == [1, 2, 3, 6]
    c = build_chain(5, mode="avoid", avoid={2})
    assert c.validate([5], {2})
    for n in (7, -9, 100, 251):
        assert build_chain(n).validate([n])
        assert build_chain(n, mode="naf").validate([n])
    with pytest.raises(UnreachableTarget):
        build_chain(5, mode="avoid", avoid={5})
    with pytest.raises(UnreachableTarget):
        build_chain(0)


def test_chain_dump_parse_roundtrip():
    c = build_chain(targets=[3, -7, 12])
    assert c.validate([3, -7, 12])
    c2 = Chain.parse(c.dump())
    assert c2.values == c.values and c2.entries == c.entries


def test_miller_trivial_cases():
    P = PTS13[4]
    assert miller(1, P).function.is_constant()
    assert miller(0, P).function.is_constant()
    assert miller(5, E13.infinity).function.is_constant()


def test_miller_two_torsion_f7():
    P0 = E7.point(0, 0)
    f = miller(2, P0).function
    assert divisor_of(f) == Divisor([(P0, 2), (E7.infinity, -2)])
    assert f == LineProduct.line(Line.vertical(P0, P0))


def test_miller_function_divisor():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.choice([m for m in range(-40, 60) if m])
        P = rng.choice(PTS13[1:])
        res = miller(n, P)
        assert res.endpoint == E13.scalar_mul(n, P)
        D = Divisor([(P, n), (res.endpoint, -1), (E13.infinity, -(n - 1))])
        assert divisor_of(res.function) == D
        for S in set(D.coeffs) | {P}:
            assert ord_at(res.function, S) == D.coeffs.get(S, 0)


def test_composition_rule_evaluated():
    ctx_E = make_curve(make_field(103), a4=1)
    L = make_field(103, 2)
    rng = random.Random(12)
    for _ in range(30):
        P = ctx_E.random_point(rng=rng)
        i, j = rng.randrange(1, 30), rng.randrange(1, 30)
        _, l, v = ctx_E.add(ctx_E.scalar_mul(i, P), ctx_E.scalar_mul(j, P))
        S = ctx_E.random_point(L, rng)
        try:
            lhs = miller(i + j, P, S, field=L).value
            rhs = miller(i, P, S, field=L).value * miller(j, P, S, field=L).value
            rhs = rhs * evaluate(LineProduct({l: 1, v: -1}), S)
        except SupportCollision:
            continue
        assert lhs == rhs


def test_multiples_of_torsion_order():
    E = make_curve(make_field(103), a4=1)
    P = next(Q for Q in E.enumerate_points()[1:] if E.scalar_mul(13, Q).is_infinity)
    L = make_field(103, 2)
    rng = random.Random(13)
    f13 = miller(13, P).function
    for m in (2, 3, 8):
        fN = miller(13 * m, P).function
        assert divisor_of(fN) == divisor_of(f13 ** m)
        for _ in range(5):
            S = E.random_point(L, rng)
            assert evaluate(fN, S) == evaluate(f13, S) ** m
        fN1 = miller(13 * m + 1, P).function
        assert divisor_of(fN1) == divisor_of(fN)
        S = E.random_point(L, rng)
        assert evaluate(fN1, S) == evaluate(fN, S)


def test_evaluated_matches_factored():
    rng = random.Random(14)
    L = make_field(13, 2)
    for _ in range(30):
        n = rng.randrange(2, 40)
        P = rng.choice(PTS13[1:])
        S = E13.random_point(L, rng)
        T = E13.random_point(L, rng)
        D = Divisor([(S, 1), (T, -1)])
        res = miller(n, P)
        try:
            val = miller(n, P, D, field=L).value
        except SupportCollision:
            continue
        assert val == evaluate(res.function, D)


def test_multi_target_pass():
    rng = random.Random(15)
    L = make_field(13, 2)
    P = PTS13[5]
    S = E13.random_point(L, rng)
    while S.is_infinity or S.x.in_prime_field():
        S = E13.random_point(L, rng)
    targets = [3, -5, 11]
    out = miller_multi(targets, P, S, field=L)
    for t in targets:
        assert out[t].value == miller(t, P, S, field=L).value
        assert out[t].endpoint == E13.scalar_mul(t, P)


def test_support_collision_and_avoidance():
    E = make_curve(make_field(103), a4=1)
    P = next(Q for Q in E.enumerate_points()[1:] if E.scalar_mul(13, Q).is_infinity)
    L = make_field(103, 2)
    # 2P lies on the tangent line at P, so evaluating there collides
    with pytest.raises(SupportCollision):
        miller(13, P, E.scalar_mul(-2, P).lift(L), field=L)
    rng = random.Random(16)
    Q = E.random_point(L, rng)
    R = E.random_point(L, rng)
    D = Divisor([(E.add_points(Q, R), 1), (R, -1)])
    plain = miller(13, P, D, field=L).value
    for strategy in ("shift_divisor", "shift_by_nR", "avoid_chain"):
        val = eval_with_avoidance(13, P, D, strategy, field=L, rng=rng)
        assert val ** ((L.order - 1) // 13) == plain ** ((L.order - 1) // 13)
    val = eval_with_avoidance(13, P, D, "avoid_chain", field=L, rng=rng)
    assert val == plain
