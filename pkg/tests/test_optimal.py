import itertools

import pytest

from ecpairing.errors import NoInstanceInRange, NotRootOfUnity, RankDeficient
from ecpairing.ntheory import is_prime, poly_eval
from ecpairing.optimal import (
    FREEMAN_K10,
    CurveFamily,
    build_lattice,
    family_candidates,
    freeman_t,
    lll_reduce,
    lovasz_ok,
    shortest_vector,
)


def test_build_lattice_shapes():
    assert build_lattice(13, 12, k=2).basis == [[13]]
    lat = build_lattice(251, 32, k=10)
    assert lat.dim == 4
    assert lat.basis[1] == [-32, 1, 0, 0]
    with pytest.raises(NotRootOfUnity):
        build_lattice(101, 3, k=4)


def test_lll_dim1_and_rank():
    assert lll_reduce([[101]]) == [[101]]
    with pytest.raises(RankDeficient):
        lll_reduce([[1, 2], [2, 4]])


def test_shortest_vector_dim2_exhaustive_oracle():
    r, y = 101, 10
    v = shortest_vector(build_lattice(r, y, k=4).basis)
    assert poly_eval(v, y) % r == 0
    best = min(a * a + b * b for a, b in itertools.product(range(-15, 16), repeat=2)
               if (a or b) and (a + b * y) % r == 0)
    assert v[0] ** 2 + v[1] ** 2 == best
    assert max(abs(c) for c in v) <= 15  # ceil(sqrt(2) * sqrt(101))


def test_reduced_basis_members_and_lovasz():
    for r, y, k in ((251, 32, 10), (101, 10, 4), (37, 6, 4), (1009, 374, 12)):
        if pow(y, k, r) != 1:
            continue
        lat = build_lattice(r, y, k=k)
        red = lll_reduce(lat.basis)
        assert lovasz_ok(red)
        for row in red:
            assert lat.contains(row)
        dim = lat.dim
        v = shortest_vector(lat.basis)
        assert max(abs(c) for c in v) <= 2 ** ((dim - 1) / 2) * r ** (1 / dim)


def test_family_candidates_primality_oracle():
    x0, p, u, r = next(family_candidates(FREEMAN_K10, -10, 10))
    # trial division oracle over |x| increasing
    def prime(n):
        return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))
    first = next(x for x in sorted(range(-10, 11), key=lambda x: (abs(x), x))
                 if prime(poly_eval(FREEMAN_K10.p, x)) and prime(poly_eval(FREEMAN_K10.r, x)))
    assert x0 == first == -2
    assert (p, r) == (283, 251)
    assert poly_eval(FREEMAN_K10.p, 1) == 88 and not is_prime(88)
    with pytest.raises(NoInstanceInRange):
        from ecpairing.optimal import family_instantiate
        family_instantiate(FREEMAN_K10, 0, 1)


def test_freeman_identities():
    for x0 in range(-6, 7):
        p, u, r = FREEMAN_K10.at(x0)
        if r > 1:
            assert (p + 1 - u) % r == 0
            assert (p ** 10 - 1) % r == 0


def test_family_json():
    fam = CurveFamily.from_json({"k": 10, "p": [3, 10, 25, 25, 25], "u": [3, 5, 10], "r": [1, 5, 15, 25, 25]})
    assert fam.to_json() == FREEMAN_K10.to_json()


def test_freeman_t_shape():
    assert freeman_t(-2) == [1, 2, -2, -2]
    for x0 in (-2, 3, 5):
        # t(Y) lies in the lattice for y = p(x0) mod r(x0) whenever r(x0) > 1
        p, _, r = FREEMAN_K10.at(x0)
        assert poly_eval(freeman_t(x0), p) % r == 0
