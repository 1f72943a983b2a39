import numpy as np
import pytest

from powerdiam.errors import ResourceLimitError
from powerdiam.families import dn_generators, sn_generators
from powerdiam.group import GenSet, generates, minimum_generating_set
from powerdiam.perm import parse_cycles
from powerdiam.power import (
    canonical_genset,
    coprime_genset,
    direct_power,
    genset_projection,
    power_rank,
    projection,
    recovery_exponent,
)

from zoo import alt, cyclic, cyclic_genset, dih, genset_of, product, sym, trivial


def test_direct_power_sizes():
    assert direct_power(trivial(), 5).order == 1
    assert direct_power(sym(4), 2).order == 576
    P = direct_power(cyclic(2), 3)
    assert P.order == 8
    assert all(P.element_orders[x] == 2 for x in range(1, 8))


def test_direct_power_cap():
    with pytest.raises(ResourceLimitError) as info:
        direct_power(sym(5), 4, max_elements=10**6)
    assert info.value.flag == "--max-states"


def test_componentwise_multiplication():
    G = sym(3)
    P = direct_power(G, 3)
    rng = np.random.default_rng(0)
    for _ in range(200):
        x, y = (int(v) for v in rng.integers(0, P.order, 2))
        dx, dy = P.decode(x), P.decode(y)
        assert P.decode(P.mul(x, y)) == tuple(G.mul(a, b) for a, b in zip(dx, dy))


def test_mixed_radix_weights():
    P = direct_power(sym(3), 3)
    assert P.encode((1, 0, 0)) == 36
    assert P.encode((0, 0, 1)) == 1


@pytest.mark.parametrize("G,n", [(sym(3), 3), (cyclic(6), 4), (sym(4), 3), (product(2, 2), 5)],
                         ids=["S3^3", "Z6^4", "S4^3", "Klein^5"])
def test_mixed_radix_bijection_exhaustive(G, n):
    P = direct_power(G, n)
    assert P.order <= 10**5
    idx = np.arange(P.order)
    assert (P.undigits(P.digits(idx)) == idx).all()
    for x in range(0, P.order, max(1, P.order // 500)):
        assert P.encode(P.decode(x)) == x


def test_mixed_radix_bijection_random():
    P = direct_power(sym(5), 3)
    assert P.order > 10**5
    rng = np.random.default_rng(1)
    xs = rng.integers(0, P.order, 10**4)
    assert (P.undigits(P.digits(xs)) == xs).all()
    for x in xs[:500]:
        assert P.encode(P.decode(int(x))) == x


def test_canonical_genset():
    A = sn_generators(4)
    assert canonical_genset(A, 1).members == A.members
    C = canonical_genset(A, 2)
    assert len(C.members) == 4
    assert C.labels == ("a'_1", "b_1", "a'_2", "b_2")
    assert generates(C.group, C.members) and C.group.order == 576
    for n in (1, 2, 3):
        assert len(canonical_genset(cyclic_genset(6), n).members) == n


@pytest.mark.parametrize("A,n", [(sn_generators(3), 2), (dn_generators(4), 2), (cyclic_genset(5), 3),
                                 (genset_of(product(2, 2)), 3)])
def test_canonical_genset_generates(A, n):
    C = canonical_genset(A, n)
    assert generates(C.group, C.members)


def test_coprime_genset_staircase_for_d5():
    A = dn_generators(5)
    a, b = A.members
    C = coprime_genset(A, 3)
    P = C.group
    assert P.order == 1000
    assert [P.decode(m) for m in C.members] == [(a, b, 0), (0, a, b), (b, 0, a)]
    assert generates(P, C.members)
    assert len(C.members) == 3


@pytest.mark.parametrize("A,n", [(sn_generators(4), 2), (sn_generators(4), 3), (sn_generators(5), 2),
                                 (dn_generators(3), 2), (dn_generators(5), 2), (dn_generators(3), 3)])
def test_coprime_genset_generates(A, n):
    C = coprime_genset(A, n)
    assert len(C.members) == n
    assert generates(C.group, C.members)
    assert C.name == ("C'" if A.name.startswith("A'") else "C")


def test_coprime_genset_errors():
    with pytest.raises(ValueError):
        coprime_genset(dn_generators(4), 2)  # orders 4 and 2
    with pytest.raises(ValueError):
        coprime_genset(sn_generators(5), 1)  # n < k
    G = alt(5)
    x = G.index_of(parse_cycles("(1 2 3)", 5))
    y = G.index_of(parse_cycles("(1 2 3 4 5)", 5))
    with pytest.raises(ValueError):
        coprime_genset(GenSet.build(G, [x, y]), 2)  # perfect


def test_recovery_exponent():
    assert recovery_exponent([5, 2], 0) == 6
    ell = next(l for l in range(1, 100) if l % 5 == 1 and l % 2 == 0)
    assert ell == 6
    assert recovery_exponent([5, 2], 1) == 5
    assert recovery_exponent([3, 4, 5], 2) == 36
    with pytest.raises(ValueError):
        recovery_exponent([4, 2], 0)


def test_recovery_exponent_isolates_generator():
    A = dn_generators(5)
    P = direct_power(A.group, 2)
    a, b = A.members
    x = P.encode((a, b))
    assert P.power(x, recovery_exponent([5, 2], 0)) == P.encode((a, 0))
    assert P.power(x, recovery_exponent([5, 2], 1)) == P.encode((0, b))


def test_projections():
    A = dn_generators(5)
    a, b = A.members
    C = coprime_genset(A, 3)
    P = C.group
    assert projection(P, P.encode((a, b, 0)), 2) == b
    assert set(genset_projection(C, 1)) == {a, 0, b}
    canon = canonical_genset(A, 3)
    assert set(genset_projection(canon, 2)) == set(A.members) | {0}
    with pytest.raises(ValueError):
        projection(P, 0, 4)
    with pytest.raises(ValueError):
        projection(P, 0, 0)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_power_rank_examples(k):
    assert power_rank(sym(4), k).value == k
    assert power_rank(dih(5), k).value == k
    assert power_rank(dih(4), k).value == 2 * k
    assert power_rank(cyclic(2), k).value == k


@pytest.mark.parametrize("G,n,expected", [(sym(3), 2, 2), (dih(3), 2, 2), (dih(4), 2, 4),
                                          (cyclic(2), 3, 3)], ids=["S3^2", "D3^2", "D4^2", "Z2^3"])
def test_power_rank_formula_matches_brute_force(G, n, expected):
    pr = power_rank(G, n)
    assert pr.source == "formula"
    brute = len(minimum_generating_set(direct_power(G, n)))
    assert pr.value == brute == expected


def test_power_rank_trivial_and_one():
    assert power_rank(trivial(), 4).value == 0
    assert power_rank(sym(3), 1).value == 2


def test_power_rank_brute_force_fallback():
    # A5 is perfect: beta = 0, no formula applies
    pr = power_rank(alt(5), 1)
    assert pr.source == "brute-force" and pr.value == 2


def test_power_formatting():
    P = direct_power(sym(3), 3)
    x = P.index_of([parse_cycles("(1 2 3)", 3), parse_cycles("()", 3), parse_cycles("(1 2)", 3)])
    assert P.format_element(x) == "((1 2 3), (), (1 2))"
    assert P.index_of(P.decode(x)) == x
