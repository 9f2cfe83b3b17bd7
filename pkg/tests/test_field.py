import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kummer_cert.errors import BudgetExceeded, CharTooSmall, DegreeZero, NotADivisor, NotPrime
from kummer_cert.field import (
    build_ambient,
    elt_degree,
    find_modulus,
    frobenius_elt,
    is_square,
    sqrt_elt,
    subfield_elements,
)

from oracles import NaiveField, naive_irreducible

FIELDS = [(7, 1), (7, 2), (7, 3), (11, 2), (13, 1), (7, 5)]


def elements(F):
    return st.lists(st.integers(0, F.p - 1), min_size=F.N, max_size=F.N).map(F)


# -- construction --

def test_prime_field_modulus_is_t():
    F = build_ambient(7, 1)
    assert F.cardinality == 7
    assert F.modulus == (0, 1)


def test_quadratic_cardinality():
    assert build_ambient(7, 2).cardinality == 49


def test_quintic_modulus_is_first_irreducible():
    F = build_ambient(7, 5)
    assert F.modulus == (1, 0, 0, 0, 3, 1)
    assert naive_irreducible(list(F.modulus), 7)
    for low in product(range(7), repeat=5):
        if low == F.modulus[:5]:
            break
        assert not naive_irreducible(list(low) + [1], 7)


@pytest.mark.parametrize("p,N", [(7, 2), (7, 3), (11, 3), (13, 2), (7, 4)])
def test_modulus_irreducible(p, N):
    assert naive_irreducible(list(find_modulus(p, N)), p)


def test_build_is_deterministic():
    assert build_ambient(11, 3).modulus == build_ambient(11, 3).modulus


@pytest.mark.parametrize(
    "args,exc",
    [
        ((9, 1), NotPrime),
        ((1, 1), NotPrime),
        ((5, 2), CharTooSmall),
        ((3, 2), CharTooSmall),
        ((7, 0), DegreeZero),
        ((7, 40), BudgetExceeded),
        ((65537, 1), BudgetExceeded),
    ],
)
def test_build_errors(args, exc):
    with pytest.raises(exc):
        build_ambient(*args)


def test_budget_override():
    with pytest.raises(BudgetExceeded):
        build_ambient(7, 3, budget=342)
    assert build_ambient(7, 3, budget=343).cardinality == 343


def test_multiplication_matches_schoolbook():
    F = build_ambient(7, 5)
    K = NaiveField(7, F.modulus)
    rng = random.Random(5)
    for _ in range(300):
        a = [rng.randrange(7) for _ in range(5)]
        b = [rng.randrange(7) for _ in range(5)]
        assert (F(a) * F(b)).coeffs == K.mul(a, b)


# -- field axioms --

@pytest.mark.parametrize("p,N", FIELDS)
def test_axioms_random_triples(p, N):
    F = build_ambient(p, N)
    rng = random.Random(p * 100 + N)
    rand = lambda: F([rng.randrange(p) for _ in range(N)])  # noqa: E731
    for _ in range(10_000):
        a, b, c = rand(), rand(), rand()
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


@pytest.mark.parametrize("p,N", FIELDS)
def test_inverse_and_fermat(p, N):
    F = build_ambient(p, N)
    rng = random.Random(N)
    for _ in range(200):
        e = F([rng.randrange(p) for _ in range(N)])
        assert e ** F.cardinality == e
        if not e.is_zero():
            assert e * e.inverse() == F.one


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        build_ambient(7, 2).zero.inverse()


# -- Frobenius --

def test_frobenius_examples():
    F = build_ambient(7, 5)
    for k in range(7):
        assert frobenius_elt(F, F(k), 1) == F(k)
    G = build_ambient(7, 2)
    t = G.gen
    assert frobenius_elt(G, t, 2) == t
    assert frobenius_elt(G, t, 0) == t
    assert frobenius_elt(G, t, 1) == t**7


@given(st.data())
def test_frobenius_is_homomorphism(data):
    F = build_ambient(7, 5)
    a = data.draw(elements(F))
    b = data.draw(elements(F))
    fr = lambda e: frobenius_elt(F, e, 1)  # noqa: E731
    assert fr(a + b) == fr(a) + fr(b)
    assert fr(a * b) == fr(a) * fr(b)
    assert fr(a) == a**7
    assert frobenius_elt(F, a, 5) == a


def test_frobenius_negative_power():
    F = build_ambient(7, 2)
    with pytest.raises(ValueError):
        frobenius_elt(F, F.gen, -1)


def test_elt_degree_examples():
    F = build_ambient(7, 5)
    assert elt_degree(F, F.zero) == 1
    assert elt_degree(F, F(3)) == 1
    t = F.gen
    assert t**7 != t
    assert elt_degree(F, t) == 5


@pytest.mark.parametrize("p,N", [(7, 6), (11, 4)])
def test_elt_degree_divides_n(p, N):
    F = build_ambient(p, N)
    rng = random.Random(1)
    for _ in range(100):
        e = F([rng.randrange(p) for _ in range(N)])
        d = elt_degree(F, e)
        assert N % d == 0
        assert e ** (p**d) == e


# -- subfields --

def test_subfield_whole_field():
    F = build_ambient(7, 2)
    S = subfield_elements(F, 2)
    assert len(S) == 49
    assert set(S) == set(F.elements())


def test_subfield_prime_part_of_quintic():
    F = build_ambient(7, 5)
    assert sorted(e.coeffs for e in subfield_elements(F, 1)) == sorted(F(k).coeffs for k in range(7))


def test_subfield_prime_part_of_quadratic():
    F = build_ambient(7, 2)
    S = subfield_elements(F, 1)
    oracle = {e for e in F.elements() if e**7 == e}
    assert len(S) == 7
    assert set(S) == oracle
    assert S[0].is_zero()


@pytest.mark.parametrize("p,N,m", [(7, 6, 2), (7, 6, 3), (11, 4, 2), (13, 2, 1)])
def test_subfield_closure_and_cyclicity(p, N, m):
    F = build_ambient(p, N)
    S = subfield_elements(F, m)
    members = set(S)
    assert len(S) == p**m
    assert len(members) == p**m
    rng = random.Random(m)
    for _ in range(200):
        a, b = rng.choice(S), rng.choice(S)
        assert a + b in members
        assert a * b in members
        assert frobenius_elt(F, a, 1) in members
    for e in S[1:]:
        assert e ** (p**m - 1) == F.one
        assert m % elt_degree(F, e) == 0


def test_subfield_rejects_non_divisor():
    with pytest.raises(NotADivisor):
        subfield_elements(build_ambient(7, 5), 2)


# -- square roots --

def test_sqrt_examples():
    F = build_ambient(7, 1)
    assert sqrt_elt(F, F.zero) == F.zero
    assert sqrt_elt(F, F.one) == F.one
    assert sqrt_elt(F, F(2)) == F(3)
    assert [k for k in range(7) if k * k % 7 == 2] == [3, 4]
    assert sqrt_elt(F, F(3)) is None


@pytest.mark.parametrize("p,N", [(7, 1), (7, 2), (7, 3), (11, 2), (13, 2), (7, 4)])
def test_square_count_and_roots(p, N):
    F = build_ambient(p, N)
    Q = F.cardinality
    squares = 0
    for e in F.elements():
        r = sqrt_elt(F, e)
        assert (r is not None) == is_square(F, e)
        if r is not None:
            squares += 1
            assert r * r == e
            assert r.coeffs <= (-r).coeffs
    assert squares == -(-(Q + 1) // 2)


def test_is_square_in_subfield():
    F = build_ambient(7, 2)
    # every element of GF(7) is a square in GF(49), but only 1, 2, 4 are squares in GF(7)
    for k in range(1, 7):
        assert is_square(F, F(k))
        assert is_square(F, F(k), 1) == (k in (1, 2, 4))


def test_element_repr_and_order():
    F = build_ambient(7, 3)
    assert repr(F([1, 1, 1])) == "1 + t + t^2"
    assert repr(F([2, 0, 3])) == "2 + 3*t^2"
    assert F([1]) < F([2])
