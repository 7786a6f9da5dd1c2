import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qorbital.cyclotomic import (I, ONE, PHI, SQRT2, SQRT5, ZERO, Cyclo, InvalidConductor,
                                 cyclotomic_polynomial, root_of_unity, totient)
from qorbital.errors import DomainError

CONDUCTORS = [1, 2, 3, 4, 5, 6, 8, 10, 12, 15]


@st.composite
def cyclos(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    den = draw(st.integers(1, 6))
    k = draw(st.integers(0, 3))
    total = ZERO
    for _ in range(k):
        e = draw(st.integers(0, n - 1))
        c = draw(st.integers(-4, 4))
        total = total + root_of_unity(n, e) * Fraction(c, den)
    return total


def embed(x: Cyclo) -> complex:
    """Independent numeric oracle: the standard complex embedding."""
    return sum(complex(q) * cmath.exp(2j * cmath.pi * k / x.n) for k, q in x.coefficients())


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-9 * (1 + abs(a) + abs(b))


def test_frozen_identities():
    assert root_of_unity(8, 2) == I
    assert I * I == -1
    assert SQRT2 * SQRT2 == 2
    assert SQRT5 * SQRT5 == 5
    assert PHI * PHI == PHI + 1
    assert root_of_unity(6) + root_of_unity(6, 5) == 1
    assert sum((root_of_unity(12, k) for k in range(12)), ZERO) == 0
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert totient(12) == 4 and totient(1) == 1


def test_cross_conductor_equality_and_hash():
    a, b = root_of_unity(4), root_of_unity(12, 3)
    assert a == b and hash(a) == hash(b)
    assert Cyclo(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(Cyclo(3)) == hash(root_of_unity(5, 0) * 3)


def test_invalid_conductor():
    with pytest.raises(InvalidConductor):
        root_of_unity(0)
    assert issubclass(InvalidConductor, DomainError)


def test_zero_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()


@settings(max_examples=1000, deadline=None)
@given(cyclos(), cyclos(), cyclos())
def test_field_axioms_against_complex_oracle(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert close(embed(a * b), embed(a) * embed(b))
    assert close(embed(a + b - c), embed(a) + embed(b) - embed(c))
    assert close(embed(a.conj()), embed(a).conjugate())
    if not a.is_zero():
        assert a * a.inv() == ONE
        assert close(embed(b / a), embed(b) / embed(a))


@settings(max_examples=200, deadline=None)
@given(cyclos(), cyclos())
def test_galois_is_a_ring_map(a, b):
    m = a.n * b.n
    for g in (1, 7, 11, 13):
        if math.gcd(g, m) == 1:
            assert (a * b).galois(g) == a.galois(g) * b.galois(g)
            assert (a + b).galois(g) == a.galois(g) + b.galois(g)


@settings(max_examples=200, deadline=None)
@given(cyclos())
def test_json_round_trip(a):
    assert Cyclo.from_json(a.to_json()) == a
    assert hash(Cyclo.from_json(a.to_json())) == hash(a)
