from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shtukas import (
    DivisionByZero,
    EvenCharacteristic,
    NotPrime,
    ReducibleModulus,
    SpecMismatch,
    field_arith,
    field_create,
    field_extension,
    field_from_order,
    frobenius,
    unit_enumerate,
)
from shtukas.field import find_irreducible, is_irreducible

from oracles import field_mul, field_pow, irreducible, irreducible_by_roots

FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3)]


def test_prime_field_has_linear_modulus():
    F = field_create(3)
    assert F.q == 3 and F.m == 1
    assert F.to_json() == {"p": 3, "m": 1, "modulus": [0, 1]}


def test_f9_with_x2_plus_1():
    F = field_create(3, 2, [1, 0, 1])
    assert F.q == 9
    assert irreducible_by_roots([1, 0, 1], 3)


def test_default_moduli_are_the_least_irreducibles():
    # frozen from the sympy oracle: smallest monic irreducible in lexicographic order
    assert field_create(3, 2).modulus == (1, 0, 1)
    assert field_create(5, 2).modulus == (2, 0, 1)
    assert field_create(3, 3).modulus == (1, 2, 0, 1)
    for p, m in [(3, 2), (5, 2), (3, 3), (7, 2)]:
        assert irreducible(list(find_irreducible(p, m)), p)


def test_irreducibility_agrees_with_sympy():
    for p, m in [(3, 2), (3, 3), (5, 2)]:
        for tail in itertools.product(range(p), repeat=m):
            poly = list(tail) + [1]
            assert is_irreducible(poly, p) == irreducible(poly, p), poly


@pytest.mark.parametrize("p, m, modulus, exc", [
    (2, 1, None, EvenCharacteristic),
    (9, 1, None, NotPrime),
    (1, 1, None, NotPrime),
    (3, 2, [2, 0, 1], ReducibleModulus),
    (3, 2, [1, 1], ReducibleModulus),
    (3, 2, [1, 0, 2], ReducibleModulus),
])
def test_field_create_rejects(p, m, modulus, exc):
    with pytest.raises(exc):
        field_create(p, m, modulus)


def test_field_from_order():
    assert field_from_order(9).m == 2
    assert field_from_order(25).q == 25
    with pytest.raises(EvenCharacteristic):
        field_from_order(4)
    with pytest.raises(NotPrime):
        field_from_order(12)


def test_arithmetic_examples():
    F3 = field_create(3)
    assert field_arith(F3.element(2), F3.element(2), "add") == F3.element(1)
    assert field_arith(F3.element(1), F3.element(2), "div") == F3.element(2)
    F9 = field_create(3, 2, [1, 0, 1])
    x = F9.element([0, 1])
    assert field_arith(x, x, "mul") == F9.element(2)


def test_arith_errors():
    F3, F5 = field_create(3), field_create(5)
    with pytest.raises(DivisionByZero):
        field_arith(F3.element(1), F3.element(0), "div")
    with pytest.raises(SpecMismatch):
        field_arith(F3.element(1), F5.element(1), "add")


def test_frobenius_examples():
    F9 = field_create(3, 2, [1, 0, 1])
    x = F9.element([0, 1])
    assert frobenius(x) == F9.element([0, 2])
    F3 = field_create(3)
    assert all(frobenius(F3.element(a)) == F3.element(a) for a in range(3))
    assert frobenius(F9.element(0), 5) == F9.element(0)
    assert all(frobenius(F9.element(a), 2) == F9.element(a) for a in range(9))


def test_unit_enumerate():
    assert [int(u) for u in unit_enumerate(field_create(3))] == [1, 2]
    assert [int(u) for u in unit_enumerate(field_create(5))] == [1, 2, 3, 4]
    assert len(unit_enumerate(field_create(3, 2))) == 8


@pytest.mark.parametrize("p, m", FIELDS)
def test_multiplication_table_matches_sympy(p, m):
    F = field_create(p, m)
    for a in range(F.q):
        for b in range(a, F.q):
            assert F.mul(a, b) == field_mul(a, b, p, list(F.modulus))


@pytest.mark.parametrize("p, m", FIELDS)
def test_frobenius_is_pth_power(p, m):
    F = field_create(p, m)
    for a in range(F.q):
        assert F.frobenius(a) == field_pow(a, p, p, list(F.modulus))


@pytest.mark.parametrize("p, m", FIELDS)
def test_vector_ops_agree_with_scalar_ops(p, m):
    F = field_create(p, m)
    a, b = np.meshgrid(np.arange(F.q), np.arange(F.q), indexing="ij")
    a, b = a.ravel(), b.ravel()
    assert list(F.vadd(a, b)) == [F.add(int(x), int(y)) for x, y in zip(a, b)]
    assert list(F.vsub(a, b)) == [F.sub(int(x), int(y)) for x, y in zip(a, b)]
    assert list(F._vmul(a, b)) == [F.mul(int(x), int(y)) for x, y in zip(a, b)]


@pytest.mark.parametrize("p, m", FIELDS)
def test_inverse_and_fermat(p, m):
    F = field_create(p, m)
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.power(a, F.q - 1) == 1


def test_nth_roots():
    F9 = field_create(3, 2)
    for c in range(1, 9):
        roots = F9.nth_roots(c, 2)
        assert all(F9.power(r, 2) == c for r in roots)
        assert len(roots) == sum(1 for y in range(1, 9) if F9.power(y, 2) == c)
    assert field_create(3).nth_roots(2, 2) == []


def test_artin_schreier_roots():
    F = field_create(3, 2)
    for b in range(9):
        roots = F.artin_schreier_roots(b, 3)
        assert sorted(roots) == sorted(x for x in range(9) if F.sub(F.power(x, 3), x) == b)


@pytest.mark.parametrize("p, m, s", [(3, 1, 2), (3, 2, 2), (5, 1, 2), (3, 1, 3)])
def test_extension_embedding_is_a_homomorphism(p, m, s):
    small = field_create(p, m)
    emb = field_extension(small, s)
    big = emb.big
    assert big.q == small.q**s
    for a in range(small.q):
        for b in range(small.q):
            assert emb(small.add(a, b)) == big.add(emb(a), emb(b))
            assert emb(small.mul(a, b)) == big.mul(emb(a), emb(b))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms_property(pm, data):
    F = field_create(*pm)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))


def test_encode_decode_round_trip():
    F = field_create(5, 2)
    assert all(F.decode(F.encode(a)) == a for a in range(F.q))
    with pytest.raises(ValueError):
        F.decode(25)
