from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from leibext.fields import GF, QQ, einsum, format_scalar, half, parse_field, parse_scalar, to_field

from strategies import fractions, gf_tensors, tensors


@pytest.mark.parametrize("text, value", [("0", 0), ("-7", -7), ("1/2", Fraction(1, 2)), ("-5/3", Fraction(-5, 3))])
def test_parse_scalar_canonical(text, value):
    assert parse_scalar(text) == value
    assert format_scalar(parse_scalar(text)) == text


@pytest.mark.parametrize("text", ["2/4", "3/1", "1/0", " 1", "1.5", "-0", "a", "1/-2"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


@given(fractions)
def test_format_parse_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


def test_parse_field():
    assert parse_field("q") is QQ
    assert parse_field("p:7") == GF(7)
    with pytest.raises(ValueError):
        parse_field("p:8")
    with pytest.raises(ValueError):
        parse_field("r")


@given(st.integers(-50, 50), st.integers(-50, 50), st.sampled_from([2, 3, 5, 7, 101]))
def test_gf_arithmetic_matches_integers(a, b, p):
    F = GF(p)
    assert F(a) + F(b) == F(a + b)
    assert F(a) * F(b) == F(a * b)
    assert F(a) - F(b) == F(a - b)
    if b % p:
        assert (F(a) / F(b)) * F(b) == F(a)


def test_half():
    assert half(QQ) == Fraction(1, 2)
    assert half(GF(3)) * 2 == GF(3)(1)
    with pytest.raises(ZeroDivisionError):
        half(GF(2))


@given(tensors((2, 3)), tensors((3, 4)))
def test_einsum_matches_object_einsum(a, b):
    assert np.all(einsum("ij,jk->ik", a, b) == np.einsum("ij,jk->ik", a, b))


@given(tensors((2, 2, 2)), tensors((2, 3)), tensors((2,)))
def test_einsum_three_operands(c, m, v):
    expected = np.einsum("ijk,ka,i->ja", c, m, v)
    assert np.all(einsum("ijk,ka,i->ja", c, m, v) == expected)


def test_einsum_large_values_use_python_ints():
    big = to_field([[Fraction(2**70, 3), 1], [5, Fraction(-2**65)]])
    assert np.all(einsum("ij,jk->ik", big, big) == np.einsum("ij,jk->ik", big, big))


@given(gf_tensors((3, 3), GF(5)), gf_tensors((3, 2), GF(5)))
def test_einsum_prime_field(a, b):
    out = einsum("ij,jk->ik", a, b)
    for i in range(3):
        for k in range(2):
            assert out[i, k] == sum((a[i, j] * b[j, k] for j in range(3)), GF(5)(0))


def test_einsum_scalar_output():
    v = to_field([1, Fraction(1, 2)])
    assert einsum("i,i->", v, v)[()] == Fraction(5, 4)
