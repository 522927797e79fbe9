import math

import numpy as np
import pytest

from twistcode.fields import BinaryField, PrimeField, DEFAULT_POLYS, is_irreducible, is_prime


# ---------------------------------------------------------------------------
# independent oracles (naive coefficient-list polynomial arithmetic)
# ---------------------------------------------------------------------------

def poly_mul(a, b):
    """Multiply GF(2) polynomials given as coefficient lists (low first)."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] ^= ca & cb
    return out


def poly_mod(a, m):
    """Long division remainder of a by m over GF(2)."""
    a = list(a)
    dm = max(i for i, c in enumerate(m) if c)
    while True:
        da = max((i for i, c in enumerate(a) if c), default=-1)
        if da < dm:
            break
        for i, c in enumerate(m):
            if c:
                a[da - dm + i] ^= 1
    return a


def to_int(coeffs):
    return sum(c << i for i, c in enumerate(coeffs))


def from_int(x, width):
    return [(x >> i) & 1 for i in range(width)]


def test_gf4_product_matches_long_division_oracle():
    # x * x reduced by x^2 + x + 1
    prod = poly_mod(poly_mul([0, 1], [0, 1]), [1, 1, 1])
    assert to_int(prod) == 0b11  # x + 1
    F = BinaryField(2)
    assert F.mul(0b10, 0b10) == 0b11


def test_gf4_inverse_by_exhaustive_search():
    # search over the 3 nonzero elements with the naive oracle
    inv = None
    for b in range(1, 4):
        prod = poly_mod(poly_mul(from_int(2, 2), from_int(b, 2)), [1, 1, 1])
        if to_int(prod) == 1:
            inv = b
    assert inv == 0b11
    assert BinaryField(2).inv(0b10) == 0b11


def test_full_mul_table_against_oracle():
    for n in (2, 3, 4):
        F = BinaryField(n)
        modulus = from_int(F.poly, n + 2)
        for a in range(F.order):
            for b in range(F.order):
                prod = poly_mod(poly_mul(from_int(a, n), from_int(b, n)), modulus)
                assert F.mul(a, b) == to_int(prod)


def test_characteristic_two():
    for n in (1, 2, 3, 4):
        F = BinaryField(n)
        for a in F.elements():
            assert F.add(a, a) == 0


def test_frobenius_nontrivial_for_extension_fields():
    for n in (2, 3, 4):
        F = BinaryField(n)
        assert any(F.mul(a, a) != a for a in F.elements())


def test_prime_field_examples():
    assert PrimeField(3).add(2, 2) == 1
    assert PrimeField(5).inv(2) == 3
    # binomial oracle: integer arithmetic, then reduce
    assert math.comb(4, 2) % 3 == 0
    assert PrimeField(3).binom(4, 2) == 0


def test_binom_large_arguments_exact():
    F = PrimeField(13)
    for i in range(2 * 13 + 1):
        for j in range(i + 1):
            assert F.binom(i, j) == math.comb(i, j) % 13
    assert F.binom(3, 5) == 0


def test_field_axioms_exhaustive_prime():
    for p in (3, 5, 7, 11, 13):
        F = PrimeField(p)
        elems = list(F.elements())
        for a in elems:
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
        for a in elems:
            for b in elems:
                assert F.add(a, b) == F.add(b, a)
                assert F.mul(a, b) == F.mul(b, a)
                for c in elems[:: max(1, p // 5)]:
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_field_axioms_exhaustive_binary():
    for n in (1, 2, 3, 4):
        F = BinaryField(n)
        elems = list(F.elements())
        for a in elems:
            if a:
                assert F.mul(a, F.inv(a)) == 1
        for a in elems:
            for b in elems:
                assert F.mul(a, b) == F.mul(b, a)
                for c in elems:
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        PrimeField(5).inv(0)
    with pytest.raises(ZeroDivisionError):
        BinaryField(2).inv(0)


def test_prime_validation():
    for bad in (1, 2, 4, 9, 15):
        with pytest.raises(ValueError):
            PrimeField(bad)
    assert is_prime(13) and not is_prime(91)


def test_reduction_polynomial_validation():
    # x^2 + 1 = (x + 1)^2 is reducible
    with pytest.raises(ValueError):
        BinaryField(2, poly=0b101)
    # wrong degree
    with pytest.raises(ValueError):
        BinaryField(2, poly=0b1011)
    # the documented defaults really are irreducible
    for n, poly in DEFAULT_POLYS.items():
        if n >= 2:
            assert is_irreducible(poly)
    # an alternative valid polynomial for GF(8)
    F = BinaryField(3, poly=0b1101)
    assert sorted(F.mul(a, F.inv(a)) for a in range(1, 8)) == [1] * 7


def test_mul_table_is_numpy_and_consistent():
    F = BinaryField(4)
    assert isinstance(F.mul_table, np.ndarray)
    a, b = 9, 13
    assert F.mul_table[a, b] == F.mul(a, b)
    assert F.validate(9) == 9
    with pytest.raises(ValueError):
        F.validate(16)
