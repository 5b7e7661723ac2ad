import itertools

import pytest

from kakeya.field import (
    factor_prime_power,
    field_add,
    field_inv,
    field_mul,
    field_neg,
    field_pow,
    field_sub,
    is_prime,
    make_field,
    parse_field_spec,
)
from kakeya.oracles import check_field_axioms, check_multiplicative_order


# Independent polynomial arithmetic used only to cross-check the package.
# Coefficient tuples are little-endian (constant term first).

def _digits(e, p, width):
    out = []
    for _ in range(width):
        e, r = divmod(e, p)
        out.append(r)
    return out


def _undigits(coeffs, p):
    e = 0
    for c in reversed(coeffs):
        e = e * p + c
    return e


def _slow_mul(a, b, p, k, modulus):
    da, db = _digits(a, p, k), _digits(b, p, k)
    prod = [0] * (2 * k - 1)
    for i in range(k):
        for j in range(k):
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p
    # long division by the monic modulus
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(k):
                prod[i - k + j] = (prod[i - k + j] - c * modulus[j]) % p
    return _undigits(prod[:k], p)


def _monic_polys(p, deg):
    for coeffs in itertools.product(range(p), repeat=deg):
        yield list(coeffs) + [1]


def _has_root(poly, p):
    return any(
        sum(c * pow(x, i, p) for i, c in enumerate(poly)) % p == 0 for x in range(p)
    )


def test_f4_modulus_is_the_unique_irreducible_quadratic():
    # oracle: of the 4 monic quadratics over F_2, only x^2 + x + 1 is root-free
    irreducible = [tuple(m) for m in _monic_polys(2, 2) if not _has_root(m, 2)]
    assert irreducible == [(1, 1, 1)]
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_f9_modulus_is_smallest_irreducible():
    # oracle: first root-free monic quadratic over F_3 in constant-first order
    expected = next(tuple(m) for m in _monic_polys(3, 2) if not _has_root(m, 3))
    f = make_field(3, 2)
    assert f.modulus == expected == (1, 0, 1)


def test_f4_multiplication_example():
    f = make_field(2, 2)
    assert field_mul(f, 2, 2) == 3  # x * x = x + 1 mod x^2 + x + 1


def test_f5_multiplication_example():
    f = make_field(5, 1)
    assert field_mul(f, 2, 3) == 1


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2)])
def test_extension_mul_matches_independent_poly_arithmetic(p, k):
    f = make_field(p, k)
    for a in range(f.q):
        for b in range(f.q):
            assert field_mul(f, a, b) == _slow_mul(a, b, p, k, f.modulus)


@pytest.mark.parametrize("p,k", [(5, 1), (2, 2), (3, 2), (7, 1)])
def test_additive_inverse(p, k):
    f = make_field(p, k)
    for a in range(f.q):
        assert field_add(f, a, field_neg(f, a)) == 0
        assert field_sub(f, a, a) == 0


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)])
def test_field_axioms(p, k):
    check_field_axioms(make_field(p, k))


@pytest.mark.parametrize("p,k", [(2, 6), (2, 8), (3, 4)])
def test_field_axioms_larger_fields_sampled_triples(p, k):
    # pairs exhaustive, triples sampled above q = 32
    check_field_axioms(make_field(p, k), triple_sample=500)


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (2, 4), (5, 1), (13, 1)])
def test_multiplicative_group_order(p, k):
    f = make_field(p, k)
    check_multiplicative_order(f)
    for a in range(1, f.q):
        assert field_pow(f, a, f.q - 1) == 1


def test_inverses_multiply_to_one():
    for p, k in [(7, 1), (2, 3), (3, 2)]:
        f = make_field(p, k)
        for a in range(1, f.q):
            assert field_mul(f, a, field_inv(f, a)) == 1


def test_make_field_deterministic():
    assert make_field(3, 3).modulus == make_field(3, 3).modulus
    assert make_field(2, 8).modulus == make_field(2, 8).modulus


def test_make_field_rejects_bad_input():
    with pytest.raises(ValueError):
        make_field(4, 1)
    with pytest.raises(ValueError):
        make_field(1, 1)
    with pytest.raises(ValueError):
        make_field(2, 0)
    with pytest.raises(ValueError):
        make_field(2, 21)  # 2^21 over the default cap


def test_inverse_of_zero_raises():
    f = make_field(5, 1)
    with pytest.raises(ZeroDivisionError):
        field_inv(f, 0)


def test_out_of_range_elements_raise():
    f = make_field(5, 1)
    with pytest.raises(ValueError):
        field_add(f, 5, 0)
    with pytest.raises(ValueError):
        field_mul(f, 0, -1)


def test_parse_field_spec_forms():
    a = parse_field_spec("3^2")
    b = parse_field_spec("9")
    assert (a.p, a.k, a.q) == (b.p, b.k, b.q) == (3, 2, 9)
    assert parse_field_spec("7").k == 1
    with pytest.raises(ValueError):
        parse_field_spec("6")
    with pytest.raises(ValueError):
        parse_field_spec("1")
    with pytest.raises(ValueError):
        parse_field_spec("x")


def test_factor_prime_power():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(25) == (5, 2)
    assert factor_prime_power(7) == (7, 1)
    assert factor_prime_power(12) is None
    assert factor_prime_power(1) is None


def test_is_prime_small():
    primes = [p for p in range(60) if is_prime(p)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]


def test_size_cap_env_override(monkeypatch):
    monkeypatch.setenv("KAKEYA_SIZE_CAP", "100")
    with pytest.raises(ValueError):
        make_field(2, 7)  # 128 > 100
    assert make_field(2, 6).q == 64
    monkeypatch.setenv("KAKEYA_SIZE_CAP", "bogus")
    with pytest.raises(ValueError):
        make_field(2, 2)
