import numpy as np
import pytest
from hypothesis import given, strategies as st

from sumprod.prime_field import (MAX_MODULUS, FieldModulus, ModulusMismatchError, Residue, add,
                                 divisors, factorize, find_primitive_root, inv, inverse_array,
                                 inverse_table, is_prime, is_primitive_root,
                                 multiplicative_order, mul, neg, power, subgroup,
                                 subgroup_elements)

from conftest import SMALL_PRIMES


def _naive_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_is_prime_matches_trial_division():
    for n in range(-3, 3000):
        assert is_prime(n) == _naive_prime(n), n


def test_is_prime_large():
    assert is_prime(MAX_MODULUS)
    assert not is_prime(MAX_MODULUS - 2)
    # strong pseudoprimes to several small bases
    assert not is_prime(3215031751)
    assert not is_prime(2152302898747)


@pytest.mark.parametrize("bad", [0, 1, 2, 4, 9, 1001, MAX_MODULUS + 2])
def test_field_modulus_rejects(bad):
    with pytest.raises(ValueError):
        FieldModulus(bad)


def test_field_modulus_type():
    with pytest.raises(TypeError):
        FieldModulus(7.0)
    with pytest.raises(TypeError):
        FieldModulus(True)


def test_small_arithmetic():
    F = FieldModulus(7)
    assert add(F(3), F(5)).value == 1
    assert mul(F(3), F(5)).value == 1
    assert neg(F(0)).value == 0
    assert inv(F(3)).value == 5
    assert inv(F(1)).value == 1
    assert power(F(3), 6).value == 1
    assert power(F(3), 2).value == 2
    assert (F(2) / F(4)).value == 4
    assert (3 - F(5)).value == 5
    assert F(-1).value == 6


def test_inverse_of_two_mod_101():
    # brute-force scan of all residues
    brute = next(x for x in range(101) if 2 * x % 101 == 1)
    assert brute == 51
    assert inv(Residue(2, 101)).value == 51


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        inv(Residue(0, 7))
    with pytest.raises(ZeroDivisionError):
        Residue(1, 7) / 0


def test_mixed_moduli():
    with pytest.raises(ModulusMismatchError):
        Residue(1, 7) + Residue(1, 11)


def test_negative_power_rejected_by_power():
    with pytest.raises(ValueError):
        power(Residue(3, 7), -1)
    assert (Residue(3, 7) ** -1).value == 5


def test_fermat_1009():
    for g in range(1, 1009, 37):
        assert power(Residue(g, 1009), 1008).value == 1


@given(st.sampled_from(SMALL_PRIMES + [1009, 65537]), st.data())
def test_field_axioms(p, data):
    x, y, z = (Residue(data.draw(st.integers(0, p - 1)), p) for _ in range(3))
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == Residue(0, p)
    if x.value:
        assert (x * x.inverse()).value == 1
    assert (x ** (p - 1)).value == (1 if x.value else 0)


def _brute_primitive_root(p):
    for g in range(2, p):
        if len({pow(g, k, p) for k in range(1, p)}) == p - 1:
            return g


@pytest.mark.parametrize("p,g", [(3, 2), (7, 3), (101, 2), (1009, 11), (2003, 5)])
def test_primitive_root_oracle(p, g):
    assert _brute_primitive_root(p) == g
    assert find_primitive_root(p).value == g


@pytest.mark.parametrize("p", SMALL_PRIMES + [97, 1009])
def test_order_matches_brute_force(p):
    for g in range(1, p):
        k, x = 1, g
        while x != 1:
            x = x * g % p
            k += 1
        assert multiplicative_order(g, p) == k
        assert is_primitive_root(g, p) == (k == p - 1)


def test_factorize_and_divisors():
    assert factorize(1008) == {2: 4, 3: 2, 7: 1}
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    for n in range(1, 500):
        assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


def test_subgroup_examples():
    assert subgroup_elements(7, 3) == [1, 2, 4]
    assert subgroup_elements(7, 1) == [1]
    assert subgroup_elements(7, 6) == [1, 2, 3, 4, 5, 6]
    with pytest.raises(ValueError):
        subgroup_elements(7, 4)
    assert subgroup(7, 3).elements == (1, 2, 4)


@pytest.mark.parametrize("p", [13, 101, 1009])
def test_subgroups_are_closed_and_unique(p):
    for d in divisors(p - 1):
        G = set(subgroup_elements(p, d))
        assert len(G) == d
        assert {x * y % p for x in G for y in G} == G
        # the unique subgroup of order d is the set of d-th roots of unity
        assert G == {x for x in range(1, p) if pow(x, d, p) == 1}


@pytest.mark.parametrize("p", [3, 7, 101, 1009])
def test_inverse_table(p):
    t = inverse_table(p)
    assert t[0] == 0
    x = np.arange(1, p)
    assert np.all(x * t[1:] % p == 1)


def test_inverse_array_large_modulus():
    p = 2_147_483_647
    x = np.array([0, 1, 2, 12345, p - 1], dtype=np.int64)
    inv_x = inverse_array(x, p)
    assert inv_x[0] == 0
    assert all(int(a) * int(b) % p == 1 for a, b in zip(x[1:], inv_x[1:]))
