"""Exact arithmetic in F_p for odd primes p, primitive roots and subgroups."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_MODULUS = 2**31 - 1

# Deterministic for every n < 3.3e24, far beyond MAX_MODULUS.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class ModulusMismatchError(ValueError):
    """Operands live in different prime fields."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n <= 2**31 is instant)."""
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@dataclass(frozen=True)
class FieldModulus:
    p: int

    def __post_init__(self):
        p = self.p
        if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
            raise TypeError(f"modulus must be an integer, got {type(p).__name__}")
        object.__setattr__(self, "p", int(p))
        if p < 3:
            raise ValueError(f"modulus must be an odd prime >= 3, got {p}")
        if p > MAX_MODULUS:
            raise ValueError(f"modulus {p} exceeds 2**31 - 1")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")

    def __int__(self):
        return self.p

    def __repr__(self):
        return f"FieldModulus({self.p})"

    def __call__(self, value: int) -> Residue:
        return Residue(value, self)


@lru_cache(maxsize=None)
def _cached_modulus(p: int) -> FieldModulus:
    return FieldModulus(p)


def as_modulus(p: int | FieldModulus) -> FieldModulus:
    if isinstance(p, FieldModulus):
        return p
    return _cached_modulus(int(p))


@dataclass(frozen=True)
class Residue:
    """An element of F_p held by its canonical representative in [0, p)."""

    value: int
    modulus: FieldModulus

    def __init__(self, value: int, modulus: int | FieldModulus):
        modulus = as_modulus(modulus)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "value", int(value) % modulus.p)

    @property
    def p(self) -> int:
        return self.modulus.p

    def _coerce(self, other) -> Residue:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatchError(
                    f"cannot combine residues mod {self.p} and mod {other.p}")
            return other
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return Residue(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Residue(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Residue(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Residue(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = 1, self.value
        # square-and-multiply; 0**0 == 1
        while e:
            if e & 1:
                result = result * base % self.p
            base = base * base % self.p
            e >>= 1
        return Residue(result, self.modulus)

    def inverse(self) -> Residue:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        # extended Euclid
        r0, r1, s0, s1 = self.p, self.value, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        return Residue(s0, self.modulus)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Residue({self.value} mod {self.p})"


def add(a: Residue, b: Residue) -> Residue:
    return a + b


def sub(a: Residue, b: Residue) -> Residue:
    return a - b


def mul(a: Residue, b: Residue) -> Residue:
    return a * b


def neg(a: Residue) -> Residue:
    return -a


def inv(a: Residue) -> Residue:
    return a.inverse()


def power(a: Residue, e: int) -> Residue:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return a**e


def multiplicative_order(g: int, p: int | FieldModulus) -> int:
    p = as_modulus(p).p
    g %= p
    if g == 0:
        raise ZeroDivisionError("0 has no multiplicative order")
    order = p - 1
    for q in factorize(p - 1):
        while order % q == 0 and pow(g, order // q, p) == 1:
            order //= q
    return order


def is_primitive_root(g: int, p: int | FieldModulus) -> bool:
    p = as_modulus(p).p
    if g % p == 0:
        return False
    return all(pow(g, (p - 1) // q, p) != 1 for q in factorize(p - 1))


@lru_cache(maxsize=None)
def _smallest_primitive_root(p: int) -> int:
    g = 2
    while not is_primitive_root(g, p):
        g += 1
    return g


def find_primitive_root(p: int | FieldModulus) -> Residue:
    """Smallest g >= 2 generating F_p^*."""
    modulus = as_modulus(p)
    return Residue(_smallest_primitive_root(modulus.p), modulus)


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factorize(n).items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def subgroup_elements(p: int | FieldModulus, d: int) -> list[int]:
    p = as_modulus(p).p
    if d < 1 or (p - 1) % d:
        raise ValueError(f"subgroup order {d} does not divide p - 1 = {p - 1}")
    g = find_primitive_root(p).value
    step = pow(g, (p - 1) // d, p)
    out, x = [], 1
    for _ in range(d):
        out.append(x)
        x = x * step % p
    return sorted(out)


def subgroup(p: int | FieldModulus, d: int):
    """The unique multiplicative subgroup of order d, as a ResidueSet."""
    from .sets import ResidueSet

    return ResidueSet(p, subgroup_elements(p, d))


INVERSE_TABLE_LIMIT = 1 << 20


@lru_cache(maxsize=8)
def inverse_table(p: int) -> np.ndarray:
    """t[x] = x^{-1} mod p, with t[0] = 0; built from a primitive root's powers."""
    g = _smallest_primitive_root(p)
    powers = np.empty(p - 1, dtype=np.int64)
    x = 1
    for i in range(p - 1):
        powers[i] = x
        x = x * g % p
    table = np.zeros(p, dtype=np.int64)
    # (g^i)^{-1} = g^{p-1-i}
    table[powers] = np.roll(powers[::-1], 1)
    table.flags.writeable = False
    return table


def inverse_array(x: np.ndarray, p: int) -> np.ndarray:
    """Elementwise modular inverse; zeros map to zero."""
    x = np.asarray(x, dtype=np.int64) % p
    if p <= INVERSE_TABLE_LIMIT:
        return inverse_table(p)[x]
    result = np.ones_like(x)
    base = x.copy()
    e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return np.where(x == 0, 0, result)
