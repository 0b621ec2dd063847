"""Finite subsets of F_p, set arithmetic, representation functions and energies.

All counting is exact.  Pair values are produced with numpy in row chunks and
tallied with a dense ``bincount`` when p is small enough, otherwise with
``np.unique``; the result is always stored sparsely.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Literal

import numpy as np

from .prime_field import (
    FieldModulus,
    ModulusMismatchError,
    Residue,
    as_modulus,
    inverse_array,
)

Law = Literal["sum", "difference", "product", "ratio"]
Kind = Literal["additive", "multiplicative"]

DENSE_LIMIT = 1 << 24
_CHUNK = 1 << 21


class SetFileError(ValueError):
    """Malformed set file."""


class ResidueSet:
    """An immutable, sorted, duplicate-free subset of F_p.

    Values are reduced mod p on construction, so ``ResidueSet(7, [8, 1])`` is
    ``{1}``.  Use :func:`load_set` for strict parsing.
    """

    __slots__ = ("modulus", "elements", "_array", "_members")

    def __init__(self, modulus: int | FieldModulus, values: Iterable[int] = ()):
        modulus = as_modulus(modulus)
        if isinstance(values, np.ndarray):
            elements = tuple(int(v) for v in np.unique(values.astype(np.int64) % modulus.p))
        else:
            elements = tuple(sorted({int(v) % modulus.p for v in values}))
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_array", None)
        object.__setattr__(self, "_members", frozenset(elements))

    def __setattr__(self, name, value):
        raise AttributeError("ResidueSet is immutable")

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def array(self) -> np.ndarray:
        if self._array is None:
            arr = np.array(self.elements, dtype=np.int64)
            arr.flags.writeable = False
            object.__setattr__(self, "_array", arr)
        return self._array

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return int(x) % self.p in self._members

    def __eq__(self, other):
        if not isinstance(other, ResidueSet):
            return NotImplemented
        return self.modulus == other.modulus and self.elements == other.elements

    def __hash__(self):
        return hash((self.p, self.elements))

    def __repr__(self):
        body = ", ".join(map(str, self.elements[:12]))
        if len(self) > 12:
            body += f", ... ({len(self)} elements)"
        return f"ResidueSet(p={self.p}, {{{body}}})"

    def __le__(self, other: ResidueSet) -> bool:
        _same_modulus(self, other)
        return self._members <= other._members

    def __and__(self, other: ResidueSet) -> ResidueSet:
        _same_modulus(self, other)
        return ResidueSet(self.modulus, self._members & other._members)

    def __or__(self, other: ResidueSet) -> ResidueSet:
        _same_modulus(self, other)
        return ResidueSet(self.modulus, self._members | other._members)

    def __sub__(self, other: ResidueSet) -> ResidueSet:
        _same_modulus(self, other)
        return ResidueSet(self.modulus, self._members - other._members)

    def without_zero(self) -> ResidueSet:
        return ResidueSet(self.modulus, self._members - {0})

    def negate(self) -> ResidueSet:
        return ResidueSet(self.modulus, (-self.array) % self.p)

    def inverse(self) -> ResidueSet:
        """A^{-1} = {a^{-1} : a in A, a != 0}."""
        return ResidueSet(self.modulus, inverse_array(self.without_zero().array, self.p))


def _same_modulus(*sets: ResidueSet) -> FieldModulus:
    modulus = sets[0].modulus
    for s in sets[1:]:
        if s.modulus != modulus:
            raise ModulusMismatchError(f"sets over F_{modulus.p} and F_{s.p}")
    return modulus


def _nonempty(*sets: ResidueSet):
    for s in sets:
        if len(s) == 0:
            raise ValueError("operand set is empty")


def _pair_chunks(a: np.ndarray, b: np.ndarray, law: Law, p: int):
    """Yield flat arrays of a∘b mod p over A x B, a few million at a time."""
    if law == "ratio":
        b = inverse_array(b[b != 0], p)
        op = np.multiply
    elif law == "product":
        op = np.multiply
    elif law == "sum":
        op = np.add
    elif law == "difference":
        op = np.subtract
    else:
        raise ValueError(f"unknown law {law!r}")
    if len(a) == 0 or len(b) == 0:
        return
    rows = max(1, _CHUNK // len(b))
    for start in range(0, len(a), rows):
        yield (op(a[start:start + rows, None], b[None, :]) % p).ravel()


def _tally(chunks, p: int) -> dict[int, int]:
    if p <= DENSE_LIMIT:
        counts = np.zeros(p, dtype=np.int64)
        for vals in chunks:
            counts += np.bincount(vals, minlength=p)
        support = np.flatnonzero(counts)
        return dict(zip(support.tolist(), counts[support].tolist()))
    total: Counter[int] = Counter()
    for vals in chunks:
        keys, cnt = np.unique(vals, return_counts=True)
        total.update(dict(zip(keys.tolist(), cnt.tolist())))
    return dict(total)


def _pair_set(A: ResidueSet, B: ResidueSet, law: Law) -> ResidueSet:
    modulus = _same_modulus(A, B)
    _nonempty(A, B)
    parts = list(_pair_chunks(A.array, B.array, law, modulus.p))
    if not parts:
        return ResidueSet(modulus)
    return ResidueSet(modulus, np.concatenate(parts))


def sumset(A: ResidueSet, B: ResidueSet) -> ResidueSet:
    return _pair_set(A, B, "sum")


def difference_set(A: ResidueSet, B: ResidueSet) -> ResidueSet:
    return _pair_set(A, B, "difference")


def product_set(A: ResidueSet, B: ResidueSet) -> ResidueSet:
    return _pair_set(A, B, "product")


def ratio_set(A: ResidueSet, B: ResidueSet) -> ResidueSet:
    """{a/b : a in A, b in B, b != 0}; zero divisors are skipped."""
    if len(B) and not B.without_zero():
        raise ZeroDivisionError("ratio set with divisor set {0}")
    return _pair_set(A, B, "ratio")


def dilate(a: int | Residue, A: ResidueSet) -> ResidueSet:
    a = int(a) % A.p
    if a == 0:
        raise ZeroDivisionError("dilation by zero")
    return ResidueSet(A.modulus, A.array * a % A.p)


def translate(a: int | Residue, A: ResidueSet) -> ResidueSet:
    return ResidueSet(A.modulus, (A.array + int(a)) % A.p)


def nfold_sum(A: ResidueSet, n: int) -> ResidueSet:
    """nA = A + ... + A (n times)."""
    if n < 1:
        raise ValueError("n must be positive")
    out = A
    for _ in range(n - 1):
        out = sumset(out, A)
    return out


def compose_a_plus_bc(A: ResidueSet, B: ResidueSet, C: ResidueSet) -> ResidueSet:
    """The set A + BC."""
    _same_modulus(A, B, C)
    _nonempty(A, B, C)
    return sumset(A, product_set(B, C))


@dataclass(frozen=True)
class RepFunction:
    """r(s) = #{(a, b) in A x B : a∘b = s}, stored on its support."""

    modulus: FieldModulus
    law: Law
    counts: dict[int, int] = field(repr=False)
    pairs: int
    skipped_zero_divisor: bool = False

    def __call__(self, s: int) -> int:
        return self.counts.get(int(s) % self.modulus.p, 0)

    def __len__(self):
        return len(self.counts)

    @property
    def support(self) -> ResidueSet:
        return ResidueSet(self.modulus, self.counts)

    def max(self) -> int:
        return max(self.counts.values(), default=0)

    def moment(self, k: float) -> int | float:
        """Σ_s r(s)^k; an exact integer for integral k."""
        hist = Counter(self.counts.values())
        if float(k).is_integer():
            k = int(k)
            return sum(c * r**k for r, c in hist.items())
        return math.fsum(c * float(r) ** k for r, c in hist.items())


def rep_function(A: ResidueSet, B: ResidueSet, law: Law = "sum") -> RepFunction:
    modulus = _same_modulus(A, B)
    skipped = False
    pairs = len(A) * len(B)
    if law == "ratio" and 0 in B:
        if not B.without_zero():
            raise ZeroDivisionError("ratio law with B ⊆ {0}")
        skipped = True
        pairs = len(A) * (len(B) - 1)
    counts = _tally(_pair_chunks(A.array, B.array, law, modulus.p), modulus.p)
    return RepFunction(modulus, law, counts, pairs, skipped)


@dataclass(frozen=True)
class EnergyValue:
    value: int | float
    order: float
    kind: Kind

    def __int__(self):
        return int(self.value)

    def __float__(self):
        return float(self.value)

    def __eq__(self, other):
        if isinstance(other, EnergyValue):
            return (self.value, self.order, self.kind) == (other.value, other.order, other.kind)
        if isinstance(other, (int, float)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.order, self.kind))


def additive_energy(A: ResidueSet, B: ResidueSet | None = None) -> EnergyValue:
    """E(A, B) = #{a1 + b1 = a2 + b2} = Σ_s r_{A+B}(s)^2."""
    B = A if B is None else B
    value = rep_function(A, B, "sum").moment(2)
    return EnergyValue(value, 2, "additive")


def energy_moment(A: ResidueSet, k: float, kind: Kind = "additive") -> EnergyValue:
    """E_k(A) = Σ_s r_{A-A}(s)^k, or the ratio analogue E^x_k(A).

    E_1 is |A|^2 by convention, which is also what the sum gives.
    """
    if k < 1:
        raise ValueError("moment order must be >= 1")
    if kind == "multiplicative":
        if 0 in A:
            raise ValueError("multiplicative energy of a set containing 0")
        law: Law = "ratio"
    elif kind == "additive":
        law = "difference"
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if len(A) == 0:
        return EnergyValue(0, k, kind)
    if k == 1:
        return EnergyValue(len(A) ** 2, 1, kind)
    return EnergyValue(rep_function(A, A, law).moment(k), k, kind)


def multiplicative_energy(A: ResidueSet, k: float = 2) -> EnergyValue:
    return energy_moment(A, k, "multiplicative")


def katz_koester_mult(A: ResidueSet, s: int | Residue) -> ResidueSet:
    """A ∩ sA."""
    s = int(s) % A.p
    if s == 0:
        raise ZeroDivisionError("s must be nonzero")
    if 0 in A:
        raise ValueError("A must not contain 0")
    return A & dilate(s, A)


def shifted_intersection(S: ResidueSet, s: int | Residue) -> ResidueSet:
    """S ∩ (S + s)."""
    return S & translate(s, S)


def bilinear_solution_count(A: ResidueSet, B: ResidueSet, C: ResidueSet) -> int:
    """#{(a,b,c,a',b',c') : a + bc = a' + b'c'} = Σ_x r(x)^2."""
    modulus = _same_modulus(A, B, C)
    p = modulus.p
    if not (len(A) and len(B) and len(C)):
        return 0
    bc = np.concatenate(list(_pair_chunks(B.array, C.array, "product", p)))
    r = _tally(_pair_chunks(A.array, bc, "sum", p), p)
    return RepFunction(modulus, "sum", r, len(A) * len(bc)).moment(2)


def write_set(A: ResidueSet, path: str | Path) -> None:
    lines = [f"# p={A.p}"] + [str(x) for x in A.elements]
    Path(path).write_text("\n".join(lines) + "\n")


def parse_set(text: str) -> ResidueSet:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# p="):
        raise SetFileError("first line must be '# p=<modulus>'")
    try:
        modulus = as_modulus(int(lines[0][4:].strip()))
    except ValueError as exc:
        raise SetFileError(f"bad modulus line {lines[0]!r}: {exc}") from None
    values: list[int] = []
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            raise SetFileError(f"line {lineno}: empty line")
        try:
            v = int(line)
        except ValueError:
            raise SetFileError(f"line {lineno}: not an integer: {line!r}") from None
        if not 0 <= v < modulus.p:
            raise SetFileError(f"line {lineno}: {v} out of range [0, {modulus.p})")
        if values and v == values[-1]:
            raise SetFileError(f"line {lineno}: duplicate value {v}")
        if values and v < values[-1]:
            raise SetFileError(f"line {lineno}: values not sorted ascending")
        values.append(v)
    return ResidueSet(modulus, values)


def load_set(path: str | Path) -> ResidueSet:
    return parse_set(Path(path).read_text())
