"""Exponential sums over powers of a primitive root, and the hole statistic.

e_p(t) = exp(2πi t / p) is always evaluated from the reduced residue t, and
sums are accumulated with ``math.fsum`` on real and imaginary parts separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .prime_field import FieldModulus, as_modulus, find_primitive_root, is_primitive_root
from .sets import ResidueSet, additive_energy

_CHUNK = 1 << 20


@dataclass(frozen=True)
class ExpSumSpec:
    """Validated parameters: modulus, primitive root g, frequency a, ranges."""

    modulus: FieldModulus
    g: int
    a: int
    N: int | None = None
    X: int | None = None
    Y: int | None = None

    @classmethod
    def make(cls, p, a, *, N=None, X=None, Y=None, g=None) -> ExpSumSpec:
        modulus = as_modulus(p)
        p = modulus.p
        if g is None:
            g = find_primitive_root(modulus).value
        g = int(g) % p
        if not is_primitive_root(g, p):
            raise ValueError(f"{g} is not a primitive root mod {p}")
        for name, v in (("N", N), ("X", X), ("Y", Y)):
            if v is not None and not 1 <= v <= p - 1:
                raise ValueError(f"{name} = {v} outside [1, p - 1]")
        if X is not None and Y is not None and X + Y > p:
            raise ValueError(f"X + Y = {X + Y} exceeds p: exponents x + y would wrap the period")
        return cls(modulus, g, int(a) % p, N, X, Y)

    @property
    def p(self) -> int:
        return self.modulus.p


def _ep(t: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    theta = (2.0 * math.pi / p) * (np.asarray(t, dtype=np.int64) % p)
    return np.cos(theta), np.sin(theta)


def weighted_exp_sum(residues: np.ndarray, weights: np.ndarray | None, p: int) -> complex:
    """Σ w_j e_p(t_j), compensated."""
    c, s = _ep(residues, p)
    if weights is not None:
        c, s = c * weights, s * weights
    return complex(math.fsum(c), math.fsum(s))


def power_residues(g: int, start: int, count: int, p: int, a: int = 1) -> np.ndarray:
    """[a g^start, a g^(start+1), ...] mod p, count terms."""
    out = np.empty(count, dtype=np.int64)
    x = a * pow(g, start, p) % p
    for i in range(count):
        out[i] = x
        x = x * g % p
    return out


def single_sum(p, a: int, N: int, g: int | None = None) -> complex:
    """S(a, N) = Σ_{n=1}^N e_p(a g^n)."""
    spec = ExpSumSpec.make(p, a, N=N, g=g)
    if spec.a == 0:
        raise ValueError("a must be nonzero")
    return weighted_exp_sum(power_residues(spec.g, 1, N, spec.p, spec.a), None, spec.p)


def double_sum(p, a: int, X: int, Y: int, g: int | None = None) -> complex:
    """Σ_{x<=X} Σ_{y<=Y} e_p(a g^{x+y}) via the trapezoidal weights of x + y."""
    spec = ExpSumSpec.make(p, a, X=X, Y=Y, g=g)
    if spec.a == 0:
        raise ValueError("a must be nonzero")
    t = np.arange(2, X + Y + 1)
    weights = np.minimum.reduce([t - 1, np.full_like(t, X), np.full_like(t, Y), X + Y + 1 - t])
    residues = power_residues(spec.g, 2, len(t), spec.p, spec.a)
    return weighted_exp_sum(residues, weights.astype(float), spec.p)


def double_sum_naive(p, a: int, X: int, Y: int, g: int | None = None) -> complex:
    """The X*Y double loop, with g^{x+y} formed as g^x * g^y."""
    spec = ExpSumSpec.make(p, a, X=X, Y=Y, g=g)
    P = spec.p
    gx = np.array([pow(spec.g, x, P) for x in range(1, X + 1)], dtype=np.int64)
    gy = np.array([pow(spec.g, y, P) for y in range(1, Y + 1)], dtype=np.int64)
    terms = (spec.a * (gx[:, None] * gy[None, :] % P)) % P
    return weighted_exp_sum(terms.ravel(), None, P)


def _fourier_moments(A: ResidueSet, powers: tuple[int, ...]) -> dict[int, float]:
    """Σ_{a in F_p} |Σ_{x in A} e_p(ax)|^q for each q in powers."""
    p = A.p
    x = A.array
    rows = max(1, _CHUNK // max(1, len(x)))
    partial: dict[int, list[float]] = {q: [] for q in powers}
    for start in range(0, p, rows):
        a = np.arange(start, min(p, start + rows), dtype=np.int64)
        c, s = _ep(a[:, None] * x[None, :] % p, p)
        mag2 = c.sum(axis=1) ** 2 + s.sum(axis=1) ** 2
        for q in powers:
            partial[q].append(math.fsum(mag2 ** (q // 2)))
    return {q: math.fsum(v) for q, v in partial.items()}


def parseval_check(A: ResidueSet) -> tuple[float, int]:
    """(Σ_a |Â(a)|^2, p|A|)."""
    return _fourier_moments(A, (2,))[2], A.p * len(A)


def fourth_moment(A: ResidueSet) -> tuple[float, int]:
    """(Σ_a |Â(a)|^4, p E(A)); equal by orthogonality of characters."""
    return _fourier_moments(A, (4,))[4], A.p * additive_energy(A).value


def power_set(p, N: int, g: int | None = None) -> ResidueSet:
    """{g^n : 1 <= n <= N}."""
    spec = ExpSumSpec.make(p, 1, N=N, g=g)
    return ResidueSet(spec.modulus, power_residues(spec.g, 1, N, spec.p))


def hole_size(p, a: int, N: int, g: int | None = None) -> int:
    """Largest circular gap between consecutive residues of {a g^n : n <= N}.

    A gap is a difference of neighbours on Z/p, the wraparound included, so a
    lone point leaves a gap of p and all of F_p^* leaves 2 (across 0).
    """
    spec = ExpSumSpec.make(p, a, N=N, g=g)
    if spec.a == 0:
        raise ValueError("a must be nonzero")
    r = np.unique(power_residues(spec.g, 1, N, spec.p, spec.a))
    wrap = int(r[0]) + spec.p - int(r[-1])
    inner = int(np.diff(r).max()) if len(r) > 1 else 0
    return max(wrap, inner)


def hole_bound_exponent(c: float, nu: int) -> float:
    """Larger exponent of the two-term hole bound at N = ceil(sqrt p), o(1) dropped.

    The bound reads p^{1 - c/8 - 1/(8ν)} + p^{1 - c/6 + 1/(12ν(ν+1))}, where
    c is the saving in a fourth-moment bound of the form p N^{3-c}.
    """
    return max(1 - c / 8 - 1 / (8 * nu), 1 - c / 6 + 1 / (12 * nu * (nu + 1)))


def hole_bound(p: int, c: float = 0.5, nu: int = 6) -> float:
    """Report-only value of the two-term bound with o(1) terms dropped."""
    return p ** (1 - c / 8 - 1 / (8 * nu)) + p ** (1 - c / 6 + 1 / (12 * nu * (nu + 1)))
