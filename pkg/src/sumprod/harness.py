"""Checkers that evaluate both sides of each sum-product inequality.

A checker returns a :class:`CheckerResult` holding one or more :class:`Claim`
rows.  Claims with suppressed constants are only ever reported as ratios.
Claims marked ``exact`` are constant-free (set inclusions, Cauchy-Schwarz,
Katz-Koester counting, character identities) and are asserted: with
``strict=True`` a violation raises :class:`ExactClaimViolation`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Literal

from . import expsums
from .geometry import build_theorem2_arrangement, count_incidences, theorem1_rhs
from .prime_field import as_modulus
from .sets import (
    ResidueSet,
    additive_energy,
    bilinear_solution_count,
    compose_a_plus_bc,
    difference_set,
    dilate,
    energy_moment,
    nfold_sum,
    product_set,
    ratio_set,
    rep_function,
    shifted_intersection,
    sumset,
)

Direction = Literal["lower", "upper", "equal"]


class ExactClaimViolation(AssertionError):
    """A constant-free inequality or identity failed."""


class NotInvariantError(ValueError):
    """Q is not invariant under multiplication by the subgroup."""


@dataclass(frozen=True)
class Claim:
    """One inequality instance: ``lhs >> rhs`` (lower), ``lhs << rhs`` (upper)
    or ``lhs == rhs`` (equal, relative tolerance ``tol``)."""

    name: str
    lhs: int | float
    rhs: int | float
    direction: Direction
    exact: bool = False
    rhs_alt: int | float | None = None
    tol: float = 0.0

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs

    @property
    def holds(self) -> bool | None:
        """Outcome of an exact claim; None when the claim carries a constant."""
        if not self.exact:
            return None
        return _compare(self.lhs, self.rhs, self.direction, self.tol)

    def holds_with_constant(self, constant: float) -> bool:
        if self.direction == "lower":
            return self.ratio >= constant
        if self.direction == "upper":
            return self.ratio <= constant
        return abs(self.ratio - 1) <= constant


def _compare(lhs, rhs, direction: Direction, tol: float) -> bool:
    if direction == "lower":
        return lhs >= rhs
    if direction == "upper":
        return lhs <= rhs
    if tol == 0:
        return lhs == rhs
    return abs(lhs - rhs) <= tol * abs(rhs)


@dataclass
class CheckerResult:
    checker_id: str
    params: dict
    claims: tuple[Claim, ...]
    flags: dict[str, bool]
    seed: int | None = None
    notes: dict = field(default_factory=dict)

    @property
    def primary(self) -> Claim:
        return self.claims[0]

    @property
    def lhs(self):
        return self.primary.lhs

    @property
    def rhs(self):
        return self.primary.rhs

    @property
    def rhs_alt(self):
        return self.primary.rhs_alt

    @property
    def ratio(self) -> float:
        return self.primary.ratio

    def claim(self, name: str) -> Claim:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def violations(self) -> list[Claim]:
        return [c for c in self.claims if c.holds is False]


def _finish(result: CheckerResult, strict: bool) -> CheckerResult:
    for c in result.claims:
        if c.rhs <= 0:
            raise ValueError(f"{result.checker_id}.{c.name}: rhs must be positive, got {c.rhs}")
    if strict and result.violations:
        bad = ", ".join(f"{c.name}: {c.lhs} vs {c.rhs}" for c in result.violations)
        raise ExactClaimViolation(f"{result.checker_id}: {bad}")
    return result


def below_power(x: int, p: int, num: int, den: int) -> bool:
    """x < p^(num/den), decided in exact integer arithmetic."""
    return x**den < p**num


def _nonempty(*sets: ResidueSet):
    for s in sets:
        if len(s) == 0:
            raise ValueError("checker inputs must be nonempty")


def _zero_free(*sets: ResidueSet):
    for s in sets:
        if 0 in s:
            raise ValueError("set must not contain 0")


def _sizes(*sets) -> list[int]:
    return [len(s) for s in sets]


# ---------------------------------------------------------------------------
# Incidences and A + BC


def check_T1(A: ResidueSet, B: ResidueSet, C: ResidueSet, *, strict: bool = True) -> CheckerResult:
    """Point-plane incidence bound on the A + BC arrangement."""
    _nonempty(A, B, C)
    arr = build_theorem2_arrangement(A, B, C)
    p = arr.p
    incidences = count_incidences(arr)
    m, n = max(arr.m, arr.n), min(arr.m, arr.n)
    k = arr.k_planes if arr.m >= arr.n else arr.k_points
    claims = (
        Claim("incidences", incidences, theorem1_rhs(m, n, k), "upper"),
        Claim("incidences_eq_bilinear", incidences, bilinear_solution_count(A, B, C), "equal", exact=True),
    )
    flags = {
        "n_le_p2": n <= p**2,
        "n_le_p2_over_16": 16 * n <= p**2,
        "m_ge_n": arr.m >= arr.n,
    }
    params = {"p": p, "sizes": _sizes(A, B, C), "m": arr.m, "n": arr.n,
              "k_planes": arr.k_planes, "k_points": arr.k_points}
    return _finish(CheckerResult("T1", params, claims, flags), strict)


def check_T2(A: ResidueSet, B: ResidueSet, C: ResidueSet, *, c: float = 1.0,
             strict: bool = True) -> CheckerResult:
    """|A + BC| against min(sqrt(|A||B||C|), |A||B||C|/M, p)."""
    _nonempty(A, B, C)
    p = A.p
    m = len(A) * len(B) * len(C)
    M = max(_sizes(A, B, C))
    size = len(compose_a_plus_bc(A, B, C))
    E = bilinear_solution_count(A, B, C)
    claims = (
        Claim("A+BC", size, min(math.sqrt(m), m / M, p), "lower"),
        Claim("six_variable_energy", E, m**1.5 + M * m, "upper"),
        Claim("cauchy_schwarz", size * E, m * m, "lower", exact=True),
    )
    flags = {"abc_le_cp2": m <= c * p**2}
    params = {"p": p, "sizes": _sizes(A, B, C), "M": M, "c": c}
    return _finish(CheckerResult("T2", params, claims, flags), strict)


def check_energy_T4(A: ResidueSet, B: ResidueSet, C: ResidueSet, *,
                    strict: bool = True) -> CheckerResult:
    """E(A, C) against (|A||BC|)^{3/2}|B|^{-1/2} + M|A||BC|/|B|.

    ``rhs`` takes M = max(|A|, |BC|) as in the statement, ``rhs_alt`` takes
    M = max(|A|, |B|, |BC|), the three sets the six-variable count is run on.
    """
    _nonempty(A, B, C)
    if 0 in B:
        raise ValueError("B must not contain 0")
    p = A.p
    BC = product_set(B, C)
    a, b, bc = len(A), len(B), len(BC)
    E = additive_energy(A, C).value

    def bound(M):
        return (a * bc) ** 1.5 * b**-0.5 + M * a * bc / b

    rear = bilinear_solution_count(A, BC, B.inverse())
    claims = (
        Claim("energy", E, bound(max(a, bc)), "upper", rhs_alt=bound(max(a, b, bc))),
        Claim("rearrangement", b * b * E, rear, "upper", exact=True),
    )
    flags = {"a_b_bc_le_p2": a * b * bc <= p**2}
    params = {"p": p, "sizes": _sizes(A, B, C), "BC": bc}
    return _finish(CheckerResult("energy_T4", params, claims, flags), strict)


# ---------------------------------------------------------------------------
# Sum-product


def check_sumprod(A: ResidueSet, *, strict: bool = True) -> CheckerResult:
    """max(|A±A|, |AA|) >> |A|^{6/5} and |A±A|^2 |AA|^3 >> |A|^6."""
    _nonempty(A)
    if not A.without_zero():
        raise ValueError("A:A is undefined for A ⊆ {0}")
    p, n = A.p, len(A)
    plus, minus = len(sumset(A, A)), len(difference_set(A, A))
    prod, quot = len(product_set(A, A)), len(ratio_set(A, A))
    E = additive_energy(A).value
    claims = (
        Claim("sumprod_plus", max(plus, prod), n ** 1.2, "lower"),
        Claim("sumprod_minus", max(minus, prod), n ** 1.2, "lower"),
        Claim("sumprod_ratio_plus", max(plus, quot), n ** 1.2, "lower"),
        Claim("sumprod_ratio_minus", max(minus, quot), n ** 1.2, "lower"),
        Claim("SP_plus", plus**2 * prod**3, n**6, "lower"),
        Claim("SP_minus", minus**2 * prod**3, n**6, "lower"),
        Claim("cauchy_schwarz_plus", E * plus, n**4, "lower", exact=True),
        Claim("cauchy_schwarz_minus", E * minus, n**4, "lower", exact=True),
    )
    flags = {"size_lt_p5_8": below_power(n, p, 5, 8)}
    params = {"p": p, "sizes": [n], "A+A": plus, "A-A": minus, "AA": prod, "A:A": quot}
    return _finish(CheckerResult("sumprod", params, claims, flags), strict)


def check_aux(A: ResidueSet, a: int = 1, *, strict: bool = True) -> CheckerResult:
    """Lower bounds for aA ± AA, A ± AA ± AA and, when 0 ∉ A, the K-variants."""
    _nonempty(A)
    p, n = A.p, len(A)
    if int(a) % p == 0:
        raise ValueError("a must be nonzero")
    AA = product_set(A, A)
    aA = dilate(a, A)
    K = len(AA) / n
    r32, r74 = min(n**1.5, p), min(n**1.75, p)
    claims = [
        Claim("aA+AA", len(sumset(aA, AA)), r32, "lower"),
        Claim("aA-AA", len(difference_set(aA, AA)), r32, "lower"),
        Claim("A+AA+AA", len(sumset(A, sumset(AA, AA))), r74, "lower"),
        Claim("A+AA-AA", len(sumset(A, difference_set(AA, AA))), r74, "lower"),
    ]
    zero_free = 0 not in A
    if zero_free:
        s32, s74 = min(K**0.5 * n**1.5, p), min(K**0.25 * n**1.75, p)
        AApAA = sumset(AA, AA)
        claims += [
            Claim("AA+AA", len(AApAA), s32, "lower"),
            Claim("AA-AA", len(difference_set(AA, AA)), s32, "lower"),
            Claim("AA+AA+AA", len(sumset(AApAA, AA)), s74, "lower"),
            Claim("AA+AA-AA", len(difference_set(AApAA, AA)), s74, "lower"),
        ]
    params = {"p": p, "sizes": [n], "a": int(a) % p, "K": K}
    return _finish(CheckerResult("aux", params, tuple(claims), {"zero_free": zero_free}), strict)


def check_3A(A: ResidueSet, *, strict: bool = True) -> CheckerResult:
    """|3A|^4 |AA|^9 >> |A|^16 and max(|3A|, |AA|) >> |A|^{16/13}."""
    _nonempty(A)
    p, n = A.p, len(A)
    t, prod = len(nfold_sum(A, 3)), len(product_set(A, A))
    claims = (
        Claim("3A", t**4 * prod**9, n**16, "lower"),
        Claim("3A_max", max(t, prod), n ** (16 / 13), "lower"),
    )
    flags = {"size_lt_p18_35": below_power(n, p, 18, 35)}
    params = {"p": p, "sizes": [n], "3A": t, "AA": prod}
    return _finish(CheckerResult("3A", params, claims, flags), strict)


def check_4A(A: ResidueSet, *, strict: bool = True) -> CheckerResult:
    """max(|4A|, |AA|) >> |A|^{36/29}."""
    _nonempty(A)
    p, n = A.p, len(A)
    f, prod = len(nfold_sum(A, 4)), len(product_set(A, A))
    claims = (Claim("4A_max", max(f, prod), n ** (36 / 29), "lower"),)
    flags = {"size_lt_p58_101": below_power(n, p, 58, 101)}
    params = {"p": p, "sizes": [n], "4A": f, "AA": prod}
    return _finish(CheckerResult("4A", params, claims, flags), strict)


# ---------------------------------------------------------------------------
# A(A ± A) and the Katz-Koester trick


def _general_form(A, B, C, D=None):
    """(lhs, rhs, hypothesis) of |A||B'||C| << (|B'||C|)^{1/2}|(A+C)B'|^{3/2} + |(A+C)B'|^2
    with B' = B, or B' = B + D when D is given."""
    Bp = B if D is None else sumset(B, D)
    prod = len(product_set(sumset(A, C), Bp))
    b, c = len(Bp), len(C)
    lhs = len(A) * b * c
    rhs = (b * c) ** 0.5 * prod**1.5 + prod**2
    return lhs, rhs, b * c * prod <= A.p ** 2


_VARIANTS = {
    "A(A+A)": (1, None),
    "A(A-A)": (-1, None),
    "(A+A)(A+eA)": (1, "eps"),
    "(A-A)(A+eA)": (-1, "eps"),
}


def check_A_times_sums(A: ResidueSet, variant: str = "A(A+A)", eps: int = 1,
                       general: tuple[ResidueSet, ...] | None = None, *,
                       strict: bool = True) -> CheckerResult:
    """|A(A±A)| >> |A|^{4/3} or |(A±A)(A+εA)| >> |A||A+εA|^{1/3}.

    The general forms are evaluated on the instantiation (A, A, ±A[, εA]) and,
    if ``general=(A, B, C[, D])`` is given, on those sets too.
    """
    _nonempty(A)
    if variant not in _VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; choose from {sorted(_VARIANTS)}")
    if eps not in (1, -1):
        raise ValueError("eps must be 1 or -1")
    p, n = A.p, len(A)
    sign, second = _VARIANTS[variant]
    C = A if sign == 1 else A.negate()
    flags: dict[str, bool] = {}
    if second is None:
        target = len(product_set(A, sumset(A, C)))
        claims = [Claim(variant, target, n ** (4 / 3), "lower")]
        glhs, grhs, ghyp = _general_form(A, A, C)
        flags["size_lt_p3_5"] = below_power(n, p, 3, 5)
    else:
        D = A if eps == 1 else A.negate()
        ApeA = len(sumset(A, D))
        target = len(product_set(sumset(A, C), sumset(A, D)))
        claims = [Claim(variant, target, n * ApeA ** (1 / 3), "lower")]
        glhs, grhs, ghyp = _general_form(A, A, C, D)
        # |A + εA|^{4/3} |A|^2 <= p^2, cubed
        flags["sum_eps_hyp"] = ApeA**4 * n**6 <= p**6
    claims.append(Claim("general_form", glhs, grhs, "upper"))
    flags["general_hyp"] = ghyp
    S = sumset(A, C)
    claims.append(Claim("katz_koester", n * len(C) ** 2, additive_energy(S, C).value,
                        "upper", exact=True))
    if general is not None:
        if len(general) not in (3, 4):
            raise ValueError("general takes (A, B, C) or (A, B, C, D)")
        _nonempty(*general)
        ulhs, urhs, uhyp = _general_form(*general)
        claims.append(Claim("user_general_form", ulhs, urhs, "upper"))
        flags["user_general_hyp"] = uhyp
    params = {"p": p, "sizes": [n], "variant": variant, "eps": eps}
    return _finish(CheckerResult("A_times_sums", params, tuple(claims), flags), strict)


def check_katz_koester(A: ResidueSet, C: ResidueSet, *, strict: bool = True) -> CheckerResult:
    """|A||C|^2 <= Σ_s |(A+C) ∩ (A+C+s)| |C ∩ (C+s)| = E(A+C, C)."""
    _nonempty(A, C)
    p = A.p
    S = sumset(A, C)
    E = additive_energy(S, C).value
    shifts = difference_set(C, C)
    min_shift = min(len(shifted_intersection(S, s)) for s in shifts)
    rS, rC = rep_function(S, S, "difference"), rep_function(C, C, "difference")
    weighted = sum(rS(s) * r for s, r in rC.counts.items())
    claims = (
        Claim("katz_koester", len(A) * len(C) ** 2, E, "upper", exact=True),
        Claim("shift_overlap", min_shift, len(A), "lower", exact=True),
        Claim("overlap_identity", weighted, E, "equal", exact=True),
    )
    params = {"p": p, "sizes": _sizes(A, C), "A+C": len(S)}
    return _finish(CheckerResult("katz_koester", params, claims, {}), strict)


# ---------------------------------------------------------------------------
# Energy connections


def _mult_moment(Q: ResidueSet, k: int) -> int:
    return energy_moment(Q, k, "multiplicative").value


def check_energy_connection(A: ResidueSet, k: int = 1, *, strict: bool = True) -> CheckerResult:
    """E(A)^{2k} E^x_k(A) << |A|^{3k} E^x_{3k}(AA) and
    |A|^{2k} E^x_{5k}(A)^2 << E^x_{6k}(AA) E^x_{4k}(A±A), plus the per-s step
    and the exact Katz-Koester inclusions behind them.

    E^{2k}(A) is read as the power (E(A))^{2k}.  Multiplicative moments of
    A ± A are taken over (A ± A) without 0.
    """
    _nonempty(A)
    _zero_free(A)
    if int(k) != k or k < 1:
        raise ValueError("k must be a positive integer")
    k = int(k)
    p, n = A.p, len(A)
    AA = product_set(A, A)
    sums = {"plus": sumset(A, A), "minus": difference_set(A, A)}
    E = additive_energy(A).value
    claims = [Claim("ec2", E ** (2 * k) * _mult_moment(A, k),
                    n ** (3 * k) * _mult_moment(AA, 3 * k), "upper")]
    skipped = []
    for tag, S in sums.items():
        S0 = S.without_zero()
        if not S0:
            # |A| = 1 gives A - A = {0}: no ratios, so the bound is vacuous
            skipped.append(f"ec1_{tag}")
            continue
        claims.append(Claim(f"ec1_{tag}", n ** (2 * k) * _mult_moment(A, 5 * k) ** 2,
                            _mult_moment(AA, 6 * k) * _mult_moment(S0, 4 * k), "upper"))

    incl = {"prod": [0, 0], "plus": [0, 0], "minus": [0, 0]}
    worst = {tag: (-1.0, 0, 1) for tag in sums}
    for s in ratio_set(A, A):
        As = A & dilate(s, A)
        AAs = AA & dilate(s, AA)
        X = product_set(A, As)
        incl["prod"][0] += len(X & AAs)
        incl["prod"][1] += len(X)
        for tag, S in sums.items():
            Ss = S & dilate(s, S)
            Y = sumset(As, As) if tag == "plus" else difference_set(As, As)
            incl[tag][0] += len(Y & Ss)
            incl[tag][1] += len(Y)
            lhs = n**k * len(As) ** (5 * k)
            rhs = len(AAs) ** (3 * k) * len(Ss) ** (2 * k)
            if lhs / rhs > worst[tag][0]:
                worst[tag] = (lhs / rhs, lhs, rhs)
    for tag in sums:
        _, lhs, rhs = worst[tag]
        claims.append(Claim(f"per_shift_{tag}", lhs, rhs, "upper"))
    for tag, (inside, total) in incl.items():
        claims.append(Claim(f"inclusion_{tag}", inside, total, "equal", exact=True))
    flags = {"a2_aa_le_p2": n * n * len(AA) <= p * p}
    params = {"p": p, "sizes": [n], "k": k, "AA": len(AA)}
    notes = {"energy_power": "E^{2k}(A) read as (E(A))^{2k}",
             "zero_in_sums": "multiplicative moments of A±A exclude 0"}
    if skipped:
        notes["skipped"] = ", ".join(skipped) + ": (A±A) \\ {0} is empty"
    return _finish(CheckerResult("energy_connection", params, tuple(claims), flags, notes=notes),
                   strict)


def check_critical_corollary(A: ResidueSet, *, strict: bool = True) -> CheckerResult:
    """E(A)^2 <= |A| E^x_3(AA) <= |A||AA| E^x(AA); the second step is exact."""
    _nonempty(A)
    _zero_free(A)
    p, n = A.p, len(A)
    AA = product_set(A, A)
    E = additive_energy(A).value
    E3 = _mult_moment(AA, 3)
    claims = (
        Claim("chain_first", E * E, n * E3, "upper"),
        Claim("chain_second", E3, len(AA) * _mult_moment(AA, 2), "upper", exact=True),
    )
    flags = {"a2_aa_le_p2": n * n * len(AA) <= p * p}
    params = {"p": p, "sizes": [n], "AA": len(AA)}
    return _finish(CheckerResult("critical_corollary", params, claims, flags), strict)


# ---------------------------------------------------------------------------
# Multiplicative subgroups and exponential sums


def is_subgroup(G: ResidueSet) -> bool:
    return len(G) > 0 and 0 not in G and product_set(G, G) == G


def is_invariant(Q: ResidueSet, G: ResidueSet) -> bool:
    return all(dilate(b, Q) == Q for b in G)


def check_subgroup_energy(G: ResidueSet, A: ResidueSet, Q: ResidueSet, *,
                          strict: bool = True) -> CheckerResult:
    """E(Γ, Q) << |Γ||Q|^{3/2} and E(A, Q) << |A|^{3/2}|Q|^{3/2}|Γ|^{-1/2} + M|A||Q|/|Γ|."""
    _nonempty(G, A, Q)
    if not is_subgroup(G):
        raise ValueError("Γ is not a multiplicative subgroup")
    if not is_invariant(Q, G):
        raise NotInvariantError("Q is not Γ-invariant")
    p = G.p
    g, a, q = len(G), len(A), len(Q)
    M = max(g, a, q)
    EA = additive_energy(A, Q).value
    EG = additive_energy(G, Q).value
    claims = (
        Claim("subgroup_energy", EG, g * q**1.5, "upper"),
        Claim("subgroup_energy_A", EA, a**1.5 * q**1.5 * g**-0.5 + M * a * q / g, "upper"),
        Claim("invariant_count", g * g * EA, bilinear_solution_count(A, G, Q), "equal", exact=True),
        Claim("trivial_bound", EG, g * g * q, "upper", exact=True),
    )
    flags = {"a_g_q_le_p2": a * g * q <= p * p, "g2_q_le_p2": g * g * q <= p * p}
    params = {"p": p, "sizes": [g, a, q]}
    return _finish(CheckerResult("subgroup_energy", params, claims, flags), strict)


def check_expsum_double(p: int, X: int, Y: int, a: int, g: int | None = None, *,
                        strict: bool = True) -> CheckerResult:
    p = as_modulus(p).p
    value = abs(expsums.double_sum(p, a, X, Y, g))
    claims = (Claim("double_sum", value, (X * Y) ** (13 / 16) * p ** (1 / 8), "upper"),)
    flags = {"x_lt_p2_3": below_power(X, p, 2, 3), "y_lt_p2_3": below_power(Y, p, 2, 3)}
    params = {"p": p, "sizes": [X, Y], "a": a % p}
    return _finish(CheckerResult("expsum_double", params, claims, flags), strict)


def check_expsum_single(p: int, N: int, a: int, g: int | None = None, *,
                        strict: bool = True) -> CheckerResult:
    p = as_modulus(p).p
    value = abs(expsums.single_sum(p, a, N, g))
    rhs = min(p ** (1 / 8) * N ** (5 / 8), p ** (1 / 4) * N ** (3 / 8))
    claims = (Claim("single_sum", value, rhs, "upper"),)
    flags = {"n_lt_p2_3": below_power(N, p, 2, 3)}
    params = {"p": p, "sizes": [N], "a": a % p}
    return _finish(CheckerResult("expsum_single", params, claims, flags), strict)


def check_fourth_moment(p: int, N: int, g: int | None = None, *,
                        strict: bool = True) -> CheckerResult:
    """Σ_a |S(a, N)|^4 << p N^{5/2}, with the identity Σ_a |S|^4 = p E({g^n})."""
    p = as_modulus(p).p
    A = expsums.power_set(p, N, g)
    moment, pE = expsums.fourth_moment(A)
    claims = (
        Claim("fourth_moment", moment, p * N**2.5, "upper"),
        Claim("moment_identity", moment, pE, "equal", exact=True, tol=1e-6),
    )
    flags = {"n_lt_p2_3": below_power(N, p, 2, 3)}
    params = {"p": p, "sizes": [N]}
    return _finish(CheckerResult("fourth_moment", params, claims, flags), strict)


def check_hole(p: int, a: int = 1, N: int | None = None, g: int | None = None, *,
               c: float = 0.5, nu: int = 6, strict: bool = True) -> CheckerResult:
    """Report H(N) against p^{1 - 41/504}; N defaults to ceil(sqrt p)."""
    p = as_modulus(p).p
    if N is None:
        N = math.isqrt(p - 1) + 1
    H = expsums.hole_size(p, a, N, g)
    exponent = expsums.hole_bound_exponent(c, nu)
    claims = (Claim("hole", H, p**exponent, "upper", rhs_alt=expsums.hole_bound(p, c, nu)),)
    params = {"p": p, "sizes": [N], "a": a % p, "log_p_H": math.log(H) / math.log(p),
              "bound_exponent": exponent, "c": c, "nu": nu}
    return _finish(CheckerResult("hole", params, claims, {}), strict)


def with_seed(result: CheckerResult, seed: int | None, **params) -> CheckerResult:
    return replace(result, seed=seed, params={**result.params, **params})
