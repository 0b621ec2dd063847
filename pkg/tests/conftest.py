"""Shared strategies and brute-force oracles.

The oracles here are deliberately naive loops over Python ints so they share
no code path with the vectorized implementations under test.
"""

from collections import Counter
from itertools import product

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from sumprod import ResidueSet

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101]


@st.composite
def residue_sets(draw, p=None, min_size=1, max_size=10, zero_free=False):
    if p is None:
        p = draw(st.sampled_from(SMALL_PRIMES))
    low = 1 if zero_free else 0
    max_size = min(max_size, p - low)
    vals = draw(st.sets(st.integers(low, p - 1), min_size=min_size, max_size=max_size))
    return ResidueSet(p, vals)


@st.composite
def set_pairs(draw, max_size=8, zero_free=False):
    p = draw(st.sampled_from(SMALL_PRIMES))
    A = draw(residue_sets(p=p, max_size=max_size, zero_free=zero_free))
    B = draw(residue_sets(p=p, max_size=max_size, zero_free=zero_free))
    return A, B


@st.composite
def set_triples(draw, max_size=5, zero_free=False):
    p = draw(st.sampled_from(SMALL_PRIMES))
    return tuple(draw(residue_sets(p=p, max_size=max_size, zero_free=zero_free))
                 for _ in range(3))


def brute_energy(A, B=None):
    B = A if B is None else B
    p = A.p
    return sum(1 for a1, a2, b1, b2 in product(A, A, B, B) if (a1 + b1 - a2 - b2) % p == 0)


def brute_mult_energy(A):
    p = A.p
    return sum(1 for a1, a2, b1, b2 in product(A, A, A, A) if (a1 * b1 - a2 * b2) % p == 0)


def brute_rep(A, B, law):
    p = A.p
    out = Counter()
    for a, b in product(A, B):
        if law == "sum":
            out[(a + b) % p] += 1
        elif law == "difference":
            out[(a - b) % p] += 1
        elif law == "product":
            out[a * b % p] += 1
        elif b % p:
            out[a * pow(b, p - 2, p) % p] += 1
    return out


def brute_bilinear(A, B, C):
    p = A.p
    return sum(1 for a, b, c, a2, b2, c2 in product(A, B, C, A, B, C)
               if (a + b * c - a2 - b2 * c2) % p == 0)


def brute_a_plus_bc(A, B, C):
    p = A.p
    return {(a + b * c) % p for a, b, c in product(A, B, C)}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
