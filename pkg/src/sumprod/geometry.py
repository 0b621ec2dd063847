"""Points and planes of PG(3, F_p), incidences and collinearity statistics.

Homogeneous vectors are normalized so the first nonzero coordinate is 1.
Points ``(X0, X1, X2, X3)`` and planes ``(π0, π1, π2, π3)`` are incident when
``π0 X0 + π1 X1 + π2 X2 + π3 X3 = 0``.  The affine point ``(x, y, z)`` embeds as
``(1, x, y, z)``.
"""

from __future__ import annotations

import csv
import itertools
import math
from collections import Counter
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .prime_field import FieldModulus, ModulusMismatchError, as_modulus, inverse_array
from .sets import ResidueSet, _same_modulus

DEFAULT_BUDGET = 10**6

# Index pairs of the six Plücker coordinates, in the order p01 p02 p03 p12 p13 p23.
PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class ArrangementBudgetError(MemoryError):
    """Requested arrangement exceeds the configured size budget."""


def normalize(vec: Sequence[int], p: int) -> tuple[int, ...]:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    vec = [int(v) % p for v in vec]
    for v in vec:
        if v:
            s = pow(v, p - 2, p)
            return tuple(x * s % p for x in vec)
    raise ValueError("the zero vector is not a projective point")


def normalize_rows(M: np.ndarray, p: int) -> np.ndarray:
    """Row-wise :func:`normalize`; rows must be nonzero."""
    M = np.asarray(M, dtype=np.int64) % p
    nz = M != 0
    if not nz.any(axis=1).all():
        raise ValueError("zero row")
    lead = M[np.arange(len(M)), nz.argmax(axis=1)]
    return M * inverse_array(lead, p)[:, None] % p


class _Proj:
    __slots__ = ("coords", "modulus")

    def __init__(self, coords: Sequence[int], modulus: int | FieldModulus):
        if len(coords) != 4:
            raise ValueError("expected 4 homogeneous coordinates")
        modulus = as_modulus(modulus)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coords", normalize(coords, modulus.p))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def p(self) -> int:
        return self.modulus.p

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.modulus == other.modulus and self.coords == other.coords

    def __hash__(self):
        return hash((type(self).__name__, self.p, self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return f"{type(self).__name__}({self.coords}, p={self.p})"


class ProjPoint3(_Proj):
    """A point of PG(3, F_p)."""

    __slots__ = ()


class ProjPlane3(_Proj):
    """A plane of PG(3, F_p), as its dual coordinate vector."""

    __slots__ = ()


def incident(x: ProjPoint3, h: ProjPlane3) -> bool:
    if x.modulus != h.modulus:
        raise ModulusMismatchError("point and plane over different fields")
    return sum(a * b for a, b in zip(x.coords, h.coords)) % x.p == 0


def all_points(p: int | FieldModulus) -> list[ProjPoint3]:
    """Every point of PG(3, F_p), (p^4 - 1)/(p - 1) of them."""
    p = as_modulus(p).p
    return [ProjPoint3(v, p) for v in _normalized_vectors(p)]


def all_planes(p: int | FieldModulus) -> list[ProjPlane3]:
    p = as_modulus(p).p
    return [ProjPlane3(v, p) for v in _normalized_vectors(p)]


def _normalized_vectors(p: int):
    for lead in range(4):
        for tail in itertools.product(range(p), repeat=3 - lead):
            yield (0,) * lead + (1,) + tail


def _minor_keys(V: np.ndarray, i: np.ndarray, j: np.ndarray, p: int) -> np.ndarray:
    """Normalized Plücker minors of the row pairs (i[t], j[t])."""
    X, Y = V[i], V[j]
    minors = np.stack([(X[:, a] * Y[:, b] - X[:, b] * Y[:, a]) % p for a, b in PLUCKER_PAIRS],
                      axis=1)
    return normalize_rows(minors, p)


def _pair_minor_keys(V: np.ndarray, i: int, p: int) -> np.ndarray:
    """Normalized minors of row i against rows i+1.., one row per pair."""
    j = np.arange(i + 1, len(V))
    return _minor_keys(V, np.full_like(j, i), j, p)


def _encode(rows: np.ndarray, p: int) -> np.ndarray:
    """Collapse normalized rows to comparable scalars (int64 when p^6 fits)."""
    if p**6 < 2**63:
        weights = np.array([p**j for j in range(5, -1, -1)], dtype=np.int64)
        return rows @ weights
    _, inverse = np.unique(rows, axis=0, return_inverse=True)
    return inverse.ravel()


def _anchor_blocks(n: int, target: int = 1 << 21):
    """Consecutive anchor ranges [lo, hi) whose pair counts stay near target."""
    lo = 0
    while lo < n - 1:
        hi, pairs = lo, 0
        while hi < n - 1 and (pairs == 0 or pairs + (n - 1 - hi) <= target):
            pairs += n - 1 - hi
            hi += 1
        yield lo, hi
        lo = hi


_OTHER_COLUMNS = np.array([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]])


def _block_pairs(n: int, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    """All pairs (i, j) with lo <= i < hi and i < j < n."""
    counts = np.arange(n - 1 - lo, n - 1 - hi, -1)
    i = np.repeat(np.arange(lo, hi), counts)
    offsets = np.arange(len(i)) - np.repeat(np.cumsum(counts) - counts, counts)
    return i, i + 1 + offsets


def _direction_keys(V: np.ndarray, i: np.ndarray, j: np.ndarray, p: int) -> np.ndarray:
    """Key < p^3 naming the line through rows i and j among lines through row i.

    With X = V[i] normalized at its leading column c, D = Y - Y_c X vanishes at
    c and its normalized remaining three coordinates identify the line.
    """
    X, Y = V[i], V[j]
    c = (X != 0).argmax(axis=1)
    D = (Y - Y[np.arange(len(c)), c][:, None] * X) % p
    D3 = normalize_rows(np.take_along_axis(D, _OTHER_COLUMNS[c], axis=1), p)
    return D3 @ np.array([p * p, p, 1], dtype=np.int64)


def max_collinear(vectors: np.ndarray, p: int) -> int:
    """Largest number of rows (distinct projective points) on a common line.

    Pairs (i, j), i < j, are grouped by anchor i and by the line they span.
    The first member of a line holding t rows anchors exactly t - 1 pairs of
    that line, so the largest group has k - 1 pairs.  Lines are keyed by
    direction from the anchor when anchor * p^3 fits in int64, otherwise by
    their normalized Plücker minors.
    """
    V = normalize_rows(vectors, p) if len(vectors) else np.zeros((0, 4), np.int64)
    n = len(V)
    if n == 0:
        raise ValueError("no elements")
    best = 1
    direct = n * p**3 < 2**62
    for lo, hi in _anchor_blocks(n):
        if n - lo <= best:
            break
        i, j = _block_pairs(n, lo, hi)
        if direct:
            combined = (i - lo) * p**3 + _direction_keys(V, i, j, p)
            _, runs = np.unique(combined, return_counts=True)
        else:
            keys = _encode(_minor_keys(V, i, j, p), p)
            order = np.lexsort((keys, i))
            ks, ia = keys[order], i[order]
            brk = np.flatnonzero((ks[1:] != ks[:-1]) | (ia[1:] != ia[:-1]))
            runs = np.diff(np.concatenate(([0], brk + 1, [len(ks)])))
        best = max(best, int(runs.max()) + 1)
    return best


def line_multiplicities(vectors: np.ndarray, p: int) -> dict[tuple[int, ...], int]:
    """Map each line spanned by >= 2 rows to its number of rows t.

    Every pair is hashed to its line; a line holding t rows is hit C(t, 2)
    times, from which t is recovered.
    """
    V = np.asarray(vectors, dtype=np.int64) % p
    pair_counts: Counter[tuple[int, ...]] = Counter()
    for i in range(len(V) - 1):
        rows = _pair_minor_keys(V, i, p)
        pair_counts.update(map(tuple, rows.tolist()))
    out = {}
    for line, c in pair_counts.items():
        t = (1 + math.isqrt(1 + 8 * c)) // 2
        if t * (t - 1) // 2 != c:
            raise AssertionError(f"pair count {c} is not triangular")
        out[line] = t
    return out


class Arrangement:
    """Finite sets of points and planes in PG(3, F_p).

    The collinearity statistics are computed on first access and cached; two
    threads racing on the first access compute the same value.
    """

    def __init__(self, points: Iterable[ProjPoint3], planes: Iterable[ProjPlane3],
                 modulus: int | FieldModulus | None = None):
        points = tuple(points)
        planes = tuple(planes)
        mods = {x.modulus for x in points + planes}
        if modulus is not None:
            mods.add(as_modulus(modulus))
        if len(mods) > 1:
            raise ModulusMismatchError("arrangement mixes fields")
        if not mods:
            raise ValueError("modulus required for an empty arrangement")
        self.modulus: FieldModulus = mods.pop()
        if len(set(points)) != len(points):
            raise ValueError("duplicate points")
        if len(set(planes)) != len(planes):
            raise ValueError("duplicate planes")
        self.points = points
        self.planes = planes

    @classmethod
    def from_arrays(cls, points: np.ndarray, planes: np.ndarray, modulus) -> Arrangement:
        modulus = as_modulus(modulus)
        return cls((ProjPoint3(r, modulus) for r in np.asarray(points).tolist()),
                   (ProjPlane3(r, modulus) for r in np.asarray(planes).tolist()), modulus)

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.planes)

    @cached_property
    def point_array(self) -> np.ndarray:
        return np.array([x.coords for x in self.points], dtype=np.int64).reshape(-1, 4)

    @cached_property
    def plane_array(self) -> np.ndarray:
        return np.array([h.coords for h in self.planes], dtype=np.int64).reshape(-1, 4)

    @cached_property
    def k_points(self) -> int:
        return max_collinear(self.point_array, self.p)

    @cached_property
    def k_planes(self) -> int:
        return max_collinear(self.plane_array, self.p)

    def __repr__(self):
        return f"Arrangement(p={self.p}, m={self.m}, n={self.n})"


def count_incidences(arr: Arrangement, method: str = "matrix") -> int:
    """|I(P, Π)|.

    ``method="naive"`` is the reference m*n double loop; ``"matrix"``
    evaluates the incidence form as a chunked integer matrix product.
    """
    if method == "naive":
        return sum(incident(x, h) for x in arr.points for h in arr.planes)
    if method != "matrix":
        raise ValueError(f"unknown method {method!r}")
    if arr.m == 0 or arr.n == 0:
        return 0
    P, H, p = arr.point_array, arr.plane_array.T, arr.p
    rows = max(1, (1 << 22) // arr.n)
    total = 0
    for start in range(0, arr.m, rows):
        block = P[start:start + rows]
        if p < 1 << 30:
            form = block @ H % p
        else:
            # four products near 2**62 would overflow int64 when summed
            form = np.zeros((len(block), arr.n), dtype=np.int64)
            for i in range(4):
                form = (form + block[:, i, None] * H[None, i, :] % p) % p
        total += int(np.count_nonzero(form == 0))
    return total


def max_collinear_planes(arr: Arrangement) -> int:
    if arr.n < 1:
        raise ValueError("arrangement has no planes")
    return arr.k_planes


def max_collinear_points(arr: Arrangement) -> int:
    if arr.m < 1:
        raise ValueError("arrangement has no points")
    return arr.k_points


def a_plus_bc_arrays(A: ResidueSet, B: ResidueSet, C: ResidueSet,
                    budget: int = DEFAULT_BUDGET) -> tuple[np.ndarray, np.ndarray]:
    """Raw (unnormalized) point and plane rows of the A + BC arrangement.

    Points (1, a, c, b') and planes (-a', 1, b, -c'): the point lies on the
    plane exactly when a + bc = a' + b'c'.
    """
    modulus = _same_modulus(A, B, C)
    m = len(A) * len(B) * len(C)
    if m > budget:
        raise ArrangementBudgetError(f"|A||B||C| = {m} exceeds budget {budget}")
    p = modulus.p
    a, b, c = (np.array(s.elements, dtype=np.int64) for s in (A, B, C))
    ga, gc, gb = (g.ravel() for g in np.meshgrid(a, c, b, indexing="ij"))
    points = np.stack([np.ones_like(ga), ga, gc, gb], axis=1)
    ha, hb, hc = (g.ravel() for g in np.meshgrid(a, b, c, indexing="ij"))
    planes = np.stack([-ha % p, np.ones_like(ha), hb, -hc % p], axis=1)
    return points, planes


def build_theorem2_arrangement(A: ResidueSet, B: ResidueSet, C: ResidueSet,
                               budget: int = DEFAULT_BUDGET) -> Arrangement:
    points, planes = a_plus_bc_arrays(A, B, C, budget)
    return Arrangement.from_arrays(points, planes, A.modulus)


def theorem1_rhs(m: int, n: int, k: int) -> float:
    """m * sqrt(n) + k * m, with no constant attached."""
    return m * math.sqrt(n) + k * m


def write_arrangement_csv(arr: Arrangement, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "c0", "c1", "c2", "c3"])
        for x in arr.points:
            w.writerow(["point", *x.coords])
        for h in arr.planes:
            w.writerow(["plane", *h.coords])
