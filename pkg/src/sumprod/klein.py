"""Lines of PG(3, F_p) as points of the Klein quadric in PG(5, F_p).

Plücker coordinates are ordered (p01, p02, p03, p12, p13, p23) and the quadric
is p01 p23 - p02 p13 + p03 p12 = 0.  An alpha-plane is the set of all lines
through a point, a beta-plane the set of all lines inside a plane; both are
stored extensionally, which makes intersection a plain set operation.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

from .geometry import PLUCKER_PAIRS, ProjPlane3, ProjPoint3, all_planes, all_points, incident, normalize
from .prime_field import FieldModulus, ModulusMismatchError, as_modulus

IntersectionClass = Literal["point", "line", "empty", "equal"]


def quadric_form(c, p: int) -> int:
    p01, p02, p03, p12, p13, p23 = c
    return (p01 * p23 - p02 * p13 + p03 * p12) % p


def polar_form(c, d, p: int) -> int:
    p01, p02, p03, p12, p13, p23 = c
    q01, q02, q03, q12, q13, q23 = d
    return (p01 * q23 + p23 * q01 - p02 * q13 - p13 * q02 + p03 * q12 + p12 * q03) % p


class PluckerLine:
    """A line of PG(3, F_p) given by normalized Plücker coordinates."""

    __slots__ = ("coords", "modulus")

    def __init__(self, coords, modulus: int | FieldModulus):
        if len(coords) != 6:
            raise ValueError("expected 6 Plücker coordinates")
        modulus = as_modulus(modulus)
        coords = normalize(coords, modulus.p)
        if quadric_form(coords, modulus.p):
            raise ValueError(f"{coords} is not on the Klein quadric")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("PluckerLine is immutable")

    @property
    def p(self) -> int:
        return self.modulus.p

    def __eq__(self, other):
        if not isinstance(other, PluckerLine):
            return NotImplemented
        return self.modulus == other.modulus and self.coords == other.coords

    def __hash__(self):
        return hash((self.p, self.coords))

    def __repr__(self):
        return f"PluckerLine({self.coords}, p={self.p})"


def line_through(x: ProjPoint3, y: ProjPoint3) -> PluckerLine:
    if x.modulus != y.modulus:
        raise ModulusMismatchError("points over different fields")
    if x == y:
        raise ValueError("a line needs two distinct points")
    X, Y = x.coords, y.coords
    return PluckerLine([X[i] * Y[j] - X[j] * Y[i] for i, j in PLUCKER_PAIRS], x.modulus)


def line_of_intersection(h1: ProjPlane3, h2: ProjPlane3) -> PluckerLine:
    """The common line of two planes.

    The dual minors q_ij = u_i v_j - u_j v_i map to primal coordinates by the
    Hodge star: p01 = q23, p02 = -q13, p03 = q12, p12 = q03, p13 = -q02, p23 = q01.
    """
    if h1.modulus != h2.modulus:
        raise ModulusMismatchError("planes over different fields")
    if h1 == h2:
        raise ValueError("a line needs two distinct planes")
    u, v = h1.coords, h2.coords
    q = {(i, j): u[i] * v[j] - u[j] * v[i] for i, j in PLUCKER_PAIRS}
    primal = [q[2, 3], -q[1, 3], q[1, 2], q[0, 3], -q[0, 2], q[0, 1]]
    return PluckerLine(primal, h1.modulus)


def lines_meet(l1: PluckerLine, l2: PluckerLine) -> bool:
    if l1.modulus != l2.modulus:
        raise ModulusMismatchError("lines over different fields")
    return polar_form(l1.coords, l2.coords, l1.p) == 0


@dataclass(frozen=True)
class KleinPlane:
    kind: Literal["alpha", "beta"]
    anchor: ProjPoint3 | ProjPlane3
    members: frozenset[PluckerLine]

    def __len__(self):
        return len(self.members)


def alpha_plane(x: ProjPoint3) -> KleinPlane:
    """All lines through x."""
    members = frozenset(line_through(x, y) for y in all_points(x.modulus) if y != x)
    return KleinPlane("alpha", x, members)


def beta_plane(h: ProjPlane3) -> KleinPlane:
    """All lines lying in h."""
    members = frozenset(line_of_intersection(h, g) for g in all_planes(h.modulus) if g != h)
    return KleinPlane("beta", h, members)


def classify_intersection(k1: KleinPlane, k2: KleinPlane) -> IntersectionClass:
    if k1.kind == k2.kind and k1.anchor == k2.anchor:
        return "equal"
    p = k1.anchor.p
    size = len(k1.members & k2.members)
    if size == 0:
        return "empty"
    if size == 1:
        return "point"
    if size == p + 1:
        return "line"
    raise AssertionError(f"unexpected intersection of {size} lines")


@dataclass
class KleinSweep:
    """Outcome of an exhaustive check of the alpha/beta intersection laws."""

    p: int
    rows: list[tuple[int, int, bool, str]]
    mixed_violations: int
    same_type_pairs: int
    same_type_violations: int
    quadric_violations: int
    alpha_sizes: set[int]
    beta_sizes: set[int]

    @property
    def ok(self) -> bool:
        expected = {self.p**2 + self.p + 1}
        return (self.mixed_violations == 0 and self.same_type_violations == 0
                and self.quadric_violations == 0
                and self.alpha_sizes == expected and self.beta_sizes == expected)


def verify_intersection_laws(p: int | FieldModulus = 3) -> KleinSweep:
    """Check every (point, plane) pair and every same-type pair of PG(3, p)."""
    modulus = as_modulus(p)
    points, planes = all_points(modulus), all_planes(modulus)
    alphas = [alpha_plane(x) for x in points]
    betas = [beta_plane(h) for h in planes]
    rows = []
    mixed_bad = 0
    for i, (x, a) in enumerate(zip(points, alphas)):
        for j, (h, b) in enumerate(zip(planes, betas)):
            inc = incident(x, h)
            cls = classify_intersection(a, b)
            if cls != ("line" if inc else "empty"):
                mixed_bad += 1
            rows.append((i, j, inc, cls))
    same_pairs = same_bad = 0
    for family in (alphas, betas):
        for i in range(len(family)):
            for j in range(i + 1, len(family)):
                same_pairs += 1
                if classify_intersection(family[i], family[j]) != "point":
                    same_bad += 1
    quad_bad = sum(quadric_form(line.coords, modulus.p) != 0
                   for k in alphas + betas for line in k.members)
    return KleinSweep(modulus.p, rows, mixed_bad, same_pairs, same_bad, quad_bad,
                      {len(a) for a in alphas}, {len(b) for b in betas})


def write_sweep_csv(sweep: KleinSweep, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["point_id", "plane_id", "incident", "intersection_class"])
        for i, j, inc, cls in sweep.rows:
            w.writerow([i, j, int(inc), cls])
