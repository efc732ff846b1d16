"""Exact rational geometry for two-user degrees-of-freedom regions.

A region is the intersection of closed halfspaces ``a1*d1 + a2*d2 <= b``
with the nonnegative quadrant. Every coefficient is a ``fractions.Fraction``
and no floating-point arithmetic enters any predicate, so vertex lists and
minimal facet sets are bit-stable and safe to freeze as golden values.

The quadrant constraints ``d1 >= 0`` and ``d2 >= 0`` are implicit: they are
never stored in a region's halfspace list, but every feasibility test
accounts for them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "Rational",
    "RegionError",
    "UnboundedRegion",
    "InfeasibleBound",
    "as_fraction",
    "Halfspace",
    "DofPoint",
    "DofRegion",
    "region_from_halfspaces",
    "contains",
    "is_subset",
    "equals",
    "boundary_slope",
    "mirrored",
    "fraction_to_str",
    "region_to_dict",
    "region_from_dict",
    "region_to_json",
    "region_from_json",
]

Rational = Union[int, str, Fraction]

# A vertex is an exact point (d1, d2).
Vertex = tuple[Fraction, Fraction]


class RegionError(Exception):
    """Base class for errors raised while building a region."""


class UnboundedRegion(RegionError):
    """The halfspace intersection is unbounded inside the quadrant."""


class InfeasibleBound(RegionError):
    """Some halfspace has b < 0 and therefore excludes the origin."""


def as_fraction(value: Rational) -> Fraction:
    """Coerce int/str/Fraction to Fraction. Floats are rejected outright
    so that rounding error can never leak into exact predicates."""
    if isinstance(value, float):
        raise TypeError(f"expected an exact rational, got float {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class Halfspace:
    """Closed halfspace a1*d1 + a2*d2 <= b.

    Coefficients are canonicalized at construction: the inequality is scaled
    by the unique positive rational that turns (a1, a2, b) into coprime
    integers. Two Halfspace values describe the same inequality iff they
    compare equal, which also makes structural equality of reduced regions
    meaningful.
    """

    a1: Fraction
    a2: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        a1 = as_fraction(self.a1)
        a2 = as_fraction(self.a2)
        b = as_fraction(self.b)
        if a1 == 0 and a2 == 0:
            raise ValueError("halfspace normal must be nonzero")
        mult = lcm(a1.denominator, a2.denominator, b.denominator)
        i1, i2, ib = int(a1 * mult), int(a2 * mult), int(b * mult)
        g = gcd(i1, i2, ib)
        object.__setattr__(self, "a1", Fraction(i1 // g))
        object.__setattr__(self, "a2", Fraction(i2 // g))
        object.__setattr__(self, "b", Fraction(ib // g))

    def evaluate(self, d1: Rational, d2: Rational) -> Fraction:
        return self.a1 * as_fraction(d1) + self.a2 * as_fraction(d2)

    def contains(self, d1: Rational, d2: Rational) -> bool:
        return self.evaluate(d1, d2) <= self.b


@dataclass(frozen=True)
class DofPoint:
    """A DoF pair in the closed nonnegative quadrant."""

    d1: Fraction
    d2: Fraction

    def __post_init__(self) -> None:
        d1 = as_fraction(self.d1)
        d2 = as_fraction(self.d2)
        if d1 < 0 or d2 < 0:
            raise ValueError(f"DoF pair must be nonnegative, got ({d1}, {d2})")
        object.__setattr__(self, "d1", d1)
        object.__setattr__(self, "d2", d2)

    def coords(self) -> Vertex:
        return (self.d1, self.d2)


@dataclass(frozen=True)
class DofRegion:
    """Bounded convex region: minimal halfspace list plus derived vertices.

    ``halfspaces`` holds only irredundant non-axis facets in a canonical
    order; ``vertices`` is the exact extreme-point list, lexicographically
    sorted. Build instances with :func:`region_from_halfspaces`, never by
    hand, so both invariants hold.
    """

    halfspaces: tuple[Halfspace, ...]
    vertices: tuple[Vertex, ...]
    tag: str = ""


# Implicit quadrant constraints, only ever used internally.
_AXES = (Halfspace(-1, 0, 0), Halfspace(0, -1, 0))


def _solve_pair(g: Halfspace, h: Halfspace) -> Optional[Vertex]:
    # Intersection point of the two boundary lines, if they are independent.
    det = g.a1 * h.a2 - g.a2 * h.a1
    if det == 0:
        return None
    d1 = (g.b * h.a2 - h.b * g.a2) / det
    d2 = (g.a1 * h.b - h.a1 * g.b) / det
    return (d1, d2)


def _feasible_vertices(cons: Sequence[Halfspace]) -> list[Vertex]:
    """All basic feasible points of the constraint list (axes included by
    the caller). In two dimensions these are exactly the extreme points."""
    found: set[Vertex] = set()
    for g, h in combinations(cons, 2):
        point = _solve_pair(g, h)
        if point is None:
            continue
        if all(c.contains(*point) for c in cons):
            found.add(point)
    return sorted(found)


def _ray_candidates(cons: Sequence[Halfspace]) -> list[Vertex]:
    # Candidate extreme rays of the recession cone {u >= 0 : a.u <= 0}.
    # Every extreme ray lies on some constraint boundary, so the axis
    # directions plus the two perpendiculars of each normal cover them all.
    cands: set[Vertex] = {(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))}
    for h in cons:
        for u in ((h.a2, -h.a1), (-h.a2, h.a1)):
            if u[0] >= 0 and u[1] >= 0 and u != (0, 0):
                cands.add((Fraction(u[0]), Fraction(u[1])))
    return sorted(cands)


def _recession_rays(cons: Sequence[Halfspace]) -> list[Vertex]:
    rays = []
    for u in _ray_candidates(cons):
        if all(c.a1 * u[0] + c.a2 * u[1] <= 0 for c in cons):
            rays.append(u)
    return rays


def _implied(h: Halfspace, cons: Sequence[Halfspace]) -> bool:
    """True iff the polyhedron cut out by ``cons`` already satisfies ``h``.

    The polyhedron may be unbounded, so both its extreme points and its
    recession rays are checked.
    """
    for u in _recession_rays(cons):
        if h.a1 * u[0] + h.a2 * u[1] > 0:
            return False
    return all(h.contains(*v) for v in _feasible_vertices(cons))


@lru_cache(maxsize=None)
def _reduce(halfspaces: tuple[Halfspace, ...]) -> tuple[tuple[Halfspace, ...], tuple[Vertex, ...]]:
    """Drop redundant halfspaces and enumerate vertices.

    ``halfspaces`` must already be deduplicated and canonically sorted; the
    cache makes repeated catalog constructions for the same inequality set
    essentially free.
    """
    cons = halfspaces + _AXES
    if _recession_rays(cons):
        raise UnboundedRegion(
            "halfspace intersection is unbounded within the quadrant"
        )
    kept = list(halfspaces)
    for h in list(kept):
        rest = tuple(x for x in kept if x is not h) + _AXES
        if _implied(h, rest):
            kept.remove(h)
    vertices = tuple(_feasible_vertices(tuple(kept) + _AXES))
    return tuple(kept), vertices


def _coerce_halfspace(h) -> Halfspace:
    if isinstance(h, Halfspace):
        return h
    return Halfspace(*h)


def region_from_halfspaces(halfspaces: Iterable, tag: str = "") -> DofRegion:
    """Build the canonical region cut out by ``halfspaces`` and the quadrant.

    Accepts Halfspace instances or (a1, a2, b) triples of exact rationals.
    Raises InfeasibleBound if some b < 0 (the origin is feasible otherwise,
    so the region is never empty) and UnboundedRegion if the intersection
    is unbounded. Input order and duplicates do not affect the result.
    """
    hs = tuple(_coerce_halfspace(h) for h in halfspaces)
    if not hs:
        raise ValueError("need at least one halfspace")
    for h in hs:
        if h.b < 0:
            raise InfeasibleBound(f"halfspace {h} excludes the origin")
    key = tuple(sorted(set(hs), key=lambda h: (h.a1, h.a2, h.b)))
    minimal, vertices = _reduce(key)
    return DofRegion(minimal, vertices, tag)


def _point_coords(point) -> Vertex:
    if isinstance(point, DofPoint):
        return point.coords()
    d1, d2 = point
    return (as_fraction(d1), as_fraction(d2))


def contains(region: DofRegion, point) -> bool:
    """Exact membership test. ``point`` is a DofPoint or an (d1, d2) pair."""
    d1, d2 = _point_coords(point)
    if d1 < 0 or d2 < 0:
        return False
    return all(h.contains(d1, d2) for h in region.halfspaces)


def is_subset(a: DofRegion, b: DofRegion) -> bool:
    """True iff a is contained in b. Both regions are bounded and convex,
    so checking a's vertices against b's facets is exact."""
    return all(h.contains(*v) for v in a.vertices for h in b.halfspaces)


def equals(a: DofRegion, b: DofRegion) -> bool:
    """Geometric equality, independent of how either region was described."""
    return is_subset(a, b) and is_subset(b, a)


def boundary_slope(region: DofRegion) -> Optional[Fraction]:
    """Slope of the unique slanted facet, or None.

    Returns the exact slope -a1/a2 when the reduced region has exactly one
    stored (non-axis) facet, and None when there are several. A single
    stored facet always has a1 > 0 and a2 > 0, otherwise the region would
    have been rejected as unbounded.
    """
    if len(region.halfspaces) != 1:
        return None
    h = region.halfspaces[0]
    if h.a2 == 0:
        return None
    return -h.a1 / h.a2


def mirrored(region: DofRegion) -> DofRegion:
    """The same region with the two users' roles exchanged (d1 <-> d2)."""
    swapped = [Halfspace(h.a2, h.a1, h.b) for h in region.halfspaces]
    return region_from_halfspaces(swapped, tag=region.tag)


def fraction_to_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def region_to_dict(region: DofRegion) -> dict:
    """Plain-dict form with "p/q" strings for every rational."""
    return {
        "halfspaces": [
            {
                "a1": fraction_to_str(h.a1),
                "a2": fraction_to_str(h.a2),
                "b": fraction_to_str(h.b),
            }
            for h in region.halfspaces
        ],
        "vertices": [[fraction_to_str(v[0]), fraction_to_str(v[1])] for v in region.vertices],
        "tag": region.tag,
    }


def region_from_dict(data: dict) -> DofRegion:
    """Rebuild a region from its dict form.

    Vertices, when present, are cross-checked against the reconstruction;
    a mismatch means the document was edited inconsistently and raises
    ValueError.
    """
    halfspaces = [
        Halfspace(Fraction(h["a1"]), Fraction(h["a2"]), Fraction(h["b"]))
        for h in data["halfspaces"]
    ]
    region = region_from_halfspaces(halfspaces, tag=data.get("tag", ""))
    if "vertices" in data:
        given = tuple(sorted((Fraction(v[0]), Fraction(v[1])) for v in data["vertices"]))
        if given != region.vertices:
            raise ValueError("vertex list does not match the stated halfspaces")
    return region


def region_to_json(region: DofRegion) -> str:
    """Canonical JSON: fixed key order and layout, so serialization
    round-trips byte for byte."""
    return json.dumps(region_to_dict(region), indent=2, sort_keys=True)


def region_from_json(text: str) -> DofRegion:
    return region_from_dict(json.loads(text))
