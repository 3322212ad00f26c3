"""Voronoi diagrams as exact half-plane intersections.

Regions are clipped to an explicit box.  Two regions are *strongly near*
when they share more than one point; for distinct regions of one diagram
that means a common edge.  On top of that classification live the
strongly-hit / far-miss subbase on the family of regions, the smallest
open set containing a region, and brute-force checkers for the strong
proximity axioms and the region uniqueness property.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

from .axioms import AxiomReport, first_failure as _check
from .exactgeom import (
    EMPTY,
    POINT,
    POLYGON,
    SEGMENT,
    Box,
    ConvexRegion,
    EdgeTag,
    Point2,
    bisector_halfplane,
    convex_hull,
    cross,
    intersect_convex,
    intersect_halfplanes,
)

log = logging.getLogger(__name__)

STRONGLY_NEAR = "S"
NEAR_ONLY = "N"
FAR = "F"


@dataclass(frozen=True)
class SiteSet:
    sites: tuple[Point2, ...]
    box: Box

    def __post_init__(self):
        if not self.sites:
            raise ValueError("need at least one site")
        if len(set(self.sites)) != len(self.sites):
            raise ValueError("duplicate sites")
        for p in self.sites:
            if not self.box.strictly_contains(p):
                raise ValueError(f"site ({p.x}, {p.y}) is not strictly inside the box")

    def __len__(self):
        return len(self.sites)


def voronoi_region(p_index: int, s: SiteSet) -> ConvexRegion:
    if not 0 <= p_index < len(s.sites):
        raise IndexError(f"site index {p_index} out of range")
    p = s.sites[p_index]
    planes = [bisector_halfplane(p, q, EdgeTag("bisector", (p_index, j)))
              for j, q in enumerate(s.sites) if j != p_index]
    return intersect_halfplanes(planes, s.box)


@dataclass(frozen=True)
class VoronoiDiagram:
    site_set: SiteSet
    regions: tuple[ConvexRegion, ...]
    vertex_containment_ok: bool
    _pairs: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def sites(self) -> tuple[Point2, ...]:
        return self.site_set.sites

    @property
    def box(self) -> Box:
        return self.site_set.box

    def __len__(self):
        return len(self.regions)

    def pair_intersection(self, i: int, j: int) -> ConvexRegion:
        # the cache is filled lazily and only ever grows; values are pure
        key = (i, j) if i <= j else (j, i)
        hit = self._pairs.get(key)
        if hit is None:
            hit = intersect_convex(self.regions[key[0]], self.regions[key[1]])
            self._pairs[key] = hit
        return hit

    def touches_box(self, i: int) -> bool:
        return any(t.kind == "box" for _, _, t in self.regions[i].edges())


def build_diagram(s: SiteSet, warn_clip: bool = True) -> VoronoiDiagram:
    regions = tuple(voronoi_region(i, s) for i in range(len(s.sites)))
    for i, r in enumerate(regions):
        if r.kind != POLYGON or not r.strictly_contains(s.sites[i]):
            raise AssertionError(f"region {i} does not contain its site in its interior")
    ok = _vertex_containment(s, regions)
    if not ok and warn_clip:
        log.warning("some Voronoi vertices fall outside the box; "
                    "adjacency is relative to the clipped diagram")
    return VoronoiDiagram(s, regions, ok)


def _vertex_containment(s: SiteSet, regions: Sequence[ConvexRegion]) -> bool:
    """Whether every Voronoi vertex of the unclipped diagram is inside the box.

    Counting argument: with h sites on the hull boundary (n >= 3, not all
    collinear), the Voronoi vertices satisfy sum(deg - 2) = 2n - 2 - h.  Every
    vertex strictly inside the box shows up as a corner shared by its
    incident clipped regions, so the identity holds on the strictly interior
    corners iff no vertex was lost to clipping.
    """
    n = len(s.sites)
    if n <= 2:
        return True
    hull = convex_hull(s.sites, keep_collinear=True)
    if all(cross(s.sites[0], s.sites[1], p) == 0 for p in s.sites):
        return True
    owners: dict[Point2, int] = {}
    for r in regions:
        for v in r.vertices:
            if s.box.strictly_contains(v):
                owners[v] = owners.get(v, 0) + 1
    excess = sum(k - 2 for k in owners.values() if k >= 3)
    return excess == 2 * n - 2 - len(hull)


def vertex_containment_bruteforce(s: SiteSet) -> bool:
    """Same predicate by enumerating empty circumcircles of site triples.

    O(n^4); kept as an independent oracle for tests.
    """
    pts = s.sites
    for a, b, c in combinations(pts, 3):
        d = 2 * cross(a, b, c)
        if d == 0:
            continue
        # circumcenter by Cramer's rule on the two bisector equations
        b1, c1 = b - a, c - a
        ux = (c1.y * b1.norm2() - b1.y * c1.norm2()) / d
        uy = (b1.x * c1.norm2() - c1.x * b1.norm2()) / d
        center = Point2(a.x + ux, a.y + uy)
        r2 = (center - a).norm2()
        if any((center - q).norm2() < r2 for q in pts):
            continue
        if not s.box.strictly_contains(center):
            return False
    return True


def classify_regions(a: ConvexRegion, b: ConvexRegion) -> str:
    """"S" if the regions share more than one point, "N" for exactly one, else "F"."""
    kind = intersect_convex(a, b).kind
    if kind in (SEGMENT, POLYGON):
        return STRONGLY_NEAR
    if kind == POINT:
        return NEAR_ONLY
    return FAR


def classify_pair(d: VoronoiDiagram, i: int, j: int) -> str:
    if i == j:
        raise ValueError("classify_pair needs two distinct regions")
    kind = d.pair_intersection(i, j).kind
    if kind == POLYGON:
        raise AssertionError(f"regions {i} and {j} overlap in a polygon")
    return {SEGMENT: STRONGLY_NEAR, POINT: NEAR_ONLY, EMPTY: FAR}[kind]


def classification_matrix(d: VoronoiDiagram) -> list[list[str]]:
    """All-pairs classes; the diagonal is "S" (a region shares itself)."""
    n = len(d)
    m = [[STRONGLY_NEAR] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        m[i][j] = m[j][i] = classify_pair(d, i, j)
    return m


def strongly_near(d: VoronoiDiagram, i: int, j: int) -> bool:
    return i == j or classify_pair(d, i, j) == STRONGLY_NEAR


class _UnionGeometry:
    """"Share more than one point" between unions of regions.

    Decided from the pairwise intersections: the union of the pairwise
    pieces has two or more points iff some piece is a segment or polygon, or
    two pieces are distinct single points.
    """

    def __init__(self, d: VoronoiDiagram):
        self.d = d

    def near(self, left: Iterable[int], right: Iterable[int]) -> bool:
        points: set[Point2] = set()
        for i in left:
            for j in right:
                piece = self.d.regions[i] if i == j else self.d.pair_intersection(i, j)
                if piece.kind in (SEGMENT, POLYGON):
                    return True
                if piece.kind == POINT:
                    points.add(piece.vertices[0])
                    if len(points) > 1:
                        return True
        return False


def check_strong_axioms_on_regions(
    d: VoronoiDiagram,
    relation: Optional[Sequence[Sequence[bool]]] = None,
) -> AxiomReport:
    """Verify N0-N6 for the region relation over the family of regions.

    ``relation[i][j]`` is the table under test (default: the diagram's own
    strongly-near classification).  Unions of regions are compared with the
    geometric "more than one shared point" rule.  Single points enter N5 and
    N6 through the sites, with the singleton convention ``{x} near B`` iff
    ``x`` is interior to ``B``.
    """
    n = len(d)
    rel = relation if relation is not None else [
        [strongly_near(d, i, j) for j in range(n)] for i in range(n)]
    geo = _UnionGeometry(d)
    everything = range(n)
    results = []

    results.append(_check("N0", (
        case for j in everything for case in (
            (not geo.near([], [j]), ((), (j,))),
            (geo.near(everything, [j]), ("X", (j,))),
        )), "X = union of all regions; the empty family is far from everything"))

    results.append(_check("N1", (
        (bool(rel[i][j]) == bool(rel[j][i]), (i, j))
        for i in everything for j in everything)))

    results.append(_check("N2", (
        (not rel[i][j] or (i == j or not d.pair_intersection(i, j).is_empty), (i, j))
        for i in everything for j in everything)))

    def n3_cases():
        for i in everything:
            for j in everything:
                if not rel[i][j]:
                    continue
                # every region has nonempty interior, so each family through j qualifies
                families = [(j,)] + [(j, k) for k in everything if k != j]
                families.append(tuple(everything))
                for fam in families:
                    yield geo.near([i], fam), (i, j, fam)

    results.append(_check("N3", n3_cases(),
                          "checked for the single region, each two-region extension and the full family"))

    def n4_cases():
        for i in everything:
            for j in everything:
                interiors_meet = i == j or d.pair_intersection(i, j).kind == POLYGON
                yield (not interiors_meet or bool(rel[i][j])), (i, j)

    results.append(_check("N4", n4_cases(), "distinct regions have disjoint interiors"))

    def n5_cases():
        for i, p in enumerate(d.sites):
            for j, r in enumerate(d.regions):
                interior = r.strictly_contains(p)
                yield interior == (i == j), (i, j)

    results.append(_check("N5", n5_cases(), "each site lies in the interior of its own region only"))

    results.append(_check("N6", (
        ((d.sites[i] == d.sites[j]) == (i == j), (i, j))
        for i in everything for j in everything)))

    report = AxiomReport(results)
    if not d.vertex_containment_ok:
        report.warnings.append("clipped diagram: some Voronoi vertices lie outside the box")
    return report


# -- hypertopology on the family of regions --------------------------------

class SubbaseElement(NamedTuple):
    """``("hit", p)`` is int(V_p)^ and ``("miss", s)`` is V_s^+."""

    kind: str
    index: int


def subbase_membership(d: VoronoiDiagram, q: int, element: SubbaseElement) -> bool:
    kind, idx = element
    if not (0 <= idx < len(d) and 0 <= q < len(d)):
        raise IndexError("site index out of range")
    if kind == "hit":
        return q == idx or classify_pair(d, q, idx) == STRONGLY_NEAR
    if kind == "miss":
        return q != idx and classify_pair(d, q, idx) == FAR
    raise ValueError(f"unknown subbase element kind {kind!r}")


@dataclass(frozen=True)
class Neighborhood:
    center: int
    strongly_near: frozenset[int]
    disjoint: frozenset[int]

    def factors(self) -> list[SubbaseElement]:
        return ([SubbaseElement("hit", a) for a in sorted(self.strongly_near)]
                + [SubbaseElement("miss", b) for b in sorted(self.disjoint)])

    def touching(self, n: int) -> frozenset[int]:
        return frozenset(range(n)) - self.strongly_near - self.disjoint

    def to_json(self) -> dict:
        return {"center": self.center,
                "strongly_near": sorted(self.strongly_near),
                "disjoint": sorted(self.disjoint)}


def smallest_open_set(d: VoronoiDiagram, p: int) -> Neighborhood:
    """Indices whose hit/miss factors cut out the smallest open set around V_p.

    The center belongs to its own strongly-near family.
    """
    near = {p}
    far = set()
    for q in range(len(d)):
        if q == p:
            continue
        c = classify_pair(d, q, p)
        if c == STRONGLY_NEAR:
            near.add(q)
        elif c == FAR:
            far.add(q)
    return Neighborhood(p, frozenset(near), frozenset(far))


def neighborhood_members(d: VoronoiDiagram, nb: Neighborhood) -> list[int]:
    """Regions lying in every subbase factor of ``nb``."""
    factors = nb.factors()
    return [q for q in range(len(d))
            if all(subbase_membership(d, q, f) for f in factors)]


@dataclass
class UniquenessReport:
    passed: bool
    checked: list[int]
    outside_hypothesis: list[int]
    counterexamples: list[tuple[int, int]]
    boundary_counterexamples: list[tuple[int, int]]
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "checked": self.checked,
            "outside_hypothesis": self.outside_hypothesis,
            "counterexamples": [list(c) for c in self.counterexamples],
            "boundary_counterexamples": [list(c) for c in self.boundary_counterexamples],
            "warnings": list(self.warnings),
        }


def region_uniqueness_check(d: VoronoiDiagram) -> UniquenessReport:
    """Check that the smallest open set around V_p contains no other region.

    Enumerates every center p.  Regions cut by the box have no closed cycle
    of neighbours, which the uniqueness argument relies on; their
    enumeration result is reported separately under ``boundary_*`` and does
    not decide the verdict.
    """
    checked, outside = [], []
    bad, bad_boundary = [], []
    for p in range(len(d)):
        members = neighborhood_members(d, smallest_open_set(d, p))
        others = [(p, q) for q in members if q != p]
        if d.touches_box(p):
            outside.append(p)
            bad_boundary.extend(others)
        else:
            checked.append(p)
            bad.extend(others)
    rep = UniquenessReport(not bad, checked, outside, bad, bad_boundary)
    if not d.vertex_containment_ok:
        rep.warnings.append("clipped diagram: some Voronoi vertices lie outside the box")
    return rep


def shared_edge_on_bisector(d: VoronoiDiagram, i: int, j: int) -> bool:
    """A strongly-near pair's common segment lies on the i/j bisector line."""
    piece = d.pair_intersection(i, j)
    if piece.kind != SEGMENT:
        return False
    h = bisector_halfplane(d.sites[i], d.sites[j])
    return all(h.on_boundary(v) for v in piece.vertices)


def total_area(d: VoronoiDiagram) -> Fraction:
    return sum((r.area() for r in d.regions), Fraction(0))


def locate(d: VoronoiDiagram, x: Point2) -> list[int]:
    """Indices of regions containing ``x`` in their interior."""
    return [i for i, r in enumerate(d.regions) if r.strictly_contains(x)]


def relation_table(d: VoronoiDiagram, near: Callable[[int, int], bool]) -> list[list[bool]]:
    n = len(d)
    return [[near(i, j) for j in range(n)] for i in range(n)]
