"""Charts, atlases and Voronoi manifolds.

A chart is represented by its image only: a list of convex regions, a
Voronoi diagram, or a list of angle intervals.  Every relation here factors
through images, so domains and transition maps are never needed.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence, Union

from .axioms import AxiomReport, first_failure
from .descriptive import RGB, AngleInterval, FeatureSpace, quantize_color
from .exactgeom import (
    EMPTY,
    POLYGON,
    ConvexRegion,
    Point2,
    intersect_convex,
)
from .finitetop import HypothesesNotSatisfied, ProximityRelation
from .voronoi import STRONGLY_NEAR, VoronoiDiagram, classify_regions

MAX_ATLAS = 12

Image = Union[tuple[ConvexRegion, ...], VoronoiDiagram, tuple[AngleInterval, ...]]
Sample = tuple[str, Point2]


class DimensionMismatch(ValueError):
    pass


class AtlasTooLarge(ValueError):
    pass


class InternalConsistencyError(AssertionError):
    """An implication that must hold for any correct implementation failed."""


@dataclass(frozen=True)
class Chart:
    id: str
    image: Image
    # optional coloring used by the painted probe: (region, rgb) pairs, first match wins
    paint: tuple[tuple[ConvexRegion, RGB], ...] = ()
    background: RGB = (255, 255, 255)

    def __post_init__(self):
        if isinstance(self.image, list):
            object.__setattr__(self, "image", tuple(self.image))
        if not isinstance(self.image, VoronoiDiagram):
            if not self.image:
                raise ValueError(f"chart {self.id}: empty image")
            if self.dimension == 2 and all(r.is_empty for r in self.image):
                raise ValueError(f"chart {self.id}: empty image")
            if self.dimension == 1 and all(iv.is_empty for iv in self.image):
                raise ValueError(f"chart {self.id}: empty image")

    @property
    def dimension(self) -> int:
        if isinstance(self.image, VoronoiDiagram):
            return 2
        return 1 if isinstance(self.image[0], AngleInterval) else 2

    @property
    def pieces(self) -> tuple:
        """Convex pieces (or intervals) whose union is the image."""
        if isinstance(self.image, VoronoiDiagram):
            return (self.image.box.region(),)
        return tuple(p for p in self.image if not _piece_empty(p))


def _piece_empty(p) -> bool:
    return p.is_empty


def _meet(a, b):
    """Intersection of two pieces of the same dimension, or ``None``."""
    if isinstance(a, AngleInterval):
        return a.intersect(b)
    r = intersect_convex(a, b)
    return None if r.kind == EMPTY else r


def _interiors_meet(a, b) -> bool:
    if isinstance(a, AngleInterval):
        m = a.intersect(b)
        return m is not None and m.lo < m.hi
    return intersect_convex(a, b).kind == POLYGON


@dataclass(frozen=True)
class Atlas:
    charts: tuple[Chart, ...]
    union_domain_flag: bool = True

    def __post_init__(self):
        object.__setattr__(self, "charts", tuple(self.charts))
        if not self.charts:
            raise ValueError("an atlas needs at least one chart")
        ids = [c.id for c in self.charts]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate chart ids")

    def __len__(self):
        return len(self.charts)


@dataclass(frozen=True)
class VoronoiChartedManifold:
    name: str
    charts: tuple[Chart, ...]

    def __post_init__(self):
        object.__setattr__(self, "charts", tuple(self.charts))
        for c in self.charts:
            if not isinstance(c.image, VoronoiDiagram):
                raise ValueError(f"chart {c.id} of {self.name} is not a Voronoi diagram")


@dataclass(frozen=True)
class NearnessWitness:
    kind: str
    region: Union[ConvexRegion, AngleInterval]

    def to_json(self) -> dict:
        from .io import region_to_json, interval_to_json  # local: io imports this module
        if isinstance(self.region, AngleInterval):
            return {"kind": self.kind, "interval": interval_to_json(self.region)}
        return {"kind": self.kind, "region": region_to_json(self.region)}


IDENTITY_ON_INTERSECTION = "IdentityOnIntersection"


def _check_dims(ci: Chart, cj: Chart) -> None:
    if ci.dimension != cj.dimension:
        raise DimensionMismatch(f"charts {ci.id} and {cj.id} have images of different dimension")


def _first_meet(ci: Chart, cj: Chart):
    _check_dims(ci, cj)
    for a in ci.pieces:
        for b in cj.pieces:
            m = _meet(a, b)
            if m is not None:
                return m
    return None


def charts_strongly_near(ci: Chart, cj: Chart) -> bool:
    """Images have nonempty intersection."""
    return _first_meet(ci, cj) is not None


def chart_near_witness(ci: Chart, cj: Chart) -> Optional[NearnessWitness]:
    """Identity-map witness for nearness of two charts.

    ``None`` means no witness was found, not that the charts are far: the
    general smooth-map nearness is only semi-decided here.
    """
    m = _first_meet(ci, cj)
    return None if m is None else NearnessWitness(IDENTITY_ON_INTERSECTION, m)


# -- manifold strong proximity axioms ----------------------------------------

ChartRelation = Callable[[Chart, Chart], bool]
FamilyRelation = Callable[[Chart, Sequence[Chart]], bool]


def geometric_family_near(ci: Chart, family: Sequence[Chart]) -> bool:
    """``ci`` near a union of charts: its image meets the union of their images."""
    return any(charts_strongly_near(ci, c) for c in family)


def union_is_chart_image(a: Atlas) -> Optional[tuple[str, str, str]]:
    """Best-effort check for two single-piece images whose union is a third image.

    Only single-piece 2-d images and single intervals are compared.  Returns
    the offending ids ``(i, j, k)`` or ``None``.
    """
    singles = [c for c in a.charts if len(c.pieces) == 1]
    for ci, cj in combinations(singles, 2):
        if ci.dimension != cj.dimension:
            continue
        pi, pj = ci.pieces[0], cj.pieces[0]
        for ck in singles:
            if ck.id in (ci.id, cj.id) or ck.dimension != ci.dimension:
                continue
            if _union_equals(pi, pj, ck.pieces[0]):
                return ci.id, cj.id, ck.id
    return None


def _union_equals(a, b, k) -> bool:
    if isinstance(a, AngleInterval):
        touching = a.meets(b) or any(
            x.hi == y.lo and not (x.hi_open and y.lo_open) for x, y in ((a, b), (b, a)))
        if not touching:
            return False
        lo, lo_open = min((a.lo, a.lo_open), (b.lo, b.lo_open))
        hi, hi_closed = max((a.hi, not a.hi_open), (b.hi, not b.hi_open))
        return (lo, lo_open, hi, not hi_closed) == (k.lo, k.lo_open, k.hi, k.hi_open)
    if k.kind != POLYGON:
        return False
    for r in (a, b):
        if not all(k.contains(v) for v in r.vertices):
            return False
    overlap = intersect_convex(a, b)
    # a, b inside k; equal areas then force equality of closed convex sets' union
    return a.area() + b.area() - overlap.area() == k.area()


def check_manifold_strong_axioms(a: Atlas, rel: ChartRelation = charts_strongly_near,
                                 family_rel: FamilyRelation = geometric_family_near) -> AxiomReport:
    """Verify M0-M4 for ``rel`` over the charts of ``a``.

    ``family_rel(c, H)`` says whether ``c`` is near the union of the charts
    in ``H``; the default compares images geometrically.  M2 is read with
    distinct indices on both sides.  Requires the atlas's union-domain flag.
    """
    n = len(a)
    if n > MAX_ATLAS:
        raise AtlasTooLarge(f"atlas has {n} charts; the checker enumerates subfamilies up to {MAX_ATLAS}")
    if not a.union_domain_flag:
        raise HypothesesNotSatisfied("union_domain_flag is false: some union of two chart domains is a domain")
    warnings = []
    clash = union_is_chart_image(a)
    if clash:
        warnings.append("images of {} and {} union to the image of {}".format(*clash))
    for i in range(n):
        for j in range(n):
            _check_dims(a.charts[i], a.charts[j])
    cs = a.charts
    table = [[bool(rel(cs[i], cs[j])) for j in range(n)] for i in range(n)]
    ids = [c.id for c in cs]
    results = []
    results.append(first_failure("M0", (
        (not family_rel(cs[i], []), ("empty", ids[i])) for i in range(n))))
    results.append(first_failure("M1", (
        (table[i][j] == table[j][i], (ids[i], ids[j])) for i in range(n) for j in range(n))))
    results.append(first_failure("M2", (
        (not table[i][j] or _first_meet(cs[i], cs[j]) is not None, (ids[i], ids[j]))
        for i in range(n) for j in range(n))))

    def m3_cases():
        for i in range(n):
            others = [h for h in range(n) if h != i]
            for mask in range(1, 1 << len(others)):
                fam = [others[k] for k in range(len(others)) if mask >> k & 1]
                if any(table[i][j] for j in fam):
                    yield family_rel(cs[i], [cs[h] for h in fam]), (ids[i], tuple(ids[h] for h in fam))

    results.append(first_failure("M3", m3_cases()))
    results.append(first_failure("M4", (
        (table[i][j] or not any(_interiors_meet(p, q) for p in cs[i].pieces for q in cs[j].pieces),
         (ids[i], ids[j]))
        for i in range(n) for j in range(n))))
    return AxiomReport(results, warnings=warnings)


def relation_from_pairs(pairs: Iterable[tuple[str, str]]) -> ChartRelation:
    """A chart relation given by an explicit list of related id pairs."""
    s = {tuple(p) for p in pairs}
    return lambda ci, cj: (ci.id, cj.id) in s


# -- Voronoi manifolds -------------------------------------------------------

@dataclass(frozen=True)
class ManifoldNearness:
    near: bool
    charts: Optional[tuple[str, str]] = None
    regions: Optional[tuple[int, int]] = None

    def to_json(self) -> dict:
        out: dict = {"near": self.near}
        if self.near:
            out["charts"] = list(self.charts)
            out["regions"] = list(self.regions)
        return out


def _bbox_overlap(a: ConvexRegion, b: ConvexRegion) -> bool:
    ax0, ay0, ax1, ay1 = a.bbox()
    bx0, by0, bx1, by1 = b.bbox()
    return ax0 <= bx1 and bx0 <= ax1 and ay0 <= by1 and by0 <= ay1


def voronoi_manifolds_strongly_near(m1: VoronoiChartedManifold,
                                    m2: VoronoiChartedManifold) -> ManifoldNearness:
    """First (lexicographic) cross-diagram region pair sharing more than one point."""
    for c1 in m1.charts:
        for c2 in m2.charts:
            d1, d2 = c1.image, c2.image
            for i, r1 in enumerate(d1.regions):
                for j, r2 in enumerate(d2.regions):
                    if _bbox_overlap(r1, r2) and classify_regions(r1, r2) == STRONGLY_NEAR:
                        return ManifoldNearness(True, (c1.id, c2.id), (i, j))
    return ManifoldNearness(False)


# -- descriptive chart intersection ------------------------------------------

def sample_image(chart: Chart, pitch: Fraction) -> tuple[Sample, ...]:
    """Points of the lattice ``pitch * Z^2`` lying in the (closed) image.

    The lattice is anchored at the origin, so overlapping images share
    their samples.  Order is row-major by ``(y, x)``.
    """
    if chart.dimension != 2:
        raise DimensionMismatch("descriptive intersection needs 2-d chart images")
    pitch = Fraction(pitch)
    if pitch <= 0:
        raise ValueError("grid pitch must be positive")
    regions = chart.image.regions if isinstance(chart.image, VoronoiDiagram) else chart.pieces
    return tuple((chart.id, p) for p in _lattice_points(tuple(regions), pitch))


@lru_cache(maxsize=2048)
def _lattice_points(regions: tuple[ConvexRegion, ...], pitch: Fraction) -> tuple[Point2, ...]:
    pts: set[Point2] = set()
    for r in regions:
        x0, y0, x1, y1 = r.bbox()
        for ky in range(math.ceil(y0 / pitch), math.floor(y1 / pitch) + 1):
            for kx in range(math.ceil(x0 / pitch), math.floor(x1 / pitch) + 1):
                p = Point2(kx * pitch, ky * pitch)
                if p not in pts and r.contains(p):
                    pts.add(p)
    return tuple(sorted(pts, key=lambda q: (q.y, q.x)))


Probe = Callable[[Sample], str]


def painted_probe(charts: Iterable[Chart], palette: Sequence[tuple[str, RGB]]) -> Probe:
    """Color-class probe: each chart's paint, quantized to the palette."""
    by_id = {c.id: c for c in charts}

    def phi(sample: Sample) -> str:
        cid, p = sample
        c = by_id[cid]
        for region, rgb in c.paint:
            if region.contains(p):
                return quantize_color(rgb, palette)
        return quantize_color(c.background, palette)

    return phi


@lru_cache(maxsize=4096)
def descriptive_chart_intersection(ui: Chart, vj: Chart, phi: Probe,
                                   pitch: Fraction = Fraction(1, 2)) -> tuple[Sample, ...]:
    """Samples of either image whose description lies in both image descriptions.

    Results are memoized on ``(ui, vj, phi, pitch)``; ``phi`` must be pure.
    """
    su, sv = sample_image(ui, pitch), sample_image(vj, pitch)
    du = {phi(x) for x in su}
    dv = {phi(x) for x in sv}
    both = du & dv
    return tuple(x for x in su + sv if phi(x) in both)


@dataclass(frozen=True)
class PairAudit:
    left: str
    right: str
    snd: bool
    snd_atlases: bool

    def to_json(self) -> dict:
        return {"left": self.left, "right": self.right, "snd": self.snd, "snd_atlases": self.snd_atlases}


@dataclass
class AtlasNearnessReport:
    near: bool
    witness: Optional[tuple[str, str]]
    pairs: list[PairAudit] = field(default_factory=list)

    @property
    def converse_failures(self) -> list[PairAudit]:
        """Pairs with a nonempty descriptive intersection that are not descriptively near."""
        return [p for p in self.pairs if p.snd_atlases and not p.snd]

    def to_json(self) -> dict:
        return {"near": self.near,
                "witness": list(self.witness) if self.witness else None,
                "pairs": [p.to_json() for p in self.pairs],
                "converse_failures": [p.to_json() for p in self.converse_failures]}


def atlases_descriptively_near(a1: Atlas, a2: Atlas, phi: Probe, fs: FeatureSpace,
                               strong: ProximityRelation,
                               pitch: Fraction = Fraction(1, 2)) -> AtlasNearnessReport:
    """Audit every cross pair of charts.

    For each pair, ``snd`` is descriptive strong nearness of the sampled
    images and ``snd_atlases`` is a nonempty descriptive chart intersection.
    The first implies the second whenever ``strong`` forces near sets to
    meet; a violation raises :class:`InternalConsistencyError`.
    """
    descriptions = {}
    for c in a1.charts + a2.charts:
        descriptions[id(c)] = frozenset(phi(x) for x in sample_image(c, pitch))
    pairs = []
    witness = None
    for ci in a1.charts:
        for cj in a2.charts:
            du, dv = descriptions[id(ci)], descriptions[id(cj)]
            snd = strong(fs.mask(du), fs.mask(dv))
            snd_atlases = bool(descriptive_chart_intersection(ci, cj, phi, pitch))
            if snd and not snd_atlases:
                raise InternalConsistencyError(
                    f"charts {ci.id} and {cj.id} are descriptively near but their descriptive intersection is empty")
            pairs.append(PairAudit(ci.id, cj.id, snd, snd_atlases))
            if snd and witness is None:
                witness = (ci.id, cj.id)
    return AtlasNearnessReport(witness is not None, witness, pairs)
