"""Exact rational planar geometry.

Half-planes, convex regions and their intersections, all over
:class:`fractions.Fraction`.  Every predicate is decided exactly, so the
dimension of an intersection (polygon, segment, point or empty) is never
subject to round-off.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Union

RationalLike = Union[int, str, Fraction]

POLYGON = "polygon"
SEGMENT = "segment"
POINT = "point"
EMPTY = "empty"

KINDS = (POLYGON, SEGMENT, POINT, EMPTY)


def rational(value: RationalLike) -> Fraction:
    """Parse an exact rational from an int, a Fraction or a ``"p/q"`` string.

    Floats are rejected: they would smuggle binary round-off into exact code.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read an exact rational from {value!r}")


def format_rational(q: Fraction) -> str:
    """Inverse of :func:`rational` for serialization ("3", "-1/2")."""
    return str(q)


class Point2(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: RationalLike, y: RationalLike) -> "Point2":
        return cls(rational(x), rational(y))

    def __sub__(self, other):  # type: ignore[override]
        return Point2(self.x - other.x, self.y - other.y)

    def __add__(self, other):  # type: ignore[override]
        return Point2(self.x + other.x, self.y + other.y)

    def scale(self, k: Fraction) -> "Point2":
        return Point2(self.x * k, self.y * k)

    def dot(self, other: "Point2") -> Fraction:
        return self.x * other.x + self.y * other.y

    def norm2(self) -> Fraction:
        return self.x * self.x + self.y * self.y


def cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    """Twice the signed area of triangle ``o, a, b`` (positive if ccw)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


@dataclass(frozen=True)
class EdgeTag:
    """Provenance of a region edge.

    ``kind`` is ``"bisector"`` (with the generating site pair) or ``"box"``;
    polygon edges coming from another region's boundary keep that region's
    tag, edges from anonymous half-planes carry ``sites=None``.
    """

    kind: str
    sites: Optional[tuple[int, int]] = None

    def to_json(self):
        if self.kind == "box":
            return "box"
        if self.sites is None:
            return "bisector"
        return [self.sites[0], self.sites[1]]


BOX_TAG = EdgeTag("box")
ANON_TAG = EdgeTag("bisector")


@dataclass(frozen=True)
class HalfPlane:
    """The closed locus ``a*x + b*y <= c``."""

    a: Fraction
    b: Fraction
    c: Fraction
    tag: EdgeTag = field(default=ANON_TAG, compare=False)

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise ValueError("degenerate half-plane: (a, b) = (0, 0)")

    def value(self, p: Point2) -> Fraction:
        """Signed slack; <= 0 inside, == 0 on the boundary line."""
        return self.a * p.x + self.b * p.y - self.c

    def contains(self, p: Point2) -> bool:
        return self.value(p) <= 0

    def strictly_contains(self, p: Point2) -> bool:
        return self.value(p) < 0

    def on_boundary(self, p: Point2) -> bool:
        return self.value(p) == 0

    def complement_closure(self) -> "HalfPlane":
        return HalfPlane(-self.a, -self.b, -self.c, self.tag)

    def same_line(self, other: "HalfPlane") -> bool:
        # proportional (a, b, c), either orientation
        return (self.a * other.b == self.b * other.a
                and self.a * other.c == self.c * other.a
                and self.b * other.c == self.c * other.b)


def bisector_halfplane(p: Point2, q: Point2, tag: EdgeTag = ANON_TAG) -> HalfPlane:
    """Points at least as close to ``p`` as to ``q`` (Euclidean norm).

    ``|x-p|^2 <= |x-q|^2`` expands to ``2(q-p).x <= |q|^2 - |p|^2``.
    """
    if p == q:
        raise ValueError("coincident sites")
    return HalfPlane(2 * (q.x - p.x), 2 * (q.y - p.y), q.norm2() - p.norm2(), tag)


@dataclass(frozen=True)
class Box:
    xmin: Fraction
    ymin: Fraction
    xmax: Fraction
    ymax: Fraction

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError("invalid box: need xmin < xmax and ymin < ymax")

    @classmethod
    def of(cls, xmin, ymin, xmax, ymax) -> "Box":
        return cls(rational(xmin), rational(ymin), rational(xmax), rational(ymax))

    def corners(self) -> list[Point2]:
        return [Point2(self.xmin, self.ymin), Point2(self.xmax, self.ymin),
                Point2(self.xmax, self.ymax), Point2(self.xmin, self.ymax)]

    def halfplanes(self) -> list[HalfPlane]:
        one, zero = Fraction(1), Fraction(0)
        return [HalfPlane(-one, zero, -self.xmin, BOX_TAG),
                HalfPlane(one, zero, self.xmax, BOX_TAG),
                HalfPlane(zero, -one, -self.ymin, BOX_TAG),
                HalfPlane(zero, one, self.ymax, BOX_TAG)]

    def area(self) -> Fraction:
        return (self.xmax - self.xmin) * (self.ymax - self.ymin)

    def strictly_contains(self, p: Point2) -> bool:
        return self.xmin < p.x < self.xmax and self.ymin < p.y < self.ymax

    def on_boundary(self, p: Point2) -> bool:
        inside = self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax
        return inside and not self.strictly_contains(p)

    def region(self) -> "ConvexRegion":
        return ConvexRegion(POLYGON, tuple(self.corners()), (BOX_TAG,) * 4)

    def as_list(self) -> list[Fraction]:
        return [self.xmin, self.ymin, self.xmax, self.ymax]


@dataclass(frozen=True)
class ConvexRegion:
    """A closed convex set of dimension 2, 1, 0 or empty.

    Polygons are stored counterclockwise starting at the lexicographically
    smallest vertex; ``edge_tags[i]`` labels the edge from vertex ``i`` to
    vertex ``i+1``.  Segments store their endpoints in lexicographic order.
    Equality ignores tags, so two regions compare equal iff they are the
    same point set.
    """

    kind: str
    vertices: tuple[Point2, ...]
    edge_tags: tuple[EdgeTag, ...] = field(default=(), compare=False)

    def __post_init__(self):
        expected = {POLYGON: None, SEGMENT: 2, POINT: 1, EMPTY: 0}
        if self.kind not in expected:
            raise ValueError(f"unknown region kind {self.kind!r}")
        n = len(self.vertices)
        if self.kind == POLYGON:
            if n < 3:
                raise ValueError("polygon needs at least 3 vertices")
            if self.edge_tags and len(self.edge_tags) != n:
                raise ValueError("one edge tag per polygon edge")
        elif n != expected[self.kind]:
            raise ValueError(f"{self.kind} must have {expected[self.kind]} vertices")
        if self.kind == SEGMENT and self.vertices[0] == self.vertices[1]:
            raise ValueError("segment endpoints must differ")

    @property
    def is_empty(self) -> bool:
        return self.kind == EMPTY

    def area(self) -> Fraction:
        if self.kind != POLYGON:
            return Fraction(0)
        v = self.vertices
        s = Fraction(0)
        for i in range(len(v)):
            a, b = v[i], v[(i + 1) % len(v)]
            s += a.x * b.y - a.y * b.x
        return s / 2

    def halfplanes(self) -> list[HalfPlane]:
        """An H-representation of the region (tags preserved for polygons)."""
        v = self.vertices
        if self.kind == POLYGON:
            tags = self.edge_tags or (ANON_TAG,) * len(v)
            return [_edge_halfplane(v[i], v[(i + 1) % len(v)], tags[i])
                    for i in range(len(v))]
        if self.kind == SEGMENT:
            p, q = v
            d = q - p
            line = _edge_halfplane(p, q, ANON_TAG)
            return [line, line.complement_closure(),
                    HalfPlane(-d.x, -d.y, -d.dot(p)),
                    HalfPlane(d.x, d.y, d.dot(q))]
        if self.kind == POINT:
            (p,) = v
            one, zero = Fraction(1), Fraction(0)
            return [HalfPlane(one, zero, p.x), HalfPlane(-one, zero, -p.x),
                    HalfPlane(zero, one, p.y), HalfPlane(zero, -one, -p.y)]
        raise ValueError("the empty region has no half-plane representation")

    def contains(self, p: Point2) -> bool:
        if self.kind == EMPTY:
            return False
        return all(h.contains(p) for h in self.halfplanes())

    def strictly_contains(self, p: Point2) -> bool:
        """Membership in the (planar) interior; only polygons have one."""
        if self.kind != POLYGON:
            return False
        return all(h.strictly_contains(p) for h in self.halfplanes())

    def edges(self) -> list[tuple[Point2, Point2, EdgeTag]]:
        if self.kind != POLYGON:
            return []
        v = self.vertices
        tags = self.edge_tags or (ANON_TAG,) * len(v)
        return [(v[i], v[(i + 1) % len(v)], tags[i]) for i in range(len(v))]

    def bbox(self) -> Optional[tuple[Fraction, Fraction, Fraction, Fraction]]:
        if not self.vertices:
            return None
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


EMPTY_REGION = ConvexRegion(EMPTY, ())


def _edge_halfplane(a: Point2, b: Point2, tag: EdgeTag) -> HalfPlane:
    # interior of a ccw polygon lies left of a->b:
    # (b-a) x (p-a) >= 0  <=>  dy*x - dx*y <= dy*ax - dx*ay
    dx, dy = b.x - a.x, b.y - a.y
    return HalfPlane(dy, -dx, dy * a.x - dx * a.y, tag)


def _segment_crossing(p: Point2, q: Point2, sp: Fraction, sq: Fraction) -> Point2:
    t = sp / (sp - sq)
    return Point2(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def _clip(cycle: list[tuple[Point2, EdgeTag]], h: HalfPlane) -> list[tuple[Point2, EdgeTag]]:
    """Sutherland-Hodgman step on a closed convex vertex cycle.

    Each entry is a vertex with the tag of the edge leaving it.  Degenerate
    cycles (one or two vertices) go through the same code.
    """
    n = len(cycle)
    if n == 0:
        return []
    if n == 1:
        return cycle if h.contains(cycle[0][0]) else []
    out: list[tuple[Point2, EdgeTag]] = []
    values = [h.value(p) for p, _ in cycle]
    for i in range(n):
        cur, tag = cycle[i]
        nxt = cycle[(i + 1) % n][0]
        s_cur, s_nxt = values[i], values[(i + 1) % n]
        if s_cur <= 0:
            if s_nxt > 0:
                if s_cur < 0:
                    out.append((cur, tag))
                    out.append((_segment_crossing(cur, nxt, s_cur, s_nxt), h.tag))
                else:
                    out.append((cur, h.tag))
            else:
                out.append((cur, tag))
        elif s_nxt < 0:
            out.append((_segment_crossing(cur, nxt, s_cur, s_nxt), tag))
    return out


def _normalize(cycle: list[tuple[Point2, EdgeTag]]) -> ConvexRegion:
    # drop consecutive duplicates (cyclically); the surviving entry keeps the
    # tag of the last edge that actually leaves the point
    pts: list[tuple[Point2, EdgeTag]] = []
    for p, t in cycle:
        if pts and pts[-1][0] == p:
            pts[-1] = (p, t)
        else:
            pts.append((p, t))
    while len(pts) > 1 and pts[0][0] == pts[-1][0]:
        pts.pop()
    distinct = sorted({p for p, _ in pts})
    if not distinct:
        return EMPTY_REGION
    if len(distinct) == 1:
        return ConvexRegion(POINT, (distinct[0],))
    lo, hi = distinct[0], distinct[-1]
    if all(cross(lo, hi, p) == 0 for p in distinct):
        return ConvexRegion(SEGMENT, (lo, hi))
    # remove collinear middle vertices, merged edge keeps the earlier tag
    changed = True
    while changed and len(pts) > 3:
        changed = False
        for i in range(len(pts)):
            prev = pts[i - 1]
            cur = pts[i]
            nxt = pts[(i + 1) % len(pts)]
            if cross(prev[0], cur[0], nxt[0]) == 0:
                pts.pop(i)
                changed = True
                break
    start = min(range(len(pts)), key=lambda i: pts[i][0])
    pts = pts[start:] + pts[:start]
    return ConvexRegion(POLYGON, tuple(p for p, _ in pts), tuple(t for _, t in pts))


def _cycle_of(region: ConvexRegion) -> list[tuple[Point2, EdgeTag]]:
    if region.kind == POLYGON:
        tags = region.edge_tags or (ANON_TAG,) * len(region.vertices)
        return list(zip(region.vertices, tags))
    return [(p, ANON_TAG) for p in region.vertices]


def clip_region(region: ConvexRegion, planes: Iterable[HalfPlane]) -> ConvexRegion:
    cycle = _cycle_of(region)
    for h in planes:
        cycle = _clip(cycle, h)
        if not cycle:
            return EMPTY_REGION
    return _normalize(cycle)


def intersect_halfplanes(planes: Sequence[HalfPlane], box: Box) -> ConvexRegion:
    """``box`` intersected with every plane, by incremental clipping."""
    return clip_region(box.region(), planes)


def intersect_convex(a: ConvexRegion, b: ConvexRegion) -> ConvexRegion:
    """Exact intersection of two convex regions."""
    if a.is_empty or b.is_empty:
        return EMPTY_REGION
    return clip_region(a, b.halfplanes())


def polygon(points: Iterable[tuple[RationalLike, RationalLike]]) -> ConvexRegion:
    """Build a convex region from vertices given in any order.

    The convex hull is taken, so callers may list corners loosely.
    """
    pts = sorted({Point2.of(x, y) for x, y in points})
    if not pts:
        return EMPTY_REGION
    hull = convex_hull(pts)
    if len(hull) >= 3:
        return _normalize([(p, ANON_TAG) for p in hull])
    if len(pts) == 1:
        return ConvexRegion(POINT, (pts[0],))
    return ConvexRegion(SEGMENT, (pts[0], pts[-1]))


def convex_hull(points: Sequence[Point2], keep_collinear: bool = False) -> list[Point2]:
    """Andrew's monotone chain, counterclockwise."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def bad(c: Fraction) -> bool:
        return c < 0 if keep_collinear else c <= 0

    lower: list[Point2] = []
    for p in pts:
        while len(lower) >= 2 and bad(cross(lower[-2], lower[-1], p)):
            lower.pop()
        lower.append(p)
    upper: list[Point2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and bad(cross(upper[-2], upper[-1], p)):
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if keep_collinear and all(cross(pts[0], pts[-1], p) == 0 for p in pts):
        # all collinear: the two chains repeat the same points
        return pts
    return hull
