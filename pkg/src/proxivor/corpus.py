"""Seeded pseudo-random corpora for the property suites."""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .exactgeom import Box, ConvexRegion, HalfPlane, Point2, intersect_halfplanes, polygon
from .voronoi import SiteSet

DEFAULT_SEED = 20161

CORPUS_BOX = Box.of(0, 0, 100, 100)


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    raw = os.environ.get("PROXIVOR_SEED")
    return int(raw) if raw not in (None, "") else default


def random_rational(rng: random.Random, lo: int, hi: int, max_den: int = 9) -> Fraction:
    """Uniform-ish rational strictly inside (lo, hi) with a small denominator."""
    den = rng.randint(1, max_den)
    num = rng.randint(lo * den + 1, hi * den - 1)
    return Fraction(num, den)


def random_site_set(rng: random.Random, n: int, box: Box = CORPUS_BOX) -> SiteSet:
    lo_x, hi_x = int(box.xmin), int(box.xmax)
    lo_y, hi_y = int(box.ymin), int(box.ymax)
    sites: list[Point2] = []
    seen = set()
    while len(sites) < n:
        p = Point2(random_rational(rng, lo_x, hi_x), random_rational(rng, lo_y, hi_y))
        if p not in seen:
            seen.add(p)
            sites.append(p)
    return SiteSet(tuple(sites), box)


def site_corpus(count: int = 200, seed: int | None = None,
                min_sites: int = 3, max_sites: int = 20) -> list[SiteSet]:
    rng = random.Random(seed_from_env() if seed is None else seed)
    return [random_site_set(rng, rng.randint(min_sites, max_sites)) for _ in range(count)]


def random_convex_polygon(rng: random.Random, box: Box, cuts: int = 4) -> ConvexRegion:
    """A random box cut by a few random lines; retried until 2-dimensional."""
    while True:
        x0 = random_rational(rng, int(box.xmin), int(box.xmax) - 1)
        y0 = random_rational(rng, int(box.ymin), int(box.ymax) - 1)
        w = Fraction(rng.randint(2, 12), rng.randint(1, 3))
        h = Fraction(rng.randint(2, 12), rng.randint(1, 3))
        base = polygon([(x0, y0), (x0 + w, y0), (x0 + w, y0 + h), (x0, y0 + h)])
        planes = []
        cx, cy = x0 + w / 2, y0 + h / 2
        for _ in range(rng.randint(0, cuts)):
            a = Fraction(rng.randint(-5, 5))
            b = Fraction(rng.randint(-5, 5))
            if a == 0 and b == 0:
                continue
            # keep the center strictly inside so the result stays 2-d
            c = a * cx + b * cy + Fraction(rng.randint(1, 20), 4)
            planes.append(HalfPlane(a, b, c))
        bb = base.bbox()
        region = intersect_halfplanes(planes, Box(bb[0], bb[1], bb[2], bb[3]))
        if region.kind == "polygon":
            return region


ATLAS_BOX = Box.of(0, 0, 30, 30)


def random_atlas(rng: random.Random, max_charts: int = 6, box: Box = ATLAS_BOX):
    """Polygon charts, each painted with up to two colored convex patches."""
    from .manifold import Atlas, Chart

    def color():
        return tuple(rng.choice((0, 40, 128, 200, 255)) for _ in range(3))

    charts = []
    for k in range(rng.randint(1, max_charts)):
        image = random_convex_polygon(rng, box)
        paint = []
        for _ in range(rng.randint(0, 2)):
            patch = random_convex_polygon(rng, box)
            paint.append((patch, color()))
        charts.append(Chart(f"U{k + 1}", (image,), tuple(paint), color()))
    return Atlas(tuple(charts))


def atlas_corpus(count: int = 50, seed: int | None = None, max_charts: int = 6) -> list:
    rng = random.Random((seed_from_env() if seed is None else seed) + 1)
    return [random_atlas(rng, max_charts) for _ in range(count)]
