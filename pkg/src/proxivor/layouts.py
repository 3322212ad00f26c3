"""Named example configurations used by tests, the acceptance suite and the CLI."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .descriptive import AngleInterval, FeatureSpace, ProbeImage
from .exactgeom import Box, Point2, polygon
from .finitetop import FiniteTopology
from .manifold import Atlas, Chart, VoronoiChartedManifold
from .voronoi import SiteSet, build_diagram

RED, GREEN, BLUE = (255, 0, 0), (0, 255, 0), (0, 0, 255)
RGB_PALETTE = [("r", RED), ("g", GREEN), ("b", BLUE)]


def _sites(points: Sequence[tuple[int, int]], box: Box) -> SiteSet:
    return SiteSet(tuple(Point2.of(x, y) for x, y in points), box)


def square4() -> SiteSet:
    """Four cocircular sites at the corners of a square."""
    return _sites([(1, 1), (3, 1), (3, 3), (1, 3)], Box.of(0, 0, 4, 4))


def collinear3() -> SiteSet:
    return _sites([(0, 0), (2, 0), (4, 0)], Box.of(-1, -1, 5, 1))


# ten sites around a central region; index 3 is the center, with four
# edge-neighbours, three regions touching only at vertices and three far away
TEN_SITES = [(-12, 0), (-3, 4), (3, 4), (-5, 0), (5, 0), (-3, -4), (3, -4), (12, 0), (0, 13), (0, -13)]


def ten_site() -> SiteSet:
    return _sites(TEN_SITES, Box.of(-20, -20, 20, 20))


def uniqueness_counterexample() -> SiteSet:
    """A center whose three neighbours are pairwise adjacent.

    The smallest open set around the center region then also contains the
    neighbours, although every region here has a full neighbour cycle.
    """
    return _sites([(0, 0), (10, 0), (-5, 9), (-5, -9)], Box.of(-20, -20, 20, 20))


# -- finite feature spaces ----------------------------------------------------

def tau_rgb() -> FiniteTopology:
    return FiniteTopology.from_sets(("r", "g", "b"), [[], ["r", "g"], ["r", "g", "b"]])


def rgb_feature_space() -> FeatureSpace:
    return FeatureSpace(tau_rgb())


def _stripes(colors: Sequence[Sequence[tuple[int, int, int]]]) -> ProbeImage:
    return ProbeImage.from_rows(colors)


def three_segment_picture() -> tuple[ProbeImage, list[list[int]]]:
    """Three segments: A is red/green, B has all three colors, C is red/blue.

    Returns the image and the segments as row-major pixel indices.
    """
    img = _stripes([
        [RED, GREEN, RED, GREEN, BLUE, RED, BLUE],
        [GREEN, RED, GREEN, BLUE, RED, BLUE, RED],
    ])
    w = img.width
    a = [0, 1, w + 0, w + 1]
    b = [2, 3, 4, w + 2, w + 3]
    c = [5, 6, w + 4, w + 5, w + 6]
    return img, [a, b, c]


def decomposition_picture() -> tuple[ProbeImage, list[list[int]]]:
    """A is green, C carries all three colors, B is red; order (A, C, B)."""
    img = _stripes([
        [GREEN, GREEN, RED, BLUE, RED, RED],
        [GREEN, GREEN, GREEN, BLUE, RED, RED],
    ])
    w = img.width
    a = [0, 1, w + 0, w + 1]
    c = [2, 3, w + 2, w + 3]
    b = [4, 5, w + 4, w + 5]
    return img, [a, c, b]


def curve_angle_chain(open_ends: bool = False) -> list[AngleInterval]:
    """``(0, pi/4]`` then ``[pi/4, pi/2]``; with ``open_ends`` both are open."""
    q = Fraction(1, 4)
    if open_ends:
        return [AngleInterval(Fraction(0), q, True, True), AngleInterval(q, Fraction(1, 2), True, True)]
    return [AngleInterval(Fraction(0), q, True, False), AngleInterval(q, Fraction(1, 2), False, False)]


# -- charts and manifolds -----------------------------------------------------

def split_voronoi_manifolds(overlap: int = 0) -> tuple[VoronoiChartedManifold, VoronoiChartedManifold]:
    """One four-site diagram split into two chart windows along ``x = 0``.

    The left window holds ``p=(-2,0)`` and ``(-2,6)``, the right one
    ``(2,0)`` and ``(2,6)``.  With ``overlap = 0`` the windows share the
    edge ``x = 0``, so the left region of ``p`` and the right region of
    ``(2,0)`` share exactly that edge.  A positive ``overlap`` widens both
    windows across the cut.
    """
    left = build_diagram(_sites([(-2, 0), (-2, 6)], Box.of(-6, -3, overlap, 9)))
    right = build_diagram(_sites([(2, 0), (2, 6)], Box.of(-overlap, -3, 6, 9)))
    return (VoronoiChartedManifold("M1", (Chart("W1", left),)),
            VoronoiChartedManifold("M2", (Chart("W2", right),)))


def square_chart(cid: str, x0, y0, x1, y1, **kw) -> Chart:
    return Chart(cid, (polygon([(x0, y0), (x1, y0), (x1, y1), (x0, y1)]),), **kw)


def matching_feature_atlases() -> tuple[Atlas, Atlas]:
    """Two atlases whose charts carry the same red/green description."""
    def painted(cid, x0):
        stripe = polygon([(x0, 0), (x0 + 2, 0), (x0 + 2, 4), (x0, 4)])
        return square_chart(cid, x0, 0, x0 + 4, 4, paint=((stripe, RED),), background=GREEN)

    return Atlas((painted("U1", 0),)), Atlas((painted("V1", 10),))


def empty_interior_atlases() -> tuple[Atlas, Atlas]:
    """Charts described by ``{r, b}``, whose interior under the rgb topology is empty."""
    def painted(cid, x0):
        stripe = polygon([(x0, 0), (x0 + 2, 0), (x0 + 2, 4), (x0, 4)])
        return square_chart(cid, x0, 0, x0 + 4, 4, paint=((stripe, RED),), background=BLUE)

    return Atlas((painted("U1", 0),)), Atlas((painted("V1", 10),))
