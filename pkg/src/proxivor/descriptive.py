"""Probe functions, descriptive strong nearness and connectedness checks.

Descriptions live in a finite feature space (a finite label set with its
own topology), so interiors and closures of descriptions are computed
exactly.  Raw pixels are quantized into labels at ingestion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Hashable, Iterable, Optional, Sequence

from .finitetop import FiniteTopology, ProximityRelation, bits

RGB = tuple[int, int, int]

CHANNELS = {"r": 0, "g": 1, "b": 2}


@dataclass(frozen=True)
class ProbeImage:
    width: int
    height: int
    pixels: tuple[RGB, ...]  # row-major

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image dimensions must be positive")
        if len(self.pixels) != self.width * self.height:
            raise ValueError("pixel count does not match width * height")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RGB]]) -> "ProbeImage":
        height = len(rows)
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(width, height, tuple(tuple(px) for row in rows for px in row))

    @classmethod
    def from_function(cls, width: int, height: int, f: Callable[[int, int], RGB]) -> "ProbeImage":
        return cls(width, height, tuple(tuple(f(x, y)) for y in range(height) for x in range(width)))

    def index(self, x: int, y: int) -> int:
        return y * self.width + x

    def coords(self, idx: int) -> tuple[int, int]:
        return idx % self.width, idx // self.width

    def pixel(self, x: int, y: int) -> RGB:
        return self.pixels[y * self.width + x]

    def value(self, x: int, y: int, channel: str) -> int:
        return self.pixel(x, y)[CHANNELS[channel]]

    def rotate90(self) -> "ProbeImage":
        """Counterclockwise quarter turn: new(x, y) = old(W-1-y, x)."""
        w, h = self.width, self.height
        return ProbeImage.from_function(h, w, lambda x, y: self.pixel(w - 1 - y, x))


def gradient_angle(img: ProbeImage, x: int, y: int, channel: str = "r") -> float:
    """``atan2(df/dx, df/dy)`` from central differences on one channel.

    The x-derivative is the *first* argument, which is not the usual
    ``atan2(dy, dx)`` orientation.  Zero gradient gives 0.
    """
    if channel not in CHANNELS:
        raise ValueError(f"channel must be one of r, g, b; got {channel!r}")
    if not (0 < x < img.width - 1 and 0 < y < img.height - 1):
        raise ValueError("insufficient stencil")
    # the common factor 1/2 of both central differences cancels in atan2
    fx = img.value(x + 1, y, channel) - img.value(x - 1, y, channel)
    fy = img.value(x, y + 1, channel) - img.value(x, y - 1, channel)
    return math.atan2(fx, fy)


def gradient_field(img: ProbeImage, channel: str = "r") -> list[list[float]]:
    """Angles for every pixel with a full stencil, row by row."""
    return [[gradient_angle(img, x, y, channel) for x in range(1, img.width - 1)]
            for y in range(1, img.height - 1)]


def quantize_color(pixel: RGB, palette: Sequence[tuple[str, RGB]]) -> str:
    """Nearest palette label by squared RGB distance; first entry wins ties."""
    if not palette:
        raise ValueError("empty palette")
    best_label, best = None, None
    for label, ref in palette:
        d = sum((int(a) - int(b)) ** 2 for a, b in zip(pixel, ref))
        if best is None or d < best:
            best_label, best = label, d
    return best_label


@dataclass(frozen=True)
class FeatureSpace:
    """A finite label set carrying a topology (labels are the carrier points)."""

    topology: FiniteTopology

    @property
    def values(self) -> tuple[str, ...]:
        return self.topology.labels

    def mask(self, labels: Iterable[str]) -> int:
        return self.topology.mask(labels)


@dataclass(frozen=True)
class ProbeFunction:
    mapping: Callable[[Hashable], str]
    features: tuple[str, ...] = ("color",)

    def __call__(self, point: Hashable) -> str:
        return self.mapping(point)


def image_probe(img: ProbeImage, palette: Sequence[tuple[str, RGB]]) -> ProbeFunction:
    """Color-class probe on pixel indices (row-major)."""
    labels = tuple(quantize_color(px, palette) for px in img.pixels)
    return ProbeFunction(labels.__getitem__, ("color",))


def describe(points: Iterable[Hashable], phi: Callable[[Hashable], str]) -> frozenset[str]:
    return frozenset(phi(p) for p in points)


def desc_strongly_near(a: Iterable[Hashable], b: Iterable[Hashable], phi: Callable[[Hashable], str],
                       fs: FeatureSpace, strong: ProximityRelation) -> bool:
    """``Phi(A)`` strongly near ``Phi(B)`` in the feature topology."""
    return strong(fs.mask(describe(a, phi)), fs.mask(describe(b, phi)))


def finite_space_connected(a: int, t: FiniteTopology) -> bool:
    """Connectedness of the subspace ``a`` (a bitmask).

    Two points are linked when one lies in the closure of the other; the
    subspace is connected iff that graph restricted to ``a`` is connected.
    The empty set counts as connected.
    """
    pts = list(bits(a))
    if len(pts) <= 1:
        return True
    closures = {x: t.closure(1 << x) for x in pts}
    seen = {pts[0]}
    stack = [pts[0]]
    while stack:
        x = stack.pop()
        for y in pts:
            if y not in seen and (closures[y] >> x & 1 or closures[x] >> y & 1):
                seen.add(y)
                stack.append(y)
    return len(seen) == len(pts)


def finite_space_connected_bruteforce(a: int, t: FiniteTopology) -> bool:
    """Search for a split of ``a`` into two nonempty relatively open parts."""
    traces = {o & a for o in t.opens}
    for s in traces:
        if s and s != a and (a & ~s) in traces:
            return False
    return True


@dataclass
class ConnectVerdict:
    connected: bool
    failing_piece: Optional[int] = None
    failing_link: Optional[int] = None
    reason: str = ""

    def to_json(self) -> dict:
        return {"connected": self.connected, "failing_piece": self.failing_piece,
                "failing_link": self.failing_link, "reason": self.reason}


def desc_connected(pieces: Sequence[Iterable[Hashable]], phi: Callable[[Hashable], str],
                   fs: FeatureSpace, strong: ProximityRelation,
                   interior: Optional[Callable[[frozenset], Iterable[Hashable]]] = None) -> ConnectVerdict:
    """Check a decomposition for descriptive strong connectedness.

    Each piece's description and the description of its interior must be
    connected in the feature topology, and consecutive pieces must be
    descriptively strongly near.  ``interior`` gives the interior of a piece
    in the carrier's own topology; without it the carrier is discrete.
    Pieces and links are numbered from 1; link ``i`` joins pieces ``i-1``
    and ``i``.
    """
    sets = [frozenset(p) for p in pieces]
    t = fs.topology
    for k, piece in enumerate(sets, start=1):
        inner = frozenset(interior(piece)) if interior else piece
        for what, pts in (("description", piece), ("interior description", inner)):
            if not finite_space_connected(fs.mask(describe(pts, phi)), t):
                return ConnectVerdict(False, failing_piece=k, reason=f"{what} of piece {k} is disconnected")
    for k in range(1, len(sets)):
        if not desc_strongly_near(sets[k - 1], sets[k], phi, fs, strong):
            return ConnectVerdict(False, failing_link=k + 1,
                                  reason=f"pieces {k} and {k + 1} are not descriptively strongly near")
    return ConnectVerdict(True)


def identity_probe() -> ProbeFunction:
    return ProbeFunction(lambda x: x, ("identity",))


# -- angle intervals ---------------------------------------------------------

@dataclass(frozen=True)
class AngleInterval:
    """An interval of angles with endpoints in units of pi."""

    lo: Fraction
    hi: Fraction
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval needs lo <= hi")

    @property
    def is_empty(self) -> bool:
        return self.lo == self.hi and (self.lo_open or self.hi_open)

    def intersect(self, other: "AngleInterval") -> Optional["AngleInterval"]:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        lo_open = any(iv.lo_open for iv in (self, other) if iv.lo == lo)
        hi_open = any(iv.hi_open for iv in (self, other) if iv.hi == hi)
        if lo < hi or (lo == hi and not lo_open and not hi_open):
            return AngleInterval(lo, hi, lo_open, hi_open)
        return None

    def meets(self, other: "AngleInterval") -> bool:
        return self.intersect(other) is not None

    def __str__(self) -> str:
        return f"{'(' if self.lo_open else '['}{self.lo}pi, {self.hi}pi{')' if self.hi_open else ']'}"


def interval_chain_connected(chain: Sequence[AngleInterval], mode: str = "overlap") -> bool:
    """Consecutive intervals pairwise intersect (near means overlapping)."""
    if mode != "overlap":
        raise ValueError(f"unsupported nearness mode {mode!r}")
    if any(iv.is_empty for iv in chain):
        raise ValueError("chain intervals must be nonempty")
    return all(chain[k - 1].meets(chain[k]) for k in range(1, len(chain)))


def interval_chain_first_break(chain: Sequence[AngleInterval]) -> Optional[int]:
    for k in range(1, len(chain)):
        if not chain[k - 1].meets(chain[k]):
            return k + 1
    return None


def pairwise_overlapping(chain: Sequence[AngleInterval]) -> bool:
    return all(a.meets(b) for a, b in combinations(chain, 2))
