"""Sampling oracle: nearest-site assignment against region membership.

Distances and half-plane values are computed in float64; any sample whose
decision falls inside a safety margin is re-decided exactly with the
rational coordinates of the float (every float is an exact rational).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactgeom import Point2
from .voronoi import VoronoiDiagram


@dataclass
class OracleResult:
    samples: int
    mismatches: int
    exact_fallbacks: int
    ties_skipped: int
    first_mismatch: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.mismatches == 0


def _region_planes(d: VoronoiDiagram) -> list[np.ndarray]:
    out = []
    for r in d.regions:
        rows = []
        for h in r.halfplanes():
            a, b, c = float(h.a), float(h.b), float(h.c)
            s = float(np.hypot(a, b))
            rows.append((a / s, b / s, c / s))
        out.append(np.array(rows))
    return out


def _exact_nearest(p: Point2, sites) -> int | None:
    d2 = [(p - s).norm2() for s in sites]
    best = min(d2)
    hits = [i for i, v in enumerate(d2) if v == best]
    return hits[0] if len(hits) == 1 else None


def nearest_site_oracle(d: VoronoiDiagram, samples: int = 10_000, seed: int = 0,
                        margin: float = 1e-9) -> OracleResult:
    """Draw ``samples`` points off every bisector and compare the two assignments."""
    rng = np.random.default_rng(seed)
    box = d.box
    lo = np.array([float(box.xmin), float(box.ymin)])
    hi = np.array([float(box.xmax), float(box.ymax)])
    scale = float(np.max(hi - lo))
    sites = np.array([[float(s.x), float(s.y)] for s in d.sites])
    planes = _region_planes(d)
    n = len(d.sites)
    done = mismatches = fallbacks = ties = 0
    first = None
    while done < samples:
        batch = rng.uniform(lo, hi, size=(samples - done + 64, 2))
        d2 = ((batch[:, None, :] - sites[None, :, :]) ** 2).sum(axis=2)
        order = np.argsort(d2, axis=1)
        nearest = order[:, 0]
        if n > 1:
            gap = np.take_along_axis(d2, order[:, 1:2], 1)[:, 0] - np.take_along_axis(d2, order[:, :1], 1)[:, 0]
            unsure_near = gap <= margin * scale * scale
        else:
            unsure_near = np.zeros(len(batch), dtype=bool)
        # signed distance to each region: min over its half-planes of c - (a x + b y)
        inside = np.empty((len(batch), n))
        for j, h in enumerate(planes):
            vals = h[:, 2][None, :] - batch @ h[:, :2].T
            inside[:, j] = vals.min(axis=1)
        unsure_in = (np.abs(inside) <= margin * scale).any(axis=1)
        for k in range(len(batch)):
            if done >= samples:
                break
            if unsure_near[k] or unsure_in[k]:
                fallbacks += 1
                p = Point2(Fraction(batch[k, 0]), Fraction(batch[k, 1]))
                i = _exact_nearest(p, d.sites)
                if i is None:
                    ties += 1
                    continue
                members = [j for j, r in enumerate(d.regions) if r.contains(p)]
            else:
                i = int(nearest[k])
                members = [int(j) for j in np.nonzero(inside[k] > 0)[0]]
            done += 1
            if members != [i]:
                mismatches += 1
                if first is None:
                    first = (float(batch[k, 0]), float(batch[k, 1]), i, members)
    return OracleResult(done, mismatches, fallbacks, ties, first)
