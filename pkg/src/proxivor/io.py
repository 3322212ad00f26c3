"""JSON readers and writers.  Rationals travel as ``"p/q"`` strings or integers."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from .descriptive import RGB, AngleInterval, FeatureSpace
from .exactgeom import Box, ConvexRegion, Point2, format_rational, polygon
from .finitetop import FiniteTopology, ProximityRelation, builtin_relation, from_pairs
from .manifold import Atlas, Chart
from .voronoi import SiteSet, VoronoiDiagram, build_diagram, classification_matrix

PathLike = Union[str, Path]


class InputError(ValueError):
    """Malformed or inconsistent input document."""


def parse_rational(v: Any) -> Fraction:
    if isinstance(v, bool):
        raise InputError(f"not a rational: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational: {v!r}") from None
    raise InputError(f"rationals must be integers or 'p/q' strings, got {v!r}")


def q(x: Fraction) -> str:
    return format_rational(Fraction(x))


def load_json(path: PathLike) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e})") from None


def dump_json(obj: Any, path: Optional[PathLike] = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


# -- geometry ------------------------------------------------------------------

def point_from_json(v: Any) -> Point2:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise InputError(f"a point is a pair [x, y], got {v!r}")
    return Point2(parse_rational(v[0]), parse_rational(v[1]))


def point_to_json(p: Point2) -> list[str]:
    return [q(p.x), q(p.y)]


def box_from_json(v: Any) -> Box:
    if not isinstance(v, (list, tuple)) or len(v) != 4:
        raise InputError("box must be [xmin, ymin, xmax, ymax]")
    try:
        return Box(*(parse_rational(c) for c in v))
    except ValueError as e:
        raise InputError(str(e)) from None


def box_to_json(b: Box) -> list[str]:
    return [q(c) for c in b.as_list()]


def sites_from_json(doc: Any) -> SiteSet:
    if not isinstance(doc, dict) or "box" not in doc or "sites" not in doc:
        raise InputError('site file needs "box" and "sites"')
    try:
        return SiteSet(tuple(point_from_json(p) for p in doc["sites"]), box_from_json(doc["box"]))
    except InputError:
        raise
    except ValueError as e:
        raise InputError(str(e)) from None


def sites_to_json(s: SiteSet) -> dict:
    return {"box": box_to_json(s.box), "sites": [point_to_json(p) for p in s.sites]}


def region_to_json(r: ConvexRegion) -> dict:
    return {"kind": r.kind,
            "vertices": [point_to_json(v) for v in r.vertices],
            "edge_tags": [t.to_json() for t in r.edge_tags]}


def region_from_vertices(v: Any) -> ConvexRegion:
    pts = [point_from_json(p) for p in v]
    if not pts:
        raise InputError("a region needs at least one vertex")
    return polygon(pts)


def diagram_to_json(d: VoronoiDiagram) -> dict:
    out = sites_to_json(d.site_set)
    out["regions"] = [region_to_json(r) for r in d.regions]
    out["classification"] = classification_matrix(d)
    out["vertex_containment_ok"] = d.vertex_containment_ok
    return out


def diagram_from_json(doc: Any) -> VoronoiDiagram:
    """Rebuild from the stored sites; stored regions are checked against the rebuild."""
    d = build_diagram(sites_from_json(doc))
    stored = doc.get("regions")
    if stored is not None:
        if len(stored) != len(d.regions) or any(
                [point_to_json(v) for v in r.vertices] != s.get("vertices")
                for r, s in zip(d.regions, stored)):
            raise InputError("stored regions do not match the sites")
    return d


# -- finite topologies ---------------------------------------------------------

def topology_from_json(doc: Any) -> FiniteTopology:
    if not isinstance(doc, dict) or "points" not in doc or "opens" not in doc:
        raise InputError('topology file needs "points" and "opens"')
    labels = [str(p) for p in doc["points"]]
    try:
        return FiniteTopology.from_sets(labels, doc["opens"])
    except (ValueError, KeyError) as e:
        raise InputError(f"invalid topology: {e}") from None


def topology_to_json(t: FiniteTopology) -> dict:
    return {"points": list(t.labels), "opens": [t.names(o) for o in sorted(t.opens, key=lambda m: (bin(m).count("1"), m))]}


def subset_mask(t: FiniteTopology, v: Any) -> int:
    if not isinstance(v, (list, tuple)):
        raise InputError(f"a subset is a list of point labels, got {v!r}")
    try:
        return t.mask(str(x) for x in v)
    except (KeyError, ValueError) as e:
        raise InputError(f"unknown point in {v!r}: {e}") from None


def relation_from_json(doc: Any, t: FiniteTopology, role: str) -> ProximityRelation:
    if isinstance(doc, dict) and "builtin" in doc:
        try:
            return builtin_relation(doc["builtin"], t)
        except ValueError as e:
            raise InputError(str(e)) from None
    if isinstance(doc, dict) and "pairs" in doc:
        pairs = [(subset_mask(t, a), subset_mask(t, b)) for a, b in doc["pairs"]]
        return from_pairs(t, pairs, role=role)
    raise InputError('relation file needs "pairs" or "builtin"')


def family_from_json(doc: Any, t: FiniteTopology) -> list[int]:
    sets = doc.get("sets") if isinstance(doc, dict) else doc
    if not isinstance(sets, list):
        raise InputError('family file needs a "sets" list')
    return [subset_mask(t, s) for s in sets]


# -- descriptive ----------------------------------------------------------------

def palette_from_json(doc: Any) -> list[tuple[str, RGB]]:
    """``{"palette": [["r", [255,0,0]], ...]}`` or an ordered ``{"r": [255,0,0], ...}``."""
    entries = doc.get("palette", doc) if isinstance(doc, dict) else doc
    items = list(entries.items()) if isinstance(entries, dict) else entries
    out = []
    for item in items:
        try:
            label, rgb = item
            rgb = tuple(int(c) for c in rgb)
        except (TypeError, ValueError):
            raise InputError(f"bad palette entry {item!r}") from None
        if len(rgb) != 3 or any(not 0 <= c <= 255 for c in rgb):
            raise InputError(f"bad color {rgb!r}")
        out.append((str(label), rgb))
    if not out:
        raise InputError("empty palette")
    return out


def segments_from_json(doc: Any) -> list[list[int]]:
    segs = doc.get("segments") if isinstance(doc, dict) else doc
    if not isinstance(segs, list) or not all(isinstance(s, list) for s in segs):
        raise InputError('segments must be a list of pixel-index lists')
    return [[int(i) for i in s] for s in segs]


def interval_from_json(v: Any) -> AngleInterval:
    try:
        return AngleInterval(parse_rational(v["lo"]), parse_rational(v["hi"]),
                             bool(v.get("lo_open", False)), bool(v.get("hi_open", False)))
    except (KeyError, TypeError):
        raise InputError(f"bad interval {v!r}") from None
    except InputError:
        raise
    except ValueError as e:
        raise InputError(str(e)) from None


def interval_to_json(iv: AngleInterval) -> dict:
    return {"lo": q(iv.lo), "hi": q(iv.hi), "lo_open": iv.lo_open, "hi_open": iv.hi_open}


def intervals_from_json(doc: Any) -> list[AngleInterval]:
    items = doc.get("intervals") if isinstance(doc, dict) else doc
    if not isinstance(items, list):
        raise InputError('interval file needs an "intervals" list')
    return [interval_from_json(v) for v in items]


def feature_space_from_json(doc: Any) -> FeatureSpace:
    return FeatureSpace(topology_from_json(doc))


# -- atlases ----------------------------------------------------------------------

def _image_from_json(img: Any):
    kind = img.get("type") if isinstance(img, dict) else None
    if kind == "polygon":
        if "regions" in img:
            return tuple(region_from_vertices(r) for r in img["regions"])
        if "vertices" in img:
            return (region_from_vertices(img["vertices"]),)
        raise InputError('polygon image needs "vertices" or "regions"')
    if kind == "voronoi":
        return build_diagram(sites_from_json(img))
    if kind == "intervals":
        return tuple(intervals_from_json(img))
    raise InputError(f"unknown image type {kind!r}")


def chart_from_json(doc: Any) -> Chart:
    if not isinstance(doc, dict) or "id" not in doc or "image" not in doc:
        raise InputError('each chart needs "id" and "image"')
    paint = tuple((region_from_vertices(p["vertices"]), tuple(int(c) for c in p["color"]))
                  for p in doc.get("paint", []))
    background = tuple(int(c) for c in doc.get("background", (255, 255, 255)))
    try:
        return Chart(str(doc["id"]), _image_from_json(doc["image"]), paint, background)
    except InputError:
        raise
    except ValueError as e:
        raise InputError(str(e)) from None


def atlas_from_json(doc: Any) -> Atlas:
    if not isinstance(doc, dict) or "charts" not in doc:
        raise InputError('atlas file needs "charts"')
    try:
        return Atlas(tuple(chart_from_json(c) for c in doc["charts"]),
                     bool(doc.get("union_domain_ok", True)))
    except InputError:
        raise
    except ValueError as e:
        raise InputError(str(e)) from None


def chart_to_json(c: Chart) -> dict:
    if isinstance(c.image, VoronoiDiagram):
        image = {"type": "voronoi", **sites_to_json(c.image.site_set)}
    elif c.dimension == 1:
        image = {"type": "intervals", "intervals": [interval_to_json(iv) for iv in c.image]}
    else:
        image = {"type": "polygon", "regions": [[point_to_json(v) for v in r.vertices] for r in c.image]}
    out: dict = {"id": c.id, "image": image}
    if c.paint:
        out["paint"] = [{"vertices": [point_to_json(v) for v in r.vertices], "color": list(rgb)}
                        for r, rgb in c.paint]
        out["background"] = list(c.background)
    return out


def atlas_to_json(a: Atlas) -> dict:
    return {"charts": [chart_to_json(c) for c in a.charts], "union_domain_ok": a.union_domain_flag}


def sequence_of(doc: Any, key: str) -> Sequence:
    v = doc.get(key) if isinstance(doc, dict) else None
    if not isinstance(v, list):
        raise InputError(f'missing list "{key}"')
    return v
