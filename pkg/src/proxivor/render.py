"""SVG export of diagrams and a matplotlib figure of the nearness graph."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Union

from .exactgeom import POINT, SEGMENT
from .voronoi import FAR, NEAR_ONLY, STRONGLY_NEAR, VoronoiDiagram, classification_matrix

SVG_NS = "http://www.w3.org/2000/svg"
FILLS = ("#e8f0fe", "#fde8e8", "#e6f4ea", "#fef7e0", "#f3e8fd", "#e0f7fa", "#fce4ec", "#f1f8e9")


def _num(x: Fraction) -> str:
    s = f"{float(x):.9f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def diagram_svg(d: VoronoiDiagram, size: int = 600) -> str:
    """SVG text: one path per region, strongly-near edges as lines, near-only points as circles.

    Plane coordinates are kept (y flipped by a group transform), so the
    numbers in the file are the geometry itself at 1e-9 precision.
    """
    box = d.box
    w, h = box.xmax - box.xmin, box.ymax - box.ymin
    unit = max(w, h) / 200
    ET.register_namespace("", SVG_NS)
    svg = ET.Element(f"{{{SVG_NS}}}svg", {
        "width": str(size),
        "height": _num(Fraction(size) * h / w),
        "viewBox": " ".join(_num(v) for v in (box.xmin, -box.ymax, w, h)),
    })
    g = ET.SubElement(svg, f"{{{SVG_NS}}}g", {"transform": "scale(1,-1)"})
    regions = ET.SubElement(g, f"{{{SVG_NS}}}g", {"id": "regions", "stroke": "#555",
                                                   "stroke-width": _num(unit / 2)})
    for i, r in enumerate(d.regions):
        pts = " L ".join(f"{_num(v.x)} {_num(v.y)}" for v in r.vertices)
        ET.SubElement(regions, f"{{{SVG_NS}}}path", {
            "d": f"M {pts} Z", "fill": FILLS[i % len(FILLS)], "data-site": str(i)})
    matrix = classification_matrix(d)
    strong = ET.SubElement(g, f"{{{SVG_NS}}}g", {"id": "strongly-near", "stroke": "#c62828",
                                                  "stroke-width": _num(unit * 2)})
    near = ET.SubElement(g, f"{{{SVG_NS}}}g", {"id": "near-only", "fill": "#1565c0"})
    for i, j in combinations(range(len(d)), 2):
        piece = d.pair_intersection(i, j)
        if matrix[i][j] == STRONGLY_NEAR and piece.kind == SEGMENT:
            a, b = piece.vertices
            ET.SubElement(strong, f"{{{SVG_NS}}}line", {
                "x1": _num(a.x), "y1": _num(a.y), "x2": _num(b.x), "y2": _num(b.y),
                "data-pair": f"{i},{j}"})
        elif matrix[i][j] == NEAR_ONLY and piece.kind == POINT:
            p = piece.vertices[0]
            ET.SubElement(near, f"{{{SVG_NS}}}circle", {
                "cx": _num(p.x), "cy": _num(p.y), "r": _num(unit * 3), "data-pair": f"{i},{j}"})
    sites = ET.SubElement(g, f"{{{SVG_NS}}}g", {"id": "sites", "fill": "#000"})
    for i, p in enumerate(d.sites):
        ET.SubElement(sites, f"{{{SVG_NS}}}circle", {
            "cx": _num(p.x), "cy": _num(p.y), "r": _num(unit * 1.5), "data-site": str(i)})
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n"


def write_svg(d: VoronoiDiagram, path: Union[str, Path]) -> None:
    Path(path).write_text(diagram_svg(d))


def nearness_graph_figure(d: VoronoiDiagram, path: Union[str, Path]) -> None:
    """Regions with the strongly-near (solid) and near-only (dashed) site graph.

    The file format follows the extension (png, pdf, svg, ...).
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Polygon as MplPolygon

    fig, ax = plt.subplots(figsize=(6, 6))
    for i, r in enumerate(d.regions):
        ax.add_patch(MplPolygon([(float(v.x), float(v.y)) for v in r.vertices], closed=True,
                                facecolor=FILLS[i % len(FILLS)], edgecolor="#999", linewidth=0.8))
    matrix = classification_matrix(d)
    for i, j in combinations(range(len(d)), 2):
        cls = matrix[i][j]
        if cls == FAR:
            continue
        p, q = d.sites[i], d.sites[j]
        ax.plot([float(p.x), float(q.x)], [float(p.y), float(q.y)],
                color="#c62828" if cls == STRONGLY_NEAR else "#1565c0",
                linestyle="-" if cls == STRONGLY_NEAR else "--", linewidth=1.4)
    xs = [float(p.x) for p in d.sites]
    ys = [float(p.y) for p in d.sites]
    ax.scatter(xs, ys, color="black", zorder=3, s=14)
    for i, (x, y) in enumerate(zip(xs, ys)):
        ax.annotate(str(i), (x, y), textcoords="offset points", xytext=(4, 4), fontsize=8)
    b = d.box
    ax.set_xlim(float(b.xmin), float(b.xmax))
    ax.set_ylim(float(b.ymin), float(b.ymax))
    ax.set_aspect("equal")
    ax.set_title("strongly near (solid) / near only (dashed)")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
