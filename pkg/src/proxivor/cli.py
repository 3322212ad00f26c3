"""Command-line interface.

Exit codes: 0 when the property holds (or the command succeeded), 1 when it
fails or the relation is false, 2 for bad input or unmet preconditions.
Reports go to stdout as JSON; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from . import io as jio
from .descriptive import (
    FeatureSpace,
    desc_connected,
    gradient_field,
    image_probe,
    interval_chain_connected,
    interval_chain_first_break,
)
from .exactgeom import format_rational
from .finitetop import (
    LODATO,
    STRONG,
    CarrierTooLarge,
    HypothesesNotSatisfied,
    builtin_relation,
    check_lodato,
    check_strong,
    lemma_sweep,
    rcl_star,
    regular_closed_sets,
    regular_open_sets,
    second_countability_condition_check,
)
from .manifold import (
    AtlasTooLarge,
    DimensionMismatch,
    VoronoiChartedManifold,
    atlases_descriptively_near,
    chart_near_witness,
    charts_strongly_near,
    check_manifold_strong_axioms,
    painted_probe,
    relation_from_pairs,
    voronoi_manifolds_strongly_near,
)
from .ppm import PPMError, read_ppm
from .voronoi import (
    VoronoiDiagram,
    build_diagram,
    classification_matrix,
    neighborhood_members,
    region_uniqueness_check,
    smallest_open_set,
)

log = logging.getLogger("proxivor")

INPUT_ERRORS = (jio.InputError, PPMError, HypothesesNotSatisfied, CarrierTooLarge,
                AtlasTooLarge, DimensionMismatch, OSError)


@dataclass
class CommandResult:
    exit_code: int
    report: Optional[Any] = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


# -- voronoi -------------------------------------------------------------------

def _load_diagram(path) -> VoronoiDiagram:
    return jio.diagram_from_json(jio.load_json(path))


def cmd_voronoi_build(a) -> CommandResult:
    d = build_diagram(jio.sites_from_json(jio.load_json(a.sites)), warn_clip=not a.no_warn_clip)
    jio.dump_json(jio.diagram_to_json(d), a.out)
    return CommandResult(0, {"out": a.out, "regions": len(d.regions),
                             "vertex_containment_ok": d.vertex_containment_ok})


def cmd_voronoi_classify(a) -> CommandResult:
    d = _load_diagram(a.diagram)
    m = classification_matrix(d)
    jio.dump_json({"classification": m}, a.out)
    return CommandResult(0, {"out": a.out, "classification": m})


def cmd_voronoi_nbhd(a) -> CommandResult:
    d = _load_diagram(a.diagram)
    if not 0 <= a.site < len(d):
        raise jio.InputError(f"site index {a.site} out of range 0..{len(d) - 1}")
    nb = smallest_open_set(d, a.site)
    out = nb.to_json()
    out["touching"] = sorted(nb.touching(len(d)))
    out["factors"] = [[f.kind, f.index] for f in nb.factors()]
    out["members"] = neighborhood_members(d, nb)
    if not d.vertex_containment_ok:
        out["warnings"] = ["clipped diagram: some Voronoi vertices lie outside the box"]
    return CommandResult(0, out)


def cmd_voronoi_check(a) -> CommandResult:
    rep = region_uniqueness_check(_load_diagram(a.diagram))
    for w in rep.warnings:
        log.warning(w)
    return CommandResult(0 if rep.passed else 1, rep.to_json())


def cmd_voronoi_render(a) -> CommandResult:
    from .render import nearness_graph_figure, write_svg

    d = _load_diagram(a.diagram)
    write_svg(d, a.out)
    if a.graph:
        nearness_graph_figure(d, a.graph)
    return CommandResult(0, None)


# -- prox ----------------------------------------------------------------------

def _relation(a, t, role):
    if a.relation_file:
        return jio.relation_from_json(jio.load_json(a.relation_file), t, role)
    try:
        return builtin_relation(a.relation, t)
    except ValueError as e:
        raise jio.InputError(str(e)) from None


def cmd_prox_axioms(a) -> CommandResult:
    if a.kind == "manifold":
        atlas = jio.atlas_from_json(jio.load_json(a.space))
        if a.relation_file:
            doc = jio.load_json(a.relation_file)
            rel = relation_from_pairs(tuple(p) for p in jio.sequence_of(doc, "pairs"))
        elif a.relation in ("charts_strongly_near", "nonempty_intersection"):
            rel = charts_strongly_near
        else:
            raise jio.InputError(f"unknown chart relation {a.relation!r}; use charts_strongly_near or --relation-file")
        rep = check_manifold_strong_axioms(atlas, rel)
        return CommandResult(0 if rep.passed else 1, rep.to_json())
    t = jio.topology_from_json(jio.load_json(a.space))
    if a.kind == "lodato":
        rep = check_lodato(_relation(a, t, LODATO))
    else:
        rep = check_strong(_relation(a, t, STRONG), t)
    out = rep.to_json()
    if a.relation_file is None:
        out["relation"] = a.relation
    return CommandResult(0 if rep.passed else 1, _named(out, t))


def _named(obj, t):
    """Replace bitmask witnesses by label lists where they appear."""
    for r in obj.get("axioms", []):
        if "witness" in r:
            r["witness_sets"] = [t.names(w) if isinstance(w, int) else w for w in r["witness"]] \
                if isinstance(r["witness"], list) else r["witness"]
    return obj


def cmd_prox_regular(a) -> CommandResult:
    t = jio.topology_from_json(jio.load_json(a.space))
    return CommandResult(0, {
        "regular_open": [t.names(s) for s in regular_open_sets(t)],
        "regular_closed": [t.names(s) for s in regular_closed_sets(t)],
        "rcl_star": [t.names(s) for s in rcl_star(t)],
    })


def cmd_prox_lemma(a) -> CommandResult:
    t = jio.topology_from_json(jio.load_json(a.space))
    fam = jio.family_from_json(jio.load_json(a.bfamily), t)
    delta = builtin_relation(a.relation, t)
    strong = builtin_relation(a.strong_relation, t)
    s = lemma_sweep(t, delta, strong, fam, a.max_size)
    return CommandResult(0 if s.passed else 1, s.to_json(t))


def cmd_prox_second(a) -> CommandResult:
    t = jio.topology_from_json(jio.load_json(a.space))
    fam = jio.family_from_json(jio.load_json(a.bfamily), t)
    bprime = jio.family_from_json(jio.load_json(a.bprime), t)
    ok, witness = second_countability_condition_check(t, builtin_relation(a.relation, t), fam, bprime)
    out: dict = {"pass": ok}
    if witness:
        out["witness"] = {"B": t.names(witness[0]), "A": t.names(witness[1])}
    return CommandResult(0 if ok else 1, out)


# -- desc ----------------------------------------------------------------------

def cmd_desc_gradient(a) -> CommandResult:
    img = read_ppm(a.image)
    if img.width < 3 or img.height < 3:
        raise jio.InputError("insufficient stencil: image needs at least 3x3 pixels")
    field = gradient_field(img, a.channel)
    jio.dump_json({"width": img.width, "height": img.height, "channel": a.channel,
                   "origin": [1, 1], "angles": field}, a.out)
    return CommandResult(0, {"out": a.out, "rows": len(field), "cols": len(field[0])})


def cmd_desc_connect(a) -> CommandResult:
    img = read_ppm(a.image)
    segs = jio.segments_from_json(jio.load_json(a.segments))
    npx = img.width * img.height
    for s in segs:
        if any(not 0 <= i < npx for i in s):
            raise jio.InputError(f"pixel index out of range 0..{npx - 1}")
    palette = jio.palette_from_json(jio.load_json(a.palette))
    fs = jio.feature_space_from_json(jio.load_json(a.range_topology))
    unknown = {lab for lab, _ in palette} - set(fs.values)
    if unknown:
        raise jio.InputError(f"palette labels {sorted(unknown)} are not points of the range topology")
    strong = builtin_relation(a.relation, fs.topology)
    v = desc_connected(segs, image_probe(img, palette), fs, strong)
    out = v.to_json()
    out["relation"] = a.relation
    return CommandResult(0 if v.connected else 1, out)


def cmd_desc_chain(a) -> CommandResult:
    chain = jio.intervals_from_json(jio.load_json(a.intervals))
    try:
        ok = interval_chain_connected(chain)
    except ValueError as e:
        raise jio.InputError(str(e)) from None
    return CommandResult(0 if ok else 1, {"connected": ok, "first_break": interval_chain_first_break(chain)})


# -- manifold --------------------------------------------------------------------

def cmd_manifold_near(a) -> CommandResult:
    a1 = jio.atlas_from_json(jio.load_json(a.atlas1))
    a2 = jio.atlas_from_json(jio.load_json(a.atlas2))
    if a.descriptive:
        if not (a.palette and a.range_topology):
            raise jio.InputError("--descriptive needs --palette and --range-topology")
        palette = jio.palette_from_json(jio.load_json(a.palette))
        fs = FeatureSpace(jio.topology_from_json(jio.load_json(a.range_topology)))
        pitch = jio.parse_rational(a.grid_pitch)
        if pitch <= 0:
            raise jio.InputError("grid pitch must be positive")
        rep = atlases_descriptively_near(a1, a2, painted_probe(a1.charts + a2.charts, palette), fs,
                                         builtin_relation(a.relation, fs.topology), pitch)
        out = rep.to_json()
        out["grid_pitch"] = format_rational(pitch)
        return CommandResult(0 if rep.near else 1, out)
    if all(not isinstance(c.image, (tuple, list)) for c in a1.charts + a2.charts):
        res = voronoi_manifolds_strongly_near(VoronoiChartedManifold("atlas1", a1.charts),
                                              VoronoiChartedManifold("atlas2", a2.charts))
        return CommandResult(0 if res.near else 1, res.to_json())
    for ci in a1.charts:
        for cj in a2.charts:
            w = chart_near_witness(ci, cj)
            if w is not None:
                return CommandResult(0, {"near": True, "charts": [ci.id, cj.id], "witness": w.to_json()})
    return CommandResult(1, {"near": False})


# -- selftest ----------------------------------------------------------------------

def cmd_selftest(a) -> CommandResult:
    from .acceptance import run_all

    results = run_all(a.seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    return CommandResult(0 if all(r.ok for r in results) else 1, [r.to_json() for r in results])


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="proxivor", description="Voronoi strong proximity and finite proximity-space checks")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    v = groups.add_parser("voronoi", help="build, classify and render Voronoi diagrams")
    vs = v.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    c = vs.add_parser("build")
    c.add_argument("--sites", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--no-warn-clip", action="store_true")
    c.set_defaults(func=cmd_voronoi_build)
    c = vs.add_parser("classify")
    c.add_argument("--diagram", required=True)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_voronoi_classify)
    c = vs.add_parser("nbhd")
    c.add_argument("--diagram", required=True)
    c.add_argument("--site", required=True, type=int)
    c.set_defaults(func=cmd_voronoi_nbhd)
    c = vs.add_parser("check-region-theorem")
    c.add_argument("--diagram", required=True)
    c.set_defaults(func=cmd_voronoi_check)
    c = vs.add_parser("render")
    c.add_argument("--diagram", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--graph")
    c.set_defaults(func=cmd_voronoi_render)

    x = groups.add_parser("prox", help="finite proximity-space checks")
    xs = x.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    c = xs.add_parser("axioms")
    c.add_argument("--space", required=True)
    rel = c.add_mutually_exclusive_group(required=True)
    rel.add_argument("--relation")
    rel.add_argument("--relation-file")
    c.add_argument("--kind", required=True, choices=("lodato", "strong", "manifold"))
    c.set_defaults(func=cmd_prox_axioms)
    c = xs.add_parser("regular-sets")
    c.add_argument("--space", required=True)
    c.set_defaults(func=cmd_prox_regular)
    c = xs.add_parser("lemma-sweep")
    c.add_argument("--space", required=True)
    c.add_argument("--bfamily", required=True)
    c.add_argument("--max-size", type=int, default=2)
    c.add_argument("--relation", default="cl_cl", help="Lodato relation (builtin name)")
    c.add_argument("--strong-relation", default="interior_intersection")
    c.set_defaults(func=cmd_prox_lemma)
    c = xs.add_parser("second-countability")
    c.add_argument("--space", required=True)
    c.add_argument("--bfamily", required=True)
    c.add_argument("--bprime", required=True)
    c.add_argument("--relation", default="cl_cl")
    c.set_defaults(func=cmd_prox_second)

    d = groups.add_parser("desc", help="descriptive nearness on images and angle chains")
    ds = d.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    c = ds.add_parser("gradient")
    c.add_argument("--image", required=True)
    c.add_argument("--channel", required=True, choices=("r", "g", "b"))
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_desc_gradient)
    c = ds.add_parser("connect")
    c.add_argument("--image", required=True)
    c.add_argument("--segments", required=True)
    c.add_argument("--palette", required=True)
    c.add_argument("--range-topology", required=True)
    c.add_argument("--relation", default="interior_intersection")
    c.set_defaults(func=cmd_desc_connect)
    c = ds.add_parser("chain")
    c.add_argument("--intervals", required=True)
    c.set_defaults(func=cmd_desc_chain)

    m = groups.add_parser("manifold", help="chart and atlas nearness")
    ms = m.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    c = ms.add_parser("near")
    c.add_argument("--atlas1", required=True)
    c.add_argument("--atlas2", required=True)
    c.add_argument("--descriptive", action="store_true")
    c.add_argument("--palette")
    c.add_argument("--range-topology")
    c.add_argument("--grid-pitch", default="1/2")
    c.add_argument("--relation", default="interior_intersection")
    c.set_defaults(func=cmd_manifold_near)

    s = groups.add_parser("selftest", help="run the acceptance suite")
    s.add_argument("--seed", type=int, default=None, help="overrides PROXIVOR_SEED")
    s.set_defaults(func=cmd_selftest)
    return p


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as e:
        print(f"proxivor: error: {e}", file=sys.stderr)
        return CommandResult(2, None)
    except ValueError as e:
        # remaining validation errors from the library (unknown builtin names, bad values)
        print(f"proxivor: error: {e}", file=sys.stderr)
        return CommandResult(2, None)


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        res = run(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if res.report is not None:
        sys.stdout.write(json.dumps(res.report, indent=2) + "\n")
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
