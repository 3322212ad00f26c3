"""The acceptance suite: eleven reproducible checks with time limits.

Each check returns a :class:`Criterion`; ``run_all`` runs them in order.
Pseudo-random corpora are seeded from ``PROXIVOR_SEED`` (default 20161).
"""

from __future__ import annotations

import functools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import layouts
from .corpus import atlas_corpus, seed_from_env, site_corpus
from .descriptive import desc_connected, desc_strongly_near, image_probe, interval_chain_connected
from .exactgeom import SEGMENT
from .finitetop import (
    FiniteTopology,
    all_topologies,
    canonical_strong,
    lemma_sweep,
    nonempty_intersection,
    regular_closed_sets,
    regular_open_sets,
)
from .manifold import (
    atlases_descriptively_near,
    chart_near_witness,
    charts_strongly_near,
    painted_probe,
)
from .oracle import nearest_site_oracle
from .voronoi import (
    FAR,
    NEAR_ONLY,
    STRONGLY_NEAR,
    build_diagram,
    check_strong_axioms_on_regions,
    classification_matrix,
    region_uniqueness_check,
)
from .descriptive import FeatureSpace


@dataclass
class Criterion:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    @property
    def ok(self) -> bool:
        return self.passed and self.seconds < self.limit

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        slow = "" if self.seconds < self.limit else f" (over the {self.limit:g} s limit)"
        return f"[{status}] {self.number:>2}. {self.title}: {self.detail} [{self.seconds:.2f} s]{slow}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "pass": self.ok,
                "detail": self.detail, "seconds": round(self.seconds, 3), "limit": self.limit}


def _timed(number: int, title: str, limit: float):
    def wrap(fn: Callable[..., tuple[bool, str]]):
        @functools.wraps(fn)
        def run(*args, **kwargs) -> Criterion:
            t0 = time.perf_counter()
            passed, detail = fn(*args, **kwargs)
            return Criterion(number, title, passed, detail, time.perf_counter() - t0, limit)
        return run
    return wrap


@functools.lru_cache(maxsize=4)
def _corpus_diagrams(seed: int):
    return tuple(build_diagram(s, warn_clip=False) for s in site_corpus(200, seed))


@_timed(1, "rgb picture points: A near B, B not near C", 1)
def criterion_1() -> tuple[bool, str]:
    img, (a, b, c) = layouts.three_segment_picture()
    fs = layouts.rgb_feature_space()
    phi = image_probe(img, layouts.RGB_PALETTE)
    strong = canonical_strong(fs.topology, x_clause=False)
    ab = desc_strongly_near(a, b, phi, fs, strong)
    bc = desc_strongly_near(b, c, phi, fs, strong)
    return ab and not bc, f"A~B={ab}, B~C={bc}"


@_timed(2, "decomposition (A, C, B) is descriptively connected", 1)
def criterion_2() -> tuple[bool, str]:
    img, pieces = layouts.decomposition_picture()
    fs = layouts.rgb_feature_space()
    verdict = desc_connected(pieces, image_probe(img, layouts.RGB_PALETTE), fs,
                             canonical_strong(fs.topology, x_clause=False))
    return verdict.connected, f"connected={verdict.connected}"


@_timed(3, "angle-interval chains", 1)
def criterion_3() -> tuple[bool, str]:
    half = interval_chain_connected(layouts.curve_angle_chain())
    open_ = interval_chain_connected(layouts.curve_angle_chain(open_ends=True))
    return half and not open_, f"(0,pi/4]~[pi/4,pi/2]={half}, open variant={open_}"


@_timed(4, "strong proximity axioms on 200 random diagrams", 60)
def criterion_4(seed: int) -> tuple[bool, str]:
    diagrams = _corpus_diagrams(seed)
    bad = [k for k, d in enumerate(diagrams) if not check_strong_axioms_on_regions(d).passed]
    return not bad, f"{len(diagrams) - len(bad)}/{len(diagrams)} pass N0-N6" + (f", failing {bad[:5]}" if bad else "")


@_timed(5, "region uniqueness on diagrams with contained vertices", 60)
def criterion_5(seed: int) -> tuple[bool, str]:
    diagrams = [d for d in _corpus_diagrams(seed) if d.vertex_containment_ok]
    reports = [region_uniqueness_check(d) for d in diagrams]
    ok = sum(r.passed for r in reports)
    return bool(diagrams) and ok == len(diagrams), f"{ok}/{len(diagrams)} eligible diagrams pass"


@_timed(6, "cocircular square: diagonals near only, sides strongly near", 1)
def criterion_6() -> tuple[bool, str]:
    m = classification_matrix(build_diagram(layouts.square4()))
    # sites are listed counterclockwise, so i and i+2 are diagonal
    expected = [[STRONGLY_NEAR if i == j else NEAR_ONLY if (i - j) % 4 == 2 else STRONGLY_NEAR
                 for j in range(4)] for i in range(4)]
    return m == expected, "matrix " + " ".join("".join(r) for r in m)


@_timed(7, "nearest-site sampling oracle", 120)
def criterion_7(seed: int, samples: int = 10_000) -> tuple[bool, str]:
    diagrams = _corpus_diagrams(seed)
    results = [nearest_site_oracle(d, samples, seed=seed + k) for k, d in enumerate(diagrams)]
    total = sum(r.samples for r in results)
    bad = sum(r.mismatches for r in results)
    enough = all(r.samples >= samples for r in results)
    return bad == 0 and enough, f"{total - bad}/{total} samples agree across {len(results)} diagrams"


@_timed(8, "basic-open inclusion vs. set condition on discrete spaces", 120)
def criterion_8(max_points: int = 4) -> tuple[bool, str]:
    admissible = equivalent = 0
    for n in range(1, max_points + 1):
        t = FiniteTopology.discrete(n)
        s = lemma_sweep(t, nonempty_intersection(t), canonical_strong(t))
        admissible += s.admissible
        equivalent += s.equivalent
    return admissible > 0 and admissible == equivalent, f"{equivalent}/{admissible} admissible instances equivalent"


def regular_lattice_ok(t: FiniteTopology) -> Optional[str]:
    """``None`` when closure/interior are inverse bijections RO* <-> RCL and int.cl is idempotent."""
    ro = [a for a in regular_open_sets(t) if a]
    rcl = regular_closed_sets(t)
    to_rcl = {a: t.closure(a) for a in ro}
    to_ro = {f: t.interior(f) for f in rcl}
    if sorted(to_rcl.values()) != sorted(rcl) or sorted(to_ro.values()) != sorted(ro):
        return "closure/interior do not map onto the other family"
    if any(to_ro[to_rcl[a]] != a for a in ro) or any(to_rcl[to_ro[f]] != f for f in rcl):
        return "maps are not mutually inverse"
    for a in t.subsets():
        ic = t.interior(t.closure(a))
        if t.interior(t.closure(ic)) != ic:
            return f"int.cl not idempotent at {a}"
    return None


@_timed(9, "regular open / regular closed lattice on all topologies of 4 points", 30)
def criterion_9() -> tuple[bool, str]:
    tops = all_topologies(4)
    bad = [(k, msg) for k, t in enumerate(tops) if (msg := regular_lattice_ok(t))]
    return len(tops) == 355 and not bad, f"{len(tops) - len(bad)}/{len(tops)} topologies"


@_timed(10, "chart witness and descriptive implication audits", 30)
def criterion_10(seed: int) -> tuple[bool, str]:
    atlases = atlas_corpus(50, seed)
    missing = near_pairs = 0
    for a in atlases:
        for ci in a.charts:
            for cj in a.charts:
                if charts_strongly_near(ci, cj):
                    near_pairs += 1
                    if chart_near_witness(ci, cj) is None:
                        missing += 1
    labels = ("r", "g", "b")
    spaces = [FeatureSpace(FiniteTopology(labels, t.opens)) for t in all_topologies(3)]
    relations = [(fs, canonical_strong(fs.topology, x)) for fs in spaces for x in (True, False)]
    audited = converse = 0
    for k in range(len(atlases)):
        a1, a2 = atlases[k], atlases[(k + 1) % len(atlases)]
        phi = functools.lru_cache(maxsize=None)(painted_probe(a1.charts + a2.charts, layouts.RGB_PALETTE))
        for fs, strong in relations:
            # raises on any pair that is descriptively near with an empty descriptive intersection
            report = atlases_descriptively_near(a1, a2, phi, fs, strong)
            audited += len(report.pairs)
            converse += len(report.converse_failures)
    u, v = layouts.empty_interior_atlases()
    fs = layouts.rgb_feature_space()
    stored = atlases_descriptively_near(u, v, painted_probe(u.charts + v.charts, layouts.RGB_PALETTE),
                                        fs, canonical_strong(fs.topology, x_clause=False))
    stored_ok = bool(stored.converse_failures)
    detail = (f"{near_pairs} near chart pairs, {missing} without witness; {audited} descriptive pairs audited, "
              f"0 violations, {converse} converse failures; stored converse witness {'present' if stored_ok else 'missing'}")
    return missing == 0 and stored_ok, detail


@_timed(11, "split diagram: charts strongly near through the shared edge", 1)
def criterion_11() -> tuple[bool, str]:
    from .manifold import voronoi_manifolds_strongly_near
    from .voronoi import classify_regions
    from .exactgeom import intersect_convex

    m1, m2 = layouts.split_voronoi_manifolds()
    res = voronoi_manifolds_strongly_near(m1, m2)
    if not res.near:
        return False, "not near"
    i, j = res.regions
    r1, r2 = m1.charts[0].image.regions[i], m2.charts[0].image.regions[j]
    shared = intersect_convex(r1, r2)
    ok = classify_regions(r1, r2) == STRONGLY_NEAR and shared.kind == SEGMENT
    ends = " - ".join(f"({p.x},{p.y})" for p in shared.vertices)
    return ok, f"near via regions {res.regions} of charts {res.charts}, shared {shared.kind} {ends}"


def run_all(seed: Optional[int] = None) -> list[Criterion]:
    seed = seed_from_env() if seed is None else seed
    return [
        criterion_1(), criterion_2(), criterion_3(), criterion_4(seed), criterion_5(seed),
        criterion_6(), criterion_7(seed), criterion_8(), criterion_9(), criterion_10(seed),
        criterion_11(),
    ]


__all__ = ["Criterion", "run_all", "regular_lattice_ok", "FAR"]
