from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proxivor import layouts
from proxivor.corpus import random_site_set, site_corpus
from proxivor.exactgeom import POLYGON, SEGMENT, Box, Point2, polygon
from proxivor.oracle import nearest_site_oracle
from proxivor.voronoi import (
    FAR,
    NEAR_ONLY,
    STRONGLY_NEAR,
    SiteSet,
    SubbaseElement,
    build_diagram,
    check_strong_axioms_on_regions,
    classification_matrix,
    classify_pair,
    neighborhood_members,
    region_uniqueness_check,
    shared_edge_on_bisector,
    smallest_open_set,
    subbase_membership,
    total_area,
    vertex_containment_bruteforce,
    voronoi_region,
)


def sites(pts, box):
    return SiteSet(tuple(Point2.of(x, y) for x, y in pts), box)


@pytest.fixture(scope="module")
def small_corpus():
    return [build_diagram(s, warn_clip=False) for s in site_corpus(25, seed=7, max_sites=12)]


class TestRegions:
    def test_two_sites(self):
        s = sites([(0, 0), (2, 0)], Box.of(-1, -1, 3, 1))
        assert voronoi_region(0, s) == polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])

    def test_inactive_bisector(self):
        s = sites([(0, 0), (4, 0), (0, 4), (4, 4)], Box.of(-1, -1, 5, 5))
        assert voronoi_region(0, s) == polygon([(-1, -1), (2, -1), (2, 2), (-1, 2)])

    def test_collinear_strip(self):
        s = sites([(0, 0), (2, 0), (4, 0)], Box.of(-1, -1, 5, 1))
        assert voronoi_region(1, s) == polygon([(1, -1), (3, -1), (3, 1), (1, 1)])

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            voronoi_region(5, layouts.square4())

    def test_edges_tagged_with_site_pairs(self):
        r = voronoi_region(0, layouts.square4())
        tags = {t.to_json() if t.kind == "box" else tuple(t.sites) for t in r.edge_tags}
        assert tags == {"box", (0, 1), (0, 3)}


class TestSiteSet:
    def test_duplicate_sites(self):
        with pytest.raises(ValueError, match="duplicate"):
            sites([(1, 1), (1, 1)], Box.of(0, 0, 2, 2))

    def test_site_on_box(self):
        with pytest.raises(ValueError, match="strictly inside"):
            sites([(0, 1)], Box.of(0, 0, 2, 2))


class TestBuild:
    def test_single_site_is_box(self):
        box = Box.of(0, 0, 3, 2)
        d = build_diagram(sites([(1, 1)], box))
        assert d.regions == (box.region(),)
        assert classification_matrix(d) == [[STRONGLY_NEAR]]

    def test_square_regions_congruent(self):
        d = build_diagram(layouts.square4())
        assert {r.area() for r in d.regions} == {4}
        assert all(r.contains(Point2.of(2, 2)) for r in d.regions)

    def test_clip_warning(self, caplog):
        s = SiteSet((Point2.of(1, 1), Point2.of(3, 1), Point2(Fraction(2), Fraction(11, 10))), Box.of(0, 0, 4, 4))
        with caplog.at_level("WARNING"):
            d = build_diagram(s)
        assert not d.vertex_containment_ok
        assert "outside the box" in caplog.text
        caplog.clear()
        build_diagram(s, warn_clip=False)
        assert caplog.text == ""

    def test_tessellation_invariants(self, small_corpus):
        for d in small_corpus:
            assert total_area(d) == d.box.area()
            for i, r in enumerate(d.regions):
                assert r.kind == POLYGON and r.strictly_contains(d.sites[i])
                for j in range(i + 1, len(d)):
                    assert d.pair_intersection(i, j).kind != POLYGON

    def test_vertex_containment_matches_bruteforce(self, small_corpus):
        for d in small_corpus:
            assert d.vertex_containment_ok == vertex_containment_bruteforce(d.site_set)

    def test_vertex_containment_degenerate_layouts(self):
        for s in (layouts.square4(), layouts.collinear3(), layouts.ten_site()):
            assert build_diagram(s).vertex_containment_ok == vertex_containment_bruteforce(s)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10**6), st.integers(2, 9))
    def test_nearest_site_oracle(self, seed, n):
        d = build_diagram(random_site_set(random.Random(seed), n), warn_clip=False)
        res = nearest_site_oracle(d, samples=2000, seed=seed)
        assert res.passed, res.first_mismatch


class TestClassification:
    def test_square(self):
        d = build_diagram(layouts.square4())
        assert classify_pair(d, 0, 1) == STRONGLY_NEAR
        assert classify_pair(d, 0, 2) == NEAR_ONLY
        assert d.pair_intersection(0, 2).vertices == (Point2.of(2, 2),)

    def test_collinear_far(self):
        d = build_diagram(layouts.collinear3())
        assert classify_pair(d, 0, 2) == FAR
        assert classify_pair(d, 0, 1) == STRONGLY_NEAR

    def test_ten_site_adjacency(self):
        d = build_diagram(layouts.ten_site())
        assert d.vertex_containment_ok
        # 1-based a4 is index 3
        assert classify_pair(d, 3, 1) == STRONGLY_NEAR
        assert classify_pair(d, 3, 5) == STRONGLY_NEAR
        assert classify_pair(d, 3, 4) != STRONGLY_NEAR

    def test_same_index_rejected(self):
        with pytest.raises(ValueError):
            classify_pair(build_diagram(layouts.square4()), 1, 1)

    def test_symmetry_and_bisector_edges(self, small_corpus):
        for d in small_corpus:
            m = classification_matrix(d)
            for i in range(len(d)):
                for j in range(len(d)):
                    assert m[i][j] == m[j][i]
                    if i != j and m[i][j] == STRONGLY_NEAR:
                        assert d.pair_intersection(i, j).kind == SEGMENT
                        assert shared_edge_on_bisector(d, i, j)


class TestAxioms:
    def test_corpus_passes(self, small_corpus):
        for d in small_corpus:
            rep = check_strong_axioms_on_regions(d)
            assert rep.passed, rep.failed()

    def test_single_region(self):
        assert check_strong_axioms_on_regions(build_diagram(sites([(1, 1)], Box.of(0, 0, 2, 2)))).passed

    def test_degenerate_layouts(self):
        for s in (layouts.square4(), layouts.collinear3(), layouts.ten_site()):
            assert check_strong_axioms_on_regions(build_diagram(s)).passed

    def test_broken_symmetry_fails_n1(self):
        d = build_diagram(layouts.square4())
        table = [[c == STRONGLY_NEAR for c in row] for row in classification_matrix(d)]
        table[0][1] = False
        rep = check_strong_axioms_on_regions(d, table)
        assert not rep["N1"].passed
        assert rep["N1"].witness == (0, 1)


class TestNeighborhoods:
    def test_square_membership(self):
        d = build_diagram(layouts.square4())
        assert subbase_membership(d, 1, SubbaseElement("hit", 0))
        assert not subbase_membership(d, 2, SubbaseElement("hit", 0))

    def test_collinear_miss(self):
        d = build_diagram(layouts.collinear3())
        assert subbase_membership(d, 2, SubbaseElement("miss", 0))

    def test_square_smallest_open_set(self):
        nb = smallest_open_set(build_diagram(layouts.square4()), 0)
        assert nb.strongly_near == {0, 1, 3} and nb.disjoint == frozenset()
        assert nb.touching(4) == {2}

    def test_single_site(self):
        nb = smallest_open_set(build_diagram(sites([(1, 1)], Box.of(0, 0, 2, 2))), 0)
        assert nb.strongly_near == {0} and nb.disjoint == frozenset()

    def test_ten_site_neighbourhood(self):
        d = build_diagram(layouts.ten_site())
        nb = smallest_open_set(d, 3)
        assert {i + 1 for i in nb.strongly_near} == {1, 2, 4, 6}
        assert {i + 1 for i in nb.disjoint} == {8, 9, 10}
        assert {i + 1 for i in nb.touching(len(d))} == {3, 5, 7}
        assert neighborhood_members(d, nb) == [3]

    def test_partition(self, small_corpus):
        for d in small_corpus:
            for p in range(len(d)):
                nb = smallest_open_set(d, p)
                assert not nb.strongly_near & nb.disjoint
                for q in nb.touching(len(d)):
                    assert classify_pair(d, p, q) == NEAR_ONLY


class TestUniqueness:
    def test_square_and_two_sites(self):
        assert region_uniqueness_check(build_diagram(layouts.square4())).passed
        assert region_uniqueness_check(build_diagram(sites([(0, 0), (2, 0)], Box.of(-1, -1, 3, 1)))).passed

    def test_ten_site(self):
        rep = region_uniqueness_check(build_diagram(layouts.ten_site()))
        assert rep.passed and 3 in rep.checked

    def test_stored_counterexample_fails(self):
        # a closed neighbour cycle of three mutually adjacent regions defeats the property
        d = build_diagram(layouts.uniqueness_counterexample())
        assert d.vertex_containment_ok
        rep = region_uniqueness_check(d)
        assert not rep.passed
        assert rep.checked == [0]
        assert {q for p, q in rep.counterexamples} == {1, 2, 3}

    def test_boundary_regions_reported_separately(self):
        d = build_diagram(sites([(1, 1), (3, 1), (2, 3)], Box.of(0, 0, 4, 4)))
        rep = region_uniqueness_check(d)
        assert rep.passed and rep.checked == []
        assert rep.boundary_counterexamples
