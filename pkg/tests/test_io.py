from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from proxivor import io as jio
from proxivor import layouts
from proxivor.finitetop import LODATO
from proxivor.voronoi import build_diagram


class TestRationals:
    @given(st.fractions(max_denominator=1000))
    def test_round_trip(self, x):
        assert jio.parse_rational(jio.q(x)) == x

    @pytest.mark.parametrize("bad", [0.5, True, "1/0", "abc", None])
    def test_rejects(self, bad):
        with pytest.raises(jio.InputError):
            jio.parse_rational(bad)

    def test_accepts_ints_and_strings(self):
        assert jio.parse_rational(3) == 3
        assert jio.parse_rational(" -2/6 ") == Fraction(-1, 3)


class TestDiagrams:
    def test_round_trip(self):
        d = build_diagram(layouts.ten_site())
        doc = jio.diagram_to_json(d)
        assert jio.diagram_from_json(doc) == d

    def test_tampered_regions_rejected(self):
        doc = jio.diagram_to_json(build_diagram(layouts.square4()))
        doc["regions"][0]["vertices"][0] = ["0", "1/3"]
        with pytest.raises(jio.InputError, match="do not match"):
            jio.diagram_from_json(doc)

    def test_region_kinds(self):
        r = build_diagram(layouts.square4()).regions[0]
        out = jio.region_to_json(r)
        assert out["kind"] == "polygon" and len(out["edge_tags"]) == len(out["vertices"])


class TestTopologies:
    def test_round_trip(self):
        t = layouts.tau_rgb()
        assert jio.topology_from_json(jio.topology_to_json(t)) == t

    def test_not_a_topology(self):
        with pytest.raises((jio.InputError, ValueError)):
            jio.topology_from_json({"points": ["a", "b"], "opens": [["a"]]})

    def test_relation_pairs(self):
        t = layouts.tau_rgb()
        rel = jio.relation_from_json({"pairs": [[["r"], ["g"]]]}, t, LODATO)
        assert rel(t.mask("r"), t.mask("g")) and not rel(t.mask("g"), t.mask("r"))

    def test_family_unknown_point(self):
        with pytest.raises((jio.InputError, ValueError)):
            jio.family_from_json({"sets": [["z"]]}, layouts.tau_rgb())


class TestAtlases:
    def test_round_trip(self):
        for atlas in (*layouts.matching_feature_atlases(), *layouts.empty_interior_atlases()):
            assert jio.atlas_from_json(jio.atlas_to_json(atlas)) == atlas

    def test_interval_chart(self):
        doc = {"charts": [{"id": "I", "image": {"type": "intervals",
                                                 "intervals": [{"lo": "0", "hi": "1/4", "lo_open": True}]}}]}
        atlas = jio.atlas_from_json(doc)
        assert atlas.charts[0].dimension == 1

    def test_unknown_image_type(self):
        with pytest.raises(jio.InputError):
            jio.atlas_from_json({"charts": [{"id": "X", "image": {"type": "sphere"}}]})

    def test_palette_forms(self):
        as_list = jio.palette_from_json({"palette": [["r", [255, 0, 0]]]})
        as_dict = jio.palette_from_json({"r": [255, 0, 0]})
        assert as_list == as_dict == [("r", (255, 0, 0))]
