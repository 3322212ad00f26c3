from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proxivor import layouts
from proxivor.descriptive import (
    AngleInterval,
    FeatureSpace,
    ProbeImage,
    desc_connected,
    desc_strongly_near,
    describe,
    finite_space_connected,
    finite_space_connected_bruteforce,
    gradient_angle,
    gradient_field,
    identity_probe,
    image_probe,
    interval_chain_connected,
    interval_chain_first_break,
    pairwise_overlapping,
    quantize_color,
)
from proxivor.finitetop import FiniteTopology, all_topologies, canonical_strong
from proxivor.ppm import PPMError, encode_ppm, parse_ppm, read_ppm, write_ppm

channel = st.integers(0, 255)
pixels = st.tuples(channel, channel, channel)


@st.composite
def images(draw, min_side=1, max_side=6):
    w = draw(st.integers(min_side, max_side))
    h = draw(st.integers(min_side, max_side))
    return ProbeImage(w, h, tuple(draw(st.lists(pixels, min_size=w * h, max_size=w * h))))


def gray(f):
    return lambda x, y: (f(x, y), 0, 0)


class TestGradient:
    def test_constant_is_zero(self):
        img = ProbeImage.from_function(3, 3, gray(lambda x, y: 7))
        assert gradient_angle(img, 1, 1) == 0.0

    def test_x_ramp(self):
        img = ProbeImage.from_function(3, 3, gray(lambda x, y: 10 * x))
        assert gradient_angle(img, 1, 1) == pytest.approx(math.pi / 2)

    def test_y_ramp(self):
        img = ProbeImage.from_function(3, 3, gray(lambda x, y: 10 * y))
        assert gradient_angle(img, 1, 1) == 0.0

    def test_diagonal_ramp(self):
        img = ProbeImage.from_function(4, 4, gray(lambda x, y: 5 * (x + y)))
        assert gradient_angle(img, 1, 2) == pytest.approx(math.pi / 4)

    def test_channel_selection(self):
        img = ProbeImage.from_function(3, 3, lambda x, y: (0, 9 * x, 0))
        assert gradient_angle(img, 1, 1, "r") == 0.0
        assert gradient_angle(img, 1, 1, "g") == pytest.approx(math.pi / 2)
        with pytest.raises(ValueError, match="channel"):
            gradient_angle(img, 1, 1, "alpha")

    @pytest.mark.parametrize("x, y", [(0, 1), (2, 1), (1, 0), (1, 2)])
    def test_border_needs_stencil(self, x, y):
        img = ProbeImage.from_function(3, 3, gray(lambda x, y: x))
        with pytest.raises(ValueError, match="insufficient stencil"):
            gradient_angle(img, x, y)

    def test_field_shape(self):
        img = ProbeImage.from_function(5, 4, gray(lambda x, y: x * y))
        field = gradient_field(img)
        assert len(field) == 2 and all(len(row) == 3 for row in field)

    @settings(max_examples=80)
    @given(images(min_side=3))
    def test_quarter_turn_adds_right_angle(self, img):
        rot = img.rotate90()
        for y in range(1, img.height - 1):
            for x in range(1, img.width - 1):
                fx = img.value(x + 1, y, "r") - img.value(x - 1, y, "r")
                fy = img.value(x, y + 1, "r") - img.value(x, y - 1, "r")
                if fx == fy == 0:
                    continue
                before = gradient_angle(img, x, y)
                after = gradient_angle(rot, y, img.width - 1 - x)
                turn = after - before - math.pi / 2
                assert math.cos(turn) == pytest.approx(1.0)

    @given(images())
    def test_four_turns_identity(self, img):
        assert img.rotate90().rotate90().rotate90().rotate90() == img


class TestProbe:
    def test_quantize(self):
        pal = layouts.RGB_PALETTE
        assert quantize_color((250, 10, 10), pal) == "r"
        assert quantize_color((0, 0, 200), pal) == "b"

    def test_quantize_tie_prefers_first(self):
        pal = [("x", (0, 0, 0)), ("y", (2, 0, 0))]
        assert quantize_color((1, 0, 0), pal) == "x"
        with pytest.raises(ValueError):
            quantize_color((1, 0, 0), [])

    def test_image_probe_indexes_pixels(self):
        img, (a, b, c) = layouts.three_segment_picture()
        phi = image_probe(img, layouts.RGB_PALETTE)
        assert describe(a, phi) == {"r", "g"}
        assert describe(b, phi) == {"r", "g", "b"}
        assert describe(c, phi) == {"r", "b"}

    @given(st.lists(st.integers(0, 20)), st.lists(st.integers(0, 20)))
    def test_description_of_union(self, a, b):
        phi = lambda p: "even" if p % 2 == 0 else "odd"  # noqa: E731
        assert describe(a + b, phi) == describe(a, phi) | describe(b, phi)

    def test_identity_probe(self):
        assert describe([1, 2, 2], identity_probe()) == {1, 2}


class TestStrongNearness:
    def setup_method(self):
        self.fs = layouts.rgb_feature_space()
        self.strong = canonical_strong(self.fs.topology, x_clause=False)

    def test_picture_points(self):
        img, (a, b, c) = layouts.three_segment_picture()
        phi = image_probe(img, layouts.RGB_PALETTE)
        assert desc_strongly_near(a, b, phi, self.fs, self.strong)
        assert not desc_strongly_near(b, c, phi, self.fs, self.strong)

    def test_x_clause_changes_verdict(self):
        img, (a, b, c) = layouts.three_segment_picture()
        phi = image_probe(img, layouts.RGB_PALETTE)
        with_x = canonical_strong(self.fs.topology, x_clause=True)
        assert desc_strongly_near(b, c, phi, self.fs, with_x)

    def test_all_distinct_labels_not_near(self):
        fs = FeatureSpace(FiniteTopology.discrete(4, "abcd"))
        strong = canonical_strong(fs.topology)
        phi = identity_probe()
        assert not desc_strongly_near(["a", "b"], ["c", "d"], phi, fs, strong)
        assert desc_strongly_near(["a", "b"], ["b", "c"], phi, fs, strong)


class TestConnectedness:
    @pytest.mark.parametrize("t", [t for n in range(1, 5) for t in all_topologies(n)],
                             ids=lambda t: f"n{t.n}-{sorted(t.opens)}")
    def test_graph_matches_bruteforce(self, t):
        for a in t.subsets():
            assert finite_space_connected(a, t) == finite_space_connected_bruteforce(a, t)

    def test_rgb(self):
        t = layouts.tau_rgb()
        assert finite_space_connected(t.mask("rb"), t)
        assert finite_space_connected(t.full, t)
        assert not finite_space_connected(t.mask("rg"), FiniteTopology.discrete(3, "rgb"))
        assert finite_space_connected(0, t)

    def test_decomposition_connected(self):
        img, pieces = layouts.decomposition_picture()
        fs = layouts.rgb_feature_space()
        v = desc_connected(pieces, image_probe(img, layouts.RGB_PALETTE), fs,
                           canonical_strong(fs.topology, x_clause=False))
        assert v.connected
        assert v.to_json() == {"connected": True, "failing_piece": None, "failing_link": None, "reason": ""}

    def test_reordered_decomposition_breaks_at_second_link(self):
        img, (a, c, b) = layouts.decomposition_picture()
        fs = layouts.rgb_feature_space()
        v = desc_connected([a, b, c], image_probe(img, layouts.RGB_PALETTE), fs,
                           canonical_strong(fs.topology, x_clause=False))
        assert not v.connected and v.failing_link == 2 and v.failing_piece is None

    def test_disconnected_piece(self):
        fs = FeatureSpace(FiniteTopology.discrete(3, "rgb"))
        v = desc_connected([["r", "g"]], identity_probe(), fs, canonical_strong(fs.topology))
        assert not v.connected and v.failing_piece == 1

    def test_interior_description_checked(self):
        fs = FeatureSpace(FiniteTopology.discrete(3, "rgb"))
        v = desc_connected([["r"]], identity_probe(), fs, canonical_strong(fs.topology),
                           interior=lambda piece: ["r", "b"])
        assert not v.connected and "interior" in v.reason


def iv(lo, hi, lo_open=False, hi_open=False):
    return AngleInterval(Fraction(lo), Fraction(hi), lo_open, hi_open)


class TestIntervals:
    def test_curve_chain(self):
        assert interval_chain_connected(layouts.curve_angle_chain())
        assert not interval_chain_connected(layouts.curve_angle_chain(open_ends=True))

    def test_meeting_point(self):
        a, b = layouts.curve_angle_chain()
        m = a.intersect(b)
        assert (m.lo, m.hi) == (Fraction(1, 4), Fraction(1, 4))

    def test_half_open_touching_fails(self):
        assert not iv("0", "1/4", hi_open=True).meets(iv("1/4", "1/2"))

    def test_first_break_is_one_based(self):
        chain = [iv(0, "1/4"), iv("1/4", "1/2"), iv("3/4", 1)]
        assert interval_chain_first_break(chain) == 3
        assert interval_chain_first_break(chain[:2]) is None

    def test_chain_not_pairwise(self):
        chain = [iv(0, "1/4"), iv("1/4", "1/2"), iv("1/2", 1)]
        assert interval_chain_connected(chain)
        assert not pairwise_overlapping(chain)

    def test_empty_and_invalid(self):
        with pytest.raises(ValueError):
            iv(1, 0)
        with pytest.raises(ValueError, match="nonempty"):
            interval_chain_connected([iv(0, 0, lo_open=True)])
        with pytest.raises(ValueError):
            interval_chain_connected([iv(0, 1)], mode="touch")

    def test_str(self):
        assert str(iv(0, "1/4", lo_open=True)) == "(0pi, 1/4pi]"

    @given(st.fractions(0, 2, max_denominator=8), st.fractions(0, 2, max_denominator=8),
           st.fractions(0, 2, max_denominator=8), st.fractions(0, 2, max_denominator=8),
           st.booleans(), st.booleans())
    def test_meets_symmetric(self, a, b, c, d, o1, o2):
        x = AngleInterval(min(a, b), max(a, b), o1, False)
        y = AngleInterval(min(c, d), max(c, d), False, o2)
        assert x.meets(y) == y.meets(x)


class TestPPM:
    def test_binary_round_trip(self):
        img, _ = layouts.three_segment_picture()
        assert parse_ppm(encode_ppm(img)) == img

    def test_ascii_round_trip(self, tmp_path):
        img, _ = layouts.decomposition_picture()
        path = tmp_path / "p.ppm"
        write_ppm(path, img, binary=False)
        assert path.read_bytes().startswith(b"P3")
        assert read_ppm(path) == img

    @given(images())
    def test_round_trip_property(self, img):
        assert parse_ppm(encode_ppm(img, binary=True)) == img
        assert parse_ppm(encode_ppm(img, binary=False)) == img

    def test_comments(self):
        data = b"P3\n# a comment\n2 1 # trailing\n255\n255 0 0  # red\n0 0 255\n"
        img = parse_ppm(data)
        assert img.pixels == ((255, 0, 0), (0, 0, 255))

    def test_binary_with_comment(self):
        data = b"P6 #c\n1 1\n255\n" + bytes([1, 2, 3])
        assert parse_ppm(data).pixels == ((1, 2, 3),)

    @pytest.mark.parametrize("data, msg", [
        (b"P5\n1 1\n255\n\x00", "magic"),
        (b"P3\n1 1\n100\n1 2 3\n", "maxval"),
        (b"P6\n2 1\n255\n\x00\x00\x00", "raster"),
        (b"P3\n1 1\n255\n1 2\n", "samples"),
        (b"P3\n1 1\n255\n1 2 300\n", "range"),
        (b"P3\n1", "truncated"),
        (b"P3\n0 1\n255\n", "positive"),
    ])
    def test_errors(self, data, msg):
        with pytest.raises(PPMError, match=msg):
            parse_ppm(data)
