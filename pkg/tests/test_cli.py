from __future__ import annotations

import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from proxivor import io as jio
from proxivor import layouts
from proxivor.cli import main
from proxivor.manifold import Atlas
from proxivor.ppm import write_ppm
from proxivor.voronoi import build_diagram


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def files(tmp_path):
    img_three, segs_three = layouts.three_segment_picture()
    img_decomp, segs_decomp = layouts.decomposition_picture()
    write_ppm(tmp_path / "three_seg.ppm", img_three)
    write_ppm(tmp_path / "decomp.ppm", img_decomp, binary=False)
    m1, m2 = layouts.split_voronoi_manifolds()
    u, v = layouts.matching_feature_atlases()
    e1, e2 = layouts.empty_interior_atlases()
    f = {
        "sq4": write(tmp_path / "sq4.json", jio.sites_to_json(layouts.square4())),
        "ten": write(tmp_path / "ten.json", jio.sites_to_json(layouts.ten_site())),
        "rgb": write(tmp_path / "rgb.json", {"points": ["r", "g", "b"], "opens": [[], ["r", "g"], ["r", "g", "b"]]}),
        "d3": write(tmp_path / "d3.json", {"points": ["a", "b", "c"],
                                           "opens": [[], ["a"], ["b"], ["c"], ["a", "b"], ["a", "c"], ["b", "c"],
                                                     ["a", "b", "c"]]}),
        "fam": write(tmp_path / "fam.json", {"sets": [["a"], ["b"], ["a", "b"], ["a", "b", "c"]]}),
        "pal": write(tmp_path / "pal.json", {"palette": [[k, list(c)] for k, c in layouts.RGB_PALETTE]}),
        "segs_three": write(tmp_path / "segs_three.json", {"segments": segs_three}),
        "segs_decomp": write(tmp_path / "segs_decomp.json", {"segments": segs_decomp}),
        "chain": write(tmp_path / "chain.json", {"intervals": [jio.interval_to_json(i) for i in layouts.curve_angle_chain()]}),
        "open_chain": write(tmp_path / "oc.json", {"intervals": [jio.interval_to_json(i)
                                                                 for i in layouts.curve_angle_chain(open_ends=True)]}),
        "w1": write(tmp_path / "w1.json", jio.atlas_to_json(Atlas(m1.charts))),
        "w2": write(tmp_path / "w2.json", jio.atlas_to_json(Atlas(m2.charts))),
        "u": write(tmp_path / "u.json", jio.atlas_to_json(u)),
        "v": write(tmp_path / "v.json", jio.atlas_to_json(v)),
        "e1": write(tmp_path / "e1.json", jio.atlas_to_json(e1)),
        "e2": write(tmp_path / "e2.json", jio.atlas_to_json(e2)),
        "three_seg": str(tmp_path / "three_seg.ppm"),
        "decomp": str(tmp_path / "decomp.ppm"),
        "dir": tmp_path,
    }
    return f


def cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    report = json.loads(out.out) if out.out.strip() else None
    return code, report, out.err


class TestVoronoi:
    def test_build_matches_in_memory(self, files, capsys):
        out = files["dir"] / "d.json"
        code, rep, _ = cli(capsys, "voronoi", "build", "--sites", files["sq4"], "--out", out)
        assert code == 0 and rep["regions"] == 4
        expected = jio.dump_json(jio.diagram_to_json(build_diagram(layouts.square4())))
        assert out.read_text() == expected

    def test_round_trip_is_stable(self, files, capsys):
        d = files["dir"] / "d.json"
        cli(capsys, "voronoi", "build", "--sites", files["sq4"], "--out", d)
        again = jio.dump_json(jio.diagram_to_json(jio.diagram_from_json(jio.load_json(d))))
        assert again == d.read_text()

    def test_classify(self, files, capsys):
        d, c = files["dir"] / "d.json", files["dir"] / "c.json"
        cli(capsys, "voronoi", "build", "--sites", files["sq4"], "--out", d)
        code, rep, _ = cli(capsys, "voronoi", "classify", "--diagram", d, "--out", c)
        assert code == 0
        assert ["".join(r) for r in rep["classification"]] == ["SSNS", "SSSN", "NSSS", "SNSS"]
        assert json.loads(c.read_text()) == {"classification": rep["classification"]}

    def test_nbhd(self, files, capsys):
        d = files["dir"] / "d.json"
        cli(capsys, "voronoi", "build", "--sites", files["ten"], "--out", d)
        code, rep, _ = cli(capsys, "voronoi", "nbhd", "--diagram", d, "--site", 3)
        assert code == 0
        assert rep["touching"] == [2, 4, 6]
        code, _, err = cli(capsys, "voronoi", "nbhd", "--diagram", d, "--site", 40)
        assert code == 2 and "out of range" in err

    def test_region_theorem(self, files, capsys):
        d = files["dir"] / "d.json"
        cli(capsys, "voronoi", "build", "--sites", files["ten"], "--out", d)
        assert cli(capsys, "voronoi", "check-region-theorem", "--diagram", d)[0] == 0
        bad = write(files["dir"] / "bad.json", jio.sites_to_json(layouts.uniqueness_counterexample()))
        cli(capsys, "voronoi", "build", "--sites", bad, "--out", d)
        assert cli(capsys, "voronoi", "check-region-theorem", "--diagram", d)[0] == 1

    def test_render(self, files, capsys):
        d, svg, png = (files["dir"] / n for n in ("d.json", "d.svg", "g.png"))
        cli(capsys, "voronoi", "build", "--sites", files["sq4"], "--out", d)
        code, _, _ = cli(capsys, "voronoi", "render", "--diagram", d, "--out", svg, "--graph", png)
        assert code == 0
        root = ET.parse(svg).getroot()
        paths = [e for e in root.iter() if e.tag.endswith("path")]
        assert len(paths) == 4
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_bad_sites(self, files, capsys):
        bad = write(files["dir"] / "dup.json", {"box": [0, 0, 4, 4], "sites": [[1, 1], [1, 1]]})
        code, _, err = cli(capsys, "voronoi", "build", "--sites", bad, "--out", files["dir"] / "x.json")
        assert code == 2 and "error" in err

    def test_missing_file(self, files, capsys):
        code, _, _ = cli(capsys, "voronoi", "classify", "--diagram", files["dir"] / "nope.json",
                         "--out", files["dir"] / "x.json")
        assert code == 2


class TestProx:
    def test_strong_axioms(self, files, capsys):
        code, rep, _ = cli(capsys, "prox", "axioms", "--space", files["rgb"], "--relation", "interior_intersection",
                           "--kind", "strong")
        assert code == 0 and rep["pass"]

    def test_strong_axioms_fail_without_carrier_clause(self, files, capsys):
        code, rep, _ = cli(capsys, "prox", "axioms", "--space", files["rgb"],
                           "--relation", "interior_intersection_no_x", "--kind", "strong")
        assert code == 1 and not rep["pass"]

    def test_lodato_from_pairs(self, files, capsys):
        rel = write(files["dir"] / "rel.json", {"builtin": "cl_cl"})
        code, rep, _ = cli(capsys, "prox", "axioms", "--space", files["d3"], "--relation-file", rel, "--kind", "lodato")
        assert code == 0

    def test_unknown_relation(self, files, capsys):
        code, _, err = cli(capsys, "prox", "axioms", "--space", files["rgb"], "--relation", "bogus", "--kind", "strong")
        assert code == 2 and "unknown relation" in err

    def test_regular_sets(self, files, capsys):
        code, rep, _ = cli(capsys, "prox", "regular-sets", "--space", files["rgb"])
        assert code == 0 and rep["regular_closed"] == [["r", "g", "b"]]

    def test_lemma_sweep(self, files, capsys):
        code, rep, _ = cli(capsys, "prox", "lemma-sweep", "--space", files["d3"], "--bfamily", files["fam"])
        assert code == 0 and rep["pass"] and rep["admissible"] > 0

    def test_lemma_refuses_non_t1(self, files, capsys):
        fam = write(files["dir"] / "rgbfam.json", {"sets": [["r", "g", "b"]]})
        code, _, err = cli(capsys, "prox", "lemma-sweep", "--space", files["rgb"], "--bfamily", fam)
        assert code == 2 and "hypotheses not satisfied" in err

    def test_second_countability(self, files, capsys):
        code, rep, _ = cli(capsys, "prox", "second-countability", "--space", files["d3"],
                           "--bfamily", files["fam"], "--bprime", files["fam"])
        assert code == 0 and rep == {"pass": True}

    def test_manifold_axioms(self, files, capsys):
        code, rep, _ = cli(capsys, "prox", "axioms", "--space", files["u"], "--relation", "charts_strongly_near",
                           "--kind", "manifold")
        assert code == 0 and rep["pass"]


class TestDesc:
    def test_connect(self, files, capsys):
        code, rep, _ = cli(capsys, "desc", "connect", "--image", files["decomp"], "--segments", files["segs_decomp"],
                           "--palette", files["pal"], "--range-topology", files["rgb"],
                           "--relation", "interior_intersection_no_x")
        assert code == 0 and rep["connected"]

    def test_connect_reports_link(self, files, capsys):
        code, rep, _ = cli(capsys, "desc", "connect", "--image", files["three_seg"], "--segments", files["segs_three"],
                           "--palette", files["pal"], "--range-topology", files["rgb"],
                           "--relation", "interior_intersection_no_x")
        assert code == 1 and rep["failing_link"] == 3

    def test_chain(self, files, capsys):
        assert cli(capsys, "desc", "chain", "--intervals", files["chain"])[:2] == (
            0, {"connected": True, "first_break": None})
        assert cli(capsys, "desc", "chain", "--intervals", files["open_chain"])[:2] == (
            1, {"connected": False, "first_break": 2})

    def test_gradient(self, files, capsys):
        out = files["dir"] / "grad.json"
        code, rep, _ = cli(capsys, "desc", "gradient", "--image", files["three_seg"], "--channel", "r", "--out", out)
        assert code == 2  # 7x2 image has no interior pixel
        from proxivor.descriptive import ProbeImage
        ramp = files["dir"] / "ramp.ppm"
        write_ppm(ramp, ProbeImage.from_function(4, 3, lambda x, y: (40 * x, 0, 0)))
        code, rep, _ = cli(capsys, "desc", "gradient", "--image", ramp, "--channel", "r", "--out", out)
        assert code == 0 and rep["rows"] == 1 and rep["cols"] == 2
        assert json.loads(out.read_text())["angles"][0][0] == pytest.approx(1.5707963267948966)

    def test_bad_ppm(self, files, capsys):
        bad = files["dir"] / "bad.ppm"
        bad.write_bytes(b"P3\n1 1\n100\n1 2 3\n")
        code, _, err = cli(capsys, "desc", "gradient", "--image", bad, "--channel", "r",
                           "--out", files["dir"] / "g.json")
        assert code == 2 and "maxval" in err


class TestManifold:
    def test_voronoi_windows(self, files, capsys):
        code, rep, _ = cli(capsys, "manifold", "near", "--atlas1", files["w1"], "--atlas2", files["w2"])
        assert code == 0 and rep == {"near": True, "charts": ["W1", "W2"], "regions": [0, 0]}

    def test_polygon_far(self, files, capsys):
        code, rep, _ = cli(capsys, "manifold", "near", "--atlas1", files["u"], "--atlas2", files["v"])
        assert code == 1 and rep == {"near": False}

    def test_descriptive(self, files, capsys):
        code, rep, _ = cli(capsys, "manifold", "near", "--atlas1", files["u"], "--atlas2", files["v"],
                           "--descriptive", "--palette", files["pal"], "--range-topology", files["rgb"])
        assert code == 0 and rep["witness"] == ["U1", "V1"] and rep["grid_pitch"] == "1/2"

    def test_descriptive_converse(self, files, capsys):
        code, rep, _ = cli(capsys, "manifold", "near", "--atlas1", files["e1"], "--atlas2", files["e2"],
                           "--descriptive", "--palette", files["pal"], "--range-topology", files["rgb"],
                           "--relation", "interior_intersection_no_x")
        assert code == 1 and len(rep["converse_failures"]) == 1

    def test_descriptive_needs_palette(self, files, capsys):
        code, _, _ = cli(capsys, "manifold", "near", "--atlas1", files["u"], "--atlas2", files["v"], "--descriptive")
        assert code == 2


def test_usage_errors(capsys):
    assert main(["nope"]) == 2
    assert main(["voronoi", "build"]) == 2
    assert "usage" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "proxivor", "desc", "chain", "--intervals", str(tmp_path / "x")],
                         capture_output=True, text=True)
    assert res.returncode == 2 and "error" in res.stderr
