import json
import math
import re

import pytest

from rauzy.cli import SCHEMA_VERSION, main


def test_tile_level6_renders_105_tiles(tmp_path, capsys):
    svg = tmp_path / "p6.svg"
    assert main(["tile", "--level", "6", "--svg", str(svg), "--out", str(tmp_path)]) == 0
    assert "105 tiles rendered" in capsys.readouterr().out
    text = svg.read_text()
    assert text.count('class="tile ') == 105
    doc = json.loads((tmp_path / "P6.json").read_text())
    assert doc["schema"] == "rauzy.patch" and doc["schema_version"] == SCHEMA_VERSION
    assert doc["tiles"] == 105 and doc["config"]["level"] == 6


def test_svg_uses_real_embedding(tmp_path):
    svg = tmp_path / "p3.svg"
    main(["tile", "--level", "3", "--svg", str(svg)])
    # every rhombus edge has unit length in the plane, 20 px at the default scale
    for poly in re.findall(r'points="([^"]+)"', svg.read_text()):
        pts = [tuple(map(float, p.split(","))) for p in poly.split()]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            assert math.dist(a, b) == pytest.approx(20.0, abs=1e-2)


def test_tile_level0(capsys):
    assert main(["tile", "--level", "0"]) == 0
    assert "3 tiles rendered" in capsys.readouterr().out


def test_highlight_lines(tmp_path, capsys):
    svg = tmp_path / "p6.svg"
    assert main(["tile", "--level", "6", "--highlight-lines", "--svg", str(svg)]) == 0
    assert 'class="line"' in svg.read_text()
    assert "lines highlighted" in capsys.readouterr().out


def test_env_overrides(monkeypatch, capsys):
    monkeypatch.setenv("RAUZY_LEVEL", "2")
    assert main(["tile"]) == 0
    assert "P_2: 9 tiles" in capsys.readouterr().out
    assert main(["tile", "--level", "3"]) == 0  # flag wins
    assert "P_3: 17 tiles" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["tile", "--level", "99"],
    ["tile", "--prime", "2"],
    ["analyze", "--signs", "bogus"],
    ["verify-all", "--only", "nope"],
    ["tile", "--field", "real"],
])
def test_configuration_errors_exit_2(argv):
    assert main(argv) == 2


def test_bad_env_value_exits_2(monkeypatch):
    monkeypatch.setenv("RAUZY_LEVEL", "six")
    assert main(["tile"]) == 2


def test_analyze_passes_and_writes_json(tmp_path):
    out = tmp_path / "a.json"
    assert main(["analyze", "--level", "5", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == "rauzy.analysis" and doc["ok"]
    assert doc["max_n_minus_k"] <= 3
    assert all(l["class"] in ([3, 6], [2, 5]) for l in doc["loops"])


def test_corrupted_signs_fail_analysis():
    assert main(["analyze", "--level", "4", "--signs", "uniform"]) == 1


def test_verify_periodicity_level7(tmp_path, capsys):
    out = tmp_path / "v.json"
    assert main(["verify-all", "--only", "periodicity", "--level", "7", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "period 24 (2k+2 = 24)" in text
    doc = json.loads(out.read_text())
    assert doc["passed"] and doc["checks"][0]["name"].startswith("periodicity")


def test_verify_failure_exits_1():
    assert main(["verify-all", "--only", "dims", "--level", "4", "--signs", "all-plus"]) == 1
