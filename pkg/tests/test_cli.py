from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import pytest

from mellinkit.cli import load_schema, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "(z-1)*T + 1", "--json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, load_schema())
    assert set(data["checks"].values()) == {"PASS"}
    assert data["defect"] == 0 and data["horz"] == ["1"]


def test_delta_module_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "z - 2", "--expect-defect", "1")
    assert code == 0 and "punctual defect: 1" in out
    code, _, _ = run(capsys, "verify", "z - 2")
    assert code == 1
    code, _, err = run(capsys, "verify", "z - 2", "--expect-defect", "2")
    assert code == 1 and "expected 2" in err


def test_polygon(capsys):
    code, out, _ = run(capsys, "polygon", "T - z", "--json")
    data = json.loads(out)
    jsonschema.validate(data, load_schema())
    assert code == 0
    assert data["global_polygon"]["sides"] == [{"slope": "-1", "width": "1"}]


def test_rationals_are_strings(capsys):
    _, out, _ = run(capsys, "polygon", "T^2 - z", "--json")
    assert json.loads(out)["global_polygon"]["sides"] == [{"slope": "-1/2", "width": "2"}]


def test_mellin_and_germ(capsys):
    code, out, _ = run(capsys, "mellin", "(z-1)*T + 1", "--json")
    data = json.loads(out)
    jsonschema.validate(data, load_schema())
    assert code == 0 and data["mellin_polygon"]["sides"] == [{"slope": "0", "width": "1"}]
    code, out, _ = run(capsys, "germ", "T^2 - z", "--at", "inf", "--json")
    data = json.loads(out)
    jsonschema.validate(data, load_schema())
    assert data["germ"] == {"point": "inf", "dim": 2, "irr": 1, "mu": 3, "slopes": [{"slope": "1/2", "width": "2"}]}
    assert data["local_mellin_dim"] == 1
    code, out, _ = run(capsys, "germ", "(z-1)*T + 1", "--at", "1")
    assert code == 0 and "dim 1  irr 0  mu 1" in out


def test_input_errors(capsys):
    code, _, err = run(capsys, "polygon", "z z")
    assert code == 2 and "offset 2" in err
    assert run(capsys, "germ", "T", "--at", "nowhere")[0] == 2
    assert run(capsys, "verify", "0")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "verify", "T", "--precision", "0")[0] == 2


def test_non_rational_warning(capsys):
    code, out, err = run(capsys, "verify", "(z^2+1)*T + z", "--json")
    assert code == 0
    assert "WARNING" in err
    data = json.loads(out)
    jsonschema.validate(data, load_schema())
    assert data["checks"]["LOCAL_DIMS"].startswith("SKIPPED(")


def test_corpus_tsv(capsys):
    code, out, _ = run(capsys, "corpus", "--seed", "3", "--count", "6", "--profile", "REGULAR")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines() if not line.startswith("#")]
    assert rows[0][:4] == ["index", "seed", "operator", "defect"]
    assert [r[1] for r in rows[1:]] == [str(s) for s in range(3, 9)]
    assert "# structural checks passed on 6/6 operators" in out


def test_corpus_parallel_matches_serial(capsys):
    _, serial, _ = run(capsys, "corpus", "--count", "8", "--json")
    _, parallel, _ = run(capsys, "corpus", "--count", "8", "--json", "--jobs", "2")
    assert serial == parallel
    jsonschema.validate(json.loads(serial), load_schema())


def test_svg_and_figure_outputs(capsys, tmp_path):
    svg, png = tmp_path / "p.svg", tmp_path / "p.png"
    code, _, _ = run(capsys, "verify", "T - z", "--svg", str(svg), "--figure", str(png))
    assert code == 0
    assert svg.read_text().count("<polyline") == 2
    assert png.stat().st_size > 0


def test_no_color(capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    _, out, _ = run(capsys, "verify", "T - z")
    assert "\033[" not in out


@pytest.mark.parametrize("argv, code", [(["polygon", "T - z"], 0), (["polygon", "T -"], 2)])
def test_module_entry_point(argv, code):
    proc = subprocess.run([sys.executable, "-m", "mellinkit", *argv], capture_output=True, text=True)
    assert proc.returncode == code
