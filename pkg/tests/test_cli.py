import json
import math
import subprocess
import sys

import pytest

from cmcbounds.cli import main
from cmcbounds.report import BoundsReport
from conftest import data_path

MINIMAL = data_path("structure_minimal.toml").read_text()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds_defaults_table(capsys):
    code, out, _ = run(capsys, "bounds", "--I", "0", "--g", "0")
    assert code == 0
    assert "C1" in out and "0.162522" in out
    assert "area_genus" in out


def test_bounds_json_values(capsys):
    code, out, _ = run(capsys, "bounds", "--I", "0", "--g", "0", "--format", "json")
    report = BoundsReport.from_json(out)
    assert report.constants["C1"].value == pytest.approx(0.162521, abs=1e-6)
    assert report.checks["area_genus"].bound == pytest.approx(0.162521, abs=1e-6)


def test_bounds_compact_case(capsys):
    code, out, _ = run(capsys, "bounds", "--I", "1", "--c", "1", "--g", "5", "--format", "json")
    assert code == 0
    report = BoundsReport.from_json(out)
    Rc = report.constants["R_c"].value
    assert Rc == pytest.approx(3.627599, abs=1e-6)
    assert report.checks["compact_diameter_upper"].bound == pytest.approx(2 * 2 * Rc)


def test_bounds_missing_genus(capsys):
    code, _, err = run(capsys, "bounds", "--I", "1")
    assert code == 2
    assert "--g" in err


def test_bounds_bad_parameter(capsys):
    code, _, err = run(capsys, "bounds", "--A1", "0.5", "--g", "0")
    assert code == 2
    assert "A1" in err


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--bogus"])
    assert exc.value.code == 2


def test_config_file_and_env(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "c.toml"
    cfg.write_text("[params]\nI = 1\nc = 1.0\n")
    monkeypatch.setenv("CMCBOUNDS_CONFIG", str(cfg))
    code, out, _ = run(capsys, "bounds", "--g", "2", "--format", "json")
    assert code == 0
    report = BoundsReport.from_json(out)
    assert report.params["I"] == 1 and report.params["c"] == 1.0
    # flags override the file
    code, out, _ = run(capsys, "bounds", "--g", "2", "--I", "2", "--format", "json")
    assert BoundsReport.from_json(out).params["I"] == 2


def test_malformed_config_names_key(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text("[params]\nlambda = 3\n")
    code, _, err = run(capsys, "bounds", "--config", str(cfg), "--g", "0")
    assert code == 2 and "lambda" in err
    cfg.write_text("[params]\nA1 = 'big'\n")
    code, _, err = run(capsys, "bounds", "--config", str(cfg), "--g", "0")
    assert code == 2 and "A1" in err


def test_bounds_with_summary(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"genus": 0, "area": 0.01, "diameter": 1.0, "H": 0.5, "index": 0}))
    code, out, _ = run(capsys, "bounds", "--summary", str(path), "--format", "json")
    assert code == 1
    assert "area_genus" in BoundsReport.from_json(out).violations
    path.write_text(json.dumps({"genus": 0, "area": 4 * math.pi, "diameter": math.pi, "H": 1.0, "index": 1}))
    code, _, _ = run(capsys, "bounds", "--summary", str(path), "--I", "1")
    assert code == 0


def test_json_output_roundtrip(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "bounds", "--I", "2", "--c", "0.5", "--g", "3", "--format", "json", "--out", str(out))
    report = BoundsReport.from_json(out.read_text())
    assert json.loads(report.to_json()) == json.loads(out.read_text())


def test_mesh_check_sphere(capsys):
    code, out, _ = run(capsys, "mesh-check", str(data_path("sphere.off")), "--format", "json")
    assert code == 0
    report = BoundsReport.from_json(out)
    assert report.violations == []
    assert report.summary["index"] == 1


def test_mesh_check_torus_is_advisory(capsys):
    code, out, _ = run(capsys, "mesh-check", str(data_path("torus.off")))
    assert code == 0
    assert "advisory" in out


def test_mesh_check_truncated(tmp_path, capsys):
    path = tmp_path / "t.off"
    path.write_text("\n".join(data_path("sphere.off").read_text().splitlines()[:100]))
    code, _, err = run(capsys, "mesh-check", str(path))
    assert code == 2 and "error" in err


def test_structure_check_examples(tmp_path, capsys):
    assert run(capsys, "structure-check", str(data_path("structure_minimal.toml")))[0] == 0
    assert run(capsys, "structure-check", str(data_path("structure_valid.toml")), "--format", "json")[0] == 0

    bad = tmp_path / "m7.toml"
    bad.write_text(MINIMAL.replace("m = 2", "m = 7").replace("index = 1", "index = 2"))
    code, out, _ = run(capsys, "structure-check", str(bad))
    assert code == 1
    assert "orientable_region_topology" in out

    sep = tmp_path / "sep.toml"
    sep.write_text(
        MINIMAL.replace("delta = 0.5", "delta = 0.5\ndelta1 = 0.01")
        + "\n[[structure.regions]]\ne = 2\nm = 2\nindex = 1\ngenus = 0\norientable = true\nr_F = 0.06\nkappa = 12.5\n"
    )
    code, _, err = run(capsys, "structure-check", str(sep))
    assert code == 2 and "factor 4" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--curves", "5")
    assert code == 0
    cases = json.loads(out)
    assert all(c["passed"] for c in cases)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cmcbounds", "bounds", "--g", "0"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "C_A" in proc.stdout
