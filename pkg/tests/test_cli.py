import csv
import io
import json
import subprocess
import sys

import pytest

from fquad import cli
from fquad.verify import CheckReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_nondegenerate(capsys):
    code, out, _ = run(capsys, "classify", "H1+H1")
    assert code == 0 and out.strip() == "dim 4, nondegenerate, Arf 0, ≅ H0⊥H0"
    code, out, _ = run(capsys, "classify", "H0+H1")
    assert "dim 4" in out and "Arf 1" in out


def test_classify_degenerate_and_several(capsys):
    code, out, _ = run(capsys, "classify", "x0", "H0")
    lines = out.strip().splitlines()
    assert lines[0] == "x0: dim 1, radical dim 1, degenerate"
    assert lines[1].startswith("H0: dim 2, nondegenerate, Arf 0")


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--format", "json", "H0+x1")
    info = json.loads(out)[0]
    assert info["radical_dim"] == 1 and not info["nondegenerate"]


def test_classify_parse_error_exits_2(capsys):
    code, _, err = run(capsys, "classify", "H0+H7")
    assert code == 2 and "position 3" in err


def test_table_text(capsys):
    code, out, _ = run(capsys, "table", "iso:x1", "H0", "H1", "H0+H0")
    assert code == 0
    row = next(line for line in out.splitlines() if line.startswith("iso:x1"))
    assert row.split()[1:] == ["1", "3", "6"]


@pytest.mark.parametrize("functor,space,value", [("m:a=1", "H0", 1), ("L:a=1,n=2", "H0", 0),
                                                 ("K:a=1,n=1", "H0", 1), ("iso:x0", "H1", 0)])
def test_table_single_values(capsys, functor, space, value):
    code, out, _ = run(capsys, "table", "--format", "json", functor, space)
    data = json.loads(out)
    assert code == 0 and data["rows"][0][space] == value


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--format", "csv", "iso:x0", "iso:x1", "H0")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["H0"] for r in rows] == ["2", "1"]


def test_table_uses_roster_when_no_space(capsys):
    code, out, _ = run(capsys, "table", "--roster", "H0,H1", "--format", "json", "iso:x1")
    assert json.loads(out)["spaces"] == ["H0", "H1"]


def test_table_bad_functor_exits_2(capsys):
    code, _, err = run(capsys, "table", "bar:a=1", "H0")
    assert code == 2 and "bar" in err


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "bogus_check")
    assert code == 2 and "bogus_check" in err


def test_verify_bad_bounds(capsys):
    code, _, _ = run(capsys, "verify", "check_mu_complex", "--nmax", "0")
    assert code == 2


def test_verify_layers_text(capsys):
    code, out, _ = run(capsys, "verify", "check_layers", "--alpha", "1", "--dmax", "1", "--roster", "H0")
    assert code == 0
    assert "d=0: 1−0=1" in out and "check_layers: PASS" in out


def test_verify_json_lines(capsys):
    code, out, _ = run(capsys, "verify", "check_s2_ses", "--roster", "H0,H1", "--format", "json")
    reports = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["params"]["alpha"] for r in reports] == [0, 1]
    assert all(r["passed"] for r in reports)


def test_verify_out_writes_reports(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "check_decomposition", "--roster", "H0", "--out", str(tmp_path))
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["check_decomposition_0.csv", "check_decomposition_0.json",
                     "check_decomposition_1.csv", "check_decomposition_1.json"]
    data = json.loads((tmp_path / "check_decomposition_1.json").read_text())
    assert data["params"]["D"] == "x1" and data["rows"][0]["sum"] == 4


def test_verify_failure_exits_1(capsys, monkeypatch):
    def fake(*args, **kwargs):
        rep = CheckReport("check_s2_ses", ["H0"])
        rep.add({"object": "H0", "ok": False})
        return [rep]
    monkeypatch.setattr(cli, "run_check", fake)
    code, out, _ = run(capsys, "verify", "check_s2_ses")
    assert code == 1 and "FAILED" in out


def test_export_default_json(capsys):
    code, out, _ = run(capsys, "export", "--roster", "H0,H1")
    data = json.loads(out)
    assert code == 0 and data["spaces"] == ["H0", "H1"]
    dims = {r.pop("functor"): r for r in data["rows"]}
    assert dims["iso:x1"] == {"H0": 1, "H1": 3}
    assert dims["m:a=1"]["H0"] == 1


def test_export_to_file(capsys, tmp_path):
    target = tmp_path / "dims.csv"
    code, _, _ = run(capsys, "export", "--format", "csv", "--roster", "H0", "--out", str(target), "P")
    assert code == 0 and list(csv.DictReader(target.open()))[0]["H0"] == "4"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fquad", "classify", "H0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "Arf 0" in proc.stdout


def test_help_lists_grammars(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "space grammar" in out and "functor grammar" in out
