import json
import subprocess
import sys

import pytest

from semichain import sgt, structure
from semichain.cli import main
from semichain.sgcore import CayleyTable
from semichain.witness import stock


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, t in [("z5", stock("zero", 5)), ("lz3", stock("left_zero", 3))]:
        p = tmp_path / f"{name}.sgt"
        sgt.dump(t, p)
        paths[name] = str(p)
    assert main(["example", "4", "--out", str(tmp_path / "ex4.sgt")]) == 0
    paths["ex4"] = str(tmp_path / "ex4.sgt")
    bad = tmp_path / "bad.sgt"
    bad.write_text("3\n0 0 0\n0 7 0\n0 0 0\n")
    paths["bad"] = str(bad)
    return paths


def test_analyze(files, capsys, tmp_path):
    out_json = tmp_path / "a.json"
    assert main(["analyze", files["z5"], "--json", str(out_json)]) == 0
    text = capsys.readouterr().out
    assert "max antichain: 4 witness {1, 2, 3, 4}" in text
    data = json.loads(out_json.read_text())
    assert data["max_antichain"] == 4 and data["max_antichain_witness"] == [1, 2, 3, 4]
    assert data["fiber_sizes"] == {"0": 5}
    assert data["power_profiles"][1] == {"element": 1, "index": 2, "period": 1, "idempotent_power": 0}

    assert main(["analyze", files["lz3"]]) == 0
    assert "max chain: 3" in capsys.readouterr().out


def test_malformed_input_exit_2(files, capsys):
    assert main(["analyze", files["bad"]]) == 2
    err = capsys.readouterr().err
    assert "bad.sgt:3:3" in err and "outside" in err
    assert main(["analyze", "/nonexistent.sgt"]) == 2


def test_non_associative_input_exit_2(tmp_path, capsys):
    p = tmp_path / "na.sgt"
    p.write_text("2\n1 0\n0 0\n")
    assert main(["clique", str(p), "--mode", "chain"]) == 2
    assert "not associative at (0, 0, 1)" in capsys.readouterr().err


def test_usage_errors_exit_2():
    assert main([]) == 2
    assert main(["enumerate", "--order", "9"]) == 2
    assert main(["verify", "--corpus", "bogus:1"]) == 2


def test_example_output(capsys, tmp_path):
    assert main(["example", "2"]) == 0
    assert capsys.readouterr().out == "3\n0 0 0\n0 1 0\n0 0 2\nlabels: 1.0 2.1 2.2\n"
    assert main(["example", "1"]) == 0
    assert capsys.readouterr().out == "1\n0\nlabels: 1.0\n"
    assert main(["example", "4", "--check"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and 'pass max_antichain {"size": 4}' in out
    assert main(["example", "0"]) == 2


def test_clique(files, capsys):
    assert main(["clique", files["lz3"], "--mode", "chain"]) == 0
    assert "max chain: 3 {0, 1, 2}" in capsys.readouterr().out
    assert main(["clique", files["z5"], "--mode", "antichain", "--edges"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("1 2\n1 3\n1 4\n")


def test_clique_budget_exit_1(files, capsys, monkeypatch):
    monkeypatch.setenv("SEMICHAIN_NODE_BUDGET", "1")
    assert main(["clique", files["z5"], "--mode", "antichain"]) == 1
    assert "budget exceeded" in capsys.readouterr().out


def test_ramsey_replay(files, capsys, tmp_path):
    assert main(["ramsey-replay", files["z5"], "--mode", "chi6"]) == 0
    assert "coloring: empty" in capsys.readouterr().out

    j = tmp_path / "r.json"
    assert main(["ramsey-replay", files["ex4"], "--mode", "chi6", "--elements", "4.1,4.2,4.3,4.4",
                 "--json", str(j)]) == 0
    data = json.loads(j.read_text())
    assert data["monochromatic"] == {"color": 5, "indices": [0, 1, 2, 3], "guarantee": 2}

    assert main(["ramsey-replay", files["z5"], "--mode", "chi5", "--elements", "1,2,3", "--json", str(j)]) == 0
    data = json.loads(j.read_text())
    assert data["coloring"] == [[4, 4], [4], []]
    assert data["monochromatic"]["color"] == 4 and data["monochromatic"]["indices"] == [0, 1, 2]

    assert main(["ramsey-replay", files["z5"], "--mode", "chi6", "--elements", "1,2"]) == 2
    assert main(["ramsey-replay", files["z5"], "--mode", "chi5", "--elements", "1,1"]) == 2
    assert main(["ramsey-replay", files["z5"], "--mode", "chi5", "--elements", "9"]) == 2
    assert main(["ramsey-replay", files["z5"], "--mode", "chi5"]) == 2


def test_ramsey_replay_zchains(tmp_path):
    # order-3 semigroup where (e_0, e_1) = (2, 1) has chi6 color 1:
    # 2*1 = 2 = e_0 while 1*2 = 0 lies outside {1, 2}
    p = tmp_path / "c1.sgt"
    sgt.dump(CayleyTable([[0, 0, 0], [0, 1, 0], [2, 2, 2]]).require_semigroup(), p)
    j = tmp_path / "z.json"
    assert main(["ramsey-replay", str(p), "--mode", "chi6", "--elements", "2,1", "--json", str(j)]) == 0
    data = json.loads(j.read_text())
    assert data["coloring"][0] == [1]
    assert data["monochromatic"]["color"] == 1
    assert data["zchains"] == {"0": [0]}


def test_enumerate(tmp_path, capsys):
    assert main(["enumerate", "--order", "3", "--symmetry", "iso-anti", "--count-only"]) == 0
    assert "18 classes" in capsys.readouterr().out
    out = tmp_path / "enum"
    assert main(["enumerate", "--order", "2", "--out", str(out), "--sorted"]) == 0
    assert len(list(out.glob("*.sgt"))) == 5
    assert main(["enumerate", "--order", "2", "--symmetry", "iso-anti"]) == 0
    assert capsys.readouterr().out.count("\n2\n") >= 3


def test_verify_exit_codes(tmp_path, capsys, monkeypatch):
    j = tmp_path / "v.json"
    assert main(["verify", "--corpus", "enum:1-3,example:1-8", "--json", str(j)]) == 0
    data = json.loads(j.read_text())
    assert data["summary"]["tables"] == 31 and data["summary"]["failures"] == 0
    assert set(data["reports"][0]) == {"table_id", "checks", "stats"}

    monkeypatch.setattr(
        structure, "h_classes",
        lambda t: [structure.HClass(x, *(t.element_set([x]),) * 3) for x in range(t.order)],
    )
    assert main(["verify", "--corpus", "stock:cyclic_group:4", "--fail-fast"]) == 1
    out = capsys.readouterr().out
    assert "FAIL stock/cyclic_group/2" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "semichain", "example", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("3\n")
