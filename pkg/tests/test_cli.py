import json

import pytest

from racah.cli import main


@pytest.fixture()
def params_file(tmp_path):
    path = tmp_path / "params.cfg"
    path.write_text("c1 = 1/3\nc2 = 1/5\nc3 = 2/7\nc4 = 1/2\nN = 4\nwindow = 5\n")
    return str(path)


def test_reduce_command(capsys):
    assert main(["reduce", "[P12,P23] - 2*D123"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_reduce_normal_form(capsys):
    assert main(["reduce", "C23*C12", "--rank", "3"]) == 0
    out = capsys.readouterr().out
    assert "D123" in out


def test_symmetry_closure(capsys):
    assert main(["symmetry", "closure"]) == 0
    out = capsys.readouterr().out
    assert "order 120" in out and "order 10" in out and "order 24" in out


def test_symmetry_orbit(capsys):
    assert main(["symmetry", "orbit", "C12", "--group", "d5"]) == 0
    lines = capsys.readouterr().out.split()
    assert lines == ["C12", "C123", "C23", "C234", "C34"]


def test_list_relations(capsys):
    assert main(["list-relations", "--rank", "3"]) == 0
    out = capsys.readouterr().out
    assert "central" in out and "pres_rank1" in out


def test_rep_dump_format(capsys, params_file):
    assert main(["rep", "dump", "--gen", "C123", "--window", "3",
                 "--params", params_file]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    # one line per nonzero entry: "t s -> t' s'  p/q", diagonal here
    assert all("->" in line for line in lines)
    first = lines[0].split()
    assert first[:5] == ["0", "0", "->", "0", "0"]
    assert "/" in first[5] or first[5].lstrip("-").isdigit()


def test_rep_apply(capsys, params_file):
    assert main(["rep", "apply", "--expr", "[C12,C34]", "--state", "1,0",
                 "--params", params_file]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_rep_apply_unreliable_state(capsys, params_file):
    code = main(["rep", "apply", "--expr", "C23", "--state", "5,0",
                 "--params", params_file])
    assert code == 1
    assert "unreliable" in capsys.readouterr().err


def test_verify_exit_codes(capsys, params_file):
    assert main(["verify", "--rank", "3", "--suites", "definitions",
                 "--params", params_file, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["summary"]["FAILED"] == 0
    assert doc["instances"]


def test_verify_config_error(capsys, tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("c1 = 0.5\n")
    assert main(["verify", "--rank", "4", "--params", str(bad)]) == 2
    assert "config error" in capsys.readouterr().err


def test_verify_invalid_window(capsys, tmp_path):
    cfg = tmp_path / "p.cfg"
    cfg.write_text("c1=1\nc2=1\nc3=1\nc4=1\nN=3\nwindow = 12\n")
    assert main(["verify", "--rank", "4", "--params", str(cfg),
                 "--suites", "definitions"]) == 2


def test_jacobi_command(capsys):
    assert main(["jacobi", "--rank", "3", "--format", "human"]) == 0
    out = capsys.readouterr().out
    assert "proved-zero" in out


def test_rep_probe(capsys, params_file):
    assert main(["rep", "probe", "--params", params_file]) == 0
    assert capsys.readouterr().out.strip()
