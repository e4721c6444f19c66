import json

from edfkit.cli import run


def test_construct_block(capsys):
    code = run(["construct", "block", "--chain", "8,4,2,1", "--eta", "1,1,1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "ND-PSEDF (8,3,4,2)" in out
    assert "declared: confirmed" in out
    assert "11110000" in out


def test_verify_inline(capsys):
    code = run(["verify", "--group", "cyclic:10", "--sets", "0,1,2|3,6,9"])
    out = capsys.readouterr().out
    assert code == 0
    assert "C-SEDF (10,2,3,1)" in out


def test_verify_json_format(capsys):
    code = run(["verify", "--group", "cyclic:9", "--sets", "0,1,2|0,3,6",
                "--format", "json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert "ND-PSEDF" in doc["certificate"]["labels"]


def test_verify_multiset_syntax(capsys):
    code = run(["verify", "--group", "cyclic:13",
                "--sets", "1:2,3:2,4:2,9:2,10:2,12:2|2:3,5:3,6:3,7:3,8:3,11:3"])
    out = capsys.readouterr().out
    assert code == 0 and "C-MGPSEDF" in out


def test_construct_writes_family_file(tmp_path, capsys):
    path = tmp_path / "fam.json"
    code = run(["construct", "coprime", "--group", "cyclic:15",
                "--divisors", "5,3", "--out", str(path)])
    capsys.readouterr()
    assert code == 0 and path.exists()
    code = run(["transform", "--file", str(path), "--op", "complement-one",
                "--member", "1"])
    out = capsys.readouterr().out
    assert code == 0 and "ND-GPSEDF (15,2;3,10)" in out


def test_transform_coset_lift(tmp_path, capsys):
    path = tmp_path / "fam.json"
    run(["construct", "block", "--chain", "4,2,1", "--eta", "1,1",
         "--out", str(path)])
    capsys.readouterr()
    code = run(["transform", "--file", str(path), "--op", "coset-lift",
                "--target-group", "cyclic:12", "--gens", "4"])
    out = capsys.readouterr().out
    assert code == 0 and "ND-PSEDF (12,2,6,3)" in out


def test_product(tmp_path, capsys):
    p1 = tmp_path / "a.json"
    run(["construct", "block", "--chain", "4,2,1", "--eta", "1,1", "--out", str(p1)])
    capsys.readouterr()
    code = run(["product", str(p1), str(p1)])
    out = capsys.readouterr().out
    assert code == 0 and "ND-PSEDF (16,2,4,1)" in out


def test_search_cli(capsys):
    code = run(["search", "--group", "cyclic:9", "--m", "2", "--k", "3,3",
                "--labels", "ND-PSEDF", "--lambda", "1", "--dedup-translates"])
    out = capsys.readouterr().out
    assert code == 0 and "exhaustive" in out and "{0,3,6}" in out


def test_export_ooc(tmp_path, capsys):
    path = tmp_path / "code.txt"
    code = run(["export-ooc", "--group", "cyclic:8",
                "--sets", "0,1,2,3|0,1,4,5|0,2,4,6", "--out", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "lambda_c=2" in out and "optimal (lambda_c = w^2/v): True" in out
    lines = path.read_text().splitlines()
    assert lines[0] == "8 3" and lines[1] == "11110000"


def test_export_vw(tmp_path, capsys):
    path = tmp_path / "vw.txt"
    code = run(["export-vw", "--group", "cyclic:30", "--divisors", "6,10,15",
                "--out", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    assert doc["weights"] == [5, 3, 2] and doc["exact_lambda_c"] == 1
    assert path.read_text().splitlines()[1] == "5 3 2"


def test_check_si(capsys):
    code = run(["check-si", "--group", "cyclic:8",
                "--sets", "0,1,2,3|0,1,4,5|0,2,4,6", "--max-k", "3"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["pairwise_shift_invariant"] is True
    assert doc["k_levels"]["3"]["shift_invariant"] is True
    assert doc["complete_si_hypothesis"]["holds"] is True


def test_catalog_cycle(tmp_path, capsys):
    fam = tmp_path / "fam.json"
    cat = tmp_path / "cat.json"
    run(["construct", "classical", "--h", "3,4,1,1", "--out", str(fam)])
    capsys.readouterr()
    assert run(["catalog", "add", str(cat), "--file", str(fam)]) == 0
    assert run(["catalog", "verify", str(cat)]) == 0
    assert run(["catalog", "show", str(cat)]) == 0
    out = capsys.readouterr().out
    assert "classical" in out

    doc = json.loads(cat.read_text())
    doc["entries"][0]["members"][0][0] = 5
    cat.write_text(json.dumps(doc))
    assert run(["catalog", "verify", str(cat)]) == 1


def test_usage_errors_exit_2(capsys):
    assert run(["construct", "block", "--chain", "7,3", "--eta", "1"]) == 2
    capsys.readouterr()
    assert run(["verify", "--group", "cyclic:10"]) == 2
    capsys.readouterr()
    assert run(["construct", "nosuch"]) == 2
    capsys.readouterr()


def test_declaration_mismatch_exit_1(tmp_path, capsys):
    # a stored family with a wrong certificate summary trips catalog verify
    fam = tmp_path / "fam.json"
    run(["construct", "block", "--chain", "4,2,1", "--eta", "1,1", "--out", str(fam)])
    capsys.readouterr()
    doc = json.loads(fam.read_text())
    doc["entries"][0]["certificate"]["labels"] = ["C-SEDF"]
    fam.write_text(json.dumps(doc))
    assert run(["catalog", "verify", str(fam)]) == 1
