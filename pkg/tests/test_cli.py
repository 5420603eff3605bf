import json
import shutil
import subprocess
import sys

from qmatkit.cli import canonical, corpus_dir, main, parse_args, run, run_corpus


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exit_codes(capsys):
    assert call(capsys, "check-braiding", "--input", "hecke_gl2")[0] == 0
    assert call(capsys, "reduce", "--R", "hecke_gl2", "--expr", "a*b - q*b*a")[0] == 0
    assert call(capsys, "reduce", "--R", "hecke_gl2", "--expr", "a*b - b*a")[0] == 1
    assert call(capsys, "classify", "--input", "no_such_matrix")[0] == 2
    assert call(capsys, "check-compat", "--R", "involutive_gl2", "--F", "hecke_gl2")[0] == 1


def test_resource_cap(capsys):
    code, out, _ = call(capsys, "reduce", "--R", "hecke_gl2", "--degree-cap", "2", "--expr", "a*b*c*d")
    assert code == 3 and json.loads(out)["verdict"] == "resource-cap"


def test_bad_arguments(capsys):
    assert call(capsys, "qdet")[0] == 2
    assert call(capsys, "classify", "--input", "flip", "--q-mode", "bogus")[0] == 2
    assert call(capsys, "reduce", "--R", "hecke_gl2", "--expr", "a*(b")[0] == 2


def test_numeric_guard(capsys):
    code, out, _ = call(capsys, "qdet", "--R", "hecke_gl2", "--q-mode", "numeric:3", "--screen-only")
    assert code == 2
    code, _, _ = call(capsys, "classify", "--input", "hecke_gl2", "--q-mode", "numeric:3")
    assert code == 2
    code, out, _ = call(capsys, "classify", "--input", "hecke_gl2", "--q-mode", "numeric:3", "--screen-only")
    assert code == 0 and json.loads(out)["mode"] == "numeric"


def test_non_generic_q(capsys):
    assert call(capsys, "classify", "--input", "hecke_gl2", "--q-mode", "numeric:1", "--screen-only")[0] == 2


def test_json_round_trip_and_determinism():
    cfg = parse_args(["qdet", "--R", "hecke_gl2", "--form", "a*d-q*b*c"])
    _, r1 = run(cfg)
    _, r2 = run(parse_args(["qdet", "--R", "hecke_gl2", "--form", "a*d-q*b*c"]))
    assert canonical(r1) == canonical(r2)
    assert json.loads(canonical(r1)) == r1
    assert r1["verdict"] is True and r1["central"] is True


def test_witness_on_failure():
    _, rep = run(parse_args(["central", "--R", "involutive_gl2", "--expr", "a*d - q^-1*b*c"]))
    assert rep["verdict"] is False and rep["witness"]


def test_text_format_and_out(tmp_path, capsys):
    target = tmp_path / "r.txt"
    assert main(["classify", "--input", "hecke_gl2", "--format", "text", "--out", str(target)]) == 0
    assert target.read_text().startswith("classify: True")


def test_matrix_file_input(tmp_path, capsys):
    from qmatkit.catalog import hecke_gl2
    from qmatkit.tensorspace import dump_matrix

    path = tmp_path / "R.json"
    dump_matrix(hecke_gl2(), path)
    assert call(capsys, "classify", "--input", str(path))[0] == 0


def test_corpus_passes():
    summary = run_corpus()
    assert summary["ok"] and summary["passed"] >= 30


def test_mutated_fixture_fails(tmp_path):
    d = tmp_path / "corpus"
    shutil.copytree(corpus_dir(), d)
    exp = d / "expected" / "qdet-rtt-hecke.json"
    rep = json.loads(exp.read_text())
    rep["central"] = not rep["central"]
    exp.write_text(canonical(rep))
    summary = run_corpus(d)
    assert not summary["ok"] and summary["failed"] == ["qdet-rtt-hecke"]


def test_empty_corpus_dir(tmp_path, capsys):
    assert call(capsys, "corpus", "--dir", str(tmp_path))[0] == 2


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "qmatkit", "classify", "--input", "flip"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["check"] == "classify"
