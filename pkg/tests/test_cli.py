import io

import pytest

from binsplit.cli import main


def run(*argv, stdin=""):
    out = io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), stdout=out)
    return code, out.getvalue()


def test_split_golden():
    code, text = run("split", "G4", "--t", "x,y,z")
    assert code == 0
    assert text == "matroid G4_T\nelements x y z e4 e5 e6 e7\n1000101\n0100110\n0010011\n0001111\n"


def test_split_pipes_into_iso():
    _, text = run("split", "G4", "--t", "x,y,z")
    code, verdict = run("iso", "-", "F7star", stdin=text)
    assert code == 0 and verdict.startswith("isomorphic")


def test_iso_negative_exit_code():
    code, text = run("iso", "K4", "K5")
    assert code == 1 and text.startswith("not-isomorphic")


def test_has_minor():
    assert run("has-minor", "G2", "G5")[0] == 0
    assert run("has-minor", "G5", "G2")[0] == 1


def test_unknown_input_is_usage_error():
    assert run("split", "no-such-fixture", "--t", "a")[0] == 2
    assert run("split", "K4", "--t", "nope")[0] == 2


def test_argparse_errors_exit_two():
    assert run("classify", "K4", "--k", "7")[0] == 2


def test_search_guard():
    assert run("search", "--k", "2", "--max-elements", "12")[0] == 2


def test_classify_records():
    code, text = run("classify", "G6", "--k", "3", "--format", "records")
    assert code == 0
    fields = dict(part.split("=", 1) for part in text.split())
    assert fields["classification"] == "non-cographic" and fields["f_member"] == "K33"


def test_classify_non_graphic():
    assert run("classify", "F7", "--k", "2")[0] == 2


def test_quotients_output():
    code, text = run("quotients", "F7")
    assert code == 0 and "graph=H3" in text
    code, text = run("quotients", "K33", "--exclude", "K5", "--exclude-mode", "minor")
    assert code == 0 and "total classes=4 graphs=6" in text


def test_catalog_commands():
    code, text = run("catalog", "list")
    assert code == 0 and "K33" in text
    code, text = run("catalog", "show", "F7")
    assert code == 0 and text.startswith("# ") and "matroid F7" in text


def test_verify_single_check():
    code, text = run("verify", "lemma-3.3")
    assert code == 0 and text.startswith("CHECK lemma-3.3 PASS")


def test_reruns_are_byte_identical():
    args = ("classify", "G4_drawn", "--k", "3", "--format", "records", "--manifest")
    assert run(*args) == run(*args)


def test_file_input(tmp_path):
    path = tmp_path / "m.matroid"
    path.write_text(run("split", "G4", "--t", "x,y,z")[1])
    assert run("iso", str(path), "F7star")[0] == 0
