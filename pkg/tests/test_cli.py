import json

import pytest

from finitistic.cli import cli_main, main

DOC = """\
algebra N
vertex 1 2 3 4
arrow x : 1 -> 2
arrow y : 2 -> 3
arrow z : 3 -> 4
nilpotency 2
ideal R of N = rad
module S over N
vertexdims 0 0 0 1
extension u : N -> N unit
extension id : N -> N identity

algebra L
vertex 1
arrow a : 1 -> 1
nilpotency 2
subalgebra L0 of L generated by e1
chain T : L0 <= L
"""


@pytest.fixture
def doc(tmp_path):
    path = tmp_path / "doc.txt"
    path.write_text(DOC)
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_lists_objects(capsys, doc):
    code, out, _ = _run(capsys, ["parse", doc])
    rep = json.loads(out)
    assert code == 0
    assert rep["algebras"]["N"]["dim"] == 7
    assert rep["modules"] == {"S": 1}
    assert rep["chains"]["T"] == ["L0", "L"]


def test_algebra_info(capsys, doc):
    code, out, _ = _run(capsys, ["algebra-info", doc, "--algebra", "N"])
    info = json.loads(out)["algebras"]["N"]
    assert code == 0
    assert info["radical_power_dims"] == [3, 0]
    assert sorted(info["simple_pd"]) == ["0", "1", "2", "3"]


def test_module_commands(capsys, doc):
    code, out, _ = _run(capsys, ["module", "pd", doc, "--module", "S"])
    assert code == 0 and json.loads(out)["result"] == "3"
    code, out, _ = _run(capsys, ["module", "psi", doc, "--module", "S"])
    assert code == 0 and json.loads(out)["result"]["psi"] == 3
    code, out, _ = _run(capsys, ["module", "syzygy", doc, "--module", "S"])
    assert code == 0 and json.loads(out)["result"]["status"] == "terminated"


def test_cutoff_gives_exit_three(capsys, doc):
    code, out, err = _run(capsys, ["module", "pd", doc, "--module", "S", "--syzygy-cutoff", "1"])
    assert code == 3
    assert json.loads(out)["verdict"] == "indeterminate"
    assert "indeterminate" in err


def test_extension_commands(capsys, doc):
    code, out, _ = _run(capsys, ["extension", "rpd", doc, "--extension", "u", "--module", "S"])
    assert code == 0 and json.loads(out)["results"][0]["rpd"] == "3"
    code, out, _ = _run(capsys, ["extension", "relproj", doc, "--extension", "id"])
    rep = json.loads(out)
    assert code == 0 and all(r["relative_projective"] for r in rep["results"])


def test_theorem_bound_and_text_format(capsys, doc):
    code, out, _ = _run(capsys, ["theorem", "thm2", doc, "--algebra", "N", "--I", "R", "--J", "rad", "--K", "whole", "--format", "text"])
    assert code == 0
    assert "verdict: bound" in out
    assert "hypothesis: IJK = 0: pass" in out


def test_theorem_hypothesis_failure(capsys, doc):
    code, out, err = _run(capsys, ["theorem", "thm2", doc, "--algebra", "N", "--I", "whole", "--J", "whole", "--K", "whole"])
    rep = json.loads(out)
    assert code == 1
    assert rep["bound"] is None and rep["verdict"] == "hypothesis-failed"
    assert "IJK = 0" in err


def test_thm1_and_prop1_and_corollary(capsys, doc):
    code, out, _ = _run(capsys, ["theorem", "thm1", doc, "--extension", "id"])
    assert code == 0 and json.loads(out)["bound"] == 4  # Psi of all indecomposables is 3
    code, out, _ = _run(capsys, ["theorem", "prop1", doc, "--chain", "T", "--variant", "lemma53"])
    assert code == 0 and json.loads(out)["verdict"] == "bound"
    code, out, _ = _run(capsys, ["theorem", "cor4", doc, "--algebra", "L", "--corollary", "4.4", "--power", "1"])
    assert code == 0 and json.loads(out)["bound"] == 3


def test_output_file(capsys, doc, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = _run(capsys, ["parse", doc, "--out", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["command"] == "parse"


def test_input_errors_exit_two(capsys, doc, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("algebra A\nvertex 1\nfrobnicate\n")
    assert _run(capsys, ["parse", str(bad)])[0] == 2
    assert _run(capsys, ["parse", str(tmp_path / "missing.txt")])[0] == 2
    assert _run(capsys, ["frobnicate"])[0] == 2
    assert _run(capsys, ["module", "pd", doc, "--module", "Nope"])[0] == 2
    code, _, err = _run(capsys, ["theorem", "thm2", doc, "--algebra", "N"])
    assert code == 2 and "needs" in err


def test_fuzz_runs_clean(capsys):
    code, out, _ = _run(capsys, ["fuzz", "--count", "2", "--sequences", "2", "--seed", "3"])
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "ok"
    assert sum(rep["tally"].values()) == 2 * 2 * 4


def test_prime_flag_overrides_the_document(capsys, doc):
    code, out, _ = _run(capsys, ["parse", doc, "--prime", "101"])
    assert code == 0 and json.loads(out)["algebras"]["N"]["prime"] == 101


def test_alias():
    assert cli_main is main
