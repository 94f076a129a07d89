import json
import subprocess
import sys

import pytest

from mvcrystal.cli import canonical, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(argv, capsys):
    code, out, _ = run(argv + ["--json"], capsys)
    return code, json.loads(out)


def test_verify_sl3_json(capsys):
    code, data = run_json(["verify", "sl3"], capsys)
    assert code == 0
    assert data["coefficient"] == 1
    assert data["passed"] is True


def test_crystal_gen_three_nodes(capsys):
    code, data = run_json(["crystal", "gen", "A2", "w1"], capsys)
    assert code == 0
    assert len(data["nodes"]) == 3
    assert data["weyl_dimension"] == 3


def test_bad_matrix_exit_2(tmp_path, capsys):
    f = tmp_path / "BadMatrix.json"
    f.write_text("[[2,-2],[-2,2]]")
    code, data = run_json(["roots", str(f)], capsys)
    assert code == 2
    assert data["error"]["code"] == "non_finite_type"
    code, _, err = run(["roots", str(f)], capsys)
    assert code == 2 and "non_finite_type" in err


def test_unknown_flag_and_command(capsys):
    code, data = run_json(["roots", "A2", "--bogus"], capsys)
    assert code == 2 and data["error"]["code"] == "usage"
    code, _, _ = run(["frobnicate"], capsys)
    assert code == 2


def test_byte_identical_output(capsys):
    argv = ["crystal", "tensor", "A2", "w1", "w2", "--decompose", "--invariants", "--json"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second
    data = json.loads(first)
    assert data["size"] == 9 and data["invariants"] == [[1, 3]]
    assert {tuple(d["highest_weight"]) for d in data["decomposition"]} == {(1, 1), (0, 0)}


def test_roots_text_and_json(capsys):
    code, out, _ = run(["roots", "D4"], capsys)
    assert code == 0 and "positive roots (12)" in out
    _, data = run_json(["roots", "[[2,-1],[-1,2]]"], capsys)
    assert data["longest_word"] in ([1, 2, 1], [2, 1, 2])


def test_output_file_atomic(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert main(["crystal", "gen", "A1", "w1", "--json", "-o", str(target)]) == 0
    assert len(json.loads(target.read_text())["nodes"]) == 2
    before = target.read_text()
    assert main(["crystal", "gen", "A1", "-1", "--json", "-o", str(target)]) == 2
    assert target.read_text() == before
    assert [p.name for p in tmp_path.iterdir()] == ["out.json"]
    capsys.readouterr()


def test_path_apply(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"type": "A1", "path": [{"direction": [2], "duration": "1"}]}))
    code, data = run_json(["path", "apply", "f", "1", str(f)], capsys)
    assert code == 0
    assert data["result"] == [{"direction": ["-2"], "duration": "1/2"}, {"direction": ["2"], "duration": "1/2"}]
    code, data = run_json(["path", "apply", "e", "1", str(f)], capsys)
    assert data["result"] is None
    code, data = run_json(["path", "apply", "f", "3", str(f)], capsys)
    assert code == 2
    g = tmp_path / "bad.json"
    g.write_text(json.dumps([{"direction": [-1], "duration": "1/2"}, {"direction": [3], "duration": "1/2"}]))
    code, data = run_json(["path", "apply", "f", "1", str(g), "--type", "A1"], capsys)
    assert code == 2 and data["error"]["code"] == "non_integral_path"


def test_mv_label(tmp_path, capsys):
    f = tmp_path / "ps.json"
    f.write_text(json.dumps([[{"direction": [1, 0], "duration": "1"}], [{"direction": [-1, 1], "duration": "1"}]]))
    code, data = run_json(["mv", "label", "A2", str(f)], capsys)
    assert code == 0
    assert data["generator_word"] == "x[(a1v+a2v,0)](c1) x[(a1v,0)](c2) z^{w1} x[(a2v,0)](c3) z^{-w1+w2}"
    assert data["dim_starred"] == "3"


def test_satake_rotate(capsys):
    code, data = run_json(["satake", "rotate", "A2", "w1", "w2", "1,3"], capsys)
    assert code == 0
    assert data["factors"] == [[0, 1], [1, 0]]
    code, back = run_json(["satake", "rotate", "A2", "w2", "w1", ",".join(map(str, data["index"]))], capsys)
    assert back["index"] == [1, 3]
    code, data = run_json(["satake", "rotate", "A2", "w1", "w2", "1,1"], capsys)
    assert code == 2 and data["error"]["code"] == "not_invariant"


def test_conda(capsys):
    code, data = run_json(["conda", "check", "A2", "1,2,1"], capsys)
    assert code == 0 and data["feasible"] is True and data["word"] == [1, 2, 1]
    code, data = run_json(["conda", "check", "A2", "1,1,2"], capsys)
    assert code == 2 and data["error"]["code"] == "non_reduced_word"
    code, data = run_json(["conda", "from-line", "A3", "1,2,3", "3,1/2,1"], capsys)
    assert code == 0 and len(data["word"]) == 6
    code, data = run_json(["conda", "from-line", "A2", "1,1", "1,1"], capsys)
    assert code == 2 and data["error"]["code"] == "degenerate_line"


def test_canonical_rationals():
    from fractions import Fraction

    assert canonical({"a": Fraction(1, 2), "b": (Fraction(4, 2),)}) == {"a": "1/2", "b": ["2"]}
    with pytest.raises(TypeError):
        canonical(0.5)


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "mvcrystal.cli", "crystal", "gen", "A1", "w1", "--json"],
                         capture_output=True, text=True, check=True)
    assert len(json.loads(out.stdout)["nodes"]) == 2
