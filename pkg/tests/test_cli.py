"""Tests for src/cli.py."""

import json

import pytest

from src.cli import COMMAND_DISPATCH, build_parser, main
from src.config import DATA_DIR


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_dispatch_covers_all_subcommands():
    parser = build_parser()
    subcommands = parser._subparsers._group_actions[0].choices
    assert set(subcommands) == set(COMMAND_DISPATCH)


def test_analyze_binary(capsys):
    code, report = run(capsys, "analyze", str(DATA_DIR / "binary_cosets.json"), "--alpha", "2")
    assert code == 0
    assert (report["d_min"], report["component_count"], report["gamma"]) == (2, 2, 4)
    assert report["subcode_dim"] == 2


def test_analyze_explicit_with_dot(capsys, tmp_path):
    dot = tmp_path / "g4.dot"
    code, report = run(capsys, "analyze", str(DATA_DIR / "four_components.json"), "--alpha", "4",
                       "--dot", str(dot))
    assert code == 0
    assert report["component_count"] == 4
    assert report["component_sizes"] == [1, 3, 3, 1]
    assert report["k"] is None
    assert dot.read_text().startswith("graph G4 {")


def test_malformed_input_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["analyze", str(bad), "--alpha", "2"]) == 2
    assert "ParseError" in capsys.readouterr().err


def test_budget_exit_code(capsys):
    assert main(["--budget-enum", "2", "analyze", str(DATA_DIR / "binary_cosets.json"), "--alpha", "2"]) == 3


def test_chain_emits_code(capsys, tmp_path):
    out = tmp_path / "chain.json"
    code, report = run(capsys, "chain", "--variant", "open", "-k", "2", "-d", "6", "-s", "1", "-q", "5",
                       "--check", "gap2", "--out", str(out))
    assert code == 0
    assert report["n"] == 11
    assert report["matches_expected"]
    assert report["measured_counts"]["6"] == 8
    assert json.loads(out.read_text())["n"] == 11


def test_simonis_pipeline(capsys, tmp_path):
    source, output, saved = tmp_path / "c.json", tmp_path / "d.json", tmp_path / "report.json"
    main(["chain", "--variant", "open", "-k", "3", "-d", "6", "-s", "1", "-q", "3", "--out", str(source)])
    capsys.readouterr()
    code, report = run(capsys, "simonis", "--mode", "one", "--in", str(source), "--out", str(output),
                       "--report", str(saved))
    assert code == 0
    assert (report["t_before"], report["t_after"]) == (3, 2)
    assert report["capability"]["max_image_size"] == 3
    assert output.exists()
    written = json.loads(saved.read_text())
    assert written["output_counts"]["6"] == 4
    assert set(written["output_counts"]) == {"6", "7"}
    assert written == report


def test_fcc_build_verify_decode(capsys, tmp_path):
    code_path = str(DATA_DIR / "four_components.json")
    f_path = str(DATA_DIR / "four_components_function.json")
    enc = tmp_path / "enc.json"
    code, report = run(capsys, "fcc", "build", "--code", code_path, "--function", f_path,
                       "--dd", "4", "--df", "5", "--out", str(enc))
    assert code == 0
    assert report["grouping"] == [[1], [2], [0, 3]]
    code, report = run(capsys, "fcc", "verify", "--code", code_path, "--function", f_path, "--encoding", str(enc))
    assert code == 0 and report["passed"]
    code, report = run(capsys, "fcc", "decode", "--code", code_path, "--function", f_path,
                       "--encoding", str(enc), "--received", "100110111", "--target", "data")
    assert report == {"target": "data", "answer": [0, 0, 0]}


def test_fcc_feasibility_needs_distances():
    with pytest.raises(SystemExit):
        main(["fcc", "feasibility", "--code", str(DATA_DIR / "four_components.json"),
              "--function", str(DATA_DIR / "four_components_function.json")])


def test_failed_verification_exit_code(capsys, tmp_path):
    pairs = json.loads((DATA_DIR / "four_components_assignment.json").read_text())
    pairs["assignment"][0][1], pairs["assignment"][6][1] = pairs["assignment"][6][1], pairs["assignment"][0][1]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(pairs))
    code, report = run(capsys, "fcc", "verify", "--code", str(DATA_DIR / "four_components.json"),
                       "--function", str(DATA_DIR / "four_components_function.json"), "--encoding", str(broken))
    assert code == 1
    assert report["passed"] is False


def test_json_out_writes_manifest(capsys, tmp_path):
    out = tmp_path / "res" / "chains.json"
    assert main(["--seed", "5", "--json-out", str(out), "reproduce", "--target", "chains"]) == 0
    assert capsys.readouterr().out == ""
    result = json.loads(out.read_text())
    assert result["passed"]
    manifest = json.loads((tmp_path / "res" / "chains.json.manifest.json").read_text())
    assert manifest["subcommand"] == "reproduce"
    assert manifest["seed"] == 5
    assert manifest["outputs"] == [str(out)]
    assert manifest["parameters"]["target"] == "chains"


def test_reproduce_output_is_deterministic(capsys):
    first = run(capsys, "reproduce", "--target", "cosets-binary")
    second = run(capsys, "reproduce", "--target", "cosets-binary")
    assert first == second
    assert first[0] == 0


def test_missing_input_file_exit_code(capsys, tmp_path):
    assert main(["analyze", str(tmp_path / "absent.json"), "--alpha", "2"]) == 2
    assert "InputError" in capsys.readouterr().err
    code = main(["fcc", "verify", "--code", str(DATA_DIR / "four_components.json"),
                 "--function", str(tmp_path / "absent.json"), "--encoding", str(tmp_path / "enc.json")])
    assert code == 2


def test_alternative_spellings(capsys):
    code, report = run(capsys, "chain", "--variant", "open", "-k", "2", "-d", "6", "-s", "1", "-q", "5",
                       "--check", "prop3")
    assert code == 0 and report["matches_expected"]
    code, summary = run(capsys, "reproduce", "--target", "tab4")
    assert code == 0
    assert [r["target"] for r in summary["results"]] == ["chains"]
    args = build_parser().parse_args(["bch", "--p", "5", "--m", "3", "--verify", "thm6"])
    assert args.verify == "thm6"
    assert main(["bch", "--p", "5", "--m", "3", "--verify", "thm6"]) == 0
    assert json.loads(capsys.readouterr().out)["dimensions"]["passed"]
