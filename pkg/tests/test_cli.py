import json

import pytest

from gtkv.cli import main
from gtkv.serialize import load_solution


@pytest.fixture(scope="module")
def sol_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "sol.json"
    code = main(["solve", "--n", "2", "--degree", "4", "--out", str(path)])
    assert code == 0
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_solve_writes_solution(sol_file, capsys):
    sol = load_solution(sol_file)
    assert sol.n == 2 and sol.N == 4
    assert str(sol.h[2]) == "-1/48"


def test_solve_usage_errors(capsys):
    assert main(["solve", "--n", "1"]) == 64
    assert main(["solve", "--degree", "1"]) == 64


def test_unknown_suite(capsys):
    assert main(["verify", "--suite", "nonsense"]) == 64


def test_missing_subcommand():
    assert main([]) == 64


def test_bad_solution_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["duflo", "--sol", str(bad)]) == 65
    assert main(["verify", "--suite", "MT", "--sol", str(bad)]) == 65
    assert main(["duflo", "--sol", str(tmp_path / "missing.json")]) == 65


def test_duflo_output(sol_file, capsys):
    code, out = run(capsys, ["duflo", "--sol", sol_file])
    assert code == 0
    assert "-1/48" in out
    assert "match mod linear" in out


def test_verify_text_and_json(sol_file, capsys, tmp_path):
    code, out = run(
        capsys,
        ["verify", "--suite", "dext", "--n", "2", "--degree", "4", "--samples", "5"],
    )
    assert code == 0
    assert out.startswith("suite dext:")
    assert "[PASS]" in out
    out_json = tmp_path / "dext.json"
    code, out = run(
        capsys,
        [
            "verify",
            "--suite",
            "dext",
            "--n",
            "2",
            "--degree",
            "4",
            "--samples",
            "5",
            "--format",
            "json",
            "--out",
            str(out_json),
        ],
    )
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "pass"
    assert json.loads(out_json.read_text()) == data


def test_verify_deterministic_output(capsys):
    argv = ["verify", "--suite", "dext", "--n", "2", "--degree", "4",
            "--samples", "5", "--seed", "3", "--format", "json"]
    code1, out1 = run(capsys, argv)
    code2, out2 = run(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_transfer_loops(sol_file, capsys):
    code, out = run(
        capsys,
        ["transfer", "--sol", sol_file, "--loop", "g1 g2", "--loop", "g1 g1"],
    )
    assert code == 0
    assert "match through degree 3: True" in out


def test_transfer_needs_input(sol_file, capsys):
    assert main(["transfer", "--sol", sol_file]) == 64


def test_report_aggregates(sol_file, capsys, tmp_path):
    p1 = tmp_path / "a.json"
    main(
        ["verify", "--suite", "dext", "--n", "2", "--degree", "4", "--samples", "3",
         "--format", "json", "--out", str(p1)]
    )
    capsys.readouterr()
    code, out = run(capsys, ["report", "--in", str(p1), "--format", "text"])
    assert code == 0
    assert "dext" in out
    code, out = run(capsys, ["report", "--in", str(p1), "--format", "json"])
    data = json.loads(out)
    assert data["status"] == "pass"
    assert data["reports"][0]["total"] >= 1


def test_report_bad_file(tmp_path, capsys):
    bad = tmp_path / "x.json"
    bad.write_text("nope")
    assert main(["report", "--in", str(bad)]) == 65
