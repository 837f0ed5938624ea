import json

import pytest

from advlin import cli


def test_graph_trees(run_cli, datadir):
    status, out = run_cli("graph", "trees", datadir / "k4.json")
    assert status == 0
    assert out["result"] == 16

    # Same answer through the built-in complete graph
    assert run_cli("graph", "trees", "--complete", 4)[1]["result"] == 16


def test_poly_discriminant(run_cli, datadir):
    status, out = run_cli("poly", "discriminant", datadir / "cubic.json")
    assert status == 0
    assert out["result"] == -216
    assert out["meta"]["tol"] == cli.EXACT_NOTE

    status, out = run_cli("poly", "classify", "--coeffs", "2,3,0,1")
    assert out["result"]["n_real"] == 1
    assert out["result"]["n_complex"] == 2


def test_circulant_hadamard_search(run_cli):
    status, out = run_cli("special", "chc-search", 8)
    assert status == 0
    assert out["result"] == []

    status, out = run_cli("special", "chc-search", 4, "--exhaustive")
    assert len(out["result"]) == 8


def test_matrix_det_and_round_trip(run_cli, datadir):
    status, out = run_cli("matrix", "det", datadir / "int_matrix.json")
    assert status == 0
    assert out["result"] == -3

    # Matrices emitted by one command are valid input for the others
    status, out = run_cli("matrix", "factor", "--kind", "plu", datadir / "int_matrix.json")
    assert status == 0
    lower = datadir / "lower.json"
    lower.write_text(json.dumps(out["result"]["lower"]))
    assert run_cli("matrix", "det", lower)[1]["result"] == 1


def test_matrix_jordan(run_cli, datadir):
    status, out = run_cli("matrix", "jordan", datadir / "jordan_block.json")
    assert status == 0
    assert len(out["result"]["blocks"]) == 1
    assert out["result"]["blocks"][0][1] == 3


def test_matrix_positivity(run_cli, datadir):
    status, out = run_cli("matrix", "positivity", datadir / "int_matrix.json")
    assert status == 0
    assert out["result"] == "indefinite"


def test_hadamard_constructions(run_cli, datadir):
    status, out = run_cli("special", "hadamard", "--kind", "williamson",
                          "--symbols", datadir / "williamson.json")
    assert status == 0
    assert out["result"]["size"] == 12
    assert out["result"]["is_hadamard"] is True

    status, out = run_cli("special", "hadamard", "--kind", "walsh", "--param", 2)
    assert out["result"]["rows"] == ["++++", "+-+-", "++--", "+--+"]

    status, out = run_cli("special", "equivalent", datadir / "walsh4.txt", datadir / "circulant4.txt")
    assert status == 0
    assert out["result"] is True


def test_circulant(run_cli, datadir):
    status, out = run_cli("special", "circulant", "--symbol", datadir / "symbol.json")
    assert status == 0
    assert out["result"]["eigenvalues"][0] == pytest.approx([6.0, 0.0])
    assert out["result"]["residual"] < 1e-10


def test_weingarten_gram(run_cli):
    status, out = run_cli("wg", "gram", "--cat", "P", "--k", 3, "--N", 5)
    assert status == 0
    assert sorted(out["result"]["partitions"]) == ["111", "112", "121", "122", "123"]
    assert out["result"]["gram"]["rows"] == 5

    status, out = run_cli("wg", "catalan", 4)
    assert out["result"] == 14


def test_moment_table_csv(run_cli):
    status, out = run_cli("--format", "csv", "--seed", 3, "rmt", "compare",
                          "--N", 40, "--count", 3, "--k", "1..4")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "k,empirical,limit,abs_err,stderr"
    assert len(lines) == 5


def test_stochastic_reruns_are_identical(run_cli):
    argv = ("--seed", 5, "rmt", "sample", "--kind", "wishart", "--N", 6, "--M", 3, "--count", 4)
    first = run_cli(*argv)
    second = run_cli(*argv)
    assert first == second
    assert first[1]["meta"]["seed"] == 5
    assert first[1]["result"]["mass_near_zero"] == pytest.approx(0.5)


def test_errors(run_cli, datadir):
    status, out = run_cli("matrix", "det", datadir / "broken.json")
    assert status == 1
    assert out["error"] == "MalformedInputException"
    assert out["context"] == {"command": "matrix", "action": "det"}

    status, out = run_cli("matrix", "det", datadir / "missing.json")
    assert status == 1

    status, out = run_cli("special", "hadamard", "--kind", "paley2", "--param", 7)
    assert status == 1
    assert out["error"] == "InvalidParameterException"


def test_unknown_subcommand(run_cli):
    with pytest.raises(SystemExit) as ex:
        run_cli("tensor", "contract")
    assert ex.value.code == 2
