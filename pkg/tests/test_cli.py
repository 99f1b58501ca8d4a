import json
import subprocess
import sys

import numpy as np
import pytest

from polargraphs import graphs as gr
from polargraphs.cli import main

from conftest import decode_graph6


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_graph6(capsys):
    code, out, err = run(capsys, "build", "--family", "no-", "--m", "2", "--format", "graph6")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1
    adj = decode_graph6(lines[0].encode())
    assert np.array_equal(adj, gr.build_no_even(2, -1).dense())
    assert "n: 10" in err


def test_build_adjlist(capsys):
    code, out, _ = run(capsys, "build", "--family", "nu", "--m", "3", "--q", "2", "--format", "adjlist")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 12
    assert all(len(line.split(":")[1].split()) == 9 for line in lines)


def test_build_to_file(tmp_path, capsys):
    target = tmp_path / "g.g6"
    code, out, _ = run(capsys, "build", "--family", "no-odd", "--m", "2", "--out", str(target))
    assert code == 0 and "edges: 45" in out
    assert decode_graph6(target.read_bytes()).shape == (15, 15)


def test_build_guard(capsys):
    code, _, err = run(capsys, "build", "--family", "no+", "--m", "11")
    assert code == 3 and "error" in err


def test_build_vertex_guard(capsys):
    assert run(capsys, "build", "--family", "no+", "--m", "10")[0] == 3


def test_usage_errors(capsys):
    assert run(capsys, "build", "--family", "nu", "--m", "3", "--q", "6")[0] == 2
    assert run(capsys, "build", "--family", "no+", "--m", "0")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["build", "--family", "lps", "--m", "2"])
    assert info.value.code == 2


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--family", "no-", "--m", "2", "--format", "json-certificate")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "CONSISTENT"
    assert (doc["n"], doc["d"]) == (10, 3)
    assert doc["srg"] == {"lambda": 0, "mu": 1}
    assert doc["verdict"]["class"] == "Ramanujan"
    assert doc["verdict"]["lambda"] == 2
    assert abs(doc["verdict"]["bound"] - 2.828427) < 1e-6
    assert doc["identityVerified"] is True
    assert {e["value"]: e["multiplicity"] for e in doc["spectrum"]} == {3: 1, 1: 5, -2: 4}


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--family", "nu", "--m", "4", "--q", "2")
    assert code == 0
    assert "CONSISTENT" in out and "Ramanujan" in out


def test_verify_degenerate(capsys):
    code, out, _ = run(capsys, "verify", "--family", "nu", "--m", "2", "--q", "2",
                       "--format", "json-certificate")
    assert code == 0
    assert json.loads(out)["verdict"]["class"] == "Degenerate"


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--m-max", "6", "--q-max", "16")
    assert code == 0
    rows = {}
    for line in out.splitlines()[2:]:
        cells = line.split()
        rows[(cells[0], int(cells[1]), int(cells[2]))] = (cells[9], cells[10])
    assert rows[("no+", 2, 2)] == ("BipartiteRamanujan", "verified")
    for m in range(3, 7):
        assert rows[("no+", m, 2)][0] == "Ramanujan"
        assert rows[("nu", m, 2)][0] == "Ramanujan"
    assert rows[("nu", 3, 16)] == ("NonRamanujan", "predicted")


def test_table_bad_range(capsys):
    assert run(capsys, "table", "--m-max", "13")[0] == 2


def test_mixing(capsys):
    code, out, _ = run(capsys, "mixing", "--family", "no-", "--m", "2", "--samples", "1000", "--seed", "42")
    assert code == 0 and "violations: 0" in out
    code, out, _ = run(capsys, "mixing", "--family", "no+", "--m", "3", "--samples", "1000", "--seed", "1")
    assert code == 0 and "violations: 0" in out


def test_params(capsys):
    code, out, _ = run(capsys, "params", "--family", "no+", "--m", "4")
    assert code == 0
    assert "lambda: 9" in out and "predicted: Ramanujan" in out


@pytest.mark.parametrize("argv", [
    ["mixing", "--family", "no+", "--m", "3", "--samples", "1000", "--seed", "1"],
    ["build", "--family", "nu", "--m", "4", "--q", "2"],
    ["verify", "--family", "no-odd", "--m", "3", "--format", "json-certificate"],
])
def test_subprocess_output_deterministic(argv):
    cmd = [sys.executable, "-m", "polargraphs", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
