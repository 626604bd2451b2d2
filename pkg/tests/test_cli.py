import json
import subprocess
import sys
from fractions import Fraction

import pytest

from regortho.cayley import RegularCayleyDecomposition
from regortho.cli import main
from regortho.exact import Matrix, format_matrix, is_orthogonal, is_permutation_matrix, is_regular, parse_matrix
from regortho.fixtures import conference10, hadamard4
from regortho.graphs import Graph, find_gm_sets, format_edge_list, format_graph, gm_switch, walk_determinant
from regortho.perms import Permutation


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "eye.txt").write_text(format_matrix(Matrix.identity(3)))
    (tmp_path / "bad.txt").write_text("2 2\n1 1\n0 1\n")
    (tmp_path / "path3.graph").write_text("3 2\n1 2\n2 3\n")
    return tmp_path


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "-n", "1")
    assert code == 0 and parse_matrix(out) == Matrix([[1]])
    code, out, _ = run(capsys, "gen", "-n", "2", "--seed", "7")
    assert is_permutation_matrix(parse_matrix(out))


def test_gen_provenance_round_trips(capsys, tmp_path):
    code, doc = run_json(capsys, "gen", "-n", "6", "--seed", "1", "--emit-s")
    assert code == 0 and doc["status"] == "ok"
    q = Matrix([[Fraction(x) for x in row] for row in doc["payload"]["Q"]])
    assert is_orthogonal(q) and is_regular(q)
    prov = RegularCayleyDecomposition.from_json(doc["payload"]["provenance"])
    assert prov.reconstruct() == q
    code, out, _ = run(capsys, "gen", "-n", "6", "--seed", "1", "--emit-s")
    f = tmp_path / "q.txt"
    f.write_text(out)
    assert parse_matrix(out) == q
    code, doc = run_json(capsys, "decompose", str(f))
    assert code == 0
    assert RegularCayleyDecomposition.from_json(doc["payload"]).reconstruct() == q


def test_decompose(capsys, workdir):
    code, doc = run_json(capsys, "decompose", str(workdir / "eye.txt"))
    assert code == 0
    assert doc["payload"]["P"] == [1, 2, 3]
    assert doc["payload"]["S"] == [["0"] * 3] * 3
    run(capsys, "examples", "hadamard4", "-o", str(workdir / "h.txt"))
    code, doc = run_json(capsys, "decompose", str(workdir / "h.txt"))
    assert code == 0
    assert RegularCayleyDecomposition.from_json(doc["payload"]).reconstruct() == hadamard4()
    code, doc = run_json(capsys, "decompose", str(workdir / "bad.txt"))
    assert code != 0 and doc["status"] == "precondition-failed"


def test_verify(capsys):
    code, doc = run_json(capsys, "verify", "thm5", "-n", "4", "--trials", "100", "--seed", "3")
    assert code == 0 and doc["payload"]["violations"] == []
    assert set(doc["payload"]) >= {"n", "trials", "violations", "identities_checked"}
    code, doc = run_json(capsys, "verify", "sum0", "-n", "5")
    assert code == 0 and doc["payload"]["identities_checked"] == 252
    code, doc = run_json(capsys, "verify", "mij", "-n", "2", "--trials", "50")
    assert code == 0 and doc["payload"]["violations"] == []
    code, doc = run_json(capsys, "verify", "enmen", "-n", "4", "--trials", "5")
    assert code == 0
    code, doc = run_json(capsys, "verify", "enmen", "-n", "9", "--trials", "1")
    assert code != 0 and doc["status"] == "precondition-failed"


def test_graph_commands(capsys, workdir):
    code, out, _ = run(capsys, "dgs", str(workdir / "path3.graph"))
    assert code == 0 and "detW: 0" in out and "inapplicable" in out
    code, doc = run_json(capsys, "dgs", str(workdir / "path3.graph"))
    assert doc["status"] == "inapplicable" and doc["payload"]["detW"] == "0"
    code, out, _ = run(capsys, "walk", str(workdir / "path3.graph"))
    assert parse_matrix(out) == Matrix([[1, 1, 2], [1, 2, 2], [1, 1, 2]])


def test_recover_and_cospectral(capsys, tmp_path):
    for seed in range(40):
        g = Graph.random(7, seed=seed)
        if walk_determinant(g):
            break
    pi = Permutation((2, 3, 1, 5, 4, 7, 6))
    (tmp_path / "g.graph").write_text(format_edge_list(g))
    (tmp_path / "g_relabeled.graph").write_text(format_graph(g.relabel(pi)))
    code, out, _ = run(capsys, "recover-q", str(tmp_path / "g.graph"), str(tmp_path / "g_relabeled.graph"))
    assert code == 0 and parse_matrix(out) == pi.matrix()

    for seed in range(100):
        g = Graph.random(8, seed=seed)
        sets = [s for s in find_gm_sets(g, 4) if gm_switch(g, s) != g]
        if sets:
            break
    (tmp_path / "a.graph").write_text(format_graph(g))
    arg = ",".join(map(str, sets[0].C))
    code, out, _ = run(capsys, "gm-switch", str(tmp_path / "a.graph"), "--set", arg)
    assert code == 0
    (tmp_path / "b.graph").write_text(out)
    code, out, _ = run(capsys, "cospectral", str(tmp_path / "a.graph"), str(tmp_path / "b.graph"))
    assert out == "spectrum: true\ncomplement_spectrum: true\n"
    code, doc = run_json(capsys, "gm-find", str(tmp_path / "a.graph"), "--max-size", "4")
    assert list(sets[0].C) in doc["payload"]["sets"]
    code, doc = run_json(capsys, "gm-switch", str(tmp_path / "a.graph"), "--set", "1,2,3")
    assert code != 0 and doc["status"] == "precondition-failed"


def test_examples(capsys):
    code, out, _ = run(capsys, "examples", "hadamard4")
    assert code == 0 and parse_matrix(out) == hadamard4()
    m = parse_matrix(out)
    assert all(m[i, i] == -0.5 for i in range(4))
    code, out, _ = run(capsys, "examples", "conference10")
    assert parse_matrix(out) == conference10()
    code, out, err = run(capsys, "examples", "nope")
    assert code != 0 and "hadamard4" in err and "conference10" in err


@pytest.mark.parametrize("argv", [
    ["gen", "-n", "3"],
    ["examples", "nope"],
    ["decompose", "/nonexistent/file"],
    ["verify", "sum0", "-n", "3"],
])
def test_json_mode_always_single_document(capsys, argv):
    code, out, _ = run(capsys, "--json", *argv)
    doc = json.loads(out)
    assert set(doc) == {"status", "payload", "diagnostics"}
    assert (code == 0) == (doc["status"] in ("ok", "inapplicable"))


def test_byte_identical_output():
    cmd = [sys.executable, "-m", "regortho", "--json", "gen", "-n", "7", "--seed", "5", "--emit-s"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
