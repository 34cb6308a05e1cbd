import io
import subprocess
import sys

import pytest

from cocolat.cli import main
from cocolat.fixtures import fig6
from cocolat.graph import format_graph, load_graph


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def fig6_files(tmp_path):
    g = fig6().graph
    graph = tmp_path / "fig6.txt"
    graph.write_text(format_graph(g, "dimacs"))
    order = tmp_path / "order.txt"
    order.write_text("5 6 4 2 3 1\n")
    return graph, order


def test_gen_writes_files(tmp_path):
    g, o = tmp_path / "graph.txt", tmp_path / "order.txt"
    code, _ = run("gen", "--n", "9", "--density", "0.3", "--seed", "7", "--emit", str(g), "--emit-order", str(o))
    assert code == 0
    assert load_graph(str(g)).n == 9 and len(o.read_text().split()) == 9


def test_gen_is_deterministic():
    assert run("gen", "--n", "12", "--seed", "3") == run("gen", "--n", "12", "--seed", "3")


def test_gen_seed_from_environment(monkeypatch):
    monkeypatch.setenv("COCOLAT_SEED", "11")
    env_run = run("gen", "--n", "10")
    assert env_run == run("gen", "--n", "10", "--seed", "11")
    monkeypatch.setenv("COCOLAT_SEED", "12")
    assert run("gen", "--n", "10") != env_run


def test_max_interval_fig6(fig6_files, tmp_path):
    graph, order = fig6_files
    dot = tmp_path / "chain.dot"
    code, out = run("max-interval", str(graph), "--order", str(order), "--dot", str(dot))
    assert code == 0
    assert out.splitlines() == ["4", "1: 1 2 3", "2: 1 2 4", "3: 1 4 5", "4: 4 5 6"]
    assert dot.read_text().startswith("graph")


def test_verify_all_tap(fig6_files):
    graph, order = fig6_files
    code, out = run("verify", "--all", str(graph), "--order", str(order))
    assert code == 0
    lines = out.splitlines()
    assert lines and all(ln.startswith("ok ") for ln in lines)
    assert any("maximal-interval-subgraph" in ln for ln in lines)


def test_verify_external_chain(fig6_files, tmp_path):
    graph, order = fig6_files
    chain = tmp_path / "chain.txt"
    chain.write_text("3\n1: 1 2 3\n2: 1 2 4\n3: 4 5 6\n")
    code, out = run("verify", str(graph), "--order", str(order), "--chain", str(chain))
    assert code == 1
    assert "not ok maximal-chain" in out


def test_umbrella_exit_one_with_witness(fig6_files, tmp_path):
    graph, _ = fig6_files
    bad = tmp_path / "bad.txt"
    bad.write_text("4 3 6 1 2 5\n")
    code, out = run("check-cocomp", str(graph), "--order", str(bad))
    assert code == 1 and out.startswith("not ok cocomp-ordering (")
    code, out = run("max-interval", str(graph), "--order", str(bad))
    assert code == 1 and "not ok precondition" in out


def test_trust_skips_precondition(fig6_files, tmp_path):
    graph, _ = fig6_files
    bad = tmp_path / "bad.txt"
    bad.write_text("4 3 6 1 2 5\n")
    assert run("max-interval", str(graph), "--order", str(bad), "--trust")[0] == 0


def test_check_cocomp_finds_ordering(fig6_files):
    graph, _ = fig6_files
    code, out = run("check-cocomp", str(graph))
    assert code == 0 and out.startswith("ok cocomp-ordering")


def test_check_cocomp_c5(tmp_path):
    f = tmp_path / "c5.txt"
    f.write_text("5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n")
    code, out = run("check-cocomp", str(f))
    assert code == 1 and "no umbrella-free ordering" in out


def test_search_and_plus(fig6_files):
    graph, order = fig6_files
    assert run("search", "localmns+", str(graph), "--ref", str(order)) == (0, "1 3 2 4 5 6\n")
    assert run("search", "lbfs", str(graph))[0] == 0
    assert run("search", "lbfs+", str(graph))[0] == 2


def test_simplicial_and_chainclique(fig6_files, tmp_path):
    graph, order = fig6_files
    assert run("simplicial", str(graph), "--order", str(order)) == (0, "3 6\n")
    ldfs = tmp_path / "ldfs.txt"
    ldfs.write_text("1 3 2 4 6 5")
    code, out = run("chainclique", str(graph), "--order", str(ldfs), "--index", "-")
    assert code == 0 and out.startswith("3\n1: 1 2 3\n2: 1 2 4\n3: 4 5 6\nvertex\tfirst")


def test_lattice_verb(fig6_files, tmp_path):
    graph, order = fig6_files
    dot = tmp_path / "ma.dot"
    code, out = run("lattice", str(graph), "--order", str(order), "--conditions", "--dot", str(dot))
    assert code == 0
    assert out.count("ok lattice") == 3 and dot.read_text().startswith("digraph")


def test_verify_random_parallel_matches_serial():
    a = run("verify", "--random", "6", "--n", "8", "--seed", "4")
    b = run("verify", "--random", "6", "--n", "8", "--seed", "4", "--jobs", "2")
    assert a == b and a[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["gen"],
        ["gen", "--n", "3", "--unknown"],
        ["max-interval", "missing-file.txt", "--order", "x"],
        ["verify"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    assert run(*argv)[0] == 2


def test_parse_error_exit_two(tmp_path, capsys):
    f = tmp_path / "broken.txt"
    f.write_text("3 1\n0 7\n")
    assert run("check-cocomp", str(f))[0] == 2
    assert "line 2" in capsys.readouterr().err


def test_max_interval_requires_order(fig6_files, capsys):
    graph, _ = fig6_files
    assert run("max-interval", str(graph))[0] == 2


def test_bench_csv_and_plot(tmp_path):
    png = tmp_path / "scaling.png"
    code, out = run("bench", "--sizes", "200,400", "--window", "6", "--trust", "--plot", str(png))
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,m,millis" and len(lines) == 3
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_module_entry_point_reads_stdin():
    text = format_graph(fig6().graph, "dimacs")
    proc = subprocess.run(
        [sys.executable, "-m", "cocolat", "check-cocomp", "-"], input=text, capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("ok")
