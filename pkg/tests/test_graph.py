import io

import pytest
from conftest import complete, graphs, path
from hypothesis import given
from hypothesis import strategies as st

from cocolat.fixtures import fig5_h
from cocolat.graph import (
    Graph,
    GraphFormatError,
    VertexOrdering,
    complement,
    format_graph,
    graph_to_dot,
    induced_subgraph,
    load_graph,
    load_ordering,
    parse_graph,
    random_cocomp_instance,
    random_sparse_cocomp_instance,
    save_graph,
)
from cocolat.poset import is_cocomp_ordering


def test_parse_p3():
    g = parse_graph("3 2\n0 1\n1 2")
    assert g.n == 3 and list(g.edges()) == [(0, 1), (1, 2)]


def test_parse_single_vertex():
    g = parse_graph("1 0")
    assert (g.n, g.m) == (1, 0)


def test_parse_dedupes_unless_strict():
    text = "3 3\n0 1\n1 0\n1 2\n"
    assert parse_graph(text).m == 2
    with pytest.raises(GraphFormatError) as err:
        parse_graph(text, strict=True)
    assert err.value.lineno == 3


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("2 1\n0 0\n", 2),
        ("2 1\n0 5\n", 2),
        ("2 1\n0 x\n", 2),
        ("2 1\n0 1 2\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(GraphFormatError) as err:
        parse_graph(text)
    assert err.value.lineno == lineno
    assert f"line {lineno}" in str(err.value)


def test_edge_count_mismatch():
    with pytest.raises(GraphFormatError):
        parse_graph("3 2\n0 1\n")


def test_dimacs_is_one_based_and_named():
    g = parse_graph("c comment\np edge 3 2\ne 1 2\ne 2 3\n")
    assert list(g.edges()) == [(0, 1), (1, 2)]
    assert g.label(0) == "1"


def test_empty_graph_is_legal():
    g = parse_graph("0 0")
    assert g.n == 0 and g.m == 0
    assert complement(g).n == 0


@given(graphs(max_n=12), st.sampled_from(["edgelist", "dimacs"]))
def test_save_load_roundtrip(g, fmt):
    buf = io.StringIO()
    save_graph(g, buf, fmt)
    h = load_graph(io.StringIO(buf.getvalue()), fmt=fmt)
    assert h.n == g.n and h.edge_set() == g.edge_set()


def test_load_from_binary_stream():
    g = load_graph(io.BytesIO(b"2 1\n0 1\n"))
    assert g.m == 1


@given(graphs(max_n=12))
def test_complement_involution_and_edge_count(g):
    c = complement(g)
    assert complement(c).edge_set() == g.edge_set()
    assert g.m + c.m == g.n * (g.n - 1) // 2
    assert g.m * 2 == sum(g.degrees)


def test_complement_small():
    assert complement(complete(3)).m == 0
    assert list(complement(path(3)).edges()) == [(0, 2)]


def test_induced_subgraph():
    g = complete(4)
    h, ids = induced_subgraph(g, [0, 2, 3])
    assert h.m == 3 and ids == [0, 2, 3]
    same, _ = induced_subgraph(g, range(4))
    assert same.edge_set() == g.edge_set()


def test_induced_tail_of_h():
    fx = fig5_h()
    g = fx.graph
    tail, ids = induced_subgraph(g, g.vertices([f"v{i}" for i in range(11, 16)]))
    assert tail.labels(range(5)) == ["v11", "v12", "v13", "v14", "v15"]
    named = {frozenset(tail.labels(e)) for e in tail.edges()}
    assert named == {frozenset(p) for p in [("v11", "v12"), ("v11", "v13"), ("v12", "v13"), ("v11", "v14"), ("v13", "v14"), ("v13", "v15"), ("v14", "v15")]}


def test_vertex_ordering_validates():
    with pytest.raises(ValueError):
        VertexOrdering((0, 0, 1))
    o = VertexOrdering((2, 0, 1))
    assert o.position == (1, 2, 0)
    assert all(o.order[o.position[v]] == v for v in range(3))
    assert o.reversed() == [1, 0, 2]


def test_load_ordering_rejects_unknown_and_short():
    g = parse_graph("3 0")
    with pytest.raises(GraphFormatError):
        load_ordering(g, io.StringIO("0 1"))
    with pytest.raises(GraphFormatError):
        load_ordering(g, io.StringIO("0 1 7"))


def test_generator_extremes():
    antichain = random_cocomp_instance(6, 0.0, 1)
    assert antichain.graph.m == 15
    chain = random_cocomp_instance(6, 1.0, 1)
    assert chain.graph.m == 0
    assert is_cocomp_ordering(chain.graph, chain.witness)


def test_generator_rejects_bad_density():
    with pytest.raises(ValueError):
        random_cocomp_instance(4, 1.5)


@given(st.integers(0, 14), st.floats(0, 1), st.integers(0, 10**6))
def test_generated_witness_is_umbrella_free(n, density, seed):
    inst = random_cocomp_instance(n, density, seed)
    assert is_cocomp_ordering(inst.graph, inst.witness)


def test_generator_is_deterministic():
    a = random_cocomp_instance(9, 0.3, 7)
    b = random_cocomp_instance(9, 0.3, 7)
    assert a.graph == b.graph and a.witness == b.witness


@pytest.mark.parametrize("seed", range(5))
def test_sparse_generator_witness(seed):
    inst = random_sparse_cocomp_instance(300, 8, seed=seed)
    assert is_cocomp_ordering(inst.graph, inst.witness)


def test_dot_marks_dashed_edges():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    dot = graph_to_dot(g, dashed=[(2, 1)])
    assert "0 -- 1;" in dot and "1 -- 2 [style=dashed];" in dot


def test_format_graph_header():
    assert format_graph(path(3)).splitlines()[0] == "3 2"
