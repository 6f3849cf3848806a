import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import laplacian_by_definition, strongly_connected
from rotorrouter.graph import (
    FIXTURES,
    G1,
    G2,
    G3,
    G4,
    Digraph,
    GraphError,
    bidirected,
    directed_cycle,
    generate,
    laplacian,
    parse_digraph,
    random_digraph,
    rotate,
    serialize_digraph,
)


def test_parse_two_cycle():
    assert parse_digraph("n 2\n0: 1\n1: 0") == G1


def test_parse_keeps_rotor_order():
    D = parse_digraph("n 3\n0: 1\n1: 0 2\n2: 0")
    assert D == G3
    assert D.out[1] == (0, 2)


def test_parse_comments_and_blank_lines():
    text = "# a comment\n\nn 3\n# another\n2: 0\n0: 1\n1: 0 2\n"
    assert parse_digraph(text) == G3


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("n 2\n0: 0 1\n1: 0", "self-loop at vertex 0"),
        ("n 2\n0: 1\n1: 5", "line 3, column 4: vertex 5 out of range"),
        ("n 3\n0: 1\n1: 0", "missing out-edge line for vertex 2"),
        ("n 3\n0: 1\n1: 0\n2: 0", "not strongly connected"),
        ("n 2\n0 1\n1: 0", "line 2, column 1"),
        ("n two\n0: 1", "bad vertex count"),
        ("n 2\n0: x\n1: 0", "line 2, column 4: bad head"),
        ("n 2\n0: 1\n0: 1\n1: 0", "duplicate line for vertex 0"),
        ("n 1\n0:", "at least 2 vertices"),
        ("", "missing 'n <count>'"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(GraphError, match=fragment):
        parse_digraph(text)


def test_vertex_without_out_edges_rejected():
    with pytest.raises(GraphError, match="no out-edge"):
        parse_digraph("n 2\n0: 1\n1:")


def test_laplacian_fixtures():
    assert laplacian(G1) == [[-1, 1], [1, -1]]
    assert laplacian(G3) == [[-1, 1, 1], [1, -2, 0], [0, 1, -1]]
    L4 = laplacian(G4)
    assert all(L4[i][i] == -2 for i in range(3))
    assert all(L4[i][j] == 1 for i in range(3) for j in range(3) if i != j)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_laplacian_matches_definition(name):
    D = FIXTURES[name]
    assert laplacian(D) == laplacian_by_definition(D.out)


def test_rotate():
    assert rotate(G3, 1, 0) == 1
    assert rotate(G3, 1, 1) == 0
    assert rotate(G1, 0, 0) == 0
    with pytest.raises(IndexError):
        rotate(G3, 1, 2)


def test_degree_accessors():
    assert G3.outdegrees == (1, 2, 1)
    assert [G3.indeg(v) for v in range(3)] == [2, 1, 1]
    assert G3.mult(1, 2) == 1 and G3.mult(2, 1) == 0
    assert G3.in_neighbors(0) == {1, 2}
    assert G3.out_neighbors(1) == {0, 2}
    assert G3.m == 4
    D = Digraph(2, ((1, 1), (0,)))
    assert D.mult(0, 1) == 2


def test_generators():
    assert directed_cycle(3) == G2
    assert generate("directed_cycle", 3) == G2
    assert bidirected([(0, 1), (1, 2), (2, 0)]).outdegrees == (2, 2, 2)
    assert generate("random", 5, 4, seed=1) == generate("random", 5, 4, seed=1)
    with pytest.raises(GraphError):
        directed_cycle(1)
    with pytest.raises(GraphError):
        bidirected([(0, 0), (0, 1)])
    with pytest.raises(GraphError):
        generate("nope")


def test_random_seeds_differ():
    graphs = {random_digraph(5, 4, s) for s in range(20)}
    assert len(graphs) > 1


def test_digraph_is_hashable_and_frozen():
    with pytest.raises(AttributeError):
        G3.n = 4
    assert hash(G3) == hash(parse_digraph(serialize_digraph(G3)))


@settings(max_examples=150, deadline=None)
@given(n=st.integers(2, 7), extra=st.integers(0, 8), seed=st.integers(0, 2**64 - 1))
def test_random_graphs_valid_and_roundtrip(n, extra, seed):
    D = random_digraph(n, extra, seed)
    assert strongly_connected(D.out)
    assert all(v not in D.out[v] for v in range(n))
    assert sum(D.outdegrees) == sum(D.indeg(v) for v in range(n)) == n + extra
    assert parse_digraph(serialize_digraph(D, comment="seed")) == D
    L = laplacian(D)
    assert all(sum(L[i][j] for i in range(n)) == 0 for j in range(n))
