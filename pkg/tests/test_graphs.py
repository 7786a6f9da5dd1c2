import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qorbital.duals import builtin_group, parse_element
from qorbital.dsl import build
from qorbital.errors import ResourceError
from qorbital.graphs import (Graph, acts_on, acts_on_batch, automorphism_group, automorphisms_backtrack,
                             automorphisms_naive, export_dot, frucht_graph, graph_of_orbitals,
                             invariant_graphs, orbital_preserving_group, preserves_orbitals)
from qorbital.groups import parse_cycles
from qorbital.orbitals import orbitals


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def test_graph_basics():
    X = Graph.from_one_based(4, [(1, 2), (2, 3)])
    assert X.has_edge(0, 1) and X.has_edge(1, 0) and not X.has_edge(0, 2)
    assert X.degrees() == [1, 2, 1, 0]
    assert Graph.from_json(X.to_json()) == X
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])


def test_dot_export():
    X = Graph.from_one_based(3, [(1, 2)])
    assert export_dot(X) == "graph {\n  3;\n  1 -- 2;\n}\n"


@pytest.mark.parametrize("X,order", [(cycle(4), 8), (cycle(5), 10), (Graph(4), 24), (cycle(6), 12)])
def test_automorphism_orders(X, order):
    G = automorphism_group(X)
    assert G.order == order
    assert set(G.elements) == automorphisms_naive(X) == automorphisms_backtrack(X)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.data())
def test_automorphisms_match_naive(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = [p for p in pairs if data.draw(st.booleans())]
    X = Graph(n, edges)
    assert set(automorphism_group(X).elements) == automorphisms_naive(X)


def test_bound():
    with pytest.raises(ResourceError):
        automorphism_group(Graph(40), bound=32)


def test_acts_on_s3():
    u = build("dual(S3){(12),(123)}").u
    assert acts_on(u, Graph.from_one_based(5, [(1, 2)]))
    assert not acts_on(u, Graph.from_one_based(5, [(1, 3)]))
    assert len(invariant_graphs(u)) == 8


def test_batch_agrees_with_single():
    rng = random.Random(7)
    u = build("kp{u0,x}").u
    n = u.n
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    graphs = [Graph(n, [p for p in pairs if rng.random() < 0.3]) for _ in range(40)]
    graphs += invariant_graphs(u, verify=False)
    assert acts_on_batch(u, graphs) == [acts_on(u, X) for X in graphs]


def test_orbital_preserving_group_s3():
    u = build("dual(S3){(12),(123)}").u
    orb = orbitals(u)
    sym = orbital_preserving_group(u, orb=orb)
    directed = orbital_preserving_group(u, symmetric=False, orb=orb)
    assert sym.order == 12 and sym.structure() == "Z2xS3"
    assert directed.order == 6
    assert preserves_orbitals(parse_cycles("(34)", 5), orb, symmetric=True)
    assert not preserves_orbitals(parse_cycles("(34)", 5), orb)
    assert graph_of_orbitals(orb, orb.nondiagonal()).edges == Graph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)]).edges


def test_frucht_z3():
    G = builtin_group("Z3")
    X = frucht_graph(G, [G.symbols["g"]])
    assert X.n == 18
    assert automorphism_group(X).order == 3


def test_frucht_s3_size():
    S3 = builtin_group("S3")
    X = frucht_graph(S3, [parse_element(S3, "(12)"), parse_element(S3, "(123)")])
    assert X.n == 60
    assert automorphism_group(X, bound=64).order == 6
