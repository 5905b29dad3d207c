import pytest

from zmsplines.arith import factorize
from zmsplines.graph import (
    ConnectivityError,
    EdgeLabeledGraph,
    GraphError,
    add_star,
    canonical_edges,
    complete_from_labels,
    complete_graph,
    edge_at,
    edge_index,
    path_edges,
    r,
    spanning_subgraph,
    star_edges,
    wheel_edges,
)


def test_r():
    assert [r(n) for n in range(1, 7)] == [0, 1, 3, 6, 10, 15]


@pytest.mark.parametrize("n", range(2, 13))
def test_edge_index_bijection(n):
    idx = sorted(edge_index(i, j) for j in range(1, n + 1) for i in range(1, j))
    assert idx == list(range(1, r(n) + 1))
    for k in range(1, r(n) + 1):
        assert edge_index(*edge_at(k)) == k


def test_first_indices():
    assert [edge_index(*e) for e in [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]] == [1, 2, 3, 4, 5, 6]
    assert edge_index(1, 5) == 7 and edge_index(2, 5) == 8 and edge_index(3, 5) == 9 and edge_index(4, 5) == 10
    assert canonical_edges(4) == [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]


def test_complete_from_labels_triangle():
    g = complete_from_labels(3, [4, 6, 10], factorize(120))
    assert g.label(1, 2) == 4 and g.label(1, 3) == 6 and g.label(2, 3) == 10
    # 6 is not a divisor of 1000: stored as the generator gcd(6, 1000)
    g = complete_from_labels(3, [4, 6, 10], factorize(1000))
    assert g.complete_labels() == [4, 2, 10]


def test_complete_from_labels_k4_k5():
    ctx = factorize(2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29 * 31)
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    g = complete_from_labels(5, primes, ctx)
    assert (g.label(1, 4), g.label(2, 4), g.label(3, 4)) == (7, 11, 13)
    assert g.label(1, 5) == primes[6] and g.label(4, 5) == primes[9]
    assert g.complete_labels() == primes


def test_complete_from_labels_errors():
    ctx = factorize(12)
    with pytest.raises(GraphError):
        complete_from_labels(3, [2, 3], ctx)
    with pytest.raises(GraphError):
        complete_from_labels(3, [2, 3, 12], ctx)
    with pytest.raises(GraphError):
        complete_from_labels(3, [2, 3, 1], ctx)
    with pytest.raises(GraphError):
        complete_from_labels(2, [2], ctx)


def test_labels_canonicalised():
    g = complete_from_labels(3, [10, 3, 5], factorize(15))
    assert g.complete_labels() == [5, 3, 5]


def test_add_star_matches_concatenated_labels():
    ctx = factorize(2**6 * 3**3)
    base = [2, 4, 8, 3, 6, 12]
    star = [9, 18, 36, 27]
    g = add_star(complete_from_labels(4, base, ctx), star)
    assert g == complete_from_labels(5, base + star, ctx)
    assert len(g.edges) == 10
    k4 = add_star(complete_from_labels(3, base[:3], ctx), base[3:])
    assert len(k4.edges) == 6 and k4 == complete_from_labels(4, base, ctx)


def test_add_star_constant_labels_and_errors():
    ctx = factorize(6)
    g = add_star(complete_graph(2, [2], ctx), [3, 3])
    assert g.label(1, 3) == 3 and g.label(2, 3) == 3
    with pytest.raises(GraphError):
        add_star(g, [2, 2])
    path = spanning_subgraph(g, [(1, 2), (2, 3)])
    with pytest.raises(GraphError):
        add_star(path, [2, 2, 2])


def test_spanning_subgraphs():
    ctx = factorize(64)
    g = complete_from_labels(5, [2] * 10, ctx)
    w = spanning_subgraph(g, wheel_edges(5, 1))
    assert len(w.edges) == 8
    assert set(w.edges) == {(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (3, 4), (4, 5), (2, 5)}
    s = spanning_subgraph(g, star_edges(5, 1))
    assert s.edges == [(1, 2), (1, 3), (1, 4), (1, 5)]
    p = spanning_subgraph(g, path_edges([1, 2, 3, 4, 5]))
    assert len(p.edges) == 4 and p.n == 5
    w4 = spanning_subgraph(complete_from_labels(4, [2] * 6, ctx), wheel_edges(4, 1))
    assert set(w4.edges) == {(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (2, 4)}


def test_spanning_subgraph_preserves_labels():
    ctx = factorize(2**11)
    labels = [2**k for k in range(1, 11)]
    g = complete_from_labels(5, labels, ctx)
    sub = spanning_subgraph(g, [(1, 5), (2, 5), (3, 4), (4, 5)])
    for e in sub.edges:
        assert sub.labels[e] == g.labels[e]


def test_disconnected_rejected():
    ctx = factorize(6)
    g = complete_from_labels(4, [2] * 6, ctx)
    with pytest.raises(ConnectivityError):
        spanning_subgraph(g, [(1, 2), (3, 4)])
    with pytest.raises(GraphError):
        spanning_subgraph(g, [(1, 5)])


def test_loops_and_duplicates():
    ctx = factorize(6)
    with pytest.raises(GraphError):
        EdgeLabeledGraph(ctx, 2, {(1, 1): 2, (1, 2): 2})
    with pytest.raises(GraphError):
        EdgeLabeledGraph(ctx, 2, {(1, 2): 2, (2, 1): 3})
