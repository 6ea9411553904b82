import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tetris.topology import (
    IN_USE,
    RELEASED,
    UNTOUCHED,
    CouplingGraph,
    Mapping,
    RoutingError,
    find_center,
    format_coupling_graph,
    make_grid,
    make_heavy_hex,
    make_linear,
    make_sycamore,
    parse_coupling_graph,
    shortest_path,
    topology_from_name,
)


def as_nx(g: CouplingGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n_phys))
    h.add_edges_from(g.edges)
    return h


@st.composite
def connected_graphs(draw, max_nodes=12):
    n = draw(st.integers(2, max_nodes))
    seed = draw(st.integers(0, 10**6))
    tree = nx.random_labeled_tree(n, seed=seed) if hasattr(nx, "random_labeled_tree") else nx.random_tree(n, seed=seed)
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    edges = set(tree.edges()) | {e for e in extra if e[0] != e[1]}
    return CouplingGraph.from_edges(n, edges)


def test_linear_edges():
    assert make_linear(5).edges == {(0, 1), (1, 2), (2, 3), (3, 4)}


def test_grid_shape():
    g = make_grid(3, 3)
    assert g.n_phys == 9 and len(g.edges) == 12
    assert g.neighbors(4) == (1, 3, 5, 7)


def test_sycamore_64():
    g = make_sycamore(8, 8)
    assert g.n_phys == 64
    assert max(d for _, d in as_nx(g).degree()) <= 4


def test_heavy_hex_65():
    g = make_heavy_hex()
    h = as_nx(g)
    assert g.n_phys == 65
    assert max(d for _, d in h.degree()) <= 3
    assert nx.is_connected(h)
    # heavy-hex: every cycle alternates degree-3 junctions with degree-2 links
    assert sum(1 for _, d in h.degree() if d == 3) > 0
    assert nx.is_bipartite(h)


@pytest.mark.parametrize("bad", [lambda: make_linear(0), lambda: make_grid(0, 3), lambda: make_sycamore(0, 2)])
def test_zero_size_rejected(bad):
    with pytest.raises(ValueError):
        bad()


def test_graph_validation():
    with pytest.raises(ValueError):
        CouplingGraph.from_edges(3, [(0, 1)])  # disconnected
    with pytest.raises(ValueError):
        CouplingGraph.from_edges(2, [(0, 0), (0, 1)])
    with pytest.raises(ValueError):
        CouplingGraph.from_edges(2, [(0, 2)])


def test_graph_file_round_trip(tmp_path):
    g = make_grid(2, 3)
    assert parse_coupling_graph(format_coupling_graph(g)).edges == g.edges
    p = tmp_path / "dev.txt"
    p.write_text(format_coupling_graph(g))
    assert topology_from_name(str(p)).edges == g.edges


def test_graph_file_errors():
    with pytest.raises(ValueError, match="header"):
        parse_coupling_graph("0 1\n")
    with pytest.raises(ValueError, match="u v"):
        parse_coupling_graph("n 2\n0 1 2\n")


@pytest.mark.parametrize("spec, n", [("linear:8", 8), ("grid:3x3", 9), ("heavyhex", 65), ("sycamore:8x8", 64)])
def test_topology_names(spec, n):
    assert topology_from_name(spec).n_phys == n


def test_unknown_topology():
    with pytest.raises(ValueError):
        topology_from_name("torus:3")


def test_shortest_path_linear():
    assert shortest_path(make_linear(5), 0, 4) == [0, 1, 2, 3, 4]


def test_shortest_path_grid_corner_is_row_first():
    g = make_grid(3, 3)
    path = shortest_path(g, 0, 8)
    oracle = min(nx.all_shortest_paths(as_nx(g), 0, 8))
    assert path == oracle == [0, 1, 2, 5, 8]


def test_shortest_path_exclusion_disconnects():
    with pytest.raises(RoutingError):
        shortest_path(make_linear(3), 0, 2, excluded={1})


@settings(max_examples=60)
@given(connected_graphs(), st.data())
def test_shortest_path_matches_bfs_oracle(g, data):
    a = data.draw(st.integers(0, g.n_phys - 1))
    b = data.draw(st.integers(0, g.n_phys - 1).filter(lambda x: x != a))
    excluded = set(data.draw(st.lists(st.integers(0, g.n_phys - 1), max_size=3))) - {a, b}
    h = as_nx(g)
    h.remove_nodes_from(excluded)
    if not nx.has_path(h, a, b):
        with pytest.raises(RoutingError):
            shortest_path(g, a, b, excluded)
        return
    path = shortest_path(g, a, b, excluded)
    assert path == min(nx.all_shortest_paths(h, a, b))


def test_find_center_ties_take_lowest_index():
    # every node of linear(5) has summed distance 4 to {0, 4}
    center, paths = find_center(make_linear(5), [0, 4])
    assert center == 0
    assert paths == {0: [], 4: [4, 3, 2, 1, 0]}


def test_find_center_single_root():
    center, paths = find_center(make_grid(3, 3), [5])
    assert center == 5 and paths == {5: []}


def test_find_center_empty():
    with pytest.raises(ValueError):
        find_center(make_linear(3), [])


@settings(max_examples=60)
@given(connected_graphs(), st.data())
def test_find_center_is_exhaustive_minimum(g, data):
    pos = data.draw(st.sets(st.integers(0, g.n_phys - 1), min_size=1, max_size=4))
    center, paths = find_center(g, pos)
    dist = dict(nx.all_pairs_shortest_path_length(as_nx(g)))
    costs = {c: sum(dist[p][c] for p in pos) for c in range(g.n_phys)}
    best = min(costs.values())
    assert costs[center] == best
    assert center == min(c for c, v in costs.items() if v == best)
    for p, path in paths.items():
        assert len(path) == (dist[p][center] + 1 if p != center else 0)


def test_initial_mapping_follows_bfs():
    g = make_grid(3, 3)
    m = Mapping.initial(g, 4)
    assert m.as_list(4) == [0, 1, 3, 2]
    assert m.liveness(8) == UNTOUCHED and m.liveness(0) == IN_USE
    with pytest.raises(ValueError):
        Mapping.initial(make_linear(2), 3)


def test_mapping_swap_and_release():
    m = Mapping(4, {0: 0, 1: 1})
    m.swap(1, 2)
    assert m.phys(1) == 2 and m.logical_at(1) is None and m.is_zero(1)
    p = m.release(0)
    assert p == 0 and m.liveness(0) == RELEASED
    m.swap(0, 3)
    assert m.liveness(3) == RELEASED and m.liveness(0) == UNTOUCHED


def test_mapping_rejects_collisions():
    with pytest.raises(ValueError):
        Mapping(3, {0: 1, 1: 1})


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)).filter(lambda t: t[0] != t[1]), max_size=40))
def test_mapping_stays_injective_under_swaps(swaps):
    m = Mapping(6, {0: 0, 1: 2, 2: 5})
    for a, b in swaps:
        m.swap(a, b)
    placed = list(m.l2p.values())
    assert len(set(placed)) == 3
    assert all(m.logical_at(p) == q for q, p in m.l2p.items())
    assert {p for p in range(6) if m.is_zero(p)} == set(range(6)) - set(placed)
