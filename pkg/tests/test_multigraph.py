import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binsplit.errors import ResourceError, StructureError
from binsplit.matroid import is_isomorphic
from binsplit.multigraph import (
    GraphConstraints,
    Multigraph,
    blocks,
    circuit_matroid,
    cycle_edge_sets,
    enumerate_connected_multigraphs,
    graph_isomorphic,
    graph_realizations,
    has_two_edge_cut,
    is_eulerian,
    one_element_coextensions,
    one_element_extensions,
    parse_graph,
    structural_profile,
)

# connected multigraphs with loops allowed, counted by edges (an independent published sequence)
CONNECTED_COUNTS = {1: 2, 2: 4, 3: 11, 4: 30, 5: 95, 6: 328}


@st.composite
def connected_graphs(draw, max_vertices=5, max_edges=8):
    n = draw(st.integers(1, max_vertices))
    # spanning path keeps it connected, then arbitrary extra edges
    pairs = [(i, i + 1) for i in range(n - 1)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges - len(pairs)))
    edges = [(f"e{i}", u, v) for i, (u, v) in enumerate(pairs + extra)]
    return Multigraph.from_edges(edges, vertices=range(n))


def test_triangle_matroid(catalog):
    M = catalog["triangle"].matroid
    assert M.rank == 2 and len(M.circuits()) == 1


def test_k5_and_k33_matroids(catalog):
    assert (catalog["K5"].matroid.rank, len(catalog["K5"].matroid)) == (4, 10)
    assert (catalog["K33"].matroid.rank, len(catalog["K33"].matroid)) == (5, 9)


def test_eulerian_examples(catalog):
    assert is_eulerian(catalog["K5"].graph)
    assert not is_eulerian(catalog["K4"].graph)
    assert is_eulerian(catalog["eulerian_4v10e"].graph)


def test_blocks_examples(catalog):
    assert len(blocks(catalog["triangle"].graph)) == 1
    bowtie = Multigraph.from_pairs([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    assert len(blocks(bowtie)) == 2
    H5 = catalog["H5"].graph
    bl = blocks(H5)
    assert len(bl) == 2 and any(b == frozenset(H5.loops()) for b in bl)


def test_blocks_rejects_disconnected():
    G = Multigraph.from_edges([("a", 0, 1), ("b", 2, 3)])
    with pytest.raises(StructureError):
        blocks(G)


def test_two_edge_cuts(catalog):
    assert has_two_edge_cut(catalog["cycle4"].graph) is not None
    assert has_two_edge_cut(catalog["K4"].graph) is None
    assert has_two_edge_cut(catalog["A_v"].graph) is not None
    doubled = Multigraph.from_edges([("a", 0, 1), ("b", 0, 1)])
    assert has_two_edge_cut(doubled) is not None


def test_structural_profiles(catalog):
    k5 = structural_profile(catalog["K5"].graph)
    assert k5.loop_count == 0 and set(k5.parallel_class_sizes) == {1}
    assert k5.block_count == 1 and k5.eulerian and k5.two_edge_cut is None
    assert k5.admissible(require_eulerian=True)
    h5 = structural_profile(catalog["H5"].graph)
    assert h5.loop_count == 1 and h5.block_count == 2 and h5.two_edge_cut is None
    assert h5.admissible()
    path = Multigraph.from_pairs([(0, 1), (1, 2)])
    assert not structural_profile(path).admissible()


def test_coextension_counts(catalog):
    def no_cut(G):
        return has_two_edge_cut(G) is None

    h1 = one_element_coextensions(catalog["H1"].graph, no_cut)
    assert len(h1) == 1 and graph_isomorphic(h1[0], catalog["C1"].graph)
    h3 = one_element_coextensions(catalog["H3"].graph, no_cut)
    assert len(h3) == 5
    for name in ("C4", "C5", "C6", "C7", "C8"):
        assert any(is_isomorphic(circuit_matroid(G), catalog[name].matroid) for G in h3)


def test_h2_coextensions_give_one_class(catalog):
    # the second drawn coextension has an extra edge and is not a single-edge coextension
    h2 = one_element_coextensions(catalog["H2"].graph, lambda G: has_two_edge_cut(G) is None)
    assert len(h2) == 1 and graph_isomorphic(h2[0], catalog["C3"].graph)
    assert len(catalog["C2"].graph) == len(catalog["H2"].graph) + 2


def test_coextension_soundness(catalog):
    for name in ("H1", "H2", "H3", "K4"):
        G = catalog[name].graph
        for Gp in one_element_coextensions(G, allow_coloops=True, up_to="graph"):
            assert is_isomorphic(circuit_matroid(Gp).contract(["e"]), circuit_matroid(G)) is not None


def test_extensions(catalog):
    tri = catalog["triangle"].graph
    assert len(one_element_extensions(tri, "loop")) == 1
    assert len(one_element_extensions(tri, "parallel")) == 1
    loops = one_element_extensions(catalog["A_ii"].graph, "loop")
    for name in ("H9", "H10"):
        assert any(graph_isomorphic(G, catalog[name].graph) for G in loops)
    for G in one_element_extensions(catalog["K4"].graph, "any"):
        assert is_isomorphic(circuit_matroid(G).delete(["e"]), catalog["K4"].matroid) is not None


def test_simple_two_connected_counts():
    C = GraphConstraints
    for edges, expected in ((8, 2), (7, 3), (6, 2), (5, 1)):
        got = list(enumerate_connected_multigraphs(edges, C(vertices=5, edges=edges, simple=True, two_connected=True)))
        assert len(got) == expected


def test_named_simple_graphs_found(catalog):
    got = list(enumerate_connected_multigraphs(8, GraphConstraints(vertices=5, edges=8, simple=True, two_connected=True)))
    for name in ("A_i", "A_ii"):
        assert sum(graph_isomorphic(G, catalog[name].graph) is not None for G in got) == 1


@pytest.mark.parametrize("edges,count", sorted(CONNECTED_COUNTS.items()))
def test_connected_multigraph_counts(edges, count):
    got = [G for G in enumerate_connected_multigraphs(edges) if len(G) == edges]
    assert len(got) == count
    assert all(G.is_connected() for G in got)


def test_enumeration_guard():
    with pytest.raises(ResourceError):
        next(enumerate_connected_multigraphs(11))


def test_graph_isomorphism_examples(catalog):
    K4 = catalog["K4"].graph
    relabelled = Multigraph.from_edges([(f"x{lab}", f"v{u}", f"v{v}") for lab, u, v in reversed(K4.edges)])
    assert graph_isomorphic(K4, relabelled) is not None
    assert graph_isomorphic(K4, catalog["K33"].graph) is None
    assert graph_isomorphic(catalog["C1"].graph, catalog["G2"].graph) is not None


def test_graph_iso_implies_matroid_iso(catalog):
    graphs = [(n, e) for n, e in sorted(catalog.items()) if e.graph is not None]
    for (a, ea), (b, eb) in itertools.combinations(graphs, 2):
        if len(ea.graph) == len(eb.graph) and graph_isomorphic(ea.graph, eb.graph) is not None:
            assert is_isomorphic(ea.matroid, eb.matroid) is not None, (a, b)
    # the converse fails: a loop moved to another vertex
    assert graph_isomorphic(catalog["H5"].graph, catalog["H6"].graph) is None
    assert is_isomorphic(catalog["H5"].matroid, catalog["H6"].matroid) is not None


def test_parse_round_trip(catalog):
    G = catalog["H5"].graph
    name, back = parse_graph(G.to_text("H5"))
    assert name == "H5" and back.edges == G.edges


@settings(max_examples=60, deadline=None)
@given(connected_graphs())
def test_circuits_are_cycles_and_rank(G):
    M = circuit_matroid(G)
    assert M.rank == len(G.vertices) - 1
    assert M.circuits() == cycle_edge_sets(G)


@settings(max_examples=40, deadline=None)
@given(connected_graphs(max_vertices=5, max_edges=7))
def test_realizations_reproduce_matroid(G):
    M = circuit_matroid(G)
    found = graph_realizations(M)
    assert found and all(circuit_matroid(H) == M for H in found)
    assert any(graph_isomorphic(G, H) is not None for H in found)
