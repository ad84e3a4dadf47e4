import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binsplit.errors import DomainError
from binsplit.matroid import has_minor, is_isomorphic
from binsplit.multigraph import Multigraph, circuit_matroid
from binsplit.obstructions import (
    ALL_COGRAPHIC,
    NON_COGRAPHIC,
    classify_splittings,
    first_bad_split,
    inherited_trivial,
    is_cographic,
    is_graphic,
    localize_minimal,
    search_forbidden_minors,
    simplify,
    verify_minimality,
)
from binsplit.splitting import split

from test_matroid import binary_matroids


def with_edges(G, extra):
    return Multigraph.from_edges(list(G.edges) + list(extra))


def test_excluded_minors_are_not_cographic(catalog):
    for name in ("F7", "F7star", "K5", "K33"):
        verdict = is_cographic(catalog[name].matroid)
        assert not verdict and verdict.culprit == name
        assert verdict.replay(catalog[name].matroid)


def test_planar_graphs_are_cographic(catalog):
    for name in ("K4", "triangle", "cycle5", "H1", "H3"):
        assert is_cographic(catalog[name].matroid)


def test_graphicness(catalog):
    assert is_graphic(catalog["K5"].matroid) and is_graphic(catalog["K33"].matroid)
    assert not is_graphic(catalog["F7"].matroid)
    assert not is_graphic(catalog["K5"].matroid.dual())


@settings(max_examples=40, deadline=None)
@given(binary_matroids(max_elements=8))
def test_graphic_is_cographic_of_dual(M):
    assert is_graphic(M) == bool(is_cographic(M.dual()))


@settings(max_examples=40, deadline=None)
@given(binary_matroids(max_elements=8))
def test_simplify_keeps_cographicness(M):
    core, deleted, contracted = simplify(M)
    assert M.minor(deleted, contracted) == core
    assert bool(is_cographic(core)) == bool(is_cographic(M))


def test_classify_examples(catalog):
    r = classify_splittings(catalog["G4_drawn"].matroid, 3, "G4_drawn")
    assert r.classification == NON_COGRAPHIC and r.replay()
    r = classify_splittings(catalog["G6"].matroid, 3, "G6")
    assert r.non_cographic and r.replay()
    r = classify_splittings(catalog["K4"].matroid, 3, "K4")
    assert r.classification == ALL_COGRAPHIC and r.replay()
    rec = r.as_record()
    assert rec["classification"] == ALL_COGRAPHIC and rec["T"] == "-"


def test_classify_rejects_non_graphic(catalog):
    with pytest.raises(DomainError):
        classify_splittings(catalog["F7"].matroid, 2)
    with pytest.raises(DomainError):
        classify_splittings(catalog["K4"].matroid, 4)


def test_localize_keeps_obstruction(catalog):
    G = with_edges(catalog["G4_drawn"].graph, [("c", "0", "pendant")])
    M = circuit_matroid(G)
    T, verdict = first_bad_split(M, 3)
    loc = localize_minimal(M, T, verdict.culprit)
    assert loc.replay(M)
    assert "c" in loc.deleted | loc.contracted
    assert not loc.has_coloop


def test_localize_k5(catalog):
    M = catalog["K5"].matroid
    assert first_bad_split(M, 2) is None
    T, verdict = first_bad_split(M, 3)
    assert verdict.culprit == "K33"
    loc = localize_minimal(M, T, verdict.culprit)
    assert loc.case == "i" and loc.replay(M) and len(loc.minor) < len(M)


def test_localize_rejects_clean_split(catalog):
    with pytest.raises(DomainError):
        localize_minimal(catalog["K4"].matroid, ["e1", "e2"], "F7")


def test_bad_splits_persist_under_extension(catalog):
    # adding an element outside T keeps the old split as a minor of the new one
    M = catalog["G1"].matroid
    T, _ = first_bad_split(M, 2)
    bigger = circuit_matroid(with_edges(catalog["G1"].graph, [("new", "0", "1")]))
    assert not is_cographic(split(bigger, T))


def test_inherited_trivial_loop_route(catalog):
    G = with_edges(catalog["K33"].graph, [("l", "0", "0")])
    hit = inherited_trivial(circuit_matroid(G), 2)
    assert hit is not None and hit.route == "loop" and hit.replay(circuit_matroid(G))


def test_inherited_trivial_cocycle_route(catalog):
    M = catalog["K33"].matroid
    hit = inherited_trivial(M, 3)
    assert hit is not None and hit.route == "cocycle" and hit.replay(M)


def test_inherited_trivial_on_g3(catalog):
    M = catalog["G3"].matroid
    assert has_minor(M, catalog["K33"].matroid) is not None
    assert inherited_trivial(M, 2) is None
    assert inherited_trivial(M, 3) is not None


def test_listed_obstructions_are_minimal(catalog):
    for name in ("G1", "G2", "G3"):
        ok, bad = verify_minimality(catalog[name].matroid, 2)
        assert ok, (name, bad)
    for name in ("G4_drawn", "G5", "G6", "G7"):
        ok, bad = verify_minimality(catalog[name].matroid, 3)
        assert ok, (name, bad)


def test_small_search(catalog):
    res = search_forbidden_minors(2, 8)
    assert len(res) == 2
    for name in ("G1", "G2"):
        assert any(is_isomorphic(r.matroid, catalog[name].matroid) is not None for r in res)
    assert all(r.replay() and r.minimality.is_minor_minimal for r in res)


def test_search_k3_small(catalog):
    res = search_forbidden_minors(3, 7)
    assert len(res) == 2
    for name in ("G4_drawn", "G5"):
        assert any(is_isomorphic(r.matroid, catalog[name].matroid) is not None for r in res)
    assert all(r.replay() for r in res)


def test_search_rejects_bad_arguments():
    with pytest.raises(DomainError):
        search_forbidden_minors(2, 5, trivial_rule="other")
