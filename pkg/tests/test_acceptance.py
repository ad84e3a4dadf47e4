"""Acceptance criteria, one test each.

Every test records a ``CRITERION <n> PASS|FAIL <detail>`` line, shown in the
pytest terminal summary. Run this file directly to print the lines without pytest.
"""

import functools
import itertools
import sys
import time

import pytest

from binsplit.catalog import load_catalog
from binsplit.matroid import has_minor, is_isomorphic
from binsplit.multigraph import (
    GraphConstraints,
    circuit_matroid,
    enumerate_connected_multigraphs,
    graph_isomorphic,
    has_two_edge_cut,
    one_element_coextensions,
)
from binsplit.obstructions import (
    classify_splittings,
    first_bad_split,
    inherited_trivial,
    is_cographic,
    is_graphic,
    localize_minimal,
    search_forbidden_minors,
)
from binsplit.quotients import graphic_quotients, realization_count
from binsplit import verification

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

SEARCH_BUDGET = 10
FULL_SEARCH_LIMIT = 30 * 60


@functools.lru_cache(maxsize=None)
def catalog():
    return load_catalog()


@functools.lru_cache(maxsize=None)
def search(k, max_elements=SEARCH_BUDGET):
    start = time.perf_counter()
    result = search_forbidden_minors(k, max_elements)
    return result, time.perf_counter() - start


def record(n, passed, detail):
    line = f"CRITERION {n} {'PASS' if passed else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert passed, line


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def iso(a, b):
    return is_isomorphic(a, b) is not None


# --- independent planarity oracle: Kuratowski minors found on the graph itself ---------


def _simple_edges(edges):
    return frozenset(frozenset(e) for e in edges if len(set(e)) == 2)


def _is_kuratowski(edges):
    verts = set().union(*edges) if edges else set()
    if len(verts) == 5 and len(edges) == 10:
        return True
    if len(verts) == 6 and len(edges) == 9:
        degree = {v: sum(v in e for e in edges) for v in verts}
        if set(degree.values()) == {3}:
            # 3-regular on six vertices with no triangle is K3,3
            return not any(
                frozenset((a, b)) in edges and frozenset((b, c)) in edges and frozenset((a, c)) in edges
                for a, b, c in itertools.combinations(sorted(verts), 3)
            )
    return False


def planar(G):
    seen = set()

    def visit(edges):
        if edges in seen or len(edges) < 9:
            return False
        seen.add(edges)
        if _is_kuratowski(edges):
            return True
        for e in edges:
            if visit(edges - {e}):
                return True
            u, v = tuple(e)
            merged = {frozenset(u if x == v else x for x in f) for f in edges - {e}}
            if visit(_simple_edges(merged)):
                return True
        return False

    return not visit(_simple_edges((u, v) for _, u, v in G.edges))


# --- criteria ---------------------------------------------------------------------------


def test_criterion_1_g4_split_is_dual_fano():
    cat = catalog()
    S, elapsed = timed(lambda: verification.split(cat["G4"].matroid, ("x", "y", "z")))
    ok = iso(S, cat["F7star"].matroid) and elapsed < 1
    record(1, ok, f"split(G4,{{x,y,z}})~F7star={iso(S, cat['F7star'].matroid)} time={elapsed:.3f}s")


def test_criterion_2_companion_splittings():
    cat = catalog()
    checks, elapsed = timed(lambda: verification.verify_theorem_forward(3, cat))
    targets = {"G5": "F7star", "G6": "K33", "G7": "K33"}
    direct = all(
        iso(verification.split(cat[n].matroid, ("x", "y", "z")), cat[t].matroid) for n, t in targets.items()
    )
    ok = direct and all(c.passed for c in checks) and elapsed < 10
    record(2, ok, f"G5/G6/G7 splits match={direct} " + "; ".join(c.detail for c in checks) + f" time={elapsed:.1f}s")


def test_criterion_3_quotient_counts():
    cat = catalog()
    expected = {"F7": (1, ["H3"]), "F7star": (2, ["H1", "H2"]), "K5": (3, ["H4", "H5", "H6"]),
                "K33": (5, ["H7", "H8", "H9", "H10", "H11"])}
    parts, ok = [], True
    start = time.perf_counter()
    for base, (count, names) in expected.items():
        exclude = cat["G2"].matroid if base == "K33" else None
        results = graphic_quotients(cat[base].matroid, exclude, catalog=cat)
        graphs = sorted(n or "unnamed" for r in results for n in r.realization_names)
        good = realization_count(results) == count and all(r.replay() for r in results)
        ok &= good
        parts.append(f"{base}: graphs={realization_count(results)}/{count} classes={len(results)} [{','.join(graphs)}]")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 30
    record(3, ok, "; ".join(parts) + f" time={elapsed:.1f}s")


def test_criterion_4_k33_lift_property():
    checks, elapsed = timed(lambda: verification.lemma_3_5(catalog()))
    ok = all(c.passed for c in checks) and elapsed < 5
    record(4, ok, checks[0].detail + f" time={elapsed:.2f}s")


def test_criterion_5_splitting_identities():
    checks, elapsed = timed(lambda: verification.lemma_2_2(catalog(), random_count=500, max_t=3))
    ok = all(c.passed for c in checks) and elapsed < 120
    record(5, ok, "; ".join(c.detail for c in checks) + f" time={elapsed:.1f}s")


def test_criterion_6_excluded_minor_classifier():
    cat = catalog()
    start = time.perf_counter()
    fset = {n: bool(is_cographic(cat[n].matroid)) for n in ("F7", "F7star", "K5", "K33")}
    graphs = [e for e in cat.values() if e.graph is not None]
    planar_names = [e.name for e in graphs if planar(e.graph)]
    agree = all(bool(is_cographic(e.matroid)) == (e.name in planar_names) for e in graphs)
    enumerated = list(enumerate_connected_multigraphs(6))
    graphic = all(is_graphic(e.matroid) for e in graphs) and all(is_graphic(circuit_matroid(G)) for G in enumerated)
    elapsed = time.perf_counter() - start
    ok = not any(fset.values()) and agree and graphic and elapsed < 30
    record(
        6,
        ok,
        f"F-set cographic={fset} planar_graphs={len(planar_names)}/{len(graphs)} cographic_iff_planar={agree} "
        f"graphic_on_{len(graphs) + len(enumerated)}_graphs={graphic} time={elapsed:.1f}s",
    )


def test_criterion_7_enumeration_counts():
    start = time.perf_counter()
    cases = [
        (GraphConstraints(vertices=5, edges=8, simple=True, two_connected=True), 2),
        (GraphConstraints(vertices=5, edges=7, simple=True, two_connected=True), 3),
        (GraphConstraints(vertices=5, edges=6, simple=True, two_connected=True), 2),
        (GraphConstraints(vertices=5, edges=5, simple=True, two_connected=True), 1),
        # "five distinct 2-cycles": edge multiplicity at most two
        (GraphConstraints(vertices=4, edges=10, max_loops=0, max_multiplicity=2, eulerian=True), 1),
        (GraphConstraints(vertices=4, edges=9, max_loops=0, max_multiplicity=2, eulerian=True), 1),
    ]
    parts, ok = [], True
    for c, want in cases:
        got = list(enumerate_connected_multigraphs(c.edges, c))
        ok &= len(got) == want
        parts.append(f"{c.vertices}v/{c.edges}e{' eulerian' if c.eulerian else ''}={len(got)}/{want}")
    cat = catalog()
    (g10,) = enumerate_connected_multigraphs(10, cases[4][0])
    (g9,) = enumerate_connected_multigraphs(9, cases[5][0])
    h5_core = type(g9).from_edges([e for e in cat["H5"].graph.edges if e[1] != e[2]])
    named = graph_isomorphic(g10, cat["eulerian_4v10e"].graph) is not None and graph_isomorphic(g9, h5_core) is not None
    elapsed = time.perf_counter() - start
    ok &= named and elapsed < 60
    record(7, ok, " ".join(parts) + f" matches_fixtures={named} time={elapsed:.1f}s")


def _tilde_g1(M, cat):
    """A single-element extension of M(G1): same rank, one element more."""
    G1 = cat["G1"].matroid
    return len(M) == len(G1) + 1 and M.rank == G1.rank and any(iso(M.delete([z]), G1) for z in M.elements)


def test_criterion_8_theorem_search():
    cat = catalog()
    r2, t2 = search(2)
    found2 = [r.matroid for r in r2.reports]
    want2 = ["G1", "G2", "G3"]
    k2_ok = len(found2) == 3 and all(any(iso(cat[n].matroid, M) for M in found2) for n in want2)

    r3, t3 = search(3)
    fixtures = {n: e.matroid for n, e in cat.items() if len(e.matroid) <= SEARCH_BUDGET}
    labels = []
    for rep in r3.reports:
        names = sorted(n for n, F in fixtures.items() if len(F) == len(rep.matroid) and iso(F, rep.matroid))
        if _tilde_g1(rep.matroid, cat):
            names.append("G1~")
        labels.append("/".join(names) or f"unlisted({len(rep.matroid)} elements, coloop={rep.minimality.has_coloop})")
    hit = lambda name: any(name in lab.split("/") for lab in labels)
    # the G3 extension has one element more than the budget allows
    g3_tilde_size = len(cat["G3"].matroid) + 1
    required = ["G4", "G6", "G7", "G1~"] + (["G3~"] if g3_tilde_size <= SEARCH_BUDGET else [])
    k3_ok = all(hit(n) for n in required) and t3 <= FULL_SEARCH_LIMIT
    g5 = "found" if hit("G5") else "absent"
    g2_g5 = has_minor(cat["G2"].matroid, cat["G5"].matroid) is not None
    g5_g2 = has_minor(cat["G5"].matroid, cat["G2"].matroid) is not None
    detail = (
        f"k=2: classes={len(found2)} matched={k2_ok} time={t2:.0f}s; "
        f"k=3: classes={len(r3.reports)} [{'; '.join(labels)}] G3~ elements={g3_tilde_size} (beyond budget) "
        f"G5 verdict={g5} G5<=G2={g2_g5} G2<=G5={g5_g2} time={t3:.0f}s"
    )
    record(8, k2_ok and k3_ok, detail)


def test_criterion_9_coextension_counts():
    cat = catalog()
    start = time.perf_counter()
    no_cut = lambda G: has_two_edge_cut(G) is None
    expected = {"H1": ["C1"], "H2": ["C2", "C3"], "H3": ["C4", "C5", "C6", "C7", "C8"]}
    parts, ok = [], True
    for base, names in expected.items():
        got = one_element_coextensions(cat[base].graph, no_cut)
        matched = [n for n in names if any(iso(circuit_matroid(G), cat[n].matroid) for G in got)]
        good = len(got) == len(names) and matched == names
        ok &= good
        parts.append(f"{base}: {len(got)}/{len(names)} matched={','.join(matched) or '-'}")
    c1_g2 = graph_isomorphic(cat["C1"].graph, cat["G2"].graph) is not None
    parts.append(f"C1~G2={c1_g2} C2 edges={len(cat['C2'].graph)} H2 edges={len(cat['H2'].graph)}")
    elapsed = time.perf_counter() - start
    ok &= c1_g2 and elapsed < 60
    record(9, ok, "; ".join(parts) + f" time={elapsed:.1f}s")


def test_criterion_10_everything_replays():
    cat = catalog()
    replayed = failed = 0

    def tally(ok):
        nonlocal replayed, failed
        replayed += 1
        failed += not ok

    for k in (2, 3):
        result, _ = search(k)
        for rep in result.reports + result.skipped_trivial:
            tally(rep.replay())
            hit = inherited_trivial(rep.matroid, k)
            if hit is not None:
                tally(hit.replay(rep.matroid))
    for entry in cat.values():
        M = entry.matroid
        verdict = is_cographic(M)
        tally(verdict.replay(M))
        if entry.graph is None:
            continue
        for k in (1, 2, 3):
            rep = classify_splittings(M, k, entry.name, graph=entry.graph)
            tally(rep.replay())
            if rep.non_cographic and k == 3:
                loc = localize_minimal(M, rep.witness_T, rep.f_member_hit)
                tally(loc.replay(M))
    for host, pattern in (("G2", "G5"), ("G3", "K33"), ("H3", "F7")):
        w = has_minor(cat[host].matroid, cat[pattern].matroid)
        if w is not None:
            tally(w.replay(cat[host].matroid, cat[pattern].matroid))
    for base in ("F7", "F7star", "K5", "K33"):
        for r in graphic_quotients(cat[base].matroid, catalog=cat):
            tally(r.replay())
    record(10, failed == 0, f"replayed={replayed} failures={failed}")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    tests.sort(key=lambda f: int(f.__name__.split("_")[2]))
    status = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            status = 1
    sys.exit(status)
