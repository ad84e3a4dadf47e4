"""Named computational checks, each producing ``CHECK <id> PASS|FAIL <detail>`` lines."""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .catalog import CatalogEntry, load_catalog
from .gf2 import Gf2Matrix
from .matroid import BinaryMatroid, from_matrix, is_isomorphic
from .obstructions import (
    ALL_COGRAPHIC,
    classify_splittings,
    first_bad_split,
    is_cographic,
    search_forbidden_minors,
    verify_minimality,
)
from .quotients import (
    binary_extensions,
    compare_exclusion_readings,
    extend_by_column,
    graphic_quotients,
    qlemma_check,
)
from .splitting import split, split_with_element


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"CHECK {self.id} {'PASS' if self.passed else 'FAIL'} {self.detail}".rstrip()

    def as_record(self) -> dict[str, str]:
        return {"check": self.id, "status": "PASS" if self.passed else "FAIL", "detail": self.detail}


Catalog = dict[str, CatalogEntry]


# --- splitting identities ------------------------------------------------------------


def random_matroid(rng: random.Random, max_elements: int = 8) -> BinaryMatroid:
    n = rng.randint(1, max_elements)
    r = rng.randint(0, n)
    rows = [rng.getrandbits(n) for _ in range(r)]
    return from_matrix([f"e{i}" for i in range(n)], Gf2Matrix(tuple(rows), n))


def identity_failures(M: BinaryMatroid, T: frozenset[str]) -> list[str]:
    """Names of the splitting identities that fail for ``(M, T)``."""
    bad = []
    S = split(M, T)
    for x in sorted(set(M.elements) - T):
        if S.delete([x]) != split(M.delete([x]), T):
            bad.append(f"delete-outside:{x}")
        if S.contract([x]) != split(M.contract([x]), T):
            bad.append(f"contract-outside:{x}")
    for y in sorted(T):
        if S.delete([y]) != split(M.delete([y]), T - {y}):
            bad.append(f"delete-inside:{y}")
    if S.delete(T) != M.delete(T):
        bad.append("delete-all-of-T")
    a = "_a"
    while a in M.elements:
        a += "_"
    lifted = split_with_element(M, T, a)
    if lifted.delete([a]) != S or lifted.contract([a]) != M:
        bad.append("lift")
    return bad


def _cocircuit_failures(M: BinaryMatroid) -> int:
    return sum(1 for C in M.cocircuits() if split(M, C) != M)


def lemma_2_2(catalog: Catalog, random_count: int = 500, seed: int = 0, max_t: int = 3) -> list[Check]:
    cases = failures = 0
    examples: list[str] = []
    for name, entry in sorted(catalog.items()):
        M = entry.matroid
        if len(M) > 10:
            continue
        for size in range(max_t + 1):
            for T in itertools.combinations(sorted(M.elements), size):
                cases += 1
                bad = identity_failures(M, frozenset(T))
                if bad:
                    failures += 1
                    examples.append(f"{name}:{','.join(T)}:{bad[0]}")
    rng = random.Random(seed)
    for i in range(random_count):
        M = random_matroid(rng)
        T = frozenset(rng.sample(sorted(M.elements), rng.randint(0, min(max_t, len(M)))))
        cases += 1
        if identity_failures(M, T):
            failures += 1
            examples.append(f"random#{i}")
    cocircuit_bad = sum(_cocircuit_failures(e.matroid) for e in catalog.values() if len(e.matroid) <= 10)
    detail = f"cases={cases} failures={failures} cocircuit_failures={cocircuit_bad}"
    if examples:
        detail += f" first={examples[0]}"
    return [Check("lemma-2.2", failures == 0 and cocircuit_bad == 0, detail)]


# --- quotients -------------------------------------------------------------------------


def _quotient_check(
    check_id: str, base: str, expected: list[str], catalog: Catalog, exclude: str | None = None
) -> Check:
    X = catalog[exclude].matroid if exclude else None
    results = graphic_quotients(catalog[base].matroid, X, catalog=catalog)
    graphs = [n or "unnamed" for r in results for n in r.realization_names]
    replay = all(r.replay() for r in results)
    ok = replay and sorted(graphs) == sorted(expected)
    detail = (
        f"base={base} classes={len(results)} graphs={len(graphs)} "
        f"expected_graphs={len(expected)} realized={','.join(graphs)}"
    )
    return Check(check_id, ok, detail)


def lemma_3_2(catalog: Catalog) -> list[Check]:
    return [
        _quotient_check("lemma-3.2", "F7", ["H3"], catalog),
        _quotient_check("lemma-3.2", "F7star", ["H1", "H2"], catalog),
    ]


def lemma_3_3(catalog: Catalog) -> list[Check]:
    return [_quotient_check("lemma-3.3", "K5", ["H4", "H5", "H6"], catalog)]


def lemma_3_5(catalog: Catalog) -> list[Check]:
    exts = binary_extensions(catalog["K33"].matroid)
    ok = sum(qlemma_check(N, "a", catalog["K33"].matroid) for N in exts)
    return [Check("lemma-3.5", ok == len(exts), f"extensions={len(exts)} satisfied={ok}")]


def lemma_3_6(catalog: Catalog) -> list[Check]:
    checks = [_quotient_check("lemma-3.6", "K33", ["H7", "H8", "H9", "H10", "H11"], catalog, "G2")]
    by_minor, by_ext, same = compare_exclusion_readings(
        catalog["K33"].matroid, catalog["G2"].matroid, catalog=catalog
    )
    unfiltered = graphic_quotients(catalog["K33"].matroid, catalog=catalog)
    checks.append(
        Check(
            "lemma-3.6",
            same,
            f"exclusion readings agree={str(same).lower()} minor_reading={len(by_minor)} "
            f"extension_reading={len(by_ext)} unfiltered={len(unfiltered)}",
        )
    )
    return checks


# --- forward theorem checks ------------------------------------------------------------


def _display(name: str) -> str:
    return name.replace("star", "*")


def _split_iso(check_id: str, catalog: Catalog, subject: str, T: tuple[str, ...], target: str) -> Check:
    M = catalog[subject].matroid
    S = split(M, T)
    bij = is_isomorphic(S, catalog[target].matroid)
    verdict = is_cographic(S)
    ok = bij is not None and not verdict.cographic and verdict.replay(S)
    return Check(
        check_id,
        ok,
        f"{subject} T={','.join(T)} culprit={verdict.culprit or '-'} split {'' if bij is not None else 'not '}isomorphic to {_display(target)}",
    )


def extension_route(M: BinaryMatroid, T: frozenset[str], z: str = "z") -> tuple[int, int]:
    """Check the route ``split(M~, T+z) \\ z == split(M, T)`` over every column for ``z``.

    Returns ``(extensions tried, extensions whose split is non-cographic)``.
    """
    tried = bad = 0
    base = split(M, T)
    for c in range(1 << M.rank):
        ext = extend_by_column(M, z, c)
        S = split(ext, T | {z})
        tried += 1
        if S.delete([z]) == base and not is_cographic(S).cographic:
            bad += 1
    return tried, bad


def verify_theorem_forward(k: int, catalog: Catalog | None = None) -> list[Check]:
    """Confirm that each listed obstruction at level ``k`` has a non-cographic ``k``-split.

    A K4 control is expected to stay cographic for every ``T``.
    """
    catalog = catalog if catalog is not None else load_catalog()
    cid = "thm-1.2" if k == 2 else "thm-1.4"
    checks: list[Check] = []
    if k == 2:
        for name in ("G1", "G2", "G3"):
            e = catalog[name]
            rep = classify_splittings(e.matroid, 2, name, graph=e.graph)
            ok = rep.non_cographic and rep.replay()
            checks.append(Check(cid, ok, f"{name} T={','.join(sorted(rep.witness_T or ()))} culprit={rep.f_member_hit}"))
    else:
        checks.append(_split_iso(cid, catalog, "G4", ("x", "y", "z"), "F7star"))
        checks.append(_split_iso(cid, catalog, "G5", ("x", "y", "z"), "F7star"))
        checks.append(_split_iso(cid, catalog, "G6", ("x", "y", "z"), "K33"))
        checks.append(_split_iso(cid, catalog, "G7", ("x", "y", "z"), "K33"))
        for name in ("G1", "G3"):
            M = catalog[name].matroid
            hit = first_bad_split(M, 2)
            tried, bad = extension_route(M, hit[0])
            checks.append(
                Check(cid, hit is not None and bad == tried, f"{name}~ T={','.join(sorted(hit[0]))}+z extensions={tried} non_cographic={bad}")
            )
    control = classify_splittings(catalog["K4"].matroid, k, "K4", graph=catalog["K4"].graph)
    checks.append(Check(cid, control.classification == ALL_COGRAPHIC, f"K4 control expected-negative classification={control.classification}"))
    return checks


def minimality_checks(k: int, names: list[str], catalog: Catalog) -> list[Check]:
    cid = "thm-1.2" if k == 2 else "thm-1.4"
    out = []
    for name in names:
        ok, bad = verify_minimality(catalog[name].matroid, k)
        detail = f"{name} minor-minimal={str(ok).lower()}"
        if bad:
            detail += " offending=" + ",".join(f"{op}:{e}" for op, e in bad[:4])
        out.append(Check(cid, ok, detail))
    return out


def prop_5_1(catalog: Catalog) -> list[Check]:
    checks = [_split_iso("prop-5.1", catalog, "G4", ("x", "y", "z"), "F7star")]
    drawn = catalog["G4_drawn"]
    S = split(drawn.matroid, ("x", "y", "z"))
    same = drawn.matroid == catalog["G4"].matroid
    checks.append(
        Check(
            "prop-5.1",
            is_isomorphic(S, catalog["F7star"].matroid) is not None,
            f"G4_drawn equals_matrix_fixture={str(same).lower()} split "
            f"{'' if is_isomorphic(S, catalog['F7star'].matroid) is not None else 'not '}isomorphic to F7*",
        )
    )
    return checks


def thm_1_2(catalog: Catalog, max_elements: int | None = None) -> list[Check]:
    checks = verify_theorem_forward(2, catalog) + minimality_checks(2, ["G1", "G2", "G3"], catalog)
    if max_elements is not None:
        checks.append(search_check(2, max_elements, ["G1", "G2", "G3"], catalog))
    return checks


def thm_1_4(catalog: Catalog, max_elements: int | None = None) -> list[Check]:
    checks = verify_theorem_forward(3, catalog)
    checks += minimality_checks(3, ["G4", "G5", "G6", "G7"], catalog)
    if max_elements is not None:
        checks.append(search_check(3, max_elements, ["G4", "G5", "G6", "G7"], catalog))
    return checks


def search_check(k: int, max_elements: int, expected: list[str], catalog: Catalog) -> Check:
    """Compare a search's classes against the catalog fixtures that fit the budget."""
    result = search_forbidden_minors(k, max_elements)
    found = [r.matroid for r in result.reports]
    fitting = [n for n in expected if len(catalog[n].matroid) <= max_elements]
    hits = [n for n in fitting if any(is_isomorphic(catalog[n].matroid, M) is not None for M in found)]
    ok = hits == fitting and (k != 2 or len(found) == len(fitting))
    return Check(
        "thm-1.2" if k == 2 else "thm-1.4",
        ok,
        f"search k={k} max_elements={max_elements} classes={len(found)} matched={','.join(hits) or '-'} "
        f"trivial_skipped={len(result.skipped_trivial)}",
    )


VERIFIERS: dict[str, Callable[..., list[Check]]] = {
    "lemma-2.2": lemma_2_2,
    "lemma-3.2": lemma_3_2,
    "lemma-3.3": lemma_3_3,
    "lemma-3.5": lemma_3_5,
    "lemma-3.6": lemma_3_6,
    "prop-5.1": prop_5_1,
    "thm-1.2": thm_1_2,
    "thm-1.4": thm_1_4,
}


def run(check_id: str, fixtures: str | os.PathLike | None = None, **kwargs) -> list[Check]:
    catalog = load_catalog(fixtures)
    if check_id == "all":
        return [c for cid in VERIFIERS for c in run(cid, fixtures)]
    if check_id not in VERIFIERS:
        raise KeyError(check_id)
    return VERIFIERS[check_id](catalog, **kwargs)


def iter_lines(checks: list[Check]) -> Iterator[str]:
    for c in checks:
        yield c.line()
