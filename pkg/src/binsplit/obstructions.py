"""Cographic tests, split classification and the excluded-minor search.

A binary matroid is cographic exactly when it has none of F7, F7*, M(K5),
M(K3,3) as a minor. All four are 3-connected, so loops, coloops and all but
one element of each parallel or series class can be removed first without
changing the answer; most matroids met by the search shrink below seven
elements at that stage.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

from .errors import DomainError, ResourceError
from .gf2 import Gf2Matrix
from .matroid import (
    BinaryMatroid,
    MinorWitness,
    find_minor,
    from_matrix,
    invariant_signature,
    is_isomorphic,
)
from .multigraph import Multigraph, circuit_matroid, grow_connected
from .splitting import split

EXCLUDED_NAMES = ("F7", "F7star", "K5", "K33")
TRIVIAL_NAMES = ("K5", "K33")
MAX_SEARCH_ELEMENTS = 11


@lru_cache(maxsize=1)
def excluded_minors() -> dict[str, BinaryMatroid]:
    """The four excluded minors for cographic binary matroids, built from scratch."""
    fano = from_matrix(
        [str(i) for i in range(1, 8)],
        Gf2Matrix.from_columns([c for c in range(1, 8)], 3),
    )
    k5 = Multigraph.from_pairs(itertools.combinations(range(5), 2))
    k33 = Multigraph.from_pairs((a, b) for a in range(3) for b in range(3, 6))
    return {
        "F7": fano,
        "F7star": fano.dual(),
        "K5": circuit_matroid(k5),
        "K33": circuit_matroid(k33),
    }


# --- cographic test ---------------------------------------------------------------


def simplify(M: BinaryMatroid) -> tuple[BinaryMatroid, frozenset[str], frozenset[str]]:
    """Strip loops, coloops and redundant parallel/series elements.

    Returns ``(core, deleted, contracted)`` with ``core == M \\ deleted / contracted``.
    Within a parallel or series class the first label survives.
    """
    deleted: set[str] = set()
    contracted: set[str] = set()
    while True:
        drop = _redundant(M)
        if drop:
            deleted |= drop
            M = M.delete(drop)
            continue
        con = _redundant(M.dual())
        if con:
            contracted |= con
            M = M.contract(con)
            continue
        return M, frozenset(deleted), frozenset(contracted)


def _redundant(M: BinaryMatroid) -> set[str]:
    """Loops plus every non-first member of each parallel class."""
    out = set()
    seen: set[int] = set()
    for e, c in sorted(zip(M.elements, M.columns)):
        if c == 0 or c in seen:
            out.add(e)
        else:
            seen.add(c)
    return out


@dataclass(frozen=True)
class CographicVerdict:
    cographic: bool
    culprit: str | None = None
    witness: MinorWitness | None = None

    def __bool__(self) -> bool:
        return self.cographic

    def replay(self, M: BinaryMatroid) -> bool:
        """Re-check the culprit witness against ``M``."""
        if self.cographic:
            return self.culprit is None
        return self.witness.replay(M, excluded_minors()[self.culprit])


def is_cographic(M: BinaryMatroid, members: Iterable[str] = EXCLUDED_NAMES) -> CographicVerdict:
    """Excluded-minor test; a negative verdict carries the culprit and a minor witness."""
    core, deleted, contracted = simplify(M)
    if len(core) < 7:
        return CographicVerdict(True)
    pool = excluded_minors()
    for name in members:
        F = pool[name]
        if len(F) > len(core) or F.rank > core.rank or F.corank > core.corank:
            continue
        w = find_minor(core, F)
        if w is not None:
            full = MinorWitness(w.deleted | deleted, w.contracted | contracted, w.bijection)
            return CographicVerdict(False, name, full)
    return CographicVerdict(True)


def is_graphic(M: BinaryMatroid) -> bool:
    return bool(is_cographic(M.dual()))


def trivial_witness(M: BinaryMatroid) -> tuple[str, MinorWitness] | None:
    """An ``M(K5)`` or ``M(K3,3)`` minor of ``M``, if any."""
    verdict = is_cographic(M, TRIVIAL_NAMES)
    if verdict.cographic:
        return None
    return verdict.culprit, verdict.witness


@dataclass(frozen=True)
class InheritedTrivial:
    """A K5 or K3,3 minor of ``M`` that survives splitting at ``T`` unchanged.

    ``route`` is ``"cocycle"`` when ``T`` minus ``deleted`` is a cocycle of
    ``M \\ deleted`` (so the added row is redundant there) and ``"loop"`` when
    ``deleted`` is a single loop lying in ``T`` (contracting it removes the
    added row again). Either way ``M \\ deleted`` is a minor of the split.
    """

    T: frozenset[str]
    deleted: frozenset[str]
    route: str
    member: str
    witness: MinorWitness

    def replay(self, M: BinaryMatroid) -> bool:
        S = split(M, self.T)
        if self.route == "cocycle":
            reduced = S.delete(self.deleted)
        else:
            (t,) = self.deleted
            if t not in self.T or t not in M.loops():
                return False
            reduced = S.contract([t])
        base = M.delete(self.deleted)
        if reduced != base:
            return False
        return self.witness.replay(base, excluded_minors()[self.member])


def _cocycle_masks(M: BinaryMatroid) -> list[int]:
    out = [0]
    for r in M.rep.rows:
        out += [v ^ r for v in out]
    return out


def inherited_trivial(M: BinaryMatroid, k: int) -> InheritedTrivial | None:
    """Whether some ``k``-split of ``M`` is non-cographic only because ``M`` already was.

    This is the narrower reading of the trivial family used by the search: a
    matroid counts as trivial when a K5 or K3,3 minor of ``M`` passes into
    ``M_T`` untouched for some ``|T| = k``.
    """
    if len(M) < k:
        return None
    labels = sorted(M.elements)
    for t in sorted(M.loops()):
        hit = trivial_witness(M.delete([t]))
        if hit is not None:
            others = [e for e in labels if e != t][: k - 1]
            return InheritedTrivial(frozenset([t, *others]), frozenset([t]), "loop", hit[0], hit[1])
    cocycles = _cocycle_masks(M)
    for size in range(0, len(M) - 9 + 1):
        for S in itertools.combinations(labels, size):
            ms = M.mask(S)
            D = next((d for d in cocycles if bin(d ^ ms).count("1") == k), None)
            if D is None:
                continue
            hit = trivial_witness(M.delete(S))
            if hit is not None:
                return InheritedTrivial(M.labels_of(D ^ ms), frozenset(S), "cocycle", hit[0], hit[1])
    return None


# --- classification of splittings ------------------------------------------------


@dataclass(frozen=True)
class Minimality:
    has_coloop: bool
    has_2cocircuit: bool
    trivial_family: bool
    is_minor_minimal: bool | None = None
    inherited_trivial: bool | None = None

    def as_record(self) -> dict[str, str]:
        mm = "unknown" if self.is_minor_minimal is None else str(self.is_minor_minimal).lower()
        return {
            "has_coloop": str(self.has_coloop).lower(),
            "has_2cocircuit": str(self.has_2cocircuit).lower(),
            "trivial_family": str(self.trivial_family).lower(),
            "minor_minimal": mm,
            "inherited_trivial": "unknown" if self.inherited_trivial is None else str(self.inherited_trivial).lower(),
        }


NON_COGRAPHIC = "non-cographic"
ALL_COGRAPHIC = "cographic-for-all-T"


@dataclass(frozen=True)
class ObstructionReport:
    subject: str
    t_size: int
    witness_T: frozenset[str] | None
    classification: str
    f_member_hit: str | None
    f_witness: MinorWitness | None
    minimality: Minimality | None
    matroid: BinaryMatroid = field(compare=False, repr=False)
    graph: Multigraph | None = field(default=None, compare=False, repr=False)

    @property
    def non_cographic(self) -> bool:
        return self.classification == NON_COGRAPHIC

    def replay(self) -> bool:
        """Recompute the classification from the stored witnesses."""
        M = self.matroid
        if self.non_cographic:
            if self.witness_T is None or len(self.witness_T) != self.t_size:
                return False
            F = excluded_minors()[self.f_member_hit]
            return self.f_witness.replay(split(M, self.witness_T), F)
        return first_bad_split(M, self.t_size) is None

    def as_record(self) -> dict[str, str]:
        rec = {
            "subject": self.subject,
            "elements": str(len(self.matroid)),
            "rank": str(self.matroid.rank),
            "k": str(self.t_size),
            "classification": self.classification,
            "T": ",".join(sorted(self.witness_T)) if self.witness_T else "-",
            "f_member": self.f_member_hit or "-",
        }
        if self.f_witness is not None:
            rec.update({f"witness_{k}": v for k, v in self.f_witness.as_record().items()})
        if self.minimality is not None:
            rec.update(self.minimality.as_record())
        return rec


def first_bad_split(M: BinaryMatroid, k: int) -> tuple[frozenset[str], CographicVerdict] | None:
    """The lexicographically first ``T`` with ``|T| = k`` whose split is not cographic."""
    for T in itertools.combinations(sorted(M.elements), k):
        verdict = is_cographic(split(M, T))
        if not verdict:
            return frozenset(T), verdict
    return None


def minimality_flags(M: BinaryMatroid, k: int | None = None) -> Minimality:
    """Structural flags; the inherited-trivial flag is only computed when ``k`` is given."""
    return Minimality(
        has_coloop=bool(M.coloops()),
        has_2cocircuit=bool(M.two_cocircuits()),
        trivial_family=trivial_witness(M) is not None,
        inherited_trivial=None if k is None else inherited_trivial(M, k) is not None,
    )


def classify_splittings(
    M: BinaryMatroid, k: int, name: str = "M", *, graph: Multigraph | None = None
) -> ObstructionReport:
    if k not in (1, 2, 3):
        raise DomainError(f"k must be 1, 2 or 3, not {k}")
    if graph is None and not is_graphic(M):
        raise DomainError(f"{name} is not graphic")
    hit = first_bad_split(M, k)
    flags = minimality_flags(M, k)
    if hit is None:
        return ObstructionReport(name, k, None, ALL_COGRAPHIC, None, None, flags, M, graph)
    T, verdict = hit
    return ObstructionReport(name, k, T, NON_COGRAPHIC, verdict.culprit, verdict.witness, flags, M, graph)


# --- localization ------------------------------------------------------------------


@dataclass(frozen=True)
class Localization:
    """A minor ``N = M \\ deleted / contracted`` containing ``T`` that still splits badly."""

    minor: BinaryMatroid
    deleted: frozenset[str]
    contracted: frozenset[str]
    case: str  # "i", "ii", "iii" or "iv"
    T: frozenset[str]
    T_contracted: frozenset[str]
    culprit: str
    witness: MinorWitness
    has_coloop: bool
    has_2cocircuit: bool

    def replay(self, M: BinaryMatroid) -> bool:
        if M.minor(self.deleted, self.contracted) != self.minor:
            return False
        F = excluded_minors()[self.culprit]
        return self.witness.replay(split(self.minor, self.T), F)


def _culprit_in(M: BinaryMatroid, T: frozenset[str], name: str) -> MinorWitness | None:
    return find_minor(split(M, T), excluded_minors()[name])


def localize_minimal(M: BinaryMatroid, T: Iterable[str], F: str | BinaryMatroid) -> Localization:
    """Shrink ``M`` outside ``T`` while its split at ``T`` keeps an ``F`` minor.

    Deletions and contractions of the witness that avoid ``T`` commute with
    splitting, so they are applied to ``M`` first; then single elements outside
    ``T`` are removed greedily (label order, deletion before contraction) while
    the split still contains ``F``. The case label describes how the final
    witness meets ``T``: untouched (i), only contracted (ii), partly deleted
    (iii), or the minor is in the trivial family or ``F`` survives deleting
    all of ``T`` (iv).
    """
    T = frozenset(T)
    for e in T:
        M.index(e)
    if isinstance(F, BinaryMatroid):
        names = [n for n, G in excluded_minors().items() if is_isomorphic(G, F) is not None]
        if not names:
            raise DomainError("F is not one of the four excluded minors")
        name = names[0]
    else:
        name = F
    w = _culprit_in(M, T, name)
    if w is None:
        raise DomainError(f"the split at {sorted(T)} has no {name} minor")
    deleted = set(w.deleted - T)
    contracted = set(w.contracted - T)
    N = M.minor(deleted, contracted)
    changed = True
    while changed:
        changed = False
        for e in sorted(set(N.elements) - T):
            for op in ("delete", "contract"):
                cand = N.delete([e]) if op == "delete" else N.contract([e])
                if _culprit_in(cand, T, name) is not None:
                    N = cand
                    (deleted if op == "delete" else contracted).add(e)
                    changed = True
                    break
            if changed:
                break
    w = _culprit_in(N, T, name)
    t_del, t_con = w.deleted & T, w.contracted & T
    if trivial_witness(N) is not None or t_del == T:
        case = "iv"
    elif t_del:
        case = "iii"
    elif t_con:
        case = "ii"
    else:
        case = "i"
    return Localization(
        minor=N,
        deleted=frozenset(deleted),
        contracted=frozenset(contracted),
        case=case,
        T=T,
        T_contracted=t_con,
        culprit=name,
        witness=w,
        has_coloop=bool(N.coloops()),
        has_2cocircuit=bool(N.two_cocircuits()),
    )


# --- exhaustive search ----------------------------------------------------------


class MatroidStatusCache:
    """Memoises ``first_bad_split`` per matroid isomorphism class."""

    def __init__(self, k: int):
        self.k = k
        self._buckets: dict[tuple, list[tuple[BinaryMatroid, object]]] = defaultdict(list)
        self.evaluations = 0

    def lookup(self, M: BinaryMatroid):
        key = invariant_signature(M)
        for N, status in self._buckets[key]:
            bij = is_isomorphic(N, M)
            if bij is not None:
                return status, bij
        status = first_bad_split(M, self.k)
        self.evaluations += 1
        self._buckets[key].append((M, status))
        return status, None

    def good(self, M: BinaryMatroid) -> bool:
        return self.lookup(M)[0] is None


@dataclass
class SearchResult:
    k: int
    max_elements: int
    trivial_rule: str
    reports: list[ObstructionReport]
    skipped_trivial: list[ObstructionReport]
    graphs_examined: int
    classes_evaluated: int

    def __iter__(self) -> Iterator[ObstructionReport]:
        return iter(self.reports)

    def __len__(self) -> int:
        return len(self.reports)


def single_element_minors(M: BinaryMatroid) -> Iterator[tuple[str, str, BinaryMatroid]]:
    for e in sorted(M.elements):
        yield "delete", e, M.delete([e])
        yield "contract", e, M.contract([e])


TRIVIAL_RULES = ("inherited", "minor")


class _TrivialCache:
    def __init__(self, k: int, rule: str):
        self.k = k
        self.rule = rule
        self._memo: dict[tuple, list[tuple[BinaryMatroid, bool]]] = defaultdict(list)

    def __call__(self, M: BinaryMatroid) -> bool:
        key = invariant_signature(M)
        for N, verdict in self._memo[key]:
            if is_isomorphic(N, M) is not None:
                return verdict
        if self.rule == "minor":
            verdict = trivial_witness(M) is not None
        else:
            verdict = inherited_trivial(M, self.k) is not None
        self._memo[key].append((M, verdict))
        return verdict


def search_forbidden_minors(
    k: int,
    max_elements: int = 10,
    *,
    trivial_rule: str = "inherited",
    progress: Callable[[int, int, int], None] | None = None,
) -> SearchResult:
    """All minor-minimal graphic matroids up to ``max_elements`` with a bad ``k``-split.

    A candidate is a circuit matroid with some non-cographic ``k``-split that
    is not trivial and whose single-element deletions and contractions are
    each either free of bad splits or trivial. ``trivial_rule`` selects the
    trivial family: ``"inherited"`` (see :func:`inherited_trivial`) or
    ``"minor"`` (any K5 or K3,3 minor). Trivial candidates are returned in
    ``skipped_trivial`` rather than dropped.

    Connected multigraphs are grown one edge at a time. A graph is grown
    further when its matroid has no bad split, or when it is bad but trivial
    under the inherited rule, so every candidate is a one-edge child of a
    grown graph.
    """
    if k not in (2, 3):
        raise DomainError(f"k must be 2 or 3, not {k}")
    if trivial_rule not in TRIVIAL_RULES:
        raise DomainError(f"unknown trivial rule {trivial_rule!r}")
    if max_elements > MAX_SEARCH_ELEMENTS:
        raise ResourceError(f"max_elements {max_elements} exceeds the guard of {MAX_SEARCH_ELEMENTS}")
    cache = MatroidStatusCache(k)
    trivial = _TrivialCache(k, trivial_rule)
    expandable: set[int] = set()
    found: dict[tuple, list[ObstructionReport]] = defaultdict(list)
    skipped: dict[tuple, list[ObstructionReport]] = defaultdict(list)
    examined = 0
    current_level = -1

    def harmless(N: BinaryMatroid) -> bool:
        return cache.good(N) or trivial(N)

    for G in grow_connected(max_elements, expand=lambda H: id(H) in expandable):
        examined += 1
        if progress is not None and len(G) != current_level:
            current_level = len(G)
            progress(current_level, examined, cache.evaluations)
        M = circuit_matroid(G)
        status, _ = cache.lookup(M)
        if status is None:
            if trivial_rule == "inherited" or len(M) < 9 or trivial_witness(M) is None:
                expandable.add(id(G))
            continue
        is_trivial = trivial(M)
        if is_trivial and trivial_rule == "inherited":
            expandable.add(id(G))
        key = invariant_signature(M)
        bucket = skipped if is_trivial else found
        if any(is_isomorphic(r.matroid, M) is not None for r in bucket[key]):
            continue
        if not all(harmless(N) for _, _, N in single_element_minors(M)):
            continue
        T, verdict = status
        flags = replace(minimality_flags(M, k), is_minor_minimal=True)
        report = ObstructionReport("", k, T, NON_COGRAPHIC, verdict.culprit, verdict.witness, flags, M, G)
        bucket[key].append(report)

    def ordered(groups: dict[tuple, list[ObstructionReport]], stem: str) -> list[ObstructionReport]:
        reps = sorted(
            (r for rs in groups.values() for r in rs),
            key=lambda r: (len(r.matroid), r.matroid.rank, invariant_signature(r.matroid)),
        )
        return [replace(r, subject=f"{stem}{i + 1}") for i, r in enumerate(reps)]

    return SearchResult(
        k,
        max_elements,
        trivial_rule,
        ordered(found, f"k{k}_obstruction_"),
        ordered(skipped, f"k{k}_trivial_"),
        examined,
        cache.evaluations,
    )


def verify_minimality(
    M: BinaryMatroid, k: int, *, trivial_rule: str | None = "inherited"
) -> tuple[bool, list[tuple[str, str]]]:
    """Whether every single-element deletion and contraction is harmless at level ``k``.

    A minor is harmless when all its ``k``-splits are cographic or, unless
    ``trivial_rule`` is None, when it is trivial under that rule. Returns the
    verdict and the offending ``(operation, element)`` pairs.
    """
    trivial = _TrivialCache(k, trivial_rule) if trivial_rule is not None else (lambda N: False)
    bad = [
        (op, e)
        for op, e, N in single_element_minors(M)
        if first_bad_split(N, k) is not None and not trivial(N)
    ]
    return not bad, bad
