"""Single-element binary lifts of a matroid and the graphic quotients they produce."""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .catalog import CatalogEntry, load_catalog
from .errors import ContractError, LabelError
from .gf2 import Gf2Matrix
from .matroid import BinaryMatroid, has_minor, invariant_signature, is_isomorphic
from .multigraph import Multigraph, graph_isomorphic, graph_realizations
from .obstructions import is_graphic

EXCLUDE_MODES = ("minor", "extension")


@dataclass(frozen=True)
class QuotientResult:
    """One isomorphism class of graphic quotient, with every graph that realizes it."""

    base: BinaryMatroid
    label: str
    extension_column: int
    lift: BinaryMatroid
    quotient: BinaryMatroid
    graphic: bool
    realizations: tuple[Multigraph, ...] = field(default=(), compare=False)
    realization_names: tuple[str | None, ...] = ()

    @property
    def realizing_graph(self) -> Multigraph | None:
        return self.realizations[0] if self.realizations else None

    @property
    def realizing_name(self) -> str | None:
        return self.realization_names[0] if self.realization_names else None

    def replay(self) -> bool:
        """Recheck ``lift \\ a == base``, ``lift / a == quotient`` and the graphic flag."""
        return (
            self.lift.delete([self.label]) == self.base
            and self.lift.contract([self.label]) == self.quotient
            and is_graphic(self.quotient) == self.graphic
        )

    def column_string(self) -> str:
        return "".join(str(self.extension_column >> i & 1) for i in range(self.base.rank))


def extend_by_column(F: BinaryMatroid, a: str, column: int) -> BinaryMatroid:
    """Append ``column`` (bit ``i`` = row ``i`` of the stored representation) labelled ``a``."""
    if a in F.elements:
        raise LabelError(f"label {a!r} already in the ground set")
    n = len(F)
    rows = tuple(r | ((column >> i & 1) << n) for i, r in enumerate(F.rep.rows))
    return BinaryMatroid(F.elements + (a,), Gf2Matrix(rows, n + 1))


def binary_extensions(F: BinaryMatroid, a: str = "a") -> list[BinaryMatroid]:
    """All ``2**rank`` one-column extensions, the zero column (a loop) first."""
    return [extend_by_column(F, a, c) for c in range(1 << F.rank)]


# --- realizing graphs -----------------------------------------------------------


def name_graph(G: Multigraph, catalog: dict[str, CatalogEntry] | None) -> str | None:
    """First catalog graph isomorphic to ``G``, preferring names that start with ``H``."""
    if not catalog:
        return None
    graphs = [e for e in catalog.values() if e.graph is not None and len(e.graph) == len(G)]
    graphs.sort(key=lambda e: (not e.name.startswith("H"), e.name))
    return next((e.name for e in graphs if graph_isomorphic(e.graph, G) is not None), None)


def realize(
    Q: BinaryMatroid, catalog: dict[str, CatalogEntry] | None = None
) -> list[tuple[str | None, Multigraph]]:
    """Every connected graph realizing ``Q`` up to isomorphism, with its catalog name if any.

    Named graphs come first, in name order.
    """
    found = [(name_graph(G, catalog), G) for G in graph_realizations(Q)]
    found.sort(key=lambda p: (p[0] is None, p[0] or ""))
    return found


# --- quotients -------------------------------------------------------------------


def _excluded(Q: BinaryMatroid, X: BinaryMatroid, mode: str) -> bool:
    if mode == "minor":
        return has_minor(Q, X) is not None
    # Q must contain some single-element extension of X as a minor.
    if len(Q) < len(X) + 1:
        return False
    for e in sorted(Q.elements):
        for N in (Q.delete([e]), Q.contract([e])):
            if len(N) >= len(X) + 1 and _excluded(N, X, mode):
                return True
        if len(Q) == len(X) + 1 and is_isomorphic(Q.delete([e]), X) is not None:
            return True
    return False


def graphic_quotients(
    F: BinaryMatroid,
    exclude_minor: BinaryMatroid | None = None,
    *,
    exclude_mode: str = "extension",
    a: str = "a",
    catalog: dict[str, CatalogEntry] | None = None,
    fixtures: str | os.PathLike | None = None,
) -> list[QuotientResult]:
    """Graphic quotients ``N/a`` over all binary lifts ``N`` of ``F``, one per isomorphism class.

    With ``exclude_minor`` set, quotients are dropped when they contain it
    (``exclude_mode="minor"``) or some single-element extension of it
    (``exclude_mode="extension"``) as a minor. The first lift, by column
    order, represents each class. A class can have several realizing graphs
    (a loop may sit at different vertices, blocks may be twisted); all are
    kept in ``realizations``.
    """
    if exclude_mode not in EXCLUDE_MODES:
        raise ValueError(f"exclude_mode must be one of {EXCLUDE_MODES}")
    if catalog is None:
        catalog = load_catalog(fixtures)
    buckets: dict[tuple, list[QuotientResult]] = defaultdict(list)
    kept: list[QuotientResult] = []
    for column in range(1 << F.rank):
        N = extend_by_column(F, a, column)
        Q = N.contract([a])
        if not is_graphic(Q):
            continue
        if exclude_minor is not None and _excluded(Q, exclude_minor, exclude_mode):
            continue
        key = invariant_signature(Q)
        if any(is_isomorphic(r.quotient, Q) is not None for r in buckets[key]):
            continue
        found = realize(Q, catalog)
        result = QuotientResult(
            F, a, column, N, Q, True, tuple(G for _, G in found), tuple(n for n, _ in found)
        )
        buckets[key].append(result)
        kept.append(result)
    kept.sort(key=lambda r: (r.realizing_name is None, r.realizing_name or "", r.extension_column))
    return kept


def realization_count(results: Iterable[QuotientResult]) -> int:
    """Number of distinct realizing graphs over all classes (graphs, not matroids)."""
    return sum(len(r.realizations) for r in results)


def compare_exclusion_readings(
    F: BinaryMatroid, X: BinaryMatroid, **kwargs
) -> tuple[list[QuotientResult], list[QuotientResult], bool]:
    """Quotient lists under both exclusion readings and whether they agree up to isomorphism."""
    by_minor = graphic_quotients(F, X, exclude_mode="minor", **kwargs)
    by_ext = graphic_quotients(F, X, exclude_mode="extension", **kwargs)
    same = len(by_minor) == len(by_ext) and all(
        any(is_isomorphic(p.quotient, q.quotient) is not None for q in by_ext) for p in by_minor
    )
    return by_minor, by_ext, same


# --- two-circuit / odd-circuit property -------------------------------------------


def _two_circuit_and_odd(Q: BinaryMatroid) -> set[str]:
    in_pair = set().union(*Q.two_circuits()) if Q.two_circuits() else set()
    in_odd: set[str] = set()
    for C in Q.circuits():
        if len(C) % 2:
            in_odd |= C
    return in_pair & in_odd


def qlemma_check(N: BinaryMatroid, a: str, reference: BinaryMatroid | None = None) -> bool:
    """True iff no element of ``N/a`` lies in both a 2-circuit and an odd circuit.

    ``N \\ a`` must be isomorphic to ``reference`` (by default the K3,3
    circuit matroid); otherwise :class:`ContractError` is raised.
    """
    if reference is None:
        reference = load_catalog()["K33"].matroid
    if a not in N.elements:
        raise ContractError(f"{a!r} is not an element of the lift")
    if is_isomorphic(N.delete([a]), reference) is None:
        raise ContractError("deleting the added element does not give the reference matroid")
    return not _two_circuit_and_odd(N.contract([a]))


def offending_elements(Q: BinaryMatroid) -> frozenset[str]:
    """Elements of ``Q`` lying in both a 2-circuit and an odd circuit."""
    return frozenset(_two_circuit_and_odd(Q))


def lifts_of(F: BinaryMatroid, a: str = "a") -> Iterable[tuple[int, BinaryMatroid]]:
    for c in range(1 << F.rank):
        yield c, extend_by_column(F, a, c)
