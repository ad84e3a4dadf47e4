"""Named fixtures: matroids and graphs with validations checked at load time.

The fixture directory holds ``.matroid`` and ``.graph`` text files plus a
``catalog.json`` manifest that lists each entry's provenance and the facts it
must satisfy. The directory can be redirected with the ``MATROID_FIXTURES``
environment variable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Union

from .errors import FixtureError, LabelError
from .matroid import BinaryMatroid, find_minor, has_minor, is_isomorphic, parse_matroid
from .multigraph import (
    Multigraph,
    _two_connected,
    blocks,
    circuit_matroid,
    graph_isomorphic,
    has_two_edge_cut,
    is_eulerian,
    parse_graph,
)

Payload = Union[BinaryMatroid, Multigraph]

DEFAULT_FIXTURES = Path(__file__).with_name("data")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # "matroid" or "graph"
    payload: Payload = field(compare=False)
    provenance: str
    validations: tuple[tuple[str, object], ...]

    @property
    def matroid(self) -> BinaryMatroid:
        if isinstance(self.payload, Multigraph):
            return circuit_matroid(self.payload)
        return self.payload

    @property
    def graph(self) -> Multigraph | None:
        return self.payload if isinstance(self.payload, Multigraph) else None

    def text(self) -> str:
        if self.graph is not None:
            return self.graph.to_text(self.name)
        return self.payload.to_text(self.name)


def fixture_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get("MATROID_FIXTURES")
    return Path(env) if env else DEFAULT_FIXTURES


# --- validation predicates ---------------------------------------------------


def _graph_of(entry: CatalogEntry) -> Multigraph:
    if entry.graph is None:
        raise FixtureError(entry.name, "kind", "graph predicate applied to a matroid")
    return entry.graph


def _simple(G: Multigraph) -> bool:
    return not G.loops() and all(len(c) == 1 for c in G.parallel_classes())


def _coextension_of(G: Multigraph, H: Multigraph) -> bool:
    return any(
        graph_isomorphic(G.contract_edge(lab), H) is not None
        for lab, u, v in G.edges
        if u != v
    )


def _evaluate(pred: str, entry: CatalogEntry, others: dict[str, CatalogEntry]) -> object:
    """Compute the actual value of a validation predicate for ``entry``."""
    name, _, arg = pred.partition(":")

    def other(n: str) -> CatalogEntry:
        if n not in others:
            raise FixtureError(entry.name, pred, f"refers to unknown entry {n!r}")
        return others[n]

    M = entry.matroid
    simple_checks: dict[str, Callable[[], object]] = {
        "elements": lambda: len(M),
        "rank": lambda: M.rank,
        "matroid_loops": lambda: len(M.loops()),
        "two_circuits": lambda: len(M.two_circuits()),
        "vertices": lambda: len(_graph_of(entry).vertices),
        "edges": lambda: len(_graph_of(entry).edges),
        "loop_edges": lambda: len(_graph_of(entry).loops()),
        "connected": lambda: _graph_of(entry).is_connected(),
        "simple": lambda: _simple(_graph_of(entry)),
        "two_connected": lambda: _two_connected(_graph_of(entry)),
        "eulerian": lambda: is_eulerian(_graph_of(entry)),
        "blocks": lambda: len(blocks(_graph_of(entry))),
        "max_parallel": lambda: max((len(c) for c in _graph_of(entry).parallel_classes()), default=0),
        "two_edge_cut": lambda: has_two_edge_cut(_graph_of(entry)) is not None,
    }
    if name in simple_checks:
        return simple_checks[name]()
    if name == "graph_isomorphic":
        return graph_isomorphic(_graph_of(entry), _graph_of(other(arg))) is not None
    if name == "matroid_isomorphic":
        return is_isomorphic(M, other(arg).matroid) is not None
    if name == "dual_of":
        return M == other(arg).matroid.dual()
    if name == "isomorphic_fixing":
        target, _, pinned = arg.partition(":")
        fixed = {e: e for e in pinned.split(",")}
        return is_isomorphic(M, other(target).matroid, fixed) is not None
    if name == "coextension_of":
        return _coextension_of(_graph_of(entry), _graph_of(other(arg)))
    if name == "has_minor":
        return has_minor(M, other(arg).matroid) is not None
    raise FixtureError(entry.name, pred, "unknown predicate")


def validate_entry(entry: CatalogEntry, others: dict[str, CatalogEntry]) -> list[tuple[str, object, object]]:
    """Return ``(predicate, expected, actual)`` for every validation of ``entry``."""
    return [(pred, expected, _evaluate(pred, entry, others)) for pred, expected in entry.validations]


# --- loading ----------------------------------------------------------------------


def _read_entry(root: Path, spec: dict) -> CatalogEntry:
    name = spec["name"]
    path = root / spec["file"]
    try:
        text = path.read_text()
    except OSError as exc:
        raise FixtureError(name, "file", str(exc)) from None
    try:
        if path.suffix == ".graph":
            kind, (_, payload) = "graph", parse_graph(text)
        else:
            kind, (_, payload) = "matroid", parse_matroid(text)
    except (ValueError, LabelError) as exc:
        raise FixtureError(name, "parse", str(exc)) from None
    vals = tuple((str(p), v) for p, v in spec.get("validations", []))
    return CatalogEntry(name, kind, payload, spec.get("provenance", ""), vals)


@lru_cache(maxsize=8)
def _load(root: str) -> dict[str, CatalogEntry]:
    base = Path(root)
    try:
        manifest = json.loads((base / "catalog.json").read_text())
    except (OSError, ValueError) as exc:
        raise FixtureError("catalog.json", "manifest", str(exc)) from None
    entries: dict[str, CatalogEntry] = {}
    for spec in manifest["entries"]:
        if spec["name"] in entries:
            raise FixtureError(spec["name"], "unique-name", "duplicate entry")
        entries[spec["name"]] = _read_entry(base, spec)
    for entry in entries.values():
        for pred, expected, actual in validate_entry(entry, entries):
            if actual != expected:
                raise FixtureError(entry.name, pred, f"expected {expected!r}, got {actual!r}")
    return entries


def load_catalog(fixtures: str | os.PathLike | None = None) -> dict[str, CatalogEntry]:
    """Parse and validate every fixture; raises :class:`FixtureError` on the first failure."""
    return dict(_load(str(fixture_dir(fixtures).resolve())))


def get(name: str, fixtures: str | os.PathLike | None = None) -> CatalogEntry:
    cat = load_catalog(fixtures)
    if name not in cat:
        raise LabelError(f"no catalog entry named {name!r}")
    return cat[name]


def trivial_family_member(M: BinaryMatroid, k: int = 2, fixtures: str | os.PathLike | None = None) -> bool:
    """Whether ``M`` has an ``M(K5)`` or ``M(K3,3)`` minor (the operational stand-in)."""
    return trivial_family_witness(M, k, fixtures) is not None


def trivial_family_witness(M: BinaryMatroid, k: int = 2, fixtures: str | os.PathLike | None = None):
    """``(name, witness)`` for the first of K5, K33 found as a minor, else None."""
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    cat = load_catalog(fixtures)
    for name in ("K5", "K33"):
        w = find_minor(M, cat[name].matroid)
        if w is not None:
            return name, w
    return None
