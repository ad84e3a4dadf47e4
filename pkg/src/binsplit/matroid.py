"""Binary matroids over labeled ground sets.

A :class:`BinaryMatroid` keeps its GF(2) representation in reduced row echelon
form with zero rows removed, so the rank is the number of rows and two
matroids on the same labels are equal exactly when their canonical
representations agree.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DimensionError, FormatError, LabelError
from .gf2 import Gf2Matrix, nullspace, rank_of_rows, reduce_vector, rref, xor_basis


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class BinaryMatroid:
    def __init__(self, elements: Sequence[str], rep: Gf2Matrix, *, _normalized: bool = False):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            dup = [e for e, c in Counter(elements).items() if c > 1]
            raise LabelError(f"duplicate labels {sorted(dup)}")
        if rep.ncols != len(elements):
            raise DimensionError(f"{len(elements)} labels for {rep.ncols} columns")
        if not _normalized:
            rep, _ = rref(rep)
        self.elements = elements
        self.rep = rep
        self._index = {e: i for i, e in enumerate(elements)}

    # --- basic accessors -------------------------------------------------

    @property
    def rank(self) -> int:
        return self.rep.nrows

    @property
    def corank(self) -> int:
        return len(self.elements) - self.rep.nrows

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise LabelError(f"unknown element {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for e in labels:
            m |= 1 << self.index(e)
        return m

    def labels_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.elements[i] for i in _bits(mask))

    @cached_property
    def columns(self) -> tuple[int, ...]:
        return self.rep.columns()

    def rank_of(self, labels: Iterable[str] | int) -> int:
        m = labels if isinstance(labels, int) else self.mask(labels)
        return rank_of_rows(r & m for r in self.rep.rows)

    # --- equality ---------------------------------------------------------

    @cached_property
    def _canonical(self) -> tuple[tuple[str, ...], tuple[int, ...]]:
        order = sorted(range(len(self.elements)), key=lambda i: self.elements[i])
        reduced, _ = rref(self.rep.select_columns(order))
        return tuple(self.elements[i] for i in order), reduced.rows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryMatroid):
            return NotImplemented
        return self._canonical == other._canonical

    def __hash__(self) -> int:
        return hash(self._canonical)

    def __repr__(self) -> str:
        return f"BinaryMatroid(|E|={len(self)}, rank={self.rank}, elements={list(self.elements)})"

    # --- minors and duality ---------------------------------------------

    def _check(self, labels: Iterable[str]) -> list[str]:
        labels = list(labels)
        for e in labels:
            self.index(e)
        return labels

    def delete(self, X: Iterable[str]) -> "BinaryMatroid":
        X = set(self._check(X))
        if not X:
            return self
        keep = [i for i, e in enumerate(self.elements) if e not in X]
        return BinaryMatroid([self.elements[i] for i in keep], self.rep.select_columns(keep))

    def contract(self, Y: Iterable[str]) -> "BinaryMatroid":
        Y = set(self._check(Y))
        if not Y:
            return self
        ys = [i for i, e in enumerate(self.elements) if e in Y]
        rest = [i for i, e in enumerate(self.elements) if e not in Y]
        reduced, pivots = rref(self.rep.select_columns(ys + rest))
        # rows whose pivot lies past the Y block vanish on Y: they span the
        # cocycle space of M/Y
        kept = [row >> len(ys) for row, p in zip(reduced.rows, pivots) if p >= len(ys)]
        rep = Gf2Matrix(tuple(kept), len(rest))
        return BinaryMatroid([self.elements[i] for i in rest], rep, _normalized=True)

    def minor(self, deleted: Iterable[str] = (), contracted: Iterable[str] = ()) -> "BinaryMatroid":
        deleted, contracted = set(deleted), set(contracted)
        if deleted & contracted:
            raise LabelError(f"elements both deleted and contracted: {sorted(deleted & contracted)}")
        return self.delete(deleted).contract(contracted)

    def dual(self) -> "BinaryMatroid":
        basis = nullspace(self.rep)
        return BinaryMatroid(self.elements, Gf2Matrix(tuple(basis), len(self.elements)))

    def relabel(self, mapping: Mapping[str, str]) -> "BinaryMatroid":
        new = [mapping.get(e, e) for e in self.elements]
        return BinaryMatroid(new, self.rep, _normalized=True)

    def restrict_order(self, order: Sequence[str]) -> "BinaryMatroid":
        """Same matroid with columns listed in ``order``."""
        idx = [self.index(e) for e in order]
        if len(idx) != len(self.elements):
            raise LabelError("order must list every element exactly once")
        return BinaryMatroid(order, self.rep.select_columns(idx))

    # --- circuits and special elements ----------------------------------

    @cached_property
    def circuit_masks(self) -> tuple[int, ...]:
        basis = nullspace(self.rep)
        rows = self.rep.rows
        found = []
        v = 0
        # gray-code walk over the cycle space
        for k in range(1, 1 << len(basis)):
            v ^= basis[(k & -k).bit_length() - 1]
            size = _popcount(v)
            if rank_of_rows(r & v for r in rows) == size - 1:
                found.append(v)
        return tuple(sorted(found, key=lambda m: (_popcount(m), m)))

    def circuits(self) -> frozenset[frozenset[str]]:
        return frozenset(self.labels_of(c) for c in self.circuit_masks)

    def cocircuits(self) -> frozenset[frozenset[str]]:
        return self.dual().circuits()

    @cached_property
    def cocircuit_masks(self) -> tuple[int, ...]:
        return self.dual().circuit_masks

    def loops(self) -> frozenset[str]:
        return frozenset(e for e, c in zip(self.elements, self.columns) if c == 0)

    def coloops(self) -> frozenset[str]:
        full = (1 << len(self.elements)) - 1
        return frozenset(
            e for i, e in enumerate(self.elements) if self.rank_of(full ^ (1 << i)) < self.rank
        )

    def two_circuits(self) -> frozenset[frozenset[str]]:
        return frozenset(self.labels_of(c) for c in self.circuit_masks if _popcount(c) == 2)

    def two_cocircuits(self) -> frozenset[frozenset[str]]:
        return frozenset(self.labels_of(c) for c in self.cocircuit_masks if _popcount(c) == 2)

    # --- invariants ----------------------------------------------------

    @cached_property
    def element_profiles(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per element: sorted (circuit size, number of circuits of that size through it)."""
        counts = [Counter() for _ in self.elements]
        for c in self.circuit_masks:
            s = _popcount(c)
            for i in _bits(c):
                counts[i][s] += 1
        return tuple(tuple(sorted(c.items())) for c in counts)

    # --- text format ---------------------------------------------------

    def to_text(self, name: str = "M") -> str:
        lines = [f"matroid {name}", "elements " + " ".join(self.elements)]
        lines.extend(self.rep.row_strings())
        return "\n".join(lines) + "\n"


def from_matrix(labels: Sequence[str], m: Gf2Matrix) -> BinaryMatroid:
    labels = [str(e) for e in labels]
    for e in labels:
        if not e or any(ch.isspace() for ch in e) or e.startswith("#"):
            raise LabelError(f"unusable label {e!r}")
    return BinaryMatroid(labels, m)


def free_matroid(labels: Sequence[str]) -> BinaryMatroid:
    return from_matrix(labels, Gf2Matrix.identity(len(labels)))


def parse_matroid(text: str) -> tuple[str, BinaryMatroid]:
    """Parse the ``matroid`` text format; returns ``(name, matroid)``."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if len(lines) < 2:
        raise FormatError("matroid file needs a 'matroid' line and an 'elements' line")
    head = lines[0].split()
    if head[0] != "matroid" or len(head) != 2:
        raise FormatError(f"expected 'matroid <name>', got {lines[0]!r}")
    elems = lines[1].split()
    if not elems or elems[0] != "elements":
        raise FormatError(f"expected 'elements ...', got {lines[1]!r}")
    labels = elems[1:]
    rows = lines[2:]
    for r in rows:
        if len(r) != len(labels):
            raise FormatError(f"row {r!r} has {len(r)} entries for {len(labels)} elements")
    m = Gf2Matrix.from_strings(rows) if rows else Gf2Matrix.zeros(0, len(labels))
    return head[1], from_matrix(labels, m)


# --- isomorphism ---------------------------------------------------------


def invariant_signature(M: BinaryMatroid) -> tuple:
    sizes = Counter(_popcount(c) for c in M.circuit_masks)
    return (len(M), M.rank, tuple(sorted(sizes.items())), tuple(sorted(M.element_profiles)))


def _coordinates(basis_cols: Sequence[int], cols: Sequence[int]) -> list[int]:
    """Express each column as a bitmask over positions in ``basis_cols``."""
    # echelon form of the basis, remembering combinations
    reduced: list[tuple[int, int]] = []  # (vector, combination), vectors by decreasing lead bit
    for k, b in enumerate(basis_cols):
        combo = 1 << k
        for v, c in reduced:
            if b ^ v < b:
                b ^= v
                combo ^= c
        if not b:
            raise DimensionError("basis columns are dependent")
        reduced.append((b, combo))
        reduced.sort(reverse=True)
    out = []
    for col in cols:
        combo = 0
        for v, c in reduced:
            if col ^ v < col:
                col ^= v
                combo ^= c
        if col:
            raise DimensionError("column outside the span of the basis")
        out.append(combo)
    return out


def is_isomorphic(
    M: BinaryMatroid, N: BinaryMatroid, fixed: Mapping[str, str] | None = None
) -> dict[str, str] | None:
    """Return a label bijection ``E(M) -> E(N)`` carrying circuits onto circuits, or None.

    Binary matroids are uniquely representable, so every isomorphism is induced
    by a linear map sending the columns of ``M`` onto those of ``N``. The search
    fixes the images of a basis of ``M`` (pruned by per-element circuit
    profiles) and checks the induced map on the remaining columns as soon as
    they are determined. ``fixed`` pins some images in advance.
    """
    fixed = dict(fixed or {})
    if len(M) != len(N) or M.rank != N.rank:
        return None
    for a, b in fixed.items():
        M.index(a)
        N.index(b)
    if invariant_signature(M) != invariant_signature(N):
        return None
    n = len(M)
    pm, pn = M.element_profiles, N.element_profiles
    mcols, ncols = M.columns, N.columns
    fixed_i = {M.index(a): N.index(b) for a, b in fixed.items()}
    for i, j in fixed_i.items():
        if pm[i] != pn[j]:
            return None

    by_profile: dict[tuple, list[int]] = defaultdict(list)
    for j in range(n):
        by_profile[pn[j]].append(j)
    # available N elements keyed by (column, profile)
    avail0: Counter = Counter((ncols[j], pn[j]) for j in range(n))

    # basis order: greedily maximise the number of columns each new basis
    # element brings into the span, so image checks fire early
    basis: list[int] = []
    span: list[int] = []
    covered = {i for i in range(n) if mcols[i] == 0}
    pending = set(range(n)) - covered
    while len(basis) < M.rank:
        best = None
        for i in sorted(pending):
            trial = xor_basis(span + [mcols[i]])
            gain = sum(1 for j in pending if reduce_vector(mcols[j], trial) == 0)
            key = (i not in fixed_i, -gain, len(by_profile[pm[i]]), i)
            if best is None or key < best[0]:
                best = (key, i, trial)
        _, i, span = best
        basis.append(i)
        now = {j for j in pending if reduce_vector(mcols[j], span) == 0}
        pending -= now
    coords = _coordinates([mcols[i] for i in basis], mcols)
    # elements determined once the first k basis images are fixed
    level: list[list[int]] = [[] for _ in range(M.rank + 1)]
    for i in range(n):
        level[coords[i].bit_length()].append(i)

    images: list[int] = [0] * M.rank
    chosen: list[int] = []

    def image(i: int) -> int:
        v = 0
        for k in _bits(coords[i]):
            v ^= images[k]
        return v

    def check_level(k: int, avail: Counter) -> bool:
        for i in level[k]:
            key = (image(i), pm[i])
            if avail[key] <= 0:
                return False
            avail[key] -= 1
        return True

    def build() -> dict[str, str] | None:
        groups: dict[tuple, list[int]] = defaultdict(list)
        for j in range(n):
            groups[(ncols[j], pn[j])].append(j)
        used: set[int] = set()
        result: dict[int, int] = {}
        for i, j in fixed_i.items():
            if (image(i), pm[i]) != (ncols[j], pn[j]):
                return None
            result[i] = j
            used.add(j)
        for i in range(n):
            if i in result:
                continue
            pool = [j for j in groups[(image(i), pm[i])] if j not in used]
            if not pool:
                return None
            result[i] = pool[0]
            used.add(pool[0])
        return {M.elements[i]: N.elements[j] for i, j in result.items()}

    def extend(k: int, img_basis: list[int], avail: Counter) -> dict[str, str] | None:
        if k == M.rank:
            return build()
        i = basis[k]
        cands = [fixed_i[i]] if i in fixed_i else by_profile[pm[i]]
        for j in cands:
            v = ncols[j]
            if reduce_vector(v, img_basis) == 0:
                continue
            images[k] = v
            nxt = avail.copy()
            if not check_level(k + 1, nxt):
                continue
            res = extend(k + 1, xor_basis(img_basis + [v]), nxt)
            if res is not None:
                return res
        return None

    avail = avail0.copy()
    if not check_level(0, avail):
        return None
    return extend(0, [], avail)


# --- minors ---------------------------------------------------------------


@dataclass(frozen=True)
class MinorWitness:
    deleted: frozenset[str]
    contracted: frozenset[str]
    bijection: Mapping[str, str] = field(hash=False)

    def apply(self, host: BinaryMatroid) -> BinaryMatroid:
        return host.minor(self.deleted, self.contracted).relabel(dict(self.bijection))

    def replay(self, host: BinaryMatroid, pattern: BinaryMatroid) -> bool:
        if self.deleted & self.contracted:
            return False
        if not (self.deleted | self.contracted) <= set(host.elements):
            return False
        survivors = set(host.elements) - self.deleted - self.contracted
        if set(self.bijection) != survivors or set(self.bijection.values()) != set(pattern.elements):
            return False
        return self.apply(host) == pattern

    def as_record(self) -> dict[str, str]:
        return {
            "deleted": ",".join(sorted(self.deleted)),
            "contracted": ",".join(sorted(self.contracted)),
            "bijection": ",".join(f"{a}->{b}" for a, b in sorted(self.bijection.items())),
        }


def has_minor(M: BinaryMatroid, N: BinaryMatroid) -> MinorWitness | None:
    """Find ``X, Y`` with ``M \\ X / Y`` isomorphic to ``N``.

    ``Y`` ranges over independent sets of size ``r(M) - r(N)`` and ``X`` over
    sets coindependent in ``M / Y``; every minor arises this way. Candidates are
    visited in lexicographic order of sorted labels, so the witness is
    deterministic.
    """
    if len(N) > len(M) or N.rank > M.rank or N.corank > M.corank:
        return None
    k = M.rank - N.rank
    d = len(M) - len(N) - k
    target = invariant_signature(N)
    labels = sorted(M.elements)
    for Y in itertools.combinations(labels, k):
        if M.rank_of(Y) != k:
            continue
        MY = M.contract(Y)
        rest = sorted(MY.elements)
        for X in itertools.combinations(rest, d):
            cand = MY.delete(X)
            if cand.rank != N.rank or invariant_signature(cand) != target:
                continue
            bij = is_isomorphic(cand, N)
            if bij is not None:
                return MinorWitness(frozenset(X), frozenset(Y), bij)
    return None


def direct_sum(M: BinaryMatroid, N: BinaryMatroid) -> BinaryMatroid:
    if set(M.elements) & set(N.elements):
        raise LabelError("direct sum needs disjoint ground sets")
    rows = [r for r in M.rep.rows] + [r << len(M) for r in N.rep.rows]
    return BinaryMatroid(M.elements + N.elements, Gf2Matrix(tuple(rows), len(M) + len(N)))


def _is_simple(M: BinaryMatroid) -> bool:
    cols = M.columns
    return 0 not in cols and len(set(cols)) == len(cols)


def find_minor(M: BinaryMatroid, N: BinaryMatroid) -> MinorWitness | None:
    """Like :func:`has_minor`, but faster when ``N`` is simple.

    For simple ``N``, once ``Y`` is contracted the deletion must remove every
    loop and all but one element of each parallel class, so it is enough to
    choose which distinct nonzero columns survive. Parallel elements are
    interchangeable, and the first label of each class is kept. The witness is
    deterministic but need not be the lexicographically first one.
    """
    if not _is_simple(N):
        return has_minor(M, N)
    if len(N) > len(M) or N.rank > M.rank or N.corank > M.corank:
        return None
    k = M.rank - N.rank
    for Y in itertools.combinations(sorted(M.elements), k):
        if M.rank_of(Y) != k:
            continue
        MY = M.contract(Y)
        groups: dict[int, list[str]] = {}
        for e, c in sorted(zip(MY.elements, MY.columns)):
            if c:
                groups.setdefault(c, []).append(e)
        if len(groups) < len(N):
            continue
        classes = sorted(groups.values())
        for chosen in itertools.combinations(classes, len(N)):
            keep = {cls[0] for cls in chosen}
            cand = MY.delete(e for e in MY.elements if e not in keep)
            if cand.rank != N.rank:
                continue
            bij = is_isomorphic(cand, N)
            if bij is not None:
                X = frozenset(MY.elements) - keep
                return MinorWitness(X, frozenset(Y), bij)
    return None
