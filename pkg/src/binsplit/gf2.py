"""Dense GF(2) matrices with bit-packed rows.

Row ``i`` is stored as a Python int whose bit ``j`` is the entry in column ``j``.
Every value is immutable; all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, FormatError


@dataclass(frozen=True)
class Gf2Matrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        if self.ncols < 0:
            raise DimensionError("negative column count")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise DimensionError(f"row {r:b} does not fit in {self.ncols} columns")

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]], ncols: int | None = None) -> "Gf2Matrix":
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for row in data:
            if len(row) != ncols:
                raise DimensionError("ragged matrix")
            bits = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise DimensionError(f"entry {v!r} is not a bit")
                if v:
                    bits |= 1 << j
            rows.append(bits)
        return cls(tuple(rows), ncols)

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> "Gf2Matrix":
        lines = [ln.strip() for ln in lines]
        if not lines:
            return cls((), 0)
        return cls.from_lists([[_bit(ch) for ch in ln] for ln in lines])

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        return cls((0,) * nrows, ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[int], nrows: int) -> "Gf2Matrix":
        rows = [0] * nrows
        for j, c in enumerate(cols):
            for i in range(nrows):
                if c >> i & 1:
                    rows[i] |= 1 << j
        return cls(tuple(rows), len(cols))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i] >> j & 1

    def columns(self) -> tuple[int, ...]:
        """Columns packed as ints, bit ``i`` being row ``i``."""
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return tuple(cols)

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.ncols)] for r in self.rows]

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix(self.columns(), self.nrows)

    def select_columns(self, idx: Sequence[int]) -> "Gf2Matrix":
        out = []
        for r in self.rows:
            bits = 0
            for k, j in enumerate(idx):
                if r >> j & 1:
                    bits |= 1 << k
            out.append(bits)
        return Gf2Matrix(tuple(out), len(idx))

    def append_row(self, row: int) -> "Gf2Matrix":
        return Gf2Matrix(self.rows + (row,), self.ncols)

    def row_strings(self) -> list[str]:
        return ["".join("1" if r >> j & 1 else "0" for j in range(self.ncols)) for r in self.rows]

    def to_text(self) -> str:
        return "\n".join([f"{self.nrows} {self.ncols}", *self.row_strings()]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Gf2Matrix":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise FormatError("empty matrix text")
        try:
            nrows, ncols = (int(t) for t in lines[0].split())
        except ValueError as exc:
            raise FormatError(f"bad header {lines[0]!r}") from exc
        body = lines[1:]
        if len(body) != nrows or any(len(b) != ncols for b in body):
            raise FormatError("matrix body does not match header")
        if nrows == 0:
            return cls((), ncols)
        return cls.from_strings(body)

    def __str__(self) -> str:
        return "\n".join(self.row_strings())


def _bit(ch: str) -> int:
    if ch == "0":
        return 0
    if ch == "1":
        return 1
    raise FormatError(f"bad matrix character {ch!r}")


def rref(m: Gf2Matrix) -> tuple[Gf2Matrix, list[int]]:
    """Reduced row echelon form with zero rows removed, plus the pivot columns."""
    rows = list(m.rows)
    pivots: list[int] = []
    out: list[int] = []
    for j in range(m.ncols):
        bit = 1 << j
        k = next((i for i, r in enumerate(rows) if r & bit), None)
        if k is None:
            continue
        p = rows.pop(k)
        rows = [r ^ p if r & bit else r for r in rows]
        out = [r ^ p if r & bit else r for r in out]
        out.append(p)
        pivots.append(j)
    return Gf2Matrix(tuple(out), m.ncols), pivots


def rank(m: Gf2Matrix) -> int:
    return rank_of_rows(m.rows)


def xor_basis(rows: Iterable[int]) -> list[int]:
    """Echelon basis of the span, sorted by decreasing leading bit."""
    basis: list[int] = []
    for v in rows:
        v = reduce_vector(v, basis)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def reduce_vector(v: int, basis: list[int]) -> int:
    # basis must be sorted by decreasing leading bit
    for b in basis:
        v = min(v, v ^ b)
    return v


def rank_of_rows(rows: Iterable[int]) -> int:
    return len(xor_basis(rows))


def in_row_space(m: Gf2Matrix, v: int | Sequence[int]) -> bool:
    if not isinstance(v, int):
        if len(v) != m.ncols:
            raise DimensionError(f"vector length {len(v)} != {m.ncols} columns")
        v = sum(1 << j for j, b in enumerate(v) if b)
    elif v >> m.ncols:
        raise DimensionError("vector wider than matrix")
    return reduce_vector(v, xor_basis(m.rows)) == 0


def standard_form(m: Gf2Matrix) -> tuple[Gf2Matrix, list[int]]:
    """Return ``([I_r | D], perm)`` where output column ``k`` is input column ``perm[k]``.

    Pivots are chosen leftmost-column first, so ``perm`` lists the pivot columns
    of the rref in increasing order followed by the remaining columns in order.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    perm = pivots + [j for j in range(m.ncols) if j not in pivot_set]
    return reduced.select_columns(perm), perm


def nullspace(m: Gf2Matrix) -> list[int]:
    """Basis of ``{x : m x = 0}`` as bit-packed vectors over the columns."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for row, p in zip(reduced.rows, pivots):
            if row >> f & 1:
                v |= 1 << p
        basis.append(v)
    return basis
