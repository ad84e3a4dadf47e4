"""The splitting operation ``M -> M_T`` and its one-element lift ``M_T'``."""

from __future__ import annotations

from typing import Iterable

from .errors import LabelError
from .gf2 import Gf2Matrix, in_row_space
from .matroid import BinaryMatroid


def split(M: BinaryMatroid, T: Iterable[str]) -> BinaryMatroid:
    """Append the indicator row of ``T`` to the representation of ``M``."""
    row = M.mask(T)
    return BinaryMatroid(M.elements, M.rep.append_row(row))


def split_with_element(M: BinaryMatroid, T: Iterable[str], a: str) -> BinaryMatroid:
    """``M_T'``: the split plus a new element ``a`` that is nonzero only in the new row.

    Deleting ``a`` gives ``split(M, T)`` and contracting it gives back ``M``.
    """
    if a in M._index:
        raise LabelError(f"label {a!r} already in the ground set")
    row = M.mask(T)
    rows = [x for x in M.rep.rows] + [row | (1 << len(M))]
    return BinaryMatroid(M.elements + (a,), Gf2Matrix(tuple(rows), len(M) + 1))


def split_raises_rank(M: BinaryMatroid, T: Iterable[str]) -> bool:
    """True iff the indicator row of ``T`` is outside the cocycle space of ``M``."""
    return not in_row_space(M.rep, M.mask(T))
