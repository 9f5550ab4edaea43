"""Pure-Python GF(2) elimination on int-bitset rows.

Bit ``j`` of a row is the entry in column ``j``.  Pivots are chosen at the
lowest available column, so results are deterministic.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple


def echelon(rows: Sequence[int], ncols: int) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form.

    Returns ``(basis, pivots)`` where ``basis[k]`` is the unique reduced row
    whose leading column is ``pivots[k]``; pivots are increasing.
    """
    work = [r for r in rows if r]
    basis: List[int] = []
    pivots: List[int] = []
    for col in range(ncols):
        if not work:
            break
        bit = 1 << col
        pivot = -1
        for idx, r in enumerate(work):
            if r & bit:
                pivot = idx
                break
        if pivot < 0:
            continue
        prow = work.pop(pivot)
        work = [r ^ prow if r & bit else r for r in work]
        work = [r for r in work if r]
        basis = [b ^ prow if b & bit else b for b in basis]
        basis.append(prow)
        pivots.append(col)
    return basis, pivots


def rank(rows: Sequence[int], ncols: int) -> int:
    work = [r for r in rows if r]
    n = 0
    for col in range(ncols):
        if not work:
            break
        bit = 1 << col
        pivot = -1
        for idx, r in enumerate(work):
            if r & bit:
                pivot = idx
                break
        if pivot < 0:
            continue
        prow = work.pop(pivot)
        work = [r ^ prow if r & bit else r for r in work]
        work = [r for r in work if r]
        n += 1
    return n
