"""Exact rational linear algebra: sparse column echelon and small dense solves.

Sparse vectors are dicts row-index -> Fraction.  Every pivot column
stores its largest nonzero row as the pivot, so reduction can walk rows
in decreasing order with a lazy heap and terminates without fill
surprises.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Iterable, Optional

SparseVec = dict  # row index -> Fraction


def reduce_against(
    v: SparseVec,
    pivots: dict[int, tuple[SparseVec, Fraction]],
    record: Optional[list] = None,
) -> SparseVec:
    """Reduce v in place against an echelon set; returns the residue.

    Every pivot column has its pivot at its maximum row, so reduction
    only introduces entries at smaller rows.
    """
    heap = [-r for r in v]
    heapq.heapify(heap)
    while heap:
        r = -heapq.heappop(heap)
        c = v.get(r)
        if not c:
            continue
        piv = pivots.get(r)
        if piv is None:
            continue
        pcol, pcoeff = piv
        factor = c / pcoeff
        for row, val in pcol.items():
            nv = v.get(row, Fraction(0)) - factor * val
            if nv:
                if row not in v:
                    heapq.heappush(heap, -row)
                v[row] = nv
            else:
                v.pop(row, None)
        if record is not None:
            record.append((r, factor))
    return v


def build_echelon(columns: Iterable[SparseVec]) -> tuple[dict, int]:
    """Column echelon of a sparse matrix; returns (pivots, rank)."""
    pivots: dict[int, tuple[SparseVec, Fraction]] = {}
    rank = 0
    for col in columns:
        v = dict(col)
        reduce_against(v, pivots)
        if v:
            r = max(v)
            pivots[r] = (v, v[r])
            rank += 1
    return pivots, rank


def echelon_insert(pivots: dict, v: SparseVec) -> bool:
    """Reduce v against pivots and insert the residue if nonzero."""
    v = dict(v)
    reduce_against(v, pivots)
    if not v:
        return False
    r = max(v)
    pivots[r] = (v, v[r])
    return True


def kernel_search(
    columns: list[SparseVec],
    keep: Callable[[SparseVec], bool],
    want: int,
    on_rank: Optional[Callable[[int], None]] = None,
) -> int:
    """Echelonize columns while harvesting kernel combinations.

    Tracks the combination vector of each column; when a column reduces
    to zero its combination lies in the kernel and is offered to `keep`.
    Tracking stops once `want` kernel vectors were accepted (the
    remaining pass still counts rank).  Returns the rank.
    """
    pivots: dict[int, tuple[SparseVec, Fraction]] = {}
    combos: dict[int, SparseVec] = {}  # pivot row -> combination of its column
    rank = 0
    found = 0
    tracking = want > 0
    for j, col in enumerate(columns):
        v = dict(col)
        record: Optional[list] = [] if tracking else None
        reduce_against(v, pivots, record)
        if v:
            r = max(v)
            pivots[r] = (v, v[r])
            if tracking:
                comb = {j: Fraction(1)}
                for prow, factor in record:
                    for cj, cv in combos[prow].items():
                        nv = comb.get(cj, Fraction(0)) - factor * cv
                        if nv:
                            comb[cj] = nv
                        else:
                            comb.pop(cj, None)
                combos[r] = comb
            rank += 1
        elif tracking:
            comb = {j: Fraction(1)}
            for prow, factor in record:
                for cj, cv in combos[prow].items():
                    nv = comb.get(cj, Fraction(0)) - factor * cv
                    if nv:
                        comb[cj] = nv
                    else:
                        comb.pop(cj, None)
            if keep(comb):
                found += 1
                if found >= want:
                    tracking = False
                    combos = {}
    if on_rank:
        on_rank(rank)
    return rank


# -- small dense routines -------------------------------------------------


def dense_rank(rows: list[list[Fraction]]) -> int:
    """Rank by plain fraction Gaussian elimination (small matrices)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, nrows):
            if m[r][col]:
                f = m[r][col] / pv
                for c in range(col, ncols):
                    m[r][c] -= f * m[rank][c]
        rank += 1
        if rank == nrows:
            break
    return rank


def dense_det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / pv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def dense_solve(a: list[list[Fraction]], b: list[Fraction]) -> Optional[list[Fraction]]:
    """One solution of A x = b over Q, or None when inconsistent."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    m = [list(map(Fraction, a[r])) + [Fraction(b[r])] for r in range(nrows)]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        m[rank] = [x / pv for x in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, nrows):
        if m[r][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = m[r][ncols]
    return x


def rational_root(value: Fraction, m: int) -> Optional[Fraction]:
    """The positive rational m-th root of value, if one exists."""
    if value <= 0:
        return None

    def iroot(n: int) -> Optional[int]:
        if n == 0:
            return 0
        r = round(n ** (1.0 / m))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**m == n:
                return cand
        return None

    p = iroot(value.numerator)
    q = iroot(value.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)
