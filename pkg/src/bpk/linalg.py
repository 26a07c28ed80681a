"""Exact rank of integer matrices by fraction-free (Bareiss) elimination."""
from __future__ import annotations

from typing import Sequence


def _bareiss_rank(M: list[list[int]]) -> int:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pr = M[r]
        p = pr[c]
        for i in range(r + 1, rows):
            row = M[i]
            a = row[c]
            if a:
                for k in range(c + 1, cols):
                    row[k] = (p * row[k] - a * pr[k]) // prev
            else:
                # a == 0 still needs the Bareiss scaling to keep later divisions exact
                for k in range(c + 1, cols):
                    row[k] = (p * row[k]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == rows:
            break
    return r


def exact_rank(vectors: Sequence[Sequence[int]], pivoting: str = "row") -> int:
    """Rank over the rationals of the integer vectors ``vectors``.

    ``pivoting="row"`` eliminates the vectors as rows; ``"column"`` eliminates
    the transposed matrix, giving an independent elimination order.
    """
    M = [[int(x) for x in v] for v in vectors]
    if not M or not M[0]:
        return 0
    width = len(M[0])
    if any(len(v) != width for v in M):
        raise ValueError("vectors must have equal length")
    if pivoting == "column":
        M = [list(col) for col in zip(*M)]
    elif pivoting != "row":
        raise ValueError(f"unknown pivoting {pivoting!r}")
    return _bareiss_rank(M)
