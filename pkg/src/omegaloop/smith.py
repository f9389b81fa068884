"""Smith normal form over the integers.

Two entry points:

* ``smith_normal_form`` - dense, with unimodular transforms ``U A V = D``;
  meant for small matrices where images of vectors are needed.
* ``invariant_factors`` - sparse elimination that returns only the nonzero
  diagonal. Unit pivots are cleared first (boundary matrices are mostly
  +-1 entries), then the leftover block goes through the dense routine.

Pivots are chosen by minimal absolute value to keep entries small.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass
class SmithForm:
    D: Matrix
    U: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k) if self.D[i][i] != 0]


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Return D, U, V with ``U @ A @ V == D`` and D diagonal, d1 | d2 | ...

    ``ncols`` is needed only when A has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [list(map(int, row)) for row in A]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row[dst] += c * row[src]
        if c:
            rs, rd = D[src], D[dst]
            for k in range(n):
                if rs[k]:
                    rd[k] += c * rs[k]
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += c * us[k]

    def add_col(src, dst, c):  # col[dst] += c * col[src]
        if c:
            for row in D:
                if row[src]:
                    row[dst] += c * row[src]
            for row in V:
                if row[src]:
                    row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the remaining block
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    if D[t][j]:
                        done = False
            if not done:
                # move the smallest remainder in row/column t onto the pivot
                cand = [(abs(D[i][t]), 'r', i) for i in range(t + 1, m) if D[i][t]]
                cand += [(abs(D[t][j]), 'c', j) for j in range(t + 1, n) if D[t][j]]
                _, kind, k = min(cand)
                if kind == 'r':
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            # divisibility: the pivot must divide the whole remaining block
            p = D[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SmithForm(D, U, V)


def _dense_diagonal(rows: list[dict[int, int]], cols: list[int]) -> list[int]:
    if not rows or not cols:
        return []
    pos = {c: k for k, c in enumerate(cols)}
    A = [[0] * len(cols) for _ in rows]
    for r, row in enumerate(rows):
        for c, v in row.items():
            A[r][pos[c]] = v
    return SmithForm.diagonal.fget(smith_normal_form(A))


def invariant_factors(rows: Iterable[dict[int, int] | Sequence[int]]) -> list[int]:
    """Nonzero Smith diagonal of a sparse integer matrix.

    ``rows`` are dicts ``{col: value}`` (or dense sequences). Returns the
    invariant factors in divisibility order; their count is the rank.
    """
    R: dict[int, dict[int, int]] = {}
    for r, row in enumerate(rows):
        if not isinstance(row, dict):
            row = {j: int(v) for j, v in enumerate(row) if v}
        else:
            row = {j: int(v) for j, v in row.items() if v}
        if row:
            R[r] = row
    C: dict[int, set[int]] = {}
    for r, row in R.items():
        for c in row:
            C.setdefault(c, set()).add(r)

    units = 0
    # unit pivots, cheapest (shortest column, then shortest row) first
    while True:
        pivot = None
        best = None
        for c in sorted(C, key=lambda c: len(C[c])):
            if best is not None and len(C[c]) >= best[0]:
                break
            for r in C[c]:
                v = R[r][c]
                if v == 1 or v == -1:
                    cost = (len(C[c]), len(R[r]))
                    if best is None or cost < best:
                        best = cost
                        pivot = (r, c)
            if best is not None and best[0] == 1:
                break
        if pivot is None:
            break
        r0, c0 = pivot
        prow = R.pop(r0)
        p = prow[c0]
        for c in prow:
            C[c].discard(r0)
        for r in list(C[c0]):
            row = R[r]
            f = row[c0] * p  # p = +-1, so row -= (row[c0]/p) * prow
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    if c not in row:
                        C[c].add(r)
                    row[c] = nv
                else:
                    if c in row:
                        del row[c]
                        C[c].discard(r)
            if not row:
                del R[r]
        del C[c0]
        for c in [c for c in C if not C[c]]:
            del C[c]
        units += 1

    rest_rows = [R[r] for r in sorted(R)]
    rest_cols = sorted(C)
    return [1] * units + _dense_diagonal(rest_rows, rest_cols)


def rank_and_torsion(rows) -> tuple[int, list[int]]:
    diag = invariant_factors(rows)
    return len(diag), [d for d in diag if d > 1]
