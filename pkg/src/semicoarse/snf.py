"""Exact integer matrices and Smith normal form.

All arithmetic uses Python integers, so there is no overflow and no
rounding; torsion coefficients come out exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_sparse(cls, rows: int, cols: int, data: dict) -> "IntegerMatrix":
        """Build from ``{(i, j): value}``."""
        m = [[0] * cols for _ in range(rows)]
        for (i, j), x in data.items():
            m[i][j] += x
        return cls(rows, cols, tuple(tuple(r) for r in m))

    def tolist(self) -> list:
        return [list(r) for r in self.entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ot = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for r in self.entries:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append(tuple(sum(x * col[k] for k, x in nz) for col in ot))
        return IntegerMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other):
        self._same_shape(other)
        return IntegerMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._same_shape(other)
        return IntegerMatrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    @property
    def shape(self):
        return (self.rows, self.cols)

    def transpose(self) -> "IntegerMatrix":
        if not self.rows:
            return IntegerMatrix.zeros(self.cols, 0)
        return IntegerMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.entries) for j, x in enumerate(r) if i != j)

    def diagonal(self) -> list:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def nonzero(self) -> dict:
        return {(i, j): x for i, r in enumerate(self.entries) for j, x in enumerate(r) if x}


def determinant(M: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    a = M.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def smith_normal_form(M: IntegerMatrix):
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative
    entries ``d_1 | d_2 | ...``.
    """
    r, c = M.rows, M.cols
    a = M.tolist()
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(r, c):
        piv = None
        for i in range(t, r):
            for j in range(t, c):
                x = a[i][j]
                if x and (piv is None or abs(x) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
                    if abs(x) == 1:
                        break
            if piv is not None and abs(a[piv[0]][piv[1]]) == 1:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            p = a[t][t]
            moved = False
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        swap_rows(t, i)
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        swap_cols(t, j)
                        moved = True
                        break
            if moved:
                continue
            # row and column t are clear; enforce divisibility of the rest
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    D = IntegerMatrix.from_rows(a, c)
    return IntegerMatrix.from_rows(U, r), D, IntegerMatrix.from_rows(V, c)


def invariant_factors(M: IntegerMatrix | dict, shape: tuple | None = None) -> list:
    """Nonzero diagonal entries of the Smith form of ``M``, ascending.

    Works on a sparse row representation and pivots on unit entries first,
    which disposes of almost all of a typical boundary matrix before the
    dense Smith reduction runs on whatever is left.  ``M`` may also be given
    as a ``{(i, j): value}`` dict together with ``shape``.
    """
    if isinstance(M, IntegerMatrix):
        data = M.nonzero()
    else:
        data = M
    rows: dict = {}
    cols: dict = {}
    for (i, j), x in data.items():
        if x:
            rows.setdefault(i, {})[j] = x
            cols.setdefault(j, set()).add(i)
    units = 0
    while True:
        best = None
        for i, row in rows.items():
            for j, x in row.items():
                if x == 1 or x == -1:
                    if best is None or len(row) < len(rows[best[0]]):
                        best = (i, j)
                    break
        if best is None:
            break
        pi, pj = best
        prow = rows.pop(pi)
        pv = prow[pj]
        for j in prow:
            cols[j].discard(pi)
        for i in list(cols.pop(pj, ())):
            row = rows[i]
            q = row[pj] * pv  # pv = +-1, so q*pv*prow cancels row[pj]
            for j, x in prow.items():
                y = row.get(j, 0) - q * x
                if y:
                    if j not in row:
                        cols.setdefault(j, set()).add(i)
                    row[j] = y
                else:
                    if j in row:
                        del row[j]
                        if j != pj:
                            cols[j].discard(i)
            if not row:
                del rows[i]
        units += 1
    rest = [1] * units
    if rows:
        ri = sorted(rows)
        cj = sorted({j for row in rows.values() for j in row})
        cpos = {j: k for k, j in enumerate(cj)}
        dense = [[0] * len(cj) for _ in ri]
        for k, i in enumerate(ri):
            for j, x in rows[i].items():
                dense[k][cpos[j]] = x
        _, D, _ = smith_normal_form(IntegerMatrix.from_rows(dense, len(cj)))
        rest.extend(d for d in D.diagonal() if d)
    return sorted(rest)


def rank(M: IntegerMatrix) -> int:
    return len(invariant_factors(M))
