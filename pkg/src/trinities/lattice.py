"""Exact integer lattice routines on plain Python ``int`` matrices.

Matrices are lists of row lists.  Nothing here ever touches floating point,
so determinants and transforms stay exact at any size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy_matrix(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in a]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def matvec(a: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(r * v for r, v in zip(row, x)) for row in a]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant.  The empty matrix has determinant 1."""
    n = len(a)
    if n == 0:
        return 1
    m = copy_matrix(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Hermite normal form (column style)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HermiteForm:
    """Column Hermite normal form ``A @ U == H`` of an ``m x n`` matrix.

    ``H`` keeps only its ``rank`` nonzero columns.  Column ``k`` has its
    leading (topmost) nonzero entry, which is positive, in row
    ``pivots[k]``; entries to the left of a pivot are reduced into
    ``[0, pivot)``.
    """

    H: Matrix
    U: Matrix
    pivots: tuple[int, ...]
    nrows: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def coordinates(self, b: Sequence[int]) -> Optional[list[int]]:
        """Coefficients ``c`` with ``H @ c == b``, or ``None`` if ``b`` is off the lattice."""
        if len(b) != self.nrows:
            raise ValueError("vector length does not match the lattice dimension")
        r = list(b)
        coeffs = [0] * self.rank
        k = 0
        for row in range(self.nrows):
            if k < self.rank and self.pivots[k] == row:
                p = self.H[row][k]
                q, rem = divmod(r[row], p)
                if rem:
                    return None
                coeffs[k] = q
                if q:
                    for i in range(row, self.nrows):
                        r[i] -= q * self.H[i][k]
                k += 1
            elif r[row] != 0:
                return None
        return coeffs

    def contains(self, b: Sequence[int]) -> bool:
        return self.coordinates(b) is not None

    def solve(self, b: Sequence[int]) -> Optional[list[int]]:
        """An integer ``x`` with ``A @ x == b`` for the original matrix, or ``None``."""
        c = self.coordinates(b)
        if c is None:
            return None
        n = len(self.U)
        return [sum(self.U[i][k] * c[k] for k in range(self.rank)) for i in range(n)]


def hermite_normal_form(a: Sequence[Sequence[int]], ncols: Optional[int] = None) -> HermiteForm:
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    # work on columns: cols[j] is column j of A, ucols[j] column j of U
    cols = [[a[i][j] for i in range(m)] for j in range(n)]
    ucols = [[int(i == j) for i in range(n)] for j in range(n)]
    pivots: list[int] = []
    k = 0
    for row in range(m):
        if k == n:
            break
        while True:
            nz = [j for j in range(k, n) if cols[j][row] != 0]
            if not nz:
                break
            j = min(nz, key=lambda c: abs(cols[c][row]))
            cols[k], cols[j] = cols[j], cols[k]
            ucols[k], ucols[j] = ucols[j], ucols[k]
            if len(nz) == 1:
                break
            p = cols[k][row]
            for jj in range(k + 1, n):
                q = cols[jj][row] // p
                if q:
                    cols[jj] = [x - q * y for x, y in zip(cols[jj], cols[k])]
                    ucols[jj] = [x - q * y for x, y in zip(ucols[jj], ucols[k])]
        if cols[k][row] == 0:
            continue
        if cols[k][row] < 0:
            cols[k] = [-x for x in cols[k]]
            ucols[k] = [-x for x in ucols[k]]
        p = cols[k][row]
        for jj in range(k):
            q = cols[jj][row] // p
            if q:
                cols[jj] = [x - q * y for x, y in zip(cols[jj], cols[k])]
                ucols[jj] = [x - q * y for x, y in zip(ucols[jj], ucols[k])]
        pivots.append(row)
        k += 1
    rank = k
    H = [[cols[j][i] for j in range(rank)] for i in range(m)]
    # keep every column of U: the trailing ones span the kernel
    U = [[ucols[j][i] for j in range(n)] for i in range(n)]
    return HermiteForm(H=H, U=U, pivots=tuple(pivots), nrows=m)


# ---------------------------------------------------------------------------
# Smith normal form with transforms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal and ``d1 | d2 | ...``.

    ``Uinv`` and ``Vinv`` are the exact integer inverses of ``U`` and ``V``.
    """

    D: Matrix
    U: Matrix
    V: Matrix
    Uinv: Matrix
    Vinv: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> list[int]:
        """Nontrivial (greater than one) nonzero diagonal entries."""
        return [d for d in self.diagonal if d > 1]

    def solve(self, b: Sequence[int]) -> Optional[list[int]]:
        """Integer ``x`` with ``A @ x == b``, or ``None``."""
        c = matvec(self.U, b)
        ncols = len(self.V)
        y = [0] * ncols
        for i, ci in enumerate(c):
            d = self.D[i][i] if i < ncols else 0
            if d == 0:
                if ci != 0:
                    return None
                continue
            q, rem = divmod(ci, d)
            if rem:
                return None
            y[i] = q
        return matvec(self.V, y)


def smith_normal_form(a: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithForm:
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    D = copy_matrix(a)
    U, Uinv = identity(m), identity(m)
    V, Vinv = identity(n), identity(n)

    def swap_rows(i: int, j: int) -> None:
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i: int, j: int) -> None:
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
        for row in Uinv:
            row[src] -= q * row[dst]

    def add_col(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vinv[src] = [x - q * y for x, y in zip(Vinv[src], Vinv[dst])]

    for t in range(min(m, n)):
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j] != 0]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
            rest = [(abs(D[i][t]), i) for i in range(t + 1, m) if D[i][t]]
            if rest:
                swap_rows(t, min(rest)[1])
                continue
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
            rest = [(abs(D[t][j]), j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                swap_cols(t, min(rest)[1])
                continue
            p = D[t][t]
            for i in range(t + 1, m):
                if any(D[i][j] % p for j in range(t + 1, n)):
                    add_row(t, i, 1)
                    done = False
                    break
            if done:
                break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
            for row in Uinv:
                row[t] = -row[t]
    return SmithForm(D=D, U=U, V=V, Uinv=Uinv, Vinv=Vinv)
