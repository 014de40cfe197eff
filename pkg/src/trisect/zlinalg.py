"""Integer matrix algebra: Smith normal form, integral solving, lattices.

Matrices are plain lists of row lists of Python ints. Lattices are given by
the column span of a matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

Mat = list  # list[list[int]]


class NoSolution(Exception):
    pass


class ZDimensionError(ValueError):
    pass


def zeros(r: int, c: int) -> Mat:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> Mat:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Mat, B: Mat, inner: Optional[int] = None) -> Mat:
    n = len(A)
    k = inner if inner is not None else (len(A[0]) if A else len(B))
    m = len(B[0]) if B else 0
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def matvec(A: Mat, x: Sequence[int]) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: Mat, rows: Optional[int] = None) -> Mat:
    r = len(A) if rows is None else rows
    c = len(A[0]) if A else 0
    return [[A[i][j] for i in range(r)] for j in range(c)]


def from_columns(cols: Sequence[Sequence[int]], nrows: int) -> Mat:
    return [[int(c[i]) for c in cols] for i in range(nrows)]


def columns(A: Mat, nrows: int) -> list:
    ncols = len(A[0]) if A else 0
    return [[A[i][j] for i in range(nrows)] for j in range(ncols)]


def det_z(A: Mat) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass
class SnfResult:
    U: Mat
    D: Mat
    V: Mat
    rows: int
    cols: int

    def diagonal(self) -> list:
        return [self.D[i][i] for i in range(min(self.rows, self.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d)


def snf(A: Mat, nrows: Optional[int] = None, ncols: Optional[int] = None) -> SnfResult:
    """Smith normal form with transforms: U A V = D."""
    m = len(A) if nrows is None else nrows
    n = (len(A[0]) if A else 0) if ncols is None else ncols
    D = [list(map(int, r)) for r in A] if m else []
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for r in D:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    for t in range(min(m, n)):
        while True:
            # pivot: smallest nonzero |entry| in the remaining block
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    add_row(i, t, q)
                if D[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    add_col(j, t, q)
                if D[t][j]:
                    dirty = True
            if dirty:
                continue
            # enforce divisibility of the rest of the block by the pivot
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
            D[t] = [a + b for a, b in zip(D[t], D[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return SnfResult(U, D, V, m, n)


def check_snf(A: Mat, res: SnfResult) -> None:
    """Assert U A V = D, the divisibility chain, and unimodularity."""
    m, n = res.rows, res.cols
    UA = matmul(res.U, A, inner=m) if m else []
    UAV = matmul(UA, res.V, inner=n) if m else []
    assert UAV == res.D, "U A V != D"
    for i in range(m):
        for j in range(n):
            if i != j:
                assert res.D[i][j] == 0, "D not diagonal"
    d = res.diagonal()
    for a, b in zip(d, d[1:]):
        assert a >= 0 and (b == 0 if a == 0 else b % a == 0), "divisibility chain broken"
    assert abs(det_z(res.U)) == 1 and abs(det_z(res.V)) == 1, "transform not unimodular"


def inverse_unimodular(U: Mat) -> Mat:
    """Exact inverse of a unimodular integer matrix (Gauss-Jordan over Q)."""
    from fractions import Fraction

    n = len(U)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c])
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    out = [[M[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in out for x in row), "matrix not unimodular"
    return [[int(x) for x in row] for row in out]


def solve_z(A: Mat, b: Sequence[int], nrows: Optional[int] = None, ncols: Optional[int] = None) -> list:
    """An integral x with A x = b; raises NoSolution if none exists."""
    m = len(A) if nrows is None else nrows
    n = (len(A[0]) if A else 0) if ncols is None else ncols
    if len(b) != m:
        raise ZDimensionError(f"rhs has length {len(b)}, expected {m}")
    res = snf(A, m, n)
    c = matvec(res.U, b) if m else []
    y = [0] * n
    for i in range(m):
        d = res.D[i][i] if i < n else 0
        if d == 0:
            if c[i]:
                raise NoSolution()
        else:
            if c[i] % d:
                raise NoSolution()
            y[i] = c[i] // d
    return matvec(res.V, y) if n else []


def in_lattice(A: Mat, v: Sequence[int], nrows: int) -> bool:
    try:
        solve_z(A, v, nrows=nrows)
    except NoSolution:
        return False
    return True


def kernel_z(A: Mat, nrows: int, ncols: int) -> list:
    """Z-basis of the integer kernel of A, as column vectors."""
    res = snf(A, nrows, ncols)
    r = res.rank
    return [[res.V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def lattice_basis(A: Mat, nrows: int) -> list:
    """A Z-basis (list of columns) of the column lattice of A."""
    if not A or not A[0]:
        return []
    n = len(A[0])
    res = snf(A, nrows, n)
    Uinv = inverse_unimodular(res.U) if nrows else []
    # columns of A = Uinv D V^-1, so the lattice is spanned by d_i * Uinv[:, i]
    return [[Uinv[i][j] * res.D[j][j] for i in range(nrows)] for j in range(res.rank)]


def hnf_rows(rows: list, n: int) -> list:
    """Row Hermite normal form (nonzero rows only), pivots positive, entries above reduced."""
    M = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while M and col < n:
        nz = [r for r in M if r[col]]
        if not nz:
            col += 1
            continue
        while len([r for r in M if r[col]]) > 1:
            M.sort(key=lambda r: (r[col] == 0, abs(r[col])))
            p = M[0]
            for k in range(1, len(M)):
                if M[k][col]:
                    q = M[k][col] // p[col]
                    M[k] = [a - q * b for a, b in zip(M[k], p)]
        M.sort(key=lambda r: (r[col] == 0, abs(r[col])))
        p = M.pop(0)
        if p[col] < 0:
            p = [-a for a in p]
        out.append(p)
        M = [r for r in M if any(r)]
        col += 1
    # reduce above pivots
    for i, r in enumerate(out):
        c = next(j for j, a in enumerate(r) if a)
        for k in range(i):
            q = out[k][c] // r[c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], r)]
    return out


def lattice_intersect(A: Mat, B: Mat, nrows: int) -> list:
    """Z-basis (columns) of colspan(A) meet colspan(B)."""
    a_cols = columns(A, nrows) if A else []
    b_cols = columns(B, nrows) if B else []
    if not a_cols or not b_cols:
        return []
    ka, kb = len(a_cols), len(b_cols)
    S = from_columns(a_cols + [[-x for x in c] for c in b_cols], nrows)
    ker = kernel_z(S, nrows, ka + kb)
    vecs = [matvec(A, k[:ka]) for k in ker]
    if not vecs:
        return []
    return lattice_basis(from_columns(vecs, nrows), nrows)


def lattice_sum(A: Mat, B: Mat, nrows: int) -> list:
    cols = (columns(A, nrows) if A else []) + (columns(B, nrows) if B else [])
    if not cols:
        return []
    return lattice_basis(from_columns(cols, nrows), nrows)


def lattices_equal(A_cols: Sequence, B_cols: Sequence, nrows: int) -> bool:
    A = from_columns(A_cols, nrows) if A_cols else []
    B = from_columns(B_cols, nrows) if B_cols else []
    if not A_cols or not B_cols:
        return all(not any(c) for c in A_cols) and all(not any(c) for c in B_cols)
    return all(in_lattice(A, c, nrows) for c in B_cols) and all(in_lattice(B, c, nrows) for c in A_cols)


def coker_invariants(A: Mat, nrows: int, ncols: Optional[int] = None):
    """(free_rank, invariant factors > 1) of Z^nrows / colspan(A)."""
    n = (len(A[0]) if A else 0) if ncols is None else ncols
    res = snf(A, nrows, n)
    d = res.diagonal()
    nz = [x for x in d if x]
    return nrows - len(nz), [x for x in nz if x > 1]
