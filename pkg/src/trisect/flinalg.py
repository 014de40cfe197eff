"""Exact linear algebra over the fraction field F of the Laurent ring.

Vectors and matrices carry LaurentPoly entries; elimination is fraction-free
(Bareiss) so fractions only show up at the output of solve/det.  Subspaces of
F^n are stored through primitive Lambda-vectors spanning them.
"""
from __future__ import annotations

import random
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .ring import Frac, LaurentPoly, canon, lp_canonical, lp_gcd_many


class FDimensionError(ValueError):
    pass


class NoSolutionF(Exception):
    pass


def _zero(b):
    return LaurentPoly.zero(b)


def _nvars_of(rows) -> int:
    for r in rows:
        for x in r:
            return x.nvars
    raise ValueError("cannot infer ring from an empty matrix")


def to_lambda_vector(v: Sequence, nvars: int) -> list:
    """Clear denominators of a vector of Frac / LaurentPoly / int entries."""
    fr = [Frac.coerce(x, nvars) if not isinstance(x, LaurentPoly) else Frac(x) for x in v]
    den = LaurentPoly.one(nvars)
    for x in fr:
        if not x.den == 1:
            # lcm-ish: multiply by the part of x.den not already in den
            g = lp_gcd_many([den, x.den], nvars)
            den = den * x.den.divexact(g)
    return [(x * den).to_poly() for x in fr]


def primitive(v: Sequence[LaurentPoly]) -> list:
    """Scale a nonzero Lambda-vector to unit content, min exponent 0, and a first
    nonzero entry with positive leading coefficient."""
    nz = [x for x in v if not x.is_zero()]
    if not nz:
        raise ValueError("zero vector has no primitive form")
    b = nz[0].nvars
    g = lp_gcd_many(nz, b)
    w = [x.divexact(g) for x in v]
    m = [min(e[i] for x in w if x for e in x.terms) for i in range(b)]
    shift = LaurentPoly.monomial(tuple(-k for k in m)) if b else LaurentPoly.one(0)
    w = [x * shift for x in w]
    first = next(x for x in w if x)
    if first.leading()[1] < 0:
        w = [-x for x in w]
    return w


# --- fraction-free elimination ---------------------------------------------

_RANK_LOGS: list = []


@contextmanager
def record_ranks():
    """Collect (matrix, rank) for every elimination run inside the block."""
    log: list = []
    _RANK_LOGS.append(log)
    try:
        yield log
    finally:
        _RANK_LOGS.remove(log)


def ff_gauss_jordan(M: Sequence[Sequence[LaurentPoly]], ncols: Optional[int] = None):
    """Fraction-free Gauss-Jordan.  Returns (R, pivots, d) where R = d * rref(M)
    on its first len(pivots) rows, d is a nonzero minor and the other rows vanish."""
    rows = [list(r) for r in M]
    m = len(rows)
    n = len(rows[0]) if rows else (ncols or 0)
    if not rows:
        return rows, [], None
    b = _nvars_of(rows) if any(rows) else 0
    prev = LaurentPoly.one(b)
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        p = None
        best = None
        for i in range(r, m):
            x = rows[i][c]
            if not x.is_zero():
                size = len(x.terms)
                if best is None or size < best:
                    best, p = size, i
                    if size == 1:
                        break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            new = []
            for j in range(n):
                if j == c:
                    new.append(_zero(b))
                    continue
                val = piv * row[j] - f * prow[j] if f else piv * row[j]
                new.append(val.divexact(prev) if not val.is_zero() else val)
            rows[i] = new
        prev = piv
        pivots.append(c)
        r += 1
    if _RANK_LOGS and b:
        for log in _RANK_LOGS:
            log.append(([list(x) for x in M], len(pivots)))
    return rows, pivots, prev


def rank_lambda(M: Sequence[Sequence[LaurentPoly]]) -> int:
    if not M or not M[0]:
        return 0
    return len(ff_gauss_jordan(M)[1])


def kernel_lambda(M: Sequence[Sequence[LaurentPoly]], ncols: int, nvars: int) -> list:
    """Primitive Lambda-vectors forming an F-basis of {x : M x = 0}."""
    if not M:
        return [[LaurentPoly.one(nvars) if i == j else _zero(nvars) for i in range(ncols)]
                for j in range(ncols)]
    R, piv, d = ff_gauss_jordan(M)
    free = [j for j in range(ncols) if j not in piv]
    out = []
    for f in free:
        x = [_zero(nvars) for _ in range(ncols)]
        x[f] = d if d is not None else LaurentPoly.one(nvars)
        for i, c in enumerate(piv):
            x[c] = -R[i][f]
        out.append(primitive(x))
    return out


def det_lambda(M: Sequence[Sequence[LaurentPoly]], nvars: Optional[int] = None) -> LaurentPoly:
    """Bareiss determinant of a square Lambda-matrix."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise FDimensionError("determinant of a non-square matrix")
    if n == 0:
        return LaurentPoly.one(nvars or 0)
    b = _nvars_of(M)
    A = [list(r) for r in M]
    sign = 1
    prev = LaurentPoly.one(b)
    for k in range(n - 1):
        if A[k][k].is_zero():
            for i in range(k + 1, n):
                if not A[i][k].is_zero():
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return _zero(b)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = v.divexact(prev) if v else v
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def det_f(M: Sequence[Sequence], nvars: int) -> Frac:
    """Determinant of a square matrix with Frac entries."""
    rows = []
    scale = Frac.from_int(1, nvars)
    for r in M:
        fr = [Frac.coerce(x, nvars) for x in r]
        lv = to_lambda_vector(fr, nvars)
        # lv = r * c for a Lambda-scalar c; recover it from a nonzero entry
        for x, y in zip(fr, lv):
            if x:
                scale = scale * (Frac(y) / x)
                break
        rows.append(lv)
    return Frac(det_lambda(rows, nvars)) / scale


def solve_f(A_cols: Sequence[Sequence[LaurentPoly]], b: Sequence[LaurentPoly], nvars: int) -> list:
    """Solution x (Frac entries) of sum x_j A_cols[j] = b; columns must be independent."""
    k = len(A_cols)
    n = len(b)
    if any(len(c) != n for c in A_cols):
        raise FDimensionError("column length mismatch")
    if k == 0:
        if any(x for x in b):
            raise NoSolutionF()
        return []
    M = [[A_cols[j][i] for j in range(k)] + [b[i]] for i in range(n)]
    R, piv, d = ff_gauss_jordan(M)
    if k in piv:
        raise NoSolutionF()
    if len(piv) < k:
        raise FDimensionError("solve_f needs independent columns")
    x = [None] * k
    for i, c in enumerate(piv):
        x[c] = Frac(R[i][k], d)
    return x


# --- Subspaces ---------------------------------------------------------------


class Subspace:
    """F-subspace of F^n with a basis of primitive Lambda-vectors.

    The basis is the primitive form of the reduced echelon basis; it is
    determined by the subspace alone.
    """

    __slots__ = ("n", "nvars", "basis")

    def __init__(self, n: int, nvars: int, vectors: Iterable[Sequence[LaurentPoly]] = (), _basis=None):
        self.n = n
        self.nvars = nvars
        if _basis is not None:
            self.basis = _basis
            return
        vs = [list(v) for v in vectors if any(not x.is_zero() for x in v)]
        for v in vs:
            if len(v) != n:
                raise FDimensionError(f"vector of length {len(v)} in F^{n}")
        if not vs:
            self.basis = []
            return
        R, piv, _ = ff_gauss_jordan(vs)
        self.basis = [primitive(R[i]) for i in range(len(piv))]

    @classmethod
    def zero(cls, n, nvars):
        return cls(n, nvars, _basis=[])

    @classmethod
    def full(cls, n, nvars):
        e = [[LaurentPoly.one(nvars) if i == j else _zero(nvars) for i in range(n)] for j in range(n)]
        return cls(n, nvars, _basis=e)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace"):
        if self.n != other.n:
            raise FDimensionError(f"ambient mismatch {self.n} vs {other.n}")

    def contains(self, v: Sequence[LaurentPoly]) -> bool:
        return sub_member(self, v)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.n == other.n and self.dim == other.dim
                and self.contains_space(other))

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dim})"


def sub_sum(U: Subspace, V: Subspace) -> Subspace:
    U._check(V)
    return Subspace(U.n, U.nvars, U.basis + V.basis)


def sub_intersect(U: Subspace, V: Subspace) -> Subspace:
    U._check(V)
    if not U.basis or not V.basis:
        return Subspace.zero(U.n, U.nvars)
    k = U.dim
    cols = U.basis + [[-x for x in v] for v in V.basis]
    M = [[c[i] for c in cols] for i in range(U.n)]
    ker = kernel_lambda(M, len(cols), U.nvars)
    vecs = []
    for z in ker:
        w = [_zero(U.nvars) for _ in range(U.n)]
        for a, u in zip(z[:k], U.basis):
            if a:
                w = [x + a * y for x, y in zip(w, u)]
        vecs.append(w)
    return Subspace(U.n, U.nvars, vecs)


def sub_member(U: Subspace, v: Sequence[LaurentPoly]) -> bool:
    if len(v) != U.n:
        raise FDimensionError("vector length does not match the ambient space")
    if all(x.is_zero() for x in v):
        return True
    if not U.basis:
        return False
    return rank_lambda(U.basis + [list(v)]) == U.dim


def extend_basis(sub: Sequence[Sequence[LaurentPoly]], candidates: Sequence[Sequence[LaurentPoly]]) -> list:
    """Indices of candidates that greedily extend the independent family sub."""
    cur = [list(v) for v in sub]
    r = rank_lambda(cur) if cur else 0
    picked = []
    for i, v in enumerate(candidates):
        trial = cur + [list(v)]
        rr = rank_lambda(trial)
        if rr > r:
            cur, r = trial, rr
            picked.append(i)
    return picked


def independent_subset(vectors: Sequence[Sequence[LaurentPoly]]) -> list:
    return extend_basis([], vectors)


# --- Subquotient ------------------------------------------------------------


class NotInCycles(ValueError):
    pass


class Subquotient:
    """Z / R for subspaces R <= Z of F^n.

    Every subspace of the quotient is held by its full preimage, a subspace of
    Z containing R, so sums and intersections are computed on preimages.
    """

    def __init__(self, Z: Subspace, R: Subspace):
        Z._check(R)
        if not Z.contains_space(R):
            raise NotInCycles("relation space is not inside the cycle space")
        self.Z = Z
        self.R = R

    @property
    def n(self):
        return self.Z.n

    @property
    def dim(self) -> int:
        return self.Z.dim - self.R.dim

    def induced(self, vectors: Sequence[Sequence[LaurentPoly]]) -> Subspace:
        """Preimage of the image of span(vectors)."""
        for v in vectors:
            if not self.Z.contains(v):
                raise NotInCycles("vector is not a cycle")
        return Subspace(self.n, self.Z.nvars, list(vectors) + self.R.basis)

    def qdim(self, P: Subspace) -> int:
        return P.dim - self.R.dim

    def sum(self, P: Subspace, Q: Subspace) -> Subspace:
        return sub_sum(P, Q)

    def intersect(self, P: Subspace, Q: Subspace) -> Subspace:
        return sub_intersect(P, Q)

    def same_class(self, u, v) -> bool:
        return sub_member(self.R, [a - b for a, b in zip(u, v)])

    def class_member(self, v, P: Subspace) -> bool:
        return sub_member(P, v)

    def lift_basis(self, P: Subspace, Q: Optional[Subspace] = None) -> list:
        """Representatives in the ambient space of a basis of P / Q (Q defaults to R)."""
        Q = self.R if Q is None else Q
        idx = extend_basis(Q.basis, P.basis)
        return [P.basis[i] for i in idx]


# --- evaluation oracle ------------------------------------------------------


def evaluate_matrix(M, point) -> list:
    return [[x.evaluate(point) for x in row] for row in M]


def rank_q(M: Sequence[Sequence[Fraction]]) -> int:
    A = [list(r) for r in M]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(r + 1, m):
            if A[i][c]:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


def random_point(nvars: int, rng: random.Random) -> list:
    pts = []
    for _ in range(nvars):
        while True:
            x = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
            if x not in (0, 1, -1):
                pts.append(x)
                break
    return pts


def rank_oracle(M, nvars: int, points: int = 5, seed: int = 0) -> int:
    """Max rank of M over random rational evaluations: a lower bound for the
    symbolic rank that is attained at a generic point."""
    if not M or not M[0]:
        return 0
    rng = random.Random(seed)
    return max(rank_q(evaluate_matrix(M, random_point(nvars, rng))) for _ in range(points))
