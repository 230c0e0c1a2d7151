"""Small exact linear algebra over QQ and ZZ on lists of lists.

Matrices are row-major lists; entries are ints or Fractions.  Nothing here is
tuned for large sizes: the modules we handle are at most a few hundred
dimensions per degree.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def matmul(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def rref(M):
    """Reduced row echelon form over QQ.  Returns ``(R, pivot_columns)``."""
    R = [[Fraction(x) for x in row] for row in M]
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return R, pivots


def rank(M) -> int:
    return len(rref(M)[1])


def nullspace(M, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel of ``M`` over QQ."""
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(M)
    n = len(M[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def integer_kernel(M, ncols: int | None = None) -> list[list[int]]:
    """ZZ-basis of ``ker(M) ∩ ZZ^n`` for an integer matrix ``M``.

    Column-style Hermite reduction with a unimodular transform; the columns of
    the transform that end up paired with zero columns span the kernel
    lattice, which is saturated by construction.
    """
    n = len(M[0]) if M else (ncols or 0)
    # work on columns: cols[j] = (column j of M, column j of U)
    A = [[int(M[i][j]) for i in range(len(M))] for j in range(n)]
    U = [[int(i == j) for i in range(n)] for j in range(n)]
    nrows = len(M)
    start = 0
    for r in range(nrows):
        nz = [j for j in range(start, n) if A[j][r] != 0]
        if not nz:
            continue
        piv = nz[0]
        for j in nz[1:]:
            a, b = A[piv][r], A[j][r]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            Ap, Aj = A[piv], A[j]
            Up, Uj = U[piv], U[j]
            A[piv] = [x * p + y * q for p, q in zip(Ap, Aj)]
            A[j] = [-bg * p + ag * q for p, q in zip(Ap, Aj)]
            U[piv] = [x * p + y * q for p, q in zip(Up, Uj)]
            U[j] = [-bg * p + ag * q for p, q in zip(Up, Uj)]
        A[start], A[piv] = A[piv], A[start]
        U[start], U[piv] = U[piv], U[start]
        start += 1
    basis = [U[j] for j in range(start, n)]
    return hermite_rows(basis)


def hermite_rows(basis):
    """Row-style Hermite normal form of an integer basis (canonical for the lattice)."""
    b = [list(v) for v in basis]
    if not b:
        return b
    n = len(b[0])
    out = []
    for c in range(n):
        nz = [v for v in b if v[c] != 0]
        if not nz:
            continue
        rest = [v for v in b if v[c] == 0]
        piv = nz[0]
        for v in nz[1:]:
            a, bb = piv[c], v[c]
            g, x, y = _xgcd(a, bb)
            ag, bg = a // g, bb // g
            piv, v2 = ([x * p + y * q for p, q in zip(piv, v)],
                       [-bg * p + ag * q for p, q in zip(piv, v)])
            if any(v2):
                rest.append(v2)
        if piv[c] < 0:
            piv = [-x for x in piv]
        for k, u in enumerate(out):
            q = u[c] // piv[c]
            if q:
                out[k] = [x - q * y for x, y in zip(u, piv)]
        out.append(piv)
        b = rest
        if not b:
            break
    return out


def solve_columns(K, Y):
    """Solve ``K X = Y`` exactly for full-column-rank ``K``; raise if inconsistent."""
    n, d = len(K), len(K[0]) if K else 0
    m = len(Y[0]) if Y else 0
    aug = [list(K[i]) + list(Y[i]) for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:d] != list(range(d)) or any(p >= d for p in pivots):
        raise ValueError("system has no solution in the column span")
    return [R[i][d:d + m] for i in range(d)]


def is_integral(M) -> bool:
    return all(Fraction(x).denominator == 1 for row in M for x in row)


def to_int(M):
    return [[int(x) for x in row] for row in M]


_SAFE = 1 << 24


def int_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact integer product; int64 when overflow is impossible, else objects."""
    if A.size == 0 or B.size == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if A.dtype != object and B.dtype != object:
        if int(np.abs(A).max()) < _SAFE and int(np.abs(B).max()) < _SAFE and A.shape[1] < 1 << 14:
            return A @ B
    return np.asarray(A, dtype=object) @ np.asarray(B, dtype=object)
