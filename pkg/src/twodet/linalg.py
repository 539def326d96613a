"""Exact dense linear algebra over QQ and GF(p).

Matrices are lists of rows.  Over a prime field the rank is computed with a
vectorized int64 elimination; over QQ with Fractions.
"""

from __future__ import annotations

import numpy as np

from .fields import Field, PrimeField


def _rank_mod_p(mat, p: int) -> int:
    if not mat or not mat[0]:
        return 0
    M = np.array(mat, dtype=np.int64) % p
    rows, cols = M.shape
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, col]), -1, p)
        M[r] = (M[r] * inv) % p
        f = M[:, col].copy()
        f[r] = 0
        nzr = np.nonzero(f)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - np.outer(f[nzr], M[r])) % p
        r += 1
    return r


def rref(mat, field: Field):
    """Reduced row echelon form and pivot columns (generic field path)."""
    M = [list(row) for row in mat]
    if not M:
        return M, []
    rows, cols = len(M), len(M[0])
    norm, inv = field.norm, field.inv
    pivots = []
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        iv = inv(M[r][col])
        M[r] = [norm(x * iv) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                Mi, Mr = M[i], M[r]
                M[i] = [norm(a - f * b) for a, b in zip(Mi, Mr)]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(mat, field: Field) -> int:
    if not mat or not mat[0]:
        return 0
    if isinstance(field, PrimeField) and field.p < 3_000_000:
        return _rank_mod_p(mat, field.p)
    return len(rref(mat, field)[1])


def nullspace(mat, field: Field) -> list:
    """Basis of {x : mat x = 0}."""
    if not mat:
        return []
    cols = len(mat[0])
    R, piv = rref(mat, field)
    free = [j for j in range(cols) if j not in piv]
    basis = []
    for fcol in free:
        v = [field.zero] * cols
        v[fcol] = field.one
        for i, pc in enumerate(piv):
            v[pc] = field.norm(-R[i][fcol])
        basis.append(v)
    return basis


def det(mat, field: Field):
    n = len(mat)
    M = [list(r) for r in mat]
    norm, inv = field.norm, field.inv
    d = field.one
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            return field.zero
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            d = norm(-d)
        d = norm(d * M[col][col])
        iv = inv(M[col][col])
        for i in range(col + 1, n):
            if M[i][col] != 0:
                f = norm(M[i][col] * iv)
                M[i] = [norm(a - f * b) for a, b in zip(M[i], M[col])]
    return d


def inverse(mat, field: Field):
    n = len(mat)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(mat)]
    R, piv = rref(aug, field)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def matmul(A, B, field: Field):
    norm = field.norm
    Bt = list(zip(*B))
    return [[norm(sum(a * b for a, b in zip(row, col))) for col in Bt] for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def identity(n: int, field: Field):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def random_invertible(n: int, field: Field, rng):
    while True:
        M = [[field.random_element(rng) for _ in range(n)] for _ in range(n)]
        if rank(M, field) == n:
            return M


def random_matrix(r: int, c: int, field: Field, rng):
    return [[field.random_element(rng) for _ in range(c)] for _ in range(r)]
