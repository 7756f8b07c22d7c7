"""Dense linear algebra over a finite field given by a :class:`FieldSpec`.

Matrices are 2-D int64 arrays of field elements.  Prime fields take a fast
path through ordinary modular integer arithmetic.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec


def as_matrix(A, ncols: int | None = None) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else np.zeros((0, ncols or 0), dtype=np.int64)
    if A.size == 0 and ncols is not None:
        A = A.reshape(A.shape[0], ncols)
    return A


def matmul(F: FieldSpec, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.is_prime:
        if A.shape[-1] == 0:
            return np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
        # entries < 2^20, so chunk the inner dimension to stay inside int64
        k = A.shape[-1]
        step = max(1, (1 << 62) // max(1, (F.p - 1) ** 2))
        if k <= step:
            return (A @ B) % F.p
        out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
        for s in range(0, k, step):
            out = (out + A[..., s : s + step] @ B[s : s + step]) % F.p
        return out
    out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
    for i in range(A.shape[-1]):
        out = F.add(out, F.mul(A[..., i, None], B[i]))
    return out


def rref(F: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = as_matrix(M).copy()
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        if M[r, c] != 1:
            M[r] = F.mul(M[r], F.inv(M[r, c]))
        col = M[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            M[idx] = F.sub(M[idx], F.mul(col[idx, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(F: FieldSpec, M) -> int:
    M = as_matrix(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: FieldSpec, M, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of {x : M x = 0}."""
    M = as_matrix(M, ncols)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(F, M)
    free = [c for c in range(cols) if c not in set(piv)]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        N[i, f] = 1
        for r, pc in enumerate(piv):
            N[i, pc] = F.neg(R[r, f])
    return N


def reduce_rows(F: FieldSpec, R: np.ndarray, pivots: list[int], V) -> np.ndarray:
    """Canonical representatives of the rows of V modulo rowspace(R).

    R must be in reduced row echelon form with the given pivots.  The result
    vanishes on every pivot column, so two vectors are congruent modulo the
    row space iff their reductions agree.
    """
    V = np.array(V, dtype=np.int64, copy=True)
    squeeze = V.ndim == 1
    if squeeze:
        V = V[None, :]
    for r, c in enumerate(pivots):
        coef = V[:, c].copy()
        idx = np.flatnonzero(coef)
        if idx.size:
            V[idx] = F.sub(V[idx], F.mul(coef[idx, None], R[r][None, :]))
    return V[0] if squeeze else V


def in_rowspace(F: FieldSpec, M, V) -> np.ndarray | bool:
    M = as_matrix(M)
    V = np.asarray(V, dtype=np.int64)
    if M.shape[0] == 0:
        res = ~np.any(V != 0, axis=-1)
        return bool(res) if V.ndim == 1 else res
    R, piv = rref(F, M)
    red = reduce_rows(F, R, piv, V)
    res = ~np.any(red != 0, axis=-1)
    return bool(res) if V.ndim == 1 else res


def solve(F: FieldSpec, A, b) -> np.ndarray | None:
    """One solution x of A x = b (free variables zero), or None."""
    A = as_matrix(A)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    rows, cols = A.shape
    if rows == 0:
        return np.zeros(cols, dtype=np.int64)
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, piv = rref(F, aug)
    if piv and piv[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, cols]
    return x


def solve_many(F: FieldSpec, A, B) -> np.ndarray | None:
    """Solutions X with A X^T = B^T row by row (each row of B a right-hand side)."""
    A = as_matrix(A)
    B = np.asarray(B, dtype=np.int64)
    rows, cols = A.shape
    if rows == 0:
        return np.zeros((B.shape[0], cols), dtype=np.int64)
    aug = np.concatenate([A, B.T], axis=1)
    R, piv = rref(F, aug)
    main = [c for c in piv if c < cols]
    if len(main) != len(piv):
        return None
    X = np.zeros((B.shape[0], cols), dtype=np.int64)
    for r, c in enumerate(main):
        X[:, c] = R[r, cols:]
    return X


def inverse(F: FieldSpec, A) -> np.ndarray:
    A = as_matrix(A)
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError("matrix is not square")
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return R[:n, n:]


def complement_basis(F: FieldSpec, sub, sup) -> np.ndarray:
    """Rows of ``sup`` whose span together with ``sub`` spans rowspace(sup) minimally.

    Returns a basis of a complement of rowspace(sub) inside rowspace(sup),
    chosen greedily from the reduced echelon form of ``sup``.
    """
    sub = as_matrix(sub, as_matrix(sup).shape[1])
    Rs, ps = rref(F, sup)
    if sub.shape[0]:
        R0, p0 = rref(F, sub)
    else:
        R0, p0 = np.zeros((0, Rs.shape[1]), dtype=np.int64), []
    basis = []
    cur, cur_piv = R0, p0
    for row in Rs:
        red = reduce_rows(F, cur, cur_piv, row) if cur.shape[0] else row
        if np.any(red != 0):
            basis.append(row)
            cur, cur_piv = rref(F, np.vstack([cur, row]) if cur.shape[0] else row[None, :])
    if not basis:
        return np.zeros((0, Rs.shape[1]), dtype=np.int64)
    return np.array(basis, dtype=np.int64)


def enumerate_span(F: FieldSpec, G, chunk: int | None = None):
    """Yield blocks of (messages, codewords) covering the full row span of G."""
    G = as_matrix(G)
    k, n = G.shape
    total = F.q**k
    chunk = chunk or max(1, min(total, 1 << 16))
    powers = F.q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        msgs = (idx[:, None] // powers[None, :]) % F.q
        yield msgs, matmul(F, msgs, G)
