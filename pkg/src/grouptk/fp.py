"""Dense linear algebra over the prime field F_p (numpy int64, entries in [0, p))."""

from __future__ import annotations

import numpy as np


def as_fp(A, p: int) -> np.ndarray:
    return np.asarray(A, dtype=np.int64) % p


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = as_fp(A, p).copy()
    if R.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        col = R[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            R[hit] = (R[hit] - np.outer(col[hit], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A, p: int) -> int:
    A = as_fp(A, p)
    if A.size == 0:
        return 0
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref(A, p)[1])


def nullspace(A, p: int) -> np.ndarray:
    """Basis (as rows) of {x : A x = 0}."""
    A = as_fp(A, p)
    n = A.shape[1]
    R, piv = rref(A, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(piv):
            basis[k, c] = (-R[i, f]) % p
    return basis


def row_basis(A, p: int) -> np.ndarray:
    """Basis (as rows) of the row space."""
    A = as_fp(A, p)
    if A.shape[0] == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0)
    R, piv = rref(A, p)
    return R[: len(piv)]


def column_basis(A, p: int) -> np.ndarray:
    """Basis (as rows) of the column space (image) of A."""
    return row_basis(as_fp(A, p).T, p)


def inverse(A, p: int) -> np.ndarray:
    A = as_fp(A, p)
    n = A.shape[0]
    R, piv = rref(np.hstack([A, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return R[:, n:]


def is_invertible(A, p: int) -> bool:
    A = as_fp(A, p)
    return A.shape[0] == A.shape[1] and rank(A, p) == A.shape[0]


def matmul(A, B, p: int) -> np.ndarray:
    return (as_fp(A, p) @ as_fp(B, p)) % p


def matpow(A, k: int, p: int) -> np.ndarray:
    A = as_fp(A, p)
    out = np.eye(A.shape[0], dtype=np.int64)
    base = A
    while k:
        if k & 1:
            out = matmul(out, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return out


def solve_rows(B, V, p: int) -> np.ndarray | None:
    """Coefficients X with X @ B == V (rows of V in the row space of B), or None."""
    B, V = as_fp(B, p), as_fp(V, p)
    k = B.shape[0]
    if k == 0:
        return np.zeros((V.shape[0], 0), dtype=np.int64) if not V.any() else None
    # solve B^T x = v for each row v
    aug = np.hstack([B.T, V.T])
    R, piv = rref(aug, p)
    if any(c >= k for c in piv):
        return None
    X = np.zeros((V.shape[0], k), dtype=np.int64)
    for i, c in enumerate(piv):
        X[:, c] = R[i, k:]
    return X
