"""Dense linear algebra over a :class:`~geolrc.gf.GF` on integer-code arrays."""

from __future__ import annotations

import numpy as np

from .gf import GF

__all__ = ["as_matrix", "rref", "rank", "nullspace", "det", "solve", "inverse", "matmul", "row_space_basis"]


def as_matrix(field: GF, rows, ncols: int | None = None) -> np.ndarray:
    """Validate and convert a matrix of integer codes.

    Raises ``ValueError`` for ragged input or out-of-range entries.
    """
    if isinstance(rows, np.ndarray):
        M = rows.astype(np.int64, copy=True)
        if M.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
    else:
        rows = [list(r) for r in rows]
        if not rows:
            return np.zeros((0, ncols or 0), dtype=np.int64)
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        M = np.array(rows, dtype=np.int64).reshape(len(rows), width)
    if M.size and (M.min() < 0 or M.max() >= field.q):
        raise ValueError("matrix entries must be field codes in [0, q)")
    return M


def rref(field: GF, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = as_matrix(field, M)
    nrows, ncols = A.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(A[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        inv = field.inv(int(A[row, col]))
        if inv != 1:
            A[row] = field.vmul(inv, A[row])
        others = np.nonzero(A[:, col])[0]
        others = others[others != row]
        if others.size:
            factors = field.vneg(A[others, col])
            A[others] = field.vadd(A[others], field.vmul(factors[:, None], A[row][None, :]))
        pivots.append(col)
        row += 1
    return A, pivots


def rank(field: GF, M) -> int:
    return len(rref(field, M)[1])


def row_space_basis(field: GF, M) -> np.ndarray:
    """Rows of the RREF spanning the row space of ``M``."""
    R, piv = rref(field, M)
    return R[: len(piv)]


def nullspace(field: GF, M) -> np.ndarray:
    """Basis (as rows) of the right kernel ``{x : M x = 0}``."""
    A = as_matrix(field, M)
    ncols = A.shape[1]
    R, piv = rref(field, A)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for i, fc in enumerate(free):
        out[i, fc] = 1
        for r, pc in enumerate(piv):
            out[i, pc] = field.neg(int(R[r, fc]))
    return out


def det(field: GF, M) -> int:
    A = as_matrix(field, M)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("determinant needs a square matrix")
    d = 1
    for col in range(n):
        nz = np.nonzero(A[col:, col])[0]
        if nz.size == 0:
            return 0
        piv = col + int(nz[0])
        if piv != col:
            A[[col, piv]] = A[[piv, col]]
            d = field.neg(d)
        pv = int(A[col, col])
        d = field.mul(d, pv)
        inv = field.inv(pv)
        below = np.arange(col + 1, n)
        below = below[A[below, col] != 0]
        if below.size:
            factors = field.vmul(field.vneg(A[below, col]), inv)
            A[below] = field.vadd(A[below], field.vmul(factors[:, None], A[col][None, :]))
    return d


def solve(field: GF, A, b) -> np.ndarray | None:
    """One solution of ``A x = b`` or ``None`` if the system is inconsistent."""
    A = as_matrix(field, A)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    if b.shape[0] != A.shape[0]:
        raise ValueError("right-hand side has the wrong length")
    R, piv = rref(field, np.hstack([A, b]))
    ncols = A.shape[1]
    if piv and piv[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for r, pc in enumerate(piv):
        x[pc] = R[r, ncols]
    return x


def inverse(field: GF, A) -> np.ndarray:
    A = as_matrix(field, A)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    R, piv = rref(field, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def matmul(field: GF, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.ndim == 1:
        return matmul(field, A[None, :], B)[0]
    if B.ndim == 1:
        return matmul(field, A, B[:, None])[:, 0]
    if A.shape[1] != B.shape[0]:
        raise ValueError("shape mismatch")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for l in range(A.shape[1]):
        col = A[:, l]
        if not col.any():
            continue
        out = field.vadd(out, field.vmul(col[:, None], B[l][None, :]))
    return out
