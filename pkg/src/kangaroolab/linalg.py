"""Linear algebra over F_p and over F_p[t].

Numeric matrices go through numpy with int64 entries reduced mod p after
every step; polynomial matrices use fraction-free (Bareiss) elimination.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .fpoly import Poly, exact_quotient


class SingularMatrix(ArithmeticError):
    pass


def _as_array(M, p: int) -> np.ndarray:
    A = np.array(M, dtype=np.int64).reshape(len(M), -1) if len(M) else np.zeros((0, 0), dtype=np.int64)
    return A % p


def det_mod_p(M: Sequence[Sequence[int]], p: int) -> int:
    A = _as_array(M, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    det = 1
    for col in range(n):
        nz = np.nonzero(A[col:, col])[0]
        if not len(nz):
            return 0
        piv = col + int(nz[0])
        if piv != col:
            A[[col, piv]] = A[[piv, col]]
            det = -det
        pivot = int(A[col, col])
        det = det * pivot % p
        A[col] = A[col] * pow(pivot, -1, p) % p
        below = A[col + 1:, col].copy()
        if below.any():
            A[col + 1:] = (A[col + 1:] - np.outer(below, A[col])) % p
    return det % p


def rank_mod_p(M: Sequence[Sequence[int]], p: int) -> int:
    A = _as_array(M, p)
    rows, cols = A.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(A[rank:, col])[0]
        if not len(nz):
            continue
        piv = rank + int(nz[0])
        A[[rank, piv]] = A[[piv, rank]]
        A[rank] = A[rank] * pow(int(A[rank, col]), -1, p) % p
        others = A[:, col].copy()
        others[rank] = 0
        A = (A - np.outer(others, A[rank])) % p
        rank += 1
    return rank


def solve_mod_p(M: Sequence[Sequence[int]], b: Sequence[int], p: int) -> list[int]:
    """The unique x with ``M x = b`` over F_p."""
    A = _as_array(M, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("solve needs a square matrix")
    aug = np.concatenate([A, (np.array(b, dtype=np.int64) % p).reshape(n, 1)], axis=1)
    for col in range(n):
        nz = np.nonzero(aug[col:, col])[0]
        if not len(nz):
            raise SingularMatrix(f"matrix is singular modulo {p}")
        piv = col + int(nz[0])
        aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] * pow(int(aug[col, col]), -1, p) % p
        others = aug[:, col].copy()
        others[col] = 0
        aug = (aug - np.outer(others, aug[col])) % p
    return [int(v) for v in aug[:, n]]


def bareiss_det(M: Sequence[Sequence[Poly]]) -> Poly:
    """Exact determinant of a square matrix of polynomials over F_p."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    A = [list(row) for row in M]
    one = Poly.const(1, A[0][0].p, A[0][0].vars)
    prev = one
    sign = 1
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if swap is None:
                return Poly.zero(one.p, one.vars)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = exact_quotient(num, prev) if prev != one else num
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det
