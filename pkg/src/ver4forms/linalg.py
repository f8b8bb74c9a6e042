"""Dense exact linear algebra over GF(2^k).

Matrices are 2-D numpy int64 arrays of element encodings; a `Field` context
supplies the arithmetic.  Row reduction uses standard Gaussian elimination
with vectorised row operations (row addition is XOR, scaling goes through
the field's exp/log tables), so everything stays exact.
"""

from __future__ import annotations

import numpy as np

from .field import Field


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def as_matrix(F: Field, data) -> np.ndarray:
    """Validate and copy `data` into an int64 matrix of field encodings."""
    M = np.array(data, dtype=np.int64)
    if M.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {M.ndim}")
    if M.size and (M.min() < 0 or M.max() >= F.order):
        raise ValueError(f"matrix entries must be encodings in [0, {F.order})")
    return M


def mat_mul(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    ra, inner = A.shape
    innerb, cb = B.shape
    if inner != innerb:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    C = zeros(ra, cb)
    for l in range(inner):
        col = A[:, l]
        if not col.any():
            continue
        row = B[l]
        if not row.any():
            continue
        C ^= F.mul_arr(col[:, None], row[None, :])
    return C


def mat_vec(F: Field, A: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = F.mul_arr(A, np.asarray(v, dtype=np.int64)[None, :])
    return np.bitwise_xor.reduce(out, axis=1) if out.shape[1] else np.zeros(A.shape[0], dtype=np.int64)


def dot(F: Field, u: np.ndarray, v: np.ndarray) -> int:
    p = F.mul_arr(u, v)
    return int(np.bitwise_xor.reduce(p)) if p.size else 0


def scale_vec(F: Field, c: int, v: np.ndarray) -> np.ndarray:
    return F.mul_arr(np.int64(c), v)


def kron(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product with field multiplication of entries."""
    ra, ca = A.shape
    rb, cb = B.shape
    out = F.mul_arr(A[:, None, :, None], B[None, :, None, :])
    return out.reshape(ra * rb, ca * cb)


def row_reduce(F: Field, M: np.ndarray, n_pivot_cols: int | None = None):
    """Reduced row echelon form over the field.

    Returns (R, pivots); pivots are the pivot column indices in order.
    Pivot search can be limited to the first `n_pivot_cols` columns (for
    augmented systems); row operations always apply to the full width.
    """
    R = np.array(M, dtype=np.int64, copy=True)
    rows, cols = R.shape
    if n_pivot_cols is None:
        n_pivot_cols = cols
    pivots: list[int] = []
    r = 0
    for c in range(n_pivot_cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        pv = int(R[r, c])
        if pv != 1:
            R[r] = F.mul_arr(R[r], F.inv(pv))
        mask = R[:, c] != 0
        mask[r] = False
        if mask.any():
            R[mask] ^= F.mul_arr(R[mask, c][:, None], R[r][None, :])
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: Field, M: np.ndarray) -> int:
    if M.size == 0:
        return 0
    return len(row_reduce(F, M)[1])


def is_invertible(F: Field, M: np.ndarray) -> bool:
    n = M.shape[0]
    return M.shape[1] == n and rank(F, M) == n


def null_space(F: Field, M: np.ndarray) -> np.ndarray:
    """Basis of the right null space, as matrix columns (deterministic)."""
    rows, cols = M.shape
    R, piv = row_reduce(F, M)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = zeros(cols, len(free))
    for idx, fc in enumerate(free):
        basis[fc, idx] = 1
        for r_i, pc in enumerate(piv):
            basis[pc, idx] = R[r_i, fc]
    return basis


def inverse(F: Field, M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    if M.shape[1] != n:
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([M, eye(n)], axis=1)
    R, piv = row_reduce(F, aug, n_pivot_cols=n)
    if piv != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:]


def solve(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Solve A X = B exactly for full-column-rank A; raises otherwise."""
    B = np.asarray(B, dtype=np.int64)
    vec_in = B.ndim == 1
    if vec_in:
        B = B[:, None]
    n = A.shape[1]
    aug = np.concatenate([A, B], axis=1)
    R, piv = row_reduce(F, aug, n_pivot_cols=n)
    if piv != list(range(n)):
        raise ValueError("coefficient matrix does not have full column rank")
    if np.any(R[n:, n:]):
        raise ValueError("inconsistent linear system")
    X = R[:n, n:]
    return X[:, 0] if vec_in else X


def congruence(F: Field, T: np.ndarray, G: np.ndarray) -> np.ndarray:
    """Gram transform T^T G T."""
    return mat_mul(F, mat_mul(F, T.T, G), T)


def batch_congruence(F: Field, Ts: np.ndarray, G: np.ndarray) -> np.ndarray:
    """T^T G T for a stack Ts of shape (b, n, n); returns (b, n, n)."""
    b, n, _ = Ts.shape
    left = np.zeros((b, n, n), dtype=np.int64)  # Ts^T @ G
    for l in range(n):
        row = G[l]
        if not row.any():
            continue
        left ^= F.mul_arr(Ts[:, l, :, None], row[None, None, :])
    out = np.zeros((b, n, n), dtype=np.int64)
    for l in range(n):
        out ^= F.mul_arr(left[:, :, l, None], Ts[:, None, l, :])
    return out


class SpanTracker:
    """Incremental membership test for the span of a growing vector set."""

    def __init__(self, F: Field, length: int):
        self.F = F
        self.length = length
        self.rows: list[np.ndarray] = []  # echelonised, one pivot each
        self.pivots: list[int] = []

    def _reduce(self, vec: np.ndarray) -> np.ndarray:
        v = np.array(vec, dtype=np.int64, copy=True)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                v ^= self.F.mul_arr(np.int64(v[p]), row)
        return v

    def contains(self, vec) -> bool:
        return not self._reduce(vec).any()

    def add(self, vec) -> bool:
        """Add `vec` to the span; True if it was independent."""
        v = self._reduce(vec)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        p = int(nz[0])
        v = self.F.mul_arr(np.int64(self.F.inv(int(v[p]))), v)
        self.rows.append(v)
        self.pivots.append(p)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)
