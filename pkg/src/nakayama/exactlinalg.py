"""Dense linear algebra over a prime field F_p.

Matrices are ``numpy`` int64 arrays with entries in ``[0, p)``.  Every
function returns fresh arrays; inputs are never modified.  The elimination
kernel is compiled with numba because the module decomposition code calls
``rank`` tens of thousands of times on small matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

__all__ = [
    "PrimeField",
    "is_prime",
    "as_matrix",
    "identity",
    "zeros",
    "matmul",
    "rref",
    "rank",
    "kernel_basis",
    "image_basis",
    "extend_basis",
    "solve",
    "inverse",
    "reduce_with_transform",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return pow(a, -1, self.p)

    def __call__(self, a: int) -> int:
        return a % self.p


def as_matrix(rows, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build an int64 matrix reduced mod p.  ``shape`` is needed for empty input."""
    a = np.array(rows, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    return a % p


def identity(k: int) -> np.ndarray:
    return np.eye(k, dtype=np.int64)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % p


@njit(cache=True)
def _inv_mod(a, p):
    t, new_t = 0, 1
    r, new_r = p, a
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


@njit(cache=True)
def _eliminate(a, p, full):
    # In-place row reduction; ``full`` also clears entries above pivots.
    rows, cols = a.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(cols):
                tmp = a[r, k]
                a[r, k] = a[piv, k]
                a[piv, k] = tmp
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for k in range(c, cols):
                a[r, k] = (a[r, k] * inv) % p
        start = 0 if full else r + 1
        for i in range(start, rows):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for k in range(c, cols):
                    a[i, k] = (a[i, k] - f * a[r, k]) % p
        pivots[r] = c
        r += 1
    return r, pivots[:r]


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = np.array(m, dtype=np.int64) % p
    if a.size == 0:
        return a, []
    _, piv = _eliminate(a, p, True)
    return a, [int(c) for c in piv]


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    a = np.array(m, dtype=np.int64) % p
    r, _ = _eliminate(a, p, False)
    return int(r)


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the right kernel of ``m``, one per free column."""
    cols = m.shape[1]
    if m.shape[0] == 0 or m.size == 0:
        return identity(cols)
    r, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(cols, len(free))
    for k, c in enumerate(free):
        basis[c, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-r[row, c]) % p
    return basis


def image_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Linearly independent columns of ``m`` spanning its column space."""
    if m.size == 0:
        return zeros(m.shape[0], 0)
    _, pivots = rref(m, p)
    return np.array(m[:, pivots], dtype=np.int64) % p


def extend_basis(sub: np.ndarray, cand: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``cand`` completing the independent columns ``sub`` to a
    basis of span(sub, cand)."""
    k = sub.shape[1]
    both = np.hstack([sub, cand]) if k else cand
    if both.size == 0:
        return zeros(cand.shape[0], 0)
    _, pivots = rref(both, p)
    if pivots[:k] != list(range(k)):
        raise ValueError("columns of sub are not independent")
    return np.array(cand[:, [c - k for c in pivots[k:]]], dtype=np.int64) % p


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Return X with a @ X = b.  ``a`` must have independent columns."""
    rows, cols = a.shape
    if cols == 0:
        if np.any(b % p):
            raise ValueError("system has no solution")
        return zeros(0, b.shape[1])
    aug = np.hstack([a, b])
    r, pivots = rref(aug, p)
    if pivots[:cols] != list(range(cols)) or (len(pivots) > cols):
        raise ValueError("system has no solution or a is rank deficient")
    return np.array(r[:cols, cols:], dtype=np.int64)


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    k = m.shape[0]
    if m.shape != (k, k):
        raise ValueError("matrix is not square")
    if k == 0:
        return zeros(0, 0)
    r, pivots = rref(np.hstack([m, identity(k)]), p)
    if pivots[:k] != list(range(k)) or len(pivots) > k:
        raise ValueError("matrix is singular")
    return np.array(r[:, k:], dtype=np.int64)


def reduce_with_transform(m: np.ndarray, p: int):
    """Return (R, P, Q) with P @ m @ Q == R = [[I_r, 0], [0, 0]] and P, Q
    invertible over F_p."""
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return zeros(rows, cols), identity(rows), identity(cols)
    aug = np.hstack([np.array(m, dtype=np.int64) % p, identity(rows)])
    red, piv_all = rref(aug, p)
    pivots = [c for c in piv_all if c < cols]
    left = np.array(red[:, cols:], dtype=np.int64)
    echelon = np.array(red[:, :cols], dtype=np.int64)
    q0 = identity(cols)
    pivot_set = set(pivots)
    for c in range(cols):
        if c in pivot_set:
            continue
        for row, pc in enumerate(pivots):
            q0[pc, c] = (-echelon[row, c]) % p
    order = pivots + [c for c in range(cols) if c not in pivot_set]
    perm = zeros(cols, cols)
    for new, old in enumerate(order):
        perm[old, new] = 1
    right = matmul(q0, perm, p)
    r = len(pivots)
    normal = zeros(rows, cols)
    normal[np.arange(r), np.arange(r)] = 1
    return normal, left, right
