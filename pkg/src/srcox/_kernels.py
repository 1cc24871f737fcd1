"""Hot integer kernels: Smith diagonalization, mod-p rank, Bareiss rank.

Every kernel exists twice: `_foo` is the plain Python/numpy version and
`foo` is the jitted one when numba is importable and SRCOX_NO_NUMBA is
not set.  Both share the same source, so results are identical by
construction; tests and benchmarks exercise both.

All kernels work on int64 and guard against overflow: entries are kept
below ENTRY_LIMIT between elimination sweeps, which makes every single
update fit comfortably in int64 (see the comment at ENTRY_LIMIT).  A
kernel that would exceed the limit reports ok=0 and the caller redoes
the computation with unbounded Python integers.
"""

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - environment without numba
    HAS_NUMBA = False

USE_JIT = HAS_NUMBA and os.environ.get("SRCOX_NO_NUMBA") != "1"

# With all entries bounded by 2^30 before a sweep, one update is at most
# |a| + |q|*|b| <= 2^30 + 2^30 * 2^30 < 2^61, so no int64 wraparound can
# happen inside a sweep; the bound is re-checked after every sweep.
ENTRY_LIMIT = 1 << 30


def _snf_diag(A):
    """Diagonalize A by unimodular row/column operations, in place.

    Pivot rule: smallest nonzero absolute value in the remaining
    submatrix, ties by row then column.  Returns (diag, k, ok) where
    diag[:k] are the positive diagonal entries before the divisibility
    fixup and ok=0 signals an aborted computation (entry too large).
    """
    m, n = A.shape
    kmax = m if m < n else n
    diag = np.zeros(kmax, dtype=np.int64)
    t = 0
    while t < kmax:
        # locate the smallest nonzero entry of A[t:, t:]
        bi = -1
        bj = -1
        bv = 0
        for i in range(t, m):
            for j in range(t, n):
                v = A[i, j]
                if v < 0:
                    v = -v
                if v != 0 and (bv == 0 or v < bv):
                    bi, bj, bv = i, j, v
        if bi < 0:
            break
        while True:
            if bi != t:
                for j in range(n):
                    A[t, j], A[bi, j] = A[bi, j], A[t, j]
            if bj != t:
                for i in range(m):
                    A[i, t], A[i, bj] = A[i, bj], A[i, t]
            if A[t, t] < 0:
                for j in range(n):
                    A[t, j] = -A[t, j]
            piv = A[t, t]
            dirty = False
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    q = A[i, t] // piv
                    if q != 0:
                        for j in range(t, n):
                            A[i, j] -= q * A[t, j]
                    if A[i, t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    q = A[t, j] // piv
                    if q != 0:
                        for i in range(t, m):
                            A[i, j] -= q * A[i, t]
                    if A[t, j] != 0:
                        dirty = True
            big = 0
            for i in range(t, m):
                for j in range(t, n):
                    v = A[i, j]
                    if v < 0:
                        v = -v
                    if v > big:
                        big = v
            if big > ENTRY_LIMIT:
                return diag, t, 0
            if not dirty:
                break
            # a nonzero remainder smaller than the pivot exists in row or
            # column t; make it the new pivot and sweep again
            bi, bj, bv = t, t, piv
            for i in range(t + 1, m):
                v = A[i, t]
                if v < 0:
                    v = -v
                if v != 0 and v < bv:
                    bi, bj, bv = i, t, v
            for j in range(t + 1, n):
                v = A[t, j]
                if v < 0:
                    v = -v
                if v != 0 and v < bv:
                    bi, bj, bv = t, j, v
        diag[t] = A[t, t]
        t += 1
    # divisibility fixup on the diagonal: replace (a, b) by (gcd, lcm)
    # until the chain divides; products stay below 2^60
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            a = diag[i]
            b = diag[i + 1]
            if b % a != 0:
                x, y = a, b
                while y != 0:
                    x, y = y, x % y
                diag[i] = x
                diag[i + 1] = a // x * b
                changed = True
    for i in range(t):
        for j in range(i + 1, t):
            if diag[j] < diag[i]:
                diag[i], diag[j] = diag[j], diag[i]
    return diag, t, 1


def _rank_modp(A, p):
    """Rank of A over the field with p elements; p must be prime."""
    m, n = A.shape
    B = np.empty((m, n), dtype=np.int64)
    for i in range(m):
        for j in range(n):
            B[i, j] = A[i, j] % p
    rank = 0
    for col in range(n):
        piv = -1
        for i in range(rank, m):
            if B[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(col, n):
                B[rank, j], B[piv, j] = B[piv, j], B[rank, j]
        # inverse of the pivot by Fermat: a^(p-2) mod p
        a = B[rank, col]
        e = p - 2
        inv = 1
        while e > 0:
            if e & 1:
                inv = inv * a % p
            a = a * a % p
            e >>= 1
        for i in range(rank + 1, m):
            f = B[i, col] * inv % p
            if f != 0:
                for j in range(col, n):
                    B[i, j] = (B[i, j] - f * B[rank, j]) % p
        rank += 1
        if rank == m:
            break
    return rank


def _bareiss_rank(A):
    """Rank over the rationals by fraction-free elimination.

    Returns (rank, ok); ok=0 when an intermediate entry left the safe
    range and the caller must fall back to exact arithmetic.
    """
    m, n = A.shape
    B = A.copy()
    prev = np.int64(1)
    rank = 0
    for col in range(n):
        piv = -1
        for i in range(rank, m):
            if B[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(n):
                B[rank, j], B[piv, j] = B[piv, j], B[rank, j]
        pv = B[rank, col]
        for i in range(rank + 1, m):
            bic = B[i, col]
            for j in range(col + 1, n):
                B[i, j] = (B[i, j] * pv - bic * B[rank, j]) // prev
            B[i, col] = 0
        big = 0
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                v = B[i, j]
                if v < 0:
                    v = -v
                if v > big:
                    big = v
        if big > ENTRY_LIMIT:
            return rank, 0
        prev = pv
        rank += 1
        if rank == m:
            break
    return rank, 1


if USE_JIT:
    snf_diag = njit(cache=True, nogil=True)(_snf_diag)
    rank_modp = njit(cache=True, nogil=True)(_rank_modp)
    bareiss_rank = njit(cache=True, nogil=True)(_bareiss_rank)
else:
    snf_diag = _snf_diag
    rank_modp = _rank_modp
    bareiss_rank = _bareiss_rank


def warmup():
    """Trigger jit compilation once so timed sections stay honest."""
    M = np.array([[2, 4, 4], [-6, 6, 12], [10, 4, 16]], dtype=np.int64)
    snf_diag(M.copy())
    rank_modp(M, 3)
    bareiss_rank(M)
