"""Exact matrix arithmetic: SNF over the integers, rank over Q and F_p.

Fast path: int64 kernels from _kernels (jitted when available).  Any
kernel abort from entry growth falls back to the unbounded-integer
implementations below, so results are exact for every input.
"""

import math
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import DomainError


class IntMatrix:
    """Immutable dense matrix of exact integers."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows=None, cols=None):
        data = tuple(tuple(int(x) for x in r) for r in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise DomainError("ragged matrix rows")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(tuple((0,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def from_numpy(cls, arr):
        return cls(tuple(tuple(int(x) for x in row) for row in arr))

    def max_abs(self):
        big = 0
        for r in self.data:
            for x in r:
                if -x > big:
                    big = -x
                elif x > big:
                    big = x
        return big

    def to_numpy(self):
        """int64 view; only valid when max_abs() is small enough."""
        return np.array(self.data, dtype=np.int64).reshape(self.rows, self.cols)

    def transpose(self):
        return IntMatrix(tuple(zip(*self.data)), self.cols, self.rows) if self.data \
            else IntMatrix((), self.cols, self.rows)

    def mul(self, other):
        if self.cols != other.rows:
            raise DomainError("dimension mismatch in matrix product")
        ot = tuple(zip(*other.data)) if other.data else ()
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.data
        )
        return IntMatrix(out, self.rows, other.cols)

    __matmul__ = mul

    def mod(self, m):
        return IntMatrix(tuple(tuple(x % m for x in r) for r in self.data),
                         self.rows, self.cols)

    def is_identity(self):
        return self.rows == self.cols and all(
            x == (1 if i == j else 0)
            for i, r in enumerate(self.data) for j, x in enumerate(r)
        )

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"


class SnfResult:
    __slots__ = ("invariant_factors", "rank")

    def __init__(self, invariant_factors):
        factors = tuple(int(d) for d in invariant_factors)
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise AssertionError("invariant factors must form a divisibility chain")
        self.invariant_factors = factors
        self.rank = len(factors)

    def rank_mod(self, p):
        # factors divisible by p kill one rank each over F_p
        return self.rank - sum(1 for d in self.invariant_factors if d % p == 0)

    def torsion(self):
        return tuple(d for d in self.invariant_factors if d > 1)

    def __repr__(self):
        return f"SnfResult({self.invariant_factors})"


def _as_rows(M):
    if isinstance(M, IntMatrix):
        return M.data, M.rows, M.cols
    if isinstance(M, np.ndarray):
        return tuple(tuple(int(x) for x in row) for row in M), M.shape[0], M.shape[1]
    rows = tuple(tuple(int(x) for x in r) for r in M)
    return rows, len(rows), (len(rows[0]) if rows else 0)


def is_prime(p):
    """Deterministic Miller-Rabin, exact for all 64-bit inputs."""
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d = p - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _snf_python(rows, m, n):
    """Unbounded-integer SNF diagonal, smallest pivot rule."""
    A = [list(r) for r in rows]
    diag = []
    t = 0
    kmax = min(m, n)
    while t < kmax:
        bi = bj = -1
        bv = 0
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                v = abs(Ai[j])
                if v and (bv == 0 or v < bv):
                    bi, bj, bv = i, j, v
        if bi < 0:
            break
        while True:
            if bi != t:
                A[t], A[bi] = A[bi], A[t]
            if bj != t:
                for row in A:
                    row[t], row[bj] = row[bj], row[t]
            if A[t][t] < 0:
                A[t] = [-x for x in A[t]]
            piv = A[t][t]
            dirty = False
            At = A[t]
            for i in range(t + 1, m):
                Ai = A[i]
                if Ai[t]:
                    q = Ai[t] // piv
                    if q:
                        for j in range(t, n):
                            Ai[j] -= q * At[j]
                    if Ai[t]:
                        dirty = True
            for j in range(t + 1, n):
                if At[j]:
                    q = At[j] // piv
                    if q:
                        for i in range(t, m):
                            A[i][j] -= q * A[i][t]
                    if At[j]:
                        dirty = True
            if not dirty:
                break
            bi, bj, bv = t, t, piv
            for i in range(t + 1, m):
                v = abs(A[i][t])
                if v and v < bv:
                    bi, bj, bv = i, t, v
            for j in range(t + 1, n):
                v = abs(A[t][j])
                if v and v < bv:
                    bi, bj, bv = t, j, v
        diag.append(A[t][t])
        t += 1
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a != 0:
                g = math.gcd(a, b)
                diag[i], diag[i + 1] = g, a // g * b
                changed = True
    return sorted(diag)


def smith_normal_form(M):
    """Invariant factors of an integer matrix."""
    rows, m, n = _as_rows(M)
    if m == 0 or n == 0:
        return SnfResult(())
    big = max(abs(x) for r in rows for x in r)
    if big <= _kernels.ENTRY_LIMIT:
        arr = np.array(rows, dtype=np.int64)
        diag, k, ok = _kernels.snf_diag(arr)
        if ok:
            return SnfResult(tuple(int(d) for d in diag[:k]))
    return SnfResult(_snf_python(rows, m, n))


def _rank_fraction(rows, m, n):
    A = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for col in range(n):
        piv = -1
        for i in range(rank, m):
            if A[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = 1 / A[rank][col]
        for i in range(rank + 1, m):
            f = A[i][col] * inv
            if f:
                Ar = A[rank]
                Ai = A[i]
                for j in range(col, n):
                    Ai[j] -= f * Ar[j]
        rank += 1
        if rank == m:
            break
    return rank


def _rank_modp_python(rows, m, n, p):
    A = [[x % p for x in r] for r in rows]
    rank = 0
    for col in range(n):
        piv = -1
        for i in range(rank, m):
            if A[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][col], -1, p)
        for i in range(rank + 1, m):
            f = A[i][col] * inv % p
            if f:
                Ar = A[rank]
                Ai = A[i]
                for j in range(col, n):
                    Ai[j] = (Ai[j] - f * Ar[j]) % p
        rank += 1
        if rank == m:
            break
    return rank


def rank(M, coeff="q"):
    """Exact rank over the rationals (coeff="q") or F_p (coeff=p)."""
    rows, m, n = _as_rows(M)
    if m == 0 or n == 0:
        return 0
    if coeff == "q":
        big = max(abs(x) for r in rows for x in r)
        if big <= _kernels.ENTRY_LIMIT:
            r, ok = _kernels.bareiss_rank(np.array(rows, dtype=np.int64))
            if ok:
                return int(r)
        return _rank_fraction(rows, m, n)
    p = int(coeff)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    big = max(abs(x) for r in rows for x in r)
    if p < (1 << 31) and big < (1 << 62):
        return int(_kernels.rank_modp(np.array(rows, dtype=np.int64), p))
    return _rank_modp_python(rows, m, n, p)
