"""Exact arithmetic kernel.

Integer matrices are plain tuples of row tuples.  Rationals are
``fractions.Fraction``; a value of Q/Z is a ``Fraction`` reduced into
``[0, 1)`` by :func:`mod1`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Optional, Sequence

from .errors import DimensionError

IntMatrix = tuple  # tuple[tuple[int, ...], ...]


def mod1(x) -> Fraction:
    """Canonical representative of ``x`` in Q/Z, in [0, 1)."""
    return Fraction(x) % 1


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def content(values: Sequence[int]) -> int:
    """gcd of the entries, 0 for an empty or zero vector."""
    return reduce(math.gcd, (abs(v) for v in values), 0)


def denominator_lcm(values) -> int:
    return lcm(*(Fraction(v).denominator for v in values))


# -- matrix helpers ---------------------------------------------------------

def as_matrix(rows) -> IntMatrix:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A, ncols: Optional[int] = None) -> IntMatrix:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A)) if A[0] else ()


def matmul(A, B, ncols: Optional[int] = None):
    """Product of two matrices (entries may be ints or Fractions).

    ``ncols`` is the column count of ``B``; only needed when ``B`` has no rows.
    """
    if B:
        ncols = len(B[0])
    ncols = ncols or 0
    Bt = transpose(B, ncols)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A, x) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def vecmat(x, A, ncols: Optional[int] = None) -> tuple:
    """Row vector times matrix."""
    return matvec(transpose(A, ncols), x)


def columns(A, ncols: int) -> list:
    return [tuple(row[j] for row in A) for j in range(ncols)]


def from_columns(cols, nrows: int) -> IntMatrix:
    return tuple(tuple(c[i] for c in cols) for i in range(nrows))


def block_diagonal(A, B) -> IntMatrix:
    m, n = len(A), len(B)
    return tuple(tuple(A[i]) + (0,) * n for i in range(m)) + tuple(
        (0,) * m + tuple(B[i]) for i in range(n)
    )


def determinant(A) -> Fraction:
    """Determinant by fraction-valued elimination."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            M[k], M[p] = M[p], M[k]
            det = -det
        det *= M[k][k]
        for i in range(k + 1, n):
            if M[i][k]:
                t = M[i][k] / M[k][k]
                M[i] = [a - t * b for a, b in zip(M[i], M[k])]
    return det


def rational_inverse(A) -> tuple:
    """Inverse over Q; raises ``ZeroDivisionError`` when singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        M[k], M[p] = M[p], M[k]
        piv = M[k][k]
        M[k] = [x / piv for x in M[k]]
        for i in range(n):
            if i != k and M[i][k]:
                t = M[i][k]
                M[i] = [a - t * b for a, b in zip(M[i], M[k])]
    return tuple(tuple(row[n:]) for row in M)


def unimodular_inverse(A) -> IntMatrix:
    inv = rational_inverse(A)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


# -- Smith normal form ------------------------------------------------------

def smith_normal_form(A, ncols: Optional[int] = None):
    """Return ``(U, D, V)`` with ``U * A * V == D`` in Smith normal form.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative
    entries ``d_1 | d_2 | ...``.  Pivots are chosen as the entry of smallest
    absolute value, ties broken by lowest row and then lowest column, so the
    transforms are deterministic.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(D[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            rest = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, i, j = min(rest)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return as_matrix(U), as_matrix(D), as_matrix(V)


def invariant_factors(A, ncols: Optional[int] = None) -> tuple:
    _, D, _ = smith_normal_form(A, ncols)
    return tuple(D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)))


# -- linear systems over Z --------------------------------------------------

def solve_mixed(A, b, moduli, ncols: Optional[int] = None) -> Optional[tuple]:
    """Solve ``(A x)_i = b_i`` mod ``moduli[i]``; modulus 0 means an exact equation."""
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    if len(b) != m or len(moduli) != m:
        raise DimensionError("right-hand side and moduli must match the row count")
    if any(len(row) != n for row in A):
        raise DimensionError("ragged coefficient matrix")
    if m == 0:
        return (0,) * n
    B = [list(row) + [moduli[i] if i == k else 0 for k in range(m)] for i, row in enumerate(A)]
    U, D, V = smith_normal_form(B)
    Ub = matvec(U, b)
    y = [0] * (n + m)
    for i in range(m):
        d = D[i][i]
        if d == 0:
            if Ub[i]:
                return None
        elif Ub[i] % d:
            return None
        else:
            y[i] = Ub[i] // d
    x = matvec(V, y)[:n]
    return tuple(x)


def solve_congruences(A, b, moduli, ncols: Optional[int] = None) -> Optional[tuple]:
    """Find ``x`` with ``(A x)_i == b_i (mod moduli[i])``, or ``None``."""
    if any(mod <= 0 for mod in moduli):
        raise ValueError("moduli must be positive")
    return solve_mixed(A, b, moduli, ncols)


def integer_kernel(A, ncols: Optional[int] = None) -> list:
    """Basis (list of column vectors) of ``{x in Z^n : A x = 0}``, saturated."""
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    _, D, V = smith_normal_form(A, n)
    r = sum(1 for i in range(min(m, n)) if D[i][i])
    return [tuple(V[i][j] for i in range(n)) for j in range(r, n)]


# -- cyclotomic numbers -----------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(num)


def _poly_divmod(num, den):
    num = list(num)
    dq = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dq:
        return [0], num
    quot = [0] * (len(num) - dq)
    for k in range(len(num) - 1, dq - 1, -1):
        c = num[k]
        if c:
            assert c % lead == 0
            c //= lead
            quot[k - dq] = c
            for i, a in enumerate(den):
                num[k - dq + i] -= c * a
    return quot, num[:dq] if dq else [0]


@dataclass(frozen=True)
class CyclotomicNumber:
    """``sum_k coeffs[k] * zeta_level**k`` together with the integer whose
    square root normalizes a Gauss sum."""

    level: int
    coeffs: tuple
    norm_square: int = 1

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        if len(self.coeffs) != self.level:
            raise ValueError("need exactly `level` coefficients")

    def lift(self, level: int) -> "CyclotomicNumber":
        if level % self.level:
            raise ValueError(f"{level} is not a multiple of {self.level}")
        step = level // self.level
        out = [0] * level
        for k, c in enumerate(self.coeffs):
            out[k * step] += c
        return CyclotomicNumber(level, tuple(out), self.norm_square)

    def conjugate(self) -> "CyclotomicNumber":
        N = self.level
        return CyclotomicNumber(N, tuple(self.coeffs[-k % N] for k in range(N)), self.norm_square)

    def __mul__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        L = lcm(self.level, other.level)
        a, b = self.lift(L).coeffs, other.lift(L).coeffs
        out = [0] * L
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[(i + j) % L] += x * y
        return CyclotomicNumber(L, tuple(out), self.norm_square * other.norm_square)

    def times_root(self, r) -> "CyclotomicNumber":
        """Multiply by ``exp(2 pi i r)`` for a rational ``r``."""
        r = mod1(r)
        L = lcm(self.level, r.denominator)
        shift = int(r * L)
        c = self.lift(L).coeffs
        return CyclotomicNumber(L, tuple(c[(k - shift) % L] for k in range(L)), self.norm_square)

    def to_complex(self) -> complex:
        N = self.level
        s = sum(c * cmath.exp(2j * cmath.pi * k / N) for k, c in enumerate(self.coeffs))
        return s / math.sqrt(self.norm_square)


def sums_equal(x: CyclotomicNumber, y: CyclotomicNumber) -> bool:
    """Equality of the unnormalized sums as complex numbers."""
    L = lcm(x.level, y.level)
    diff = [a - b for a, b in zip(x.lift(L).coeffs, y.lift(L).coeffs)]
    if not any(diff):
        return True
    _, rem = _poly_divmod(diff, cyclotomic_polynomial(L))
    return not any(rem)


def cyclotomic_equal(x: CyclotomicNumber, y: CyclotomicNumber) -> bool:
    return x.norm_square == y.norm_square and sums_equal(x, y)
