"""Exact integer matrix algebra.

Everything here works on Python integers, so there is no overflow and no
rounding anywhere.  Matrices act on column vectors: a ``rows x cols`` matrix
is a map ``Z^cols -> Z^rows``.  Empty dimensions are allowed and stand for
zero maps into or out of the trivial group.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[Iterable[int]]):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if len(data) != rows or any(len(row) != cols for row in data):
            raise DimensionError(f"entries do not form a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._data = data
        self._hash = None

    @classmethod
    def _trusted(cls, rows: int, cols: int, data: list[list[int]]) -> IntMatrix:
        """Skip validation for entries produced internally."""
        obj = cls.__new__(cls)
        obj.rows, obj.cols = rows, cols
        obj._data = tuple(map(tuple, data))
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("cannot infer column count of a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        columns = [list(c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise DimensionError("column length mismatch")
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        k = len(values)
        rows = k if rows is None else rows
        cols = k if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls(rows, cols, out)

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return self._data

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> IntMatrix:
        return IntMatrix(len(row_idx), len(col_idx),
                         [[self._data[i][j] for j in col_idx] for i in row_idx])

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self._data) for j, x in enumerate(r) if i != j)

    # -- arithmetic ---------------------------------------------------------

    @property
    def T(self) -> IntMatrix:
        if self.rows == 0:
            return IntMatrix.zeros(self.cols, 0)
        return IntMatrix(self.cols, self.rows, zip(*self._data))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        # row combinations skipping zeros; the matrices here are mostly sparse
        n = other.cols
        orows = other._data
        out = []
        for r in self._data:
            acc = [0] * n
            for a, brow in zip(r, orows):
                if a:
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return IntMatrix._trusted(self.rows, n, out)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise DimensionError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self._data)

    def _check_same(self, other: IntMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same(other)
        return IntMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same(other)
        return IntMatrix(self.rows, self.cols,
                         [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, [[-a for a in r] for r in self._data])

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, [[c * a for a in r] for r in self._data])

    def __pow__(self, k: int) -> IntMatrix:
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def kron(self, other: IntMatrix) -> IntMatrix:
        """Kronecker product; row index (i, k) maps to ``i * other.rows + k``."""
        out = []
        for r in self._data:
            for s in other._data:
                out.append([a * b for a in r for b in s])
        return IntMatrix(self.rows * other.rows, self.cols * other.cols, out)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise DimensionError("hstack needs equal row counts")
        return IntMatrix(self.rows, self.cols + other.cols,
                         [r + s for r, s in zip(self._data, other._data)])

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise DimensionError("vstack needs equal column counts")
        return IntMatrix(self.rows + other.rows, self.cols, self._data + other._data)

    # -- protocol -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {self.tolist()!r})"


def block_diagonal(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out[r0 + i][c0:c0 + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(rows, cols, out)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` in Smith form.

    ``factors`` is the full diagonal of ``S`` (length ``min(rows, cols)``),
    zeros included.  ``U_inv`` and ``V_inv`` are the exact inverses.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    factors: tuple[int, ...]
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.factors if d)


def _identity_lists(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    The pivot at each stage is the nonzero entry of least absolute value in
    the remaining block, ties broken by smallest ``(row, col)``, so the
    output is a deterministic function of ``A``.
    """
    m, n = A.rows, A.cols
    S = A.tolist()
    U = _identity_lists(m)
    Ui = _identity_lists(m)
    V = _identity_lists(n)
    Vi = _identity_lists(n)

    def row_add(dst, src, c):
        # row_dst += c * row_src
        S[dst] = [a + c * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]
        for r in Ui:
            r[src] -= c * r[dst]

    def col_add(dst, src, c):
        # col_dst += c * col_src
        for r in S:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]
        Vi[src] = [a - c * b for a, b in zip(Vi[src], Vi[dst])]

    def row_swap(i, j):
        if i != j:
            S[i], S[j] = S[j], S[i]
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        if i != j:
            for r in S:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_negate(i):
        S[i] = [-a for a in S[i]]
        U[i] = [-a for a in U[i]]
        for r in Ui:
            r[i] = -r[i]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return best[1], best[2]
        return None if best is None else (best[1], best[2])

    t = 0
    while t < min(m, n):
        piv = find_pivot(t)
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        p = S[t][t]
        clean = True
        for i in range(t + 1, m):
            if S[i][t]:
                row_add(i, t, -(S[i][t] // p))
                if S[i][t]:
                    clean = False
        for j in range(t + 1, n):
            if S[t][j]:
                col_add(j, t, -(S[t][j] // p))
                if S[t][j]:
                    clean = False
        if not clean:
            continue
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % p:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_add(t, bad, 1)
            continue
        if p < 0:
            row_negate(t)
        t += 1

    factors = tuple(S[i][i] for i in range(min(m, n)))
    return SmithDecomposition(
        U=IntMatrix(m, m, U), S=IntMatrix(m, n, S), V=IntMatrix(n, n, V),
        factors=factors, U_inv=IntMatrix(m, m, Ui), V_inv=IntMatrix(n, n, Vi),
    )


def rank(A: IntMatrix) -> int:
    """Rank over the rationals (fraction-free elimination)."""
    M = A.tolist()
    r = 0
    prev = 1
    for c in range(A.cols):
        piv = next((i for i in range(r, A.rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, A.rows):
            M[i] = [(M[r][c] * M[i][j] - M[i][c] * M[r][j]) // prev for j in range(A.cols)]
        prev = M[r][c]
        r += 1
    return r


def determinant(A: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    if not A.is_square():
        raise DimensionError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Columns form a saturated basis of ``{v in Z^cols : A v = 0}``."""
    snf = smith_normal_form(A)
    r = snf.rank
    return snf.V.submatrix(range(A.cols), range(r, A.cols))


def cokernel_invariants(A: IntMatrix) -> tuple[int, list[int]]:
    """``(free_rank, torsion)`` of ``Z^rows / A Z^cols``."""
    snf = smith_normal_form(A)
    return A.rows - snf.rank, [d for d in snf.factors if d >= 2]


def image_basis(X: IntMatrix) -> IntMatrix:
    """A basis (full column rank) of the lattice spanned by the columns of X."""
    snf = smith_normal_form(X)
    r = snf.rank
    cols = [[snf.U_inv[i, j] * snf.factors[j] for i in range(X.rows)] for j in range(r)]
    return IntMatrix.from_columns(cols, X.rows)


def solve_integer(A: IntMatrix, B: IntMatrix) -> IntMatrix | None:
    """An integer ``X`` with ``A @ X == B``, or ``None`` if none exists.

    When ``A`` has full column rank the solution is unique.
    """
    if A.rows != B.rows:
        raise DimensionError("solve_integer: row mismatch")
    snf = smith_normal_form(A)
    UB = snf.U @ B
    r = snf.rank
    Y = [[0] * B.cols for _ in range(A.cols)]
    for i in range(A.rows):
        for j in range(B.cols):
            x = UB[i, j]
            if i < r:
                q, rem = divmod(x, snf.factors[i])
                if rem:
                    return None
                Y[i][j] = q
            elif x:
                return None
    return snf.V @ IntMatrix(A.cols, B.cols, Y)


def lattice_contains(A: IntMatrix, B: IntMatrix) -> bool:
    """True when every column of B lies in the integer column span of A."""
    return solve_integer(A, B) is not None


def preimage_lattice(M: IntMatrix, Q: IntMatrix) -> IntMatrix:
    """Basis of ``{x : M x in Q Z^k}``."""
    if Q.cols == 0:
        return kernel_basis(M)
    K = kernel_basis(M.hstack(-Q))
    top = K.submatrix(range(M.cols), range(K.cols))
    return image_basis(top)


def is_unimodular(A: IntMatrix) -> bool:
    return A.is_square() and abs(determinant(A)) == 1


def inverse_unimodular(A: IntMatrix) -> IntMatrix:
    if not is_unimodular(A):
        raise DimensionError("matrix is not unimodular")
    X = solve_integer(A, IntMatrix.identity(A.rows))
    assert X is not None
    return X


def exterior_power(A: IntMatrix, k: int) -> IntMatrix:
    """Matrix of k x k minors, rows and columns indexed by lexicographic k-subsets."""
    if not A.is_square():
        raise DimensionError("exterior power of a non-square matrix")
    n = A.rows
    if k < 0 or k > n:
        raise DimensionError(f"exterior power degree {k} out of range for n = {n}")
    subsets = list(combinations(range(n), k))
    out = [[determinant(A.submatrix(I, J)) for J in subsets] for I in subsets]
    return IntMatrix(len(subsets), len(subsets), out)


def minors_gcd(A: IntMatrix, k: int) -> int:
    """gcd of all k x k minors (0 if there are none or all vanish)."""
    vals = (determinant(A.submatrix(I, J))
            for I in combinations(range(A.rows), k)
            for J in combinations(range(A.cols), k))
    return reduce(gcd, vals, 0)
