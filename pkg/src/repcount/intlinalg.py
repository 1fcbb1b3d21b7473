"""Exact integer linear algebra: determinants, Smith normal form, kernels.

Everything here is arbitrary precision.  Entries are Python ints and no
operation ever rounds.  Determinants use fraction-free (Bareiss) elimination
because glue matrices assembled from long words can have large entries and
the cross-checks downstream demand exactness.  Smith normal form uses
unimodular row/column operations with a minimal-absolute-value pivot rule,
which bounds intermediate coefficient growth without affecting the (unique)
invariant factors.

Degenerate shapes are legal throughout: ``det`` of a 0x0 matrix is 1 and the
cokernel of the empty map Z^0 -> Z^0 has order 1, which is what degenerate
splittings produce.

Matrices are immutable after construction and all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "IntMat",
    "SnfResult",
    "INFINITE",
    "ShapeError",
    "det",
    "smith_normal_form",
    "cokernel_order",
    "kernel_basis",
    "rank",
]


class ShapeError(ValueError):
    """Matrix shape incompatible with the requested operation."""


class _Infinite:
    """Order of an abelian group with a free direct summand."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


class IntMat:
    """Immutable integer matrix, stored row major.

    ``cols`` must be given explicitly when there are no rows, since the
    width cannot be inferred from an empty row list.

    >>> IntMat([[1, 2], [3, 4]])[1, 0]
    3
    >>> IntMat([], cols=3).cols
    3
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence[int]], cols: int | None = None):
        rows = []
        for row in data:
            entries = tuple(row)
            for x in entries:
                if not isinstance(x, int):
                    raise TypeError(f"matrix entries must be ints, got {type(x).__name__}")
            rows.append(entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ShapeError("ragged rows")
            if cols is not None and cols != width:
                raise ShapeError(f"declared cols={cols} but rows have width {width}")
            cols = width
        elif cols is None:
            cols = 0
        if cols < 0:
            raise ShapeError("negative column count")
        self.rows = len(rows)
        self.cols = cols
        self.data = tuple(rows)

    @classmethod
    def identity(cls, n: int) -> "IntMat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMat":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.data[i][j] for i in range(self.rows))

    def transpose(self) -> "IntMat":
        return IntMat(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __matmul__(self, other: "IntMat") -> "IntMat":
        if not isinstance(other, IntMat):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            a = self.data[i]
            out.append(
                [sum(a[k] * other.data[k][j] for k in range(self.cols)) for j in range(other.cols)]
            )
        return IntMat(out, cols=other.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMat):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"IntMat({self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"IntMat[{body}]"

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols


def det(a: IntMat) -> int:
    """Exact determinant via fraction-free Bareiss elimination.

    >>> det(IntMat([[2, 1], [0, 3]]))
    6
    >>> det(IntMat([], cols=0))
    1
    """
    if not a.is_square:
        raise ShapeError(f"determinant of non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(row) for row in a.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot_row = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot_row is None:
                return 0
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Exact division: Bareiss guarantees prev divides the product.
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form U @ A @ V == D with unimodular U, V.

    ``diag`` lists the diagonal of D (length min(rows, cols)); nonzero
    entries form a divisibility chain d1 | d2 | ... with trailing zeros.
    """

    U: IntMat
    D: IntMat
    V: IntMat
    diag: tuple[int, ...]


def smith_normal_form(a: IntMat) -> SnfResult:
    """Diagonalize ``a`` by unimodular row/column operations.

    >>> smith_normal_form(IntMat([[2, 0], [0, 3]])).diag
    (1, 6)
    """
    m, n = a.rows, a.cols
    d = [list(row) for row in a.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_sub(i: int, k: int, q: int) -> None:
        di, dk = d[i], d[k]
        for j in range(n):
            di[j] -= q * dk[j]
        ui, uk = u[i], u[k]
        for j in range(m):
            ui[j] -= q * uk[j]

    def col_sub(j: int, k: int, q: int) -> None:
        for i in range(m):
            d[i][j] -= q * d[i][k]
        for i in range(n):
            v[i][j] -= q * v[i][k]

    def row_swap(i: int, k: int) -> None:
        d[i], d[k] = d[k], d[i]
        u[i], u[k] = u[k], u[i]

    def col_swap(j: int, k: int) -> None:
        for row in d:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def row_neg(i: int) -> None:
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    def diagonalize() -> None:
        for t in range(min(m, n)):
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = d[i][j]
                    if x != 0 and (best is None or abs(x) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return
            if best[0] != t:
                row_swap(t, best[0])
            if best[1] != t:
                col_swap(t, best[1])
            while True:
                swapped = False
                for i in range(t + 1, m):
                    if d[i][t] != 0:
                        row_sub(i, t, d[i][t] // d[t][t])
                        if d[i][t] != 0:
                            # Remainder is strictly smaller; adopt it as pivot.
                            row_swap(t, i)
                            swapped = True
                            break
                if swapped:
                    continue
                for j in range(t + 1, n):
                    if d[t][j] != 0:
                        col_sub(j, t, d[t][j] // d[t][t])
                        if d[t][j] != 0:
                            col_swap(t, j)
                            swapped = True
                            break
                if swapped:
                    continue
                break
            if d[t][t] < 0:
                row_neg(t)

    diagonalize()
    k = min(m, n)
    while True:
        clean = True
        for t in range(k - 1):
            a0, b0 = d[t][t], d[t + 1][t + 1]
            if a0 == 0 and b0 != 0:
                row_swap(t, t + 1)
                col_swap(t, t + 1)
                clean = False
                break
            if a0 != 0 and b0 % a0 != 0:
                # Fold column t+1 into column t; re-diagonalizing replaces the
                # pair by (gcd, lcm) without changing the product.
                col_sub(t, t + 1, -1)
                clean = False
                break
        if clean:
            break
        diagonalize()

    big_d = IntMat(d, cols=n)
    return SnfResult(
        U=IntMat(u, cols=m),
        D=big_d,
        V=IntMat(v, cols=n),
        diag=tuple(d[i][i] for i in range(k)),
    )


def rank(a: IntMat) -> int:
    """Rank over Q, read off as the number of nonzero invariant factors."""
    return sum(1 for x in smith_normal_form(a).diag if x != 0)


def cokernel_order(a: IntMat):
    """Order of Z^rows / (column span of ``a``), or INFINITE.

    >>> cokernel_order(IntMat([[2, 1], [0, 3]]))
    6
    >>> cokernel_order(IntMat([[1, 0], [0, 0]]))
    INFINITE
    """
    diag = smith_normal_form(a).diag
    nonzero = [x for x in diag if x != 0]
    if len(nonzero) < a.rows:
        return INFINITE
    order = 1
    for x in nonzero:
        order *= x
    return order


def kernel_basis(a: IntMat) -> IntMat:
    """Columns form a Z-basis of the integer kernel of ``a``.

    The result has ``a.cols`` rows and ``a.cols - rank(a)`` columns.
    """
    s = smith_normal_form(a)
    r = sum(1 for x in s.diag if x != 0)
    width = a.cols - r
    return IntMat(
        [[s.V[i, j] for j in range(r, a.cols)] for i in range(a.cols)],
        cols=width,
    )
