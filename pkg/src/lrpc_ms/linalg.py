"""Dense matrices over F_{2^m}. Vectors are 1-row matrices."""

from __future__ import annotations

from typing import Sequence

from .gf2m import FieldParams
from .subspace import rank_of_rows, span_of


class DimensionMismatch(ValueError):
    pass


class Singular(ValueError):
    pass


class Matrix:
    """Row-major dense matrix; immutable by convention."""

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field: FieldParams, nrows: int, ncols: int,
                 entries: Sequence[int]):
        if len(entries) != nrows * ncols:
            raise DimensionMismatch(
                f"{nrows}x{ncols} matrix needs {nrows * ncols} entries, "
                f"got {len(entries)}")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.entries = list(entries)

    @classmethod
    def zero(cls, field: FieldParams, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols, [0] * (nrows * ncols))

    @classmethod
    def identity(cls, field: FieldParams, n: int) -> "Matrix":
        e = [0] * (n * n)
        for i in range(n):
            e[i * n + i] = 1
        return cls(field, n, n, e)

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.ncols + j]

    def row_entries(self, i: int) -> list[int]:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def submatrix_cols(self, start: int, stop: int) -> "Matrix":
        cols = stop - start
        e = []
        for i in range(self.nrows):
            e.extend(self.entries[i * self.ncols + start:i * self.ncols + stop])
        return Matrix(self.field, self.nrows, cols, e)

    def submatrix_rows(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.field, stop - start, self.ncols,
                      self.entries[start * self.ncols:stop * self.ncols])

    def add(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("shape mismatch in addition")
        return Matrix(self.field, self.nrows, self.ncols,
                      [a ^ b for a, b in zip(self.entries, other.entries)])

    def __eq__(self, other):
        return (isinstance(other, Matrix)
                and self.field == other.field
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, tuple(self.entries)))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, m={self.field.m})"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise DimensionMismatch("operands over different fields")
    if a.ncols != b.nrows:
        raise DimensionMismatch(
            f"cannot multiply {a.nrows}x{a.ncols} by {b.nrows}x{b.ncols}")
    field = a.field
    n, inner, p = a.nrows, a.ncols, b.ncols
    ae = a.entries
    # row-accumulation: one window table per left entry, one final reduction
    # per output entry (a no-op for small table-backed fields)
    axpy_nr = field.axpy_nr
    reduce_wide = field.reduce_wide
    brows = [b.entries[t * p:(t + 1) * p] for t in range(inner)]
    out = []
    for i in range(n):
        acc = [0] * p
        off = i * inner
        for t in range(inner):
            at = ae[off + t]
            if at:
                axpy_nr(at, brows[t], acc)
        out.extend(map(reduce_wide, acc))
    return Matrix(field, n, p, out)


def _eliminate(a: Matrix, build_inverse: bool):
    """Gauss-Jordan; pivots chosen as the first nonzero entry scanning
    top-to-bottom. Returns (rank, inverse-or-None)."""
    field = a.field
    n = a.nrows
    mul, inv, axpy = field.mul, field.inv, field.axpy
    rows = [a.row_entries(i) for i in range(n)]
    aug = [[1 if i == j else 0 for j in range(n)] for i in range(n)] \
        if build_inverse else None
    rank = 0
    for col in range(a.ncols):
        pivot = None
        for r in range(rank, n):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        if aug is not None:
            aug[rank], aug[pivot] = aug[pivot], aug[rank]
        pv = inv(rows[rank][col])
        if pv != 1:
            rows[rank] = field.mul_many(pv, rows[rank])
            if aug is not None:
                aug[rank] = field.mul_many(pv, aug[rank])
        prow = rows[rank]
        parow = aug[rank] if aug is not None else None
        # rank only needs forward elimination; the inverse needs full Jordan
        targets = range(n) if aug is not None else range(rank + 1, n)
        for r in targets:
            if r == rank:
                continue
            c = rows[r][col]
            if c:
                rows[r] = axpy(c, prow, rows[r])
                if aug is not None:
                    aug[r] = axpy(c, parow, aug[r])
        rank += 1
        if rank == n:
            break
    return rank, aug


def mat_inv(a: Matrix) -> Matrix:
    if a.nrows != a.ncols:
        raise DimensionMismatch("inverse needs a square matrix")
    rank, aug = _eliminate(a, build_inverse=True)
    if rank < a.nrows:
        raise Singular("matrix is singular")
    return Matrix(a.field, a.nrows, a.ncols,
                  [x for row in aug for x in row])


def mat_solve(a: Matrix, b: Matrix) -> Matrix:
    """a^{-1} b in one Jordan pass over the augmented system [a | b]."""
    if a.nrows != a.ncols:
        raise DimensionMismatch("solve needs a square left-hand side")
    if a.field != b.field or a.nrows != b.nrows:
        raise DimensionMismatch("incompatible right-hand side")
    field = a.field
    n, w = a.nrows, b.ncols
    inv, axpy = field.inv, field.axpy
    rows = [a.row_entries(i) + b.row_entries(i) for i in range(n)]
    rank = 0
    for col in range(n):
        pivot = None
        for r in range(rank, n):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            raise Singular("matrix is singular")
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = inv(rows[rank][col])
        if pv != 1:
            rows[rank] = field.mul_many(pv, rows[rank])
        prow = rows[rank]
        for r in range(n):
            if r == rank:
                continue
            c = rows[r][col]
            if c:
                rows[r] = axpy(c, prow, rows[r])
        rank += 1
    return Matrix(field, n, w, [x for row in rows for x in row[n:]])


def is_invertible(a: Matrix) -> bool:
    if a.nrows != a.ncols:
        raise DimensionMismatch("invertibility needs a square matrix")
    rank, _ = _eliminate(a, build_inverse=False)
    return rank == a.nrows


def rank_weight(v: Matrix) -> int:
    """Rank weight of a row vector: the F_2 rank of its coordinate matrix,
    i.e. the dimension of the support."""
    if v.nrows != 1:
        raise DimensionMismatch("rank weight is defined on row vectors")
    return rank_of_rows(v.entries)


def support_of(v: Matrix):
    """Support of a vector (or of all entries of a matrix) as a Subspace."""
    return span_of(v.field, v.entries)
