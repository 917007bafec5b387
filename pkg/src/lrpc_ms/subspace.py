"""F_2-subspaces of F_{2^m} in canonical reduced row echelon form.

Basis rows are ints (bit i = coordinate i); coordinates are read in
increasing bit order, so a row's pivot is its lowest set bit. The canonical
form makes equality plain tuple comparison.
"""

from __future__ import annotations

import struct
from typing import Iterable, Iterator

from .gf2m import FieldParams
from .packing import BadPadding, pack_bits, unpack_bits


def rref_rows(rows: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon form over F_2; returns rows sorted by pivot.

    A row's pivot is its lowest set bit; pivot columns are zero in every
    other row, so the result is the unique canonical basis of the span.
    """
    pivots: dict[int, int] = {}
    pivot_mask = 0
    for v in rows:
        rel = v & pivot_mask
        while rel:
            low = rel & -rel
            v ^= pivots[low.bit_length() - 1]
            rel ^= low
        if v:
            low = v & -v
            p = low.bit_length() - 1
            for q, row in pivots.items():
                if row >> p & 1:
                    pivots[q] = row ^ v
            pivots[p] = v
            pivot_mask |= low
    return tuple(pivots[p] for p in sorted(pivots))


def rank_of_rows(rows: Iterable[int]) -> int:
    """F_2 rank, via plain (non-reduced) elimination."""
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            p = (v & -v).bit_length() - 1
            if p in pivots:
                v ^= pivots[p]
            else:
                pivots[p] = v
                break
    return len(pivots)


class Subspace:
    """Canonical subspace; immutable, equality is bitwise."""

    __slots__ = ("field", "rows")

    def __init__(self, field: FieldParams, rows: tuple[int, ...]):
        # rows must already be canonical; use span_of for raw generators
        self.field = field
        self.rows = rows

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def zero(cls, field: FieldParams) -> "Subspace":
        return cls(field, ())

    def contains(self, x: int) -> bool:
        for row in self.rows:
            low = row & -row
            if x & low:
                x ^= row
        return x == 0

    def enumerate_elements(self) -> Iterator[int]:
        """All 2^dim elements, gray-code order starting at 0."""
        rows = self.rows
        cur = 0
        yield 0
        for i in range(1, 1 << len(rows)):
            g = i ^ (i >> 1)
            prev = (i - 1) ^ ((i - 1) >> 1)
            cur ^= rows[((g ^ prev) & -(g ^ prev)).bit_length() - 1]
            yield cur

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace(self.field, rref_rows(self.rows + other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Kernel method: tagged elimination of stacked bases.

        Rows of self get tag bits; once a stacked row reduces to zero its
        self-tag names a combination lying in both spaces.
        """
        self._check_compatible(other)
        if not self.rows or not other.rows:
            return Subspace.zero(self.field)
        m = self.field.m
        gens = []
        work: dict[int, int] = {}  # pivot -> tagged row
        for i, row in enumerate(self.rows):
            work_insert(work, row | (1 << (m + i)), m)
        for row in other.rows:
            rem = work_insert(work, row, m)
            if rem is not None:
                # rem is a pure-tag residue naming the self-combination
                combo = 0
                tags = rem >> m
                while tags:
                    t = (tags & -tags).bit_length() - 1
                    combo ^= self.rows[t]
                    tags &= tags - 1
                gens.append(combo)
        return Subspace(self.field, rref_rows(gens))

    def product_space(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        mul_many = self.field.mul_many
        prods = []
        for a in self.rows:
            prods.extend(mul_many(a, other.rows))
        return Subspace(self.field, rref_rows(prods))

    def scalar_div(self, f: int) -> "Subspace":
        """The space f^{-1}·self (same dimension for f != 0)."""
        finv = self.field.inv(f)
        return Subspace(self.field, rref_rows(self.field.mul_many(finv, self.rows)))

    def scalar_mul(self, f: int) -> "Subspace":
        return Subspace(self.field, rref_rows(self.field.mul_many(f, self.rows)))

    def hyperplanes(self) -> list["Subspace"]:
        """All codimension-1 subspaces, one per nonzero linear functional on
        the coefficient space, functionals taken in increasing integer order.
        """
        if self.dim < 1:
            raise ValueError("hyperplanes need dim >= 1")
        rows = self.rows
        delta = len(rows)
        out = []
        for phi in range(1, 1 << delta):
            p = (phi & -phi).bit_length() - 1
            gens = [rows[i] ^ (rows[p] if phi >> i & 1 else 0)
                    for i in range(delta) if i != p]
            out.append(Subspace(self.field, rref_rows(gens)))
        return out

    def canonical_bytes(self) -> bytes:
        header = struct.pack("<HH", self.dim, self.field.m)
        return header + pack_bits(self.rows, self.field.m)

    def _check_compatible(self, other: "Subspace") -> None:
        if self.field != other.field:
            raise ValueError("subspaces live in different fields")

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.field == other.field and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return f"Subspace(m={self.field.m}, dim={self.dim})"


def work_insert(work: dict[int, int], v: int, m: int) -> int | None:
    """Insert a tagged row, eliminating on the low m value bits.

    Returns the residue if the value part vanished (tags only), else None.
    """
    value_mask = (1 << m) - 1
    while v & value_mask:
        p = ((v & value_mask) & -(v & value_mask)).bit_length() - 1
        if p in work:
            v ^= work[p]
        else:
            work[p] = v
            return None
    return v if v else None


def span_of(field: FieldParams, elements: Iterable[int]) -> Subspace:
    return Subspace(field, rref_rows(elements))


def full_space(field: FieldParams) -> Subspace:
    return Subspace(field, tuple(1 << i for i in range(field.m)))


def from_canonical_bytes(field: FieldParams, data: bytes) -> Subspace:
    if len(data) < 4:
        raise ValueError("truncated subspace encoding")
    dim, m = struct.unpack("<HH", data[:4])
    if m != field.m:
        raise ValueError(f"encoding is for m={m}, field has m={field.m}")
    rows = unpack_bits(data[4:], field.m, dim)
    space = Subspace(field, tuple(rows))
    if rref_rows(rows) != space.rows:
        raise BadPadding("rows are not in canonical reduced echelon form")
    return space
