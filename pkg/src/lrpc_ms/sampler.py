"""Deterministic expansion of 40-byte seeds into the schemes' random objects.

Every draw is a pure function of (seed, domain, request sequence); SHAKE-256
over (domain byte || seed) provides the byte stream.
"""

from __future__ import annotations

import hashlib

from .gf2m import FieldParams
from .linalg import Matrix, is_invertible
from .subspace import Subspace, rank_of_rows, rref_rows, span_of

SEED_BYTES = 40

DOMAIN_KEYGEN = 0x02
DOMAIN_ENCAP = 0x03
DOMAIN_SIMULATION = 0x05


class SupportTooSmall(ValueError):
    pass


class XofStream:
    """Buffered SHAKE-256 reader; single-owner, stateful."""

    __slots__ = ("_shake", "_buf", "_pos")

    def __init__(self, seed: bytes, domain: int):
        if len(seed) != SEED_BYTES:
            raise ValueError(f"seed must be {SEED_BYTES} bytes, got {len(seed)}")
        self._shake = hashlib.shake_256(bytes([domain]) + seed)
        self._buf = b""
        self._pos = 0

    def read(self, n: int) -> bytes:
        end = self._pos + n
        if end > len(self._buf):
            self._buf = self._shake.digest(max(end, 2 * len(self._buf), 256))
        out = self._buf[self._pos:end]
        self._pos = end
        return out

    def read_bits(self, nbits: int) -> int:
        if nbits == 0:
            return 0
        raw = self.read((nbits + 7) // 8)
        return int.from_bytes(raw, "little") & ((1 << nbits) - 1)


def derive_seed(master: bytes, *indices: int) -> bytes:
    """Per-trial 40-byte seed: SHAKE-256(master || LE64 indices)."""
    h = hashlib.shake_256(master + b"".join(i.to_bytes(8, "little")
                                            for i in indices))
    return h.digest(SEED_BYTES)


def sample_subspace(stream: XofStream, dim: int, field: FieldParams) -> Subspace:
    """Uniform dim-dimensional subspace (draw dim x m bits, accept on full
    rank, canonicalize)."""
    if dim > field.m:
        raise ValueError("dimension exceeds the ambient space")
    if dim == 0:
        return Subspace.zero(field)
    m = field.m
    while True:
        rows = [stream.read_bits(m) for _ in range(dim)]
        if rank_of_rows(rows) == dim:
            return Subspace(field, rref_rows(rows))


def _combo_table(space: Subspace) -> list[int]:
    """All 2^dim combinations indexed by their coefficient bits."""
    combos = [0]
    for row in space.rows:
        combos += [c ^ row for c in combos]
    return combos


def _sample_entries(stream: XofStream, space: Subspace, count: int) -> list[int]:
    dim = space.dim
    if dim == 0:
        return [0] * count
    if dim <= 12:
        combos = _combo_table(space)
        return [combos[stream.read_bits(dim)] for _ in range(count)]
    rows = space.rows
    out = []
    for _ in range(count):
        bits = stream.read_bits(dim)
        v = 0
        while bits:
            low = bits & -bits
            v ^= rows[low.bit_length() - 1]
            bits ^= low
        out.append(v)
    return out


def sample_homogeneous_matrix(stream: XofStream, space: Subspace,
                              rows: int, cols: int,
                              full_support: bool = False) -> Matrix:
    """Matrix with entries uniform in the given space; with full_support the
    entries must span the space exactly (whole-matrix resampling)."""
    if full_support and rows * cols < space.dim:
        raise ValueError("too few entries to span the space")
    while True:
        entries = _sample_entries(stream, space, rows * cols)
        if not full_support or rank_of_rows(entries) == space.dim:
            return Matrix(space.field, rows, cols, entries)


def sample_invertible_square(stream: XofStream, space: Subspace,
                             size: int) -> Matrix:
    if size < 1:
        raise ValueError("size must be >= 1")
    if space.dim == 0:
        raise SupportTooSmall("cannot draw an invertible matrix from the zero space")
    while True:
        mat = sample_homogeneous_matrix(stream, space, size, size)
        if is_invertible(mat):
            return mat


def sample_support_tuple(stream: XofStream, space: Subspace,
                         count: int, length: int) -> list[list[int]]:
    """count rows of the given length whose coordinates collectively span
    the space (whole-tuple resampling)."""
    if count * length < space.dim:
        raise ValueError("too few coordinates to span the space")
    while True:
        flat = _sample_entries(stream, space, count * length)
        if rank_of_rows(flat) == space.dim:
            return [flat[i * length:(i + 1) * length] for i in range(count)]
