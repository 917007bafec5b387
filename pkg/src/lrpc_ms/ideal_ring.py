"""Arithmetic in F_{2^m}[X]/(P) with P over F_2 of degree k.

Ring elements are length-k sequences of field elements (coefficient of X^i
at index i). P being irreducible over F_2 does not make it irreducible over
F_{2^m}, so non-invertible elements exist; ring_inv reports them.
"""

from __future__ import annotations

from typing import Sequence

from .gf2m import FieldParams, find_irreducible, is_irreducible, poly_degree
from .linalg import DimensionMismatch, Matrix

try:  # GMP multiplies the ~300k-bit spread operands several times faster
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - plain ints are a complete fallback
    _mpz = None


class NotInvertible(ValueError):
    pass


def choose_ring_modulus(k: int) -> int:
    """Degree-k irreducible over F_2; fewest terms, smallest integer value."""
    if k < 2:
        raise ValueError("ring modulus degree must be >= 2")
    return find_irreducible(k)


class RingParams:
    __slots__ = ("k", "modulus_p", "field", "_p_low_bits", "_cell_bytes",
                 "_spread_mask", "_use_packed")

    def __init__(self, k: int, modulus_p: int, field: FieldParams):
        if poly_degree(modulus_p) != k:
            raise ValueError("ring modulus degree does not match k")
        if not is_irreducible(modulus_p):
            raise ValueError("ring modulus is not irreducible over F_2")
        self.k = k
        self.modulus_p = modulus_p
        self.field = field
        low = modulus_p ^ (1 << k)
        self._p_low_bits = tuple(i for i in range(k) if low >> i & 1)
        # packed carry-less multiply layout: one cell per product coefficient
        self._cell_bytes = (2 * field.m + 7) // 8
        total_cells = 2 * k  # covers the 2k-1 product coefficients
        self._spread_mask = int.from_bytes(
            b"\x01\x00" * (total_cells * self._cell_bytes * 8), "little")
        self._use_packed = k * field.m >= 1024

    def __eq__(self, other):
        return (isinstance(other, RingParams) and self.k == other.k
                and self.modulus_p == other.modulus_p
                and self.field == other.field)

    def __hash__(self):
        return hash((self.k, self.modulus_p, self.field))

    def __repr__(self):
        return f"RingParams(k={self.k}, m={self.field.m})"


def _check_len(v: Sequence[int], k: int):
    if len(v) != k:
        raise DimensionMismatch(f"ring element needs {k} coefficients, got {len(v)}")


def _reduce_mod_p(w: list[int], ring: RingParams) -> list[int]:
    k = ring.k
    low_bits = ring._p_low_bits
    for t in range(2 * k - 2, k - 1, -1):
        c = w[t]
        if c:
            w[t] = 0
            base = t - k
            for b in low_bits:
                w[base + b] ^= c
    return w[:k]


def ring_mul_schoolbook(u: Sequence[int], v: Sequence[int],
                        ring: RingParams) -> list[int]:
    """Reference quadratic product; kept as the oracle for the packed path."""
    _check_len(u, ring.k)
    _check_len(v, ring.k)
    k = ring.k
    mul_nr = ring.field.mul_nr
    reduce_wide = ring.field.reduce_wide
    wide = [0] * (2 * k - 1)
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if vj:
                wide[i + j] ^= mul_nr(ui, vj)
    w = [reduce_wide(x) for x in wide]
    return _reduce_mod_p(w, ring)


# byte -> 16 bytes with the bits spread one per 16-bit cell, and back
_SPREAD16 = []
for _b in range(256):
    _out = bytearray(16)
    for _i in range(8):
        if _b >> _i & 1:
            _out[2 * _i] = 1
    _SPREAD16.append(bytes(_out))
_UNSPREAD16 = {_SPREAD16[_b]: _b for _b in range(256)}
del _b, _out, _i


def _ring_mul_packed(u: Sequence[int], v: Sequence[int],
                     ring: RingParams) -> list[int]:
    """One big carry-less product of the whole coefficient vectors.

    Coefficients are packed with a 2m-bit (byte aligned) stride so the
    cross-term XOR sums never spill between cells; the carry-less multiply
    itself runs as an integer product of 16x spread operands, which keeps
    every per-column population count (< k*m < 2^15) inside its cell.
    """
    k = ring.k
    cell_bytes = ring._cell_bytes
    stride = 8 * cell_bytes
    pu = 0
    for i in range(k - 1, -1, -1):
        pu = (pu << stride) | u[i]
    pv = 0
    for i in range(k - 1, -1, -1):
        pv = (pv << stride) | v[i]
    nbytes = k * cell_bytes
    spread16 = _SPREAD16
    su = int.from_bytes(
        b"".join(map(spread16.__getitem__, pu.to_bytes(nbytes, "little"))),
        "little")
    sv = int.from_bytes(
        b"".join(map(spread16.__getitem__, pv.to_bytes(nbytes, "little"))),
        "little")
    if _mpz is not None:
        prod = int(_mpz(su) * _mpz(sv) & ring._spread_mask)
    else:
        prod = (su * sv) & ring._spread_mask
    pb = prod.to_bytes(2 * nbytes * 16, "little")
    reduce_wide = ring.field.reduce_wide
    unspread = _UNSPREAD16
    w = []
    pos = 0
    step = 16 * cell_bytes
    for _ in range(2 * k - 1):
        cell = bytes(unspread[pb[i:i + 16]] for i in range(pos, pos + step, 16))
        w.append(reduce_wide(int.from_bytes(cell, "little")))
        pos += step
    return _reduce_mod_p(w, ring)


def ring_mul(u: Sequence[int], v: Sequence[int], ring: RingParams) -> list[int]:
    if ring._use_packed:
        _check_len(u, ring.k)
        _check_len(v, ring.k)
        return _ring_mul_packed(u, v, ring)
    return ring_mul_schoolbook(u, v, ring)


def ring_unit(ring: RingParams) -> list[int]:
    e = [0] * ring.k
    e[0] = 1
    return e


def _pdeg(p: list[int]) -> int:
    for i in range(len(p) - 1, -1, -1):
        if p[i]:
            return i
    return -1


def ring_is_invertible(x: Sequence[int], ring: RingParams) -> bool:
    """gcd(x, P) constant? Same predicate as ring_inv, at about half the
    cost (no cofactor tracking); seed re-expansion leans on this."""
    _check_len(x, ring.k)
    field = ring.field
    mul, inv, axpy = field.mul, field.inv, field.axpy
    k = ring.k
    r0 = [(ring.modulus_p >> i) & 1 for i in range(k + 1)]
    r1 = list(x) + [0]
    d0, d1 = k, _pdeg(r1)
    if d1 < 0:
        return False
    inv_lead1 = None
    while d1 > 0:
        if d0 < d1:
            r0, r1, d0, d1 = r1, r0, d1, d0
            inv_lead1 = None
            continue
        if inv_lead1 is None:
            inv_lead1 = inv(r1[d1])
        lead = mul(r0[d0], inv_lead1)
        sh = d0 - d1
        r0[sh:sh + d1 + 1] = axpy(lead, r1[:d1 + 1], r0[sh:sh + d1 + 1])
        d0 = _pdeg(r0)
        if d0 < d1:
            r0, r1, d0, d1 = r1, r0, d1, d0
            inv_lead1 = None
    return d1 == 0


def ring_inv(x: Sequence[int], ring: RingParams) -> list[int]:
    """Inverse modulo P via extended Euclid in F_{2^m}[X].

    Raises NotInvertible when gcd(x, P) is non-constant (possible because P
    may factor over the extension field).
    """
    _check_len(x, ring.k)
    field = ring.field
    mul, inv, axpy = field.mul, field.inv, field.axpy
    k = ring.k
    # P as a polynomial with coefficients in the field
    r0 = [(ring.modulus_p >> i) & 1 for i in range(k + 1)]
    r1 = list(x) + [0]
    s0 = [0] * (k + 1)
    s1 = [0] * (k + 1)
    s1[0] = 1
    d0, d1 = k, _pdeg(r1)
    if d1 < 0:
        raise NotInvertible("zero is not invertible")
    inv_lead1 = None
    while d1 > 0:
        if d0 < d1:
            r0, r1, s0, s1, d0, d1 = r1, r0, s1, s0, d1, d0
            inv_lead1 = None
            continue
        if inv_lead1 is None:
            inv_lead1 = inv(r1[d1])
        lead = mul(r0[d0], inv_lead1)
        sh = d0 - d1
        r0[sh:sh + d1 + 1] = axpy(lead, r1[:d1 + 1], r0[sh:sh + d1 + 1])
        s0[sh:] = axpy(lead, s1[:k + 1 - sh], s0[sh:])
        d0 = _pdeg(r0)
        if d0 < d1:
            r0, r1, s0, s1, d0, d1 = r1, r0, s1, s0, d1, d0
            inv_lead1 = None
    if d1 < 0:  # gcd is r0, non-constant
        raise NotInvertible("element shares a factor with the ring modulus")
    c = inv(r1[0])
    return field.mul_many(c, s1[:k])


def ideal_block(h: Sequence[int], ring: RingParams) -> Matrix:
    """k x k matrix whose column j holds X^j * h mod P.

    Multiplying this block by a coefficient column vector realises the ring
    product with h, which is how an ideal parity-check expands to a plain
    matrix.
    """
    _check_len(h, ring.k)
    k = ring.k
    field = ring.field
    cols = []
    cur = list(h)
    for _ in range(k):
        cols.append(cur)
        nxt = [0] + cur[:-1]
        top = cur[-1]
        if top:
            for b in ring._p_low_bits:
                nxt[b] ^= top
        cur = nxt
    entries = [0] * (k * k)
    for j, col in enumerate(cols):
        for i in range(k):
            entries[i * k + j] = col[i]
    return Matrix(field, k, k, entries)
