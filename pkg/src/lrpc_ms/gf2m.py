"""Arithmetic in binary extension fields F_{2^m}.

Field elements are plain Python ints holding the coefficient vector of an
m-bit polynomial over F_2 (coefficient of X^i at bit i). All state lives in
FieldParams, which is immutable after construction; operations are pure.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations


class ZeroInverse(ZeroDivisionError):
    """Multiplicative inverse of zero was requested."""


# Fields small enough for full log/antilog tables (2^m entries each).
_LOG_TABLE_MAX_M = 18


# ---------------------------------------------------------------------------
# Polynomials over F_2 as ints (bit i = coefficient of X^i)
# ---------------------------------------------------------------------------

def poly_degree(f: int) -> int:
    return f.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two binary polynomials (4-bit windows on b)."""
    if not a or not b:
        return 0
    t1 = a
    t2 = a << 1
    t4 = a << 2
    t8 = a << 3
    t3 = t1 ^ t2
    t5 = t1 ^ t4
    t6 = t2 ^ t4
    t7 = t3 ^ t4
    T = (0, t1, t2, t3, t4, t5, t6, t7,
         t8, t1 ^ t8, t2 ^ t8, t3 ^ t8, t4 ^ t8, t5 ^ t8, t6 ^ t8, t7 ^ t8)
    acc = 0
    sh = 0
    while b:
        nib = b & 15
        if nib:
            acc ^= T[nib] << sh
        b >>= 4
        sh += 4
    return acc


def poly_mod(x: int, f: int) -> int:
    fbits = f.bit_length()
    while x.bit_length() >= fbits:
        x ^= f << (x.bit_length() - fbits)
    return x


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_inv_mod(a: int, f: int) -> int:
    """Inverse of a modulo f over F_2: extended Euclid, one leading-bit
    elimination per iteration."""
    if a == 0:
        raise ZeroInverse("0 has no inverse")
    r0, r1 = f, poly_mod(a, f)
    s0, s1 = 0, 1
    b0, b1 = r0.bit_length(), r1.bit_length()
    while b1 > 1:
        if b0 < b1:
            r0, r1, s0, s1, b0, b1 = r1, r0, s1, s0, b1, b0
        sh = b0 - b1
        r0 ^= r1 << sh
        s0 ^= s1 << sh
        b0 = r0.bit_length()
    if r1 != 1:
        raise ZeroInverse("element is not invertible modulo the given polynomial")
    return poly_mod(s1, f)


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Deterministic (Rabin) irreducibility test over F_2."""
    d = poly_degree(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    if not f & 1:
        return False  # divisible by X
    checkpoints = {d // p for p in _prime_factors(d)}
    x = 0b10
    h = x
    for j in range(1, d + 1):
        h = poly_mod(clmul(h, h), f)
        if j in checkpoints:
            if poly_gcd(h ^ x, f) != 1:
                return False
    return h == x


@lru_cache(maxsize=None)
def find_irreducible(degree: int) -> int:
    """Irreducible polynomial of the given degree with the fewest nonzero
    terms, ties broken by smallest integer value of the bit vector.

    Scans candidates (constant coefficient fixed to 1) in increasing integer
    order within each weight class.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    base = (1 << degree) | 1
    for weight in range(2, degree + 2):
        cands = sorted(
            base | sum(1 << e for e in mids)
            for mids in combinations(range(1, degree), weight - 2)
        )
        for f in cands:
            if is_irreducible(f):
                return f
    raise AssertionError(f"no irreducible polynomial of degree {degree}")


# ---------------------------------------------------------------------------
# Field parameters
# ---------------------------------------------------------------------------

class FieldParams:
    """The field F_{2^m} defined by an irreducible degree-m modulus.

    Elements are ints < 2^m. Instances are immutable and hashable; two
    instances compare equal iff (m, modulus) match.
    """

    __slots__ = ("m", "modulus", "nbytes", "mask", "_red_tables",
                 "_exp", "_log", "mul", "inv", "mul_nr", "reduce_wide",
                 "mul_many", "axpy", "axpy_nr")

    def __init__(self, m: int, modulus: int | None = None):
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = find_irreducible(m)
        if poly_degree(modulus) != m:
            raise ValueError("modulus degree does not match m")
        if not modulus & 1:
            raise ValueError("modulus must have constant coefficient 1")
        if not is_irreducible(modulus):
            raise ValueError("modulus is not irreducible over F_2")
        self.m = m
        self.modulus = modulus
        self.nbytes = (m + 7) // 8
        self.mask = (1 << m) - 1
        self._red_tables = self._build_reduction_tables()
        self._exp = None
        self._log = None
        self._bind_generic_ops()
        if 1 < m <= _LOG_TABLE_MAX_M:
            self._build_log_tables()

    # -- construction helpers ------------------------------------------------

    def _build_reduction_tables(self):
        m = self.m
        low = self.modulus & self.mask  # X^m mod f
        red = [low]
        cur = low
        for _ in range(m + 1, 2 * m):
            cur <<= 1
            if cur >> m & 1:
                cur = (cur & self.mask) ^ low
            red.append(cur)
        tables = []
        for j in range((m + 7) // 8):
            tab = []
            for byte in range(256):
                v = 0
                for t in range(8):
                    if byte >> t & 1 and 8 * j + t < m:
                        v ^= red[8 * j + t]
                tab.append(v)
            tables.append(tab)
        return tables

    def _bind_generic_ops(self):
        mask = self.mask
        m = self.m
        tables = self._red_tables

        def reduce_wide(x: int) -> int:
            lo = x & mask
            hi = x >> m
            j = 0
            while hi:
                lo ^= tables[j][hi & 0xFF]
                hi >>= 8
                j += 1
            return lo

        def mul(a: int, b: int) -> int:
            return reduce_wide(clmul(a, b))

        modulus = self.modulus

        def inv(a: int) -> int:
            if a == 0:
                raise ZeroInverse("0 has no inverse in the field")
            return poly_inv_mod(a, modulus)

        def table8(a: int) -> list[int]:
            t = [0] * 256
            t[1] = a
            for i in range(2, 256, 2):
                d = t[i >> 1] << 1
                t[i] = d
                t[i + 1] = d ^ a
            return t

        def mul_many(a: int, values) -> list[int]:
            # one shared window table across the whole vector
            if not a:
                return [0] * len(values)
            t = table8(a)
            out = []
            for v in values:
                acc = 0
                sh = 0
                while v:
                    byt = v & 255
                    if byt:
                        acc ^= t[byt] << sh
                    v >>= 8
                    sh += 8
                out.append(reduce_wide(acc))
            return out

        def axpy(a: int, src, dst) -> list[int]:
            # dst + a*src, elementwise
            if not a:
                return list(dst)
            t = table8(a)
            out = []
            for v, d in zip(src, dst):
                acc = 0
                sh = 0
                while v:
                    byt = v & 255
                    if byt:
                        acc ^= t[byt] << sh
                    v >>= 8
                    sh += 8
                out.append(d ^ reduce_wide(acc))
            return out

        def axpy_nr(a: int, src, dst) -> None:
            # dst (unreduced accumulators, mutated) += a*src
            t = table8(a)
            for j, v in enumerate(src):
                if v:
                    acc = 0
                    sh = 0
                    while v:
                        byt = v & 255
                        if byt:
                            acc ^= t[byt] << sh
                        v >>= 8
                        sh += 8
                    dst[j] ^= acc

        self.mul_nr = clmul          # unreduced product, for batched dots
        self.reduce_wide = reduce_wide
        self.mul = mul
        self.inv = inv
        self.mul_many = mul_many
        self.axpy = axpy
        self.axpy_nr = axpy_nr

    def _build_log_tables(self):
        order = (1 << self.m) - 1
        generic_mul = self.mul
        for g in range(2, 1 << self.m):
            exp = [1]
            cur = g
            while cur != 1 and len(exp) < order:
                exp.append(cur)
                cur = generic_mul(cur, g)
            if cur == 1 and len(exp) == order:
                break
        else:  # pragma: no cover - every field has a generator
            raise AssertionError("no multiplicative generator found")
        log = [0] * (order + 1)
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log

        def mul(a: int, b: int) -> int:
            if not a or not b:
                return 0
            s = log[a] + log[b]
            if s >= order:
                s -= order
            return exp[s]

        def inv(a: int) -> int:
            if a == 0:
                raise ZeroInverse("0 has no inverse in the field")
            return exp[(order - log[a]) % order]

        def mul_many(a: int, values) -> list[int]:
            if not a:
                return [0] * len(values)
            la = log[a]
            out = []
            for v in values:
                if v:
                    s = la + log[v]
                    out.append(exp[s - order if s >= order else s])
                else:
                    out.append(0)
            return out

        def axpy(a: int, src, dst) -> list[int]:
            if not a:
                return list(dst)
            la = log[a]
            out = []
            for v, d in zip(src, dst):
                if v:
                    s = la + log[v]
                    out.append(d ^ exp[s - order if s >= order else s])
                else:
                    out.append(d)
            return out

        def axpy_nr(a: int, src, dst) -> None:
            if not a:
                return
            la = log[a]
            for j, v in enumerate(src):
                if v:
                    s = la + log[v]
                    dst[j] ^= exp[s - order if s >= order else s]

        self.mul = mul
        self.inv = inv
        self.mul_many = mul_many
        self.axpy = axpy
        self.axpy_nr = axpy_nr

    # -- plain operations ----------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        base = a
        mul = self.mul
        while e:
            if e & 1:
                result = mul(result, base)
            base = mul(base, base)
            e >>= 1
        return result

    def element_to_bytes(self, a: int) -> bytes:
        return a.to_bytes(self.nbytes, "little")

    def element_from_bytes(self, data: bytes) -> int:
        if len(data) != self.nbytes:
            raise ValueError(f"expected {self.nbytes} bytes, got {len(data)}")
        a = int.from_bytes(data, "little")
        if a > self.mask:
            raise ValueError("stray bits above the field width")
        return a

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FieldParams)
                and self.m == other.m and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.m, self.modulus))

    def __repr__(self):
        return f"FieldParams(m={self.m}, modulus={self.modulus:#x})"


@lru_cache(maxsize=None)
def field_for(m: int) -> FieldParams:
    """The F_{2^m} instance with the canonical (fewest-terms) modulus."""
    return FieldParams(m)
