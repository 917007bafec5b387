"""The four KEM variants: unstructured/ideal x standard/extended decoding.

Secret keys are bare 40-byte seeds; decapsulation re-expands them, so the
expansion below is the normative one. All wire formats are bit-exact:
row-major element streams, m bits each, LSB-first, zero padded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .decoder import rsr, xrsr
from .gf2m import FieldParams, field_for
from .hashes import (SHARED_SECRET_BYTES, SUPPORT_HASH_BYTES,
                     shared_secret_hash, support_check_hash)
from .ideal_ring import (NotInvertible, RingParams, choose_ring_modulus,
                         ring_inv, ring_is_invertible, ring_mul)
from .linalg import (Matrix, Singular, is_invertible, mat_mul,
                     mat_solve)
from .packing import BadLength, BadPadding, pack_bits, packed_size, unpack_bits
from .sampler import (DOMAIN_ENCAP, DOMAIN_KEYGEN, SEED_BYTES, XofStream,
                      sample_homogeneous_matrix, sample_subspace,
                      sample_support_tuple)
from .subspace import Subspace

UNSTRUCTURED = "unstructured"
IDEAL = "ideal"
STANDARD = "standard"
EXTENDED = "extended"


class MalformedKey(ValueError):
    pass


class MalformedCiphertext(ValueError):
    pass


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class ParameterSet:
    name: str
    structure: str
    decoding: str
    n: int
    k: int
    m: int
    r: int
    d: int
    ell: int
    security_bits: int | None = None
    claimed_dfr_log2: int | None = None

    def __post_init__(self):
        if self.structure not in (UNSTRUCTURED, IDEAL):
            raise DimensionError(f"unknown structure {self.structure!r}")
        if self.decoding not in (STANDARD, EXTENDED):
            raise DimensionError(f"unknown decoding {self.decoding!r}")
        if not (0 < self.k < self.n):
            raise DimensionError("need 0 < k < n")
        if not (1 <= self.ell <= self.k):
            raise DimensionError("need 1 <= ell <= k")
        if not (1 <= self.r <= self.m and 1 <= self.d <= self.m):
            raise DimensionError("weights must fit in the extension degree")
        if self.structure == IDEAL and self.n != 2 * self.k:
            raise DimensionError("ideal variants need n = 2k")

    @property
    def is_ideal(self) -> bool:
        return self.structure == IDEAL

    @property
    def is_extended(self) -> bool:
        return self.decoding == EXTENDED

    @property
    def field(self) -> FieldParams:
        return field_for(self.m)

    @property
    def ring(self) -> RingParams:
        if not self.is_ideal:
            raise DimensionError("only ideal variants have a ring")
        return _ring_for(self.k, self.m)

    # wire sizes implied by the codecs below
    @property
    def pk_nbytes(self) -> int:
        count = self.k if self.is_ideal else (self.n - self.k) * self.k
        return packed_size(count, self.m)

    @property
    def sk_nbytes(self) -> int:
        return SEED_BYTES

    @property
    def ct_nbytes(self) -> int:
        base = packed_size((self.n - self.k) * self.ell, self.m)
        return base + (SUPPORT_HASH_BYTES if self.is_extended else 0)

    @property
    def ss_nbytes(self) -> int:
        return SHARED_SECRET_BYTES


@lru_cache(maxsize=None)
def _ring_for(k: int, m: int) -> RingParams:
    return RingParams(k, choose_ring_modulus(k), field_for(m))


_REGISTRY_ROWS = [
    # name, structure, decoding, n, k, m, r, d, ell, security, claimed dfr
    ("LRPC-MS-128", UNSTRUCTURED, STANDARD, 34, 17, 113, 9, 10, 13, 128, 126),
    ("LRPC-xMS-128", UNSTRUCTURED, EXTENDED, 34, 17, 107, 9, 10, 13, 128, 127),
    ("LRPC-MS-192", UNSTRUCTURED, STANDARD, 42, 21, 151, 11, 11, 15, 192, 190),
    ("ILRPC-MS-128", IDEAL, STANDARD, 94, 47, 83, 7, 8, 4, 128, 126),
    ("ILRPC-xMS-128", IDEAL, EXTENDED, 94, 47, 73, 7, 8, 4, 128, 126),
    ("ILRPC-MS-192", IDEAL, STANDARD, 178, 89, 109, 9, 8, 3, 192, 189),
    ("ILRPC-xMS-192", IDEAL, EXTENDED, 178, 89, 97, 9, 8, 3, 192, 189),
]

REGISTRY: dict[str, ParameterSet] = {
    row[0]: ParameterSet(*row) for row in _REGISTRY_ROWS
}


def get_params(name: str) -> ParameterSet:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown parameter set {name!r}; "
                       f"known: {', '.join(REGISTRY)}") from None


@dataclass(frozen=True)
class PublicKey:
    """Unstructured: the (n-k) x k non-identity block of H. Ideal: h as a
    1 x k row."""
    matrix: Matrix


@dataclass(frozen=True)
class SecretKey:
    seed: bytes


@dataclass(frozen=True)
class Ciphertext:
    """Unstructured: C of shape (n-k) x ell. Ideal: ell x k, row i = c_i.
    Extended variants carry the support fingerprint."""
    matrix: Matrix
    aux_hash: bytes | None = None


# ---------------------------------------------------------------------------
# Secret expansion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SecretParts:
    support: Subspace           # F
    a: Matrix | None            # unstructured: A
    b: Matrix | None            # unstructured: B
    x: tuple | None             # ideal: x
    y: tuple | None             # ideal: y
    pk_matrix: Matrix | None    # A^{-1}B or x^{-1}y, when requested


def expand_secret(params: ParameterSet, seed: bytes,
                  need_public: bool = False) -> SecretParts:
    """The normative seed expansion shared by keygen and decap.

    Resampling decisions (invertibility of A, of x) are part of the stream
    contract, so decap replays them; it skips the inverse computations the
    public key needs, which only keygen asks for.
    """
    stream = XofStream(seed, DOMAIN_KEYGEN)
    field = params.field
    support = sample_subspace(stream, params.d, field)
    if params.is_ideal:
        ring = params.ring
        x_inv = None
        while True:
            x = sample_homogeneous_matrix(stream, support, 1, params.k,
                                          full_support=True).entries
            if need_public:
                try:
                    x_inv = ring_inv(x, ring)
                except NotInvertible:
                    continue
                break
            if ring_is_invertible(x, ring):
                break
        y = sample_homogeneous_matrix(stream, support, 1, params.k,
                                      full_support=True).entries
        pk_matrix = None
        if need_public:
            pk_matrix = Matrix(field, 1, params.k, ring_mul(x_inv, y, ring))
        return SecretParts(support, None, None, tuple(x), tuple(y), pk_matrix)
    nk = params.n - params.k
    while True:
        u = sample_homogeneous_matrix(stream, support, nk, params.n,
                                      full_support=True)
        a = u.submatrix_cols(0, nk)
        b = None
        pk_matrix = None
        if need_public:
            try:
                pk_matrix = mat_solve(a, u.submatrix_cols(nk, params.n))
            except Singular:
                continue
        elif not is_invertible(a):
            continue
        b = u.submatrix_cols(nk, params.n)
        return SecretParts(support, a, b, None, None, pk_matrix)


def keygen(params: ParameterSet, seed: bytes) -> tuple[PublicKey, SecretKey]:
    parts = expand_secret(params, seed, need_public=True)
    return PublicKey(parts.pk_matrix), SecretKey(bytes(seed))


# ---------------------------------------------------------------------------
# Encapsulation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EncapParts:
    support: Subspace           # E
    error: Matrix | None        # unstructured: V (n x ell)
    error_tuple: tuple | None   # ideal: (e_1, ..., e_2ell)


def expand_encap_randomness(params: ParameterSet, seed: bytes) -> EncapParts:
    stream = XofStream(seed, DOMAIN_ENCAP)
    support = sample_subspace(stream, params.r, params.field)
    if params.is_ideal:
        es = sample_support_tuple(stream, support, 2 * params.ell, params.k)
        return EncapParts(support, None, tuple(tuple(e) for e in es))
    v = sample_homogeneous_matrix(stream, support, params.n, params.ell,
                                  full_support=True)
    return EncapParts(support, v, None)


def _check_public_key(params: ParameterSet, pk: PublicKey) -> None:
    mat = pk.matrix
    want = (1, params.k) if params.is_ideal else (params.n - params.k, params.k)
    if (mat.nrows, mat.ncols) != want or mat.field != params.field:
        raise MalformedKey(
            f"public key shape {(mat.nrows, mat.ncols)} does not match "
            f"{params.name}")


def encap_with_parts(params: ParameterSet, pk: PublicKey,
                     parts: EncapParts) -> tuple[Ciphertext, bytes]:
    _check_public_key(params, pk)
    field = params.field
    if params.is_ideal:
        ring = params.ring
        h = pk.matrix.entries
        rows = []
        for i in range(params.ell):
            e_odd = parts.error_tuple[2 * i]
            e_even = parts.error_tuple[2 * i + 1]
            prod = ring_mul(e_even, h, ring)
            rows.extend(a ^ b for a, b in zip(e_odd, prod))
        ct_matrix = Matrix(field, params.ell, params.k, rows)
    else:
        nk = params.n - params.k
        v_top = parts.error.submatrix_rows(0, nk)
        v_bot = parts.error.submatrix_rows(nk, params.n)
        ct_matrix = v_top.add(mat_mul(pk.matrix, v_bot))
    aux = support_check_hash(parts.support) if params.is_extended else None
    return Ciphertext(ct_matrix, aux), shared_secret_hash(parts.support)


def encap(params: ParameterSet, pk: PublicKey,
          seed: bytes) -> tuple[Ciphertext, bytes]:
    return encap_with_parts(params, pk, expand_encap_randomness(params, seed))


# ---------------------------------------------------------------------------
# Decapsulation
# ---------------------------------------------------------------------------

def _check_ciphertext(params: ParameterSet, ct: Ciphertext) -> None:
    mat = ct.matrix
    want = ((params.ell, params.k) if params.is_ideal
            else (params.n - params.k, params.ell))
    if (mat.nrows, mat.ncols) != want or mat.field != params.field:
        raise MalformedCiphertext(
            f"ciphertext shape {(mat.nrows, mat.ncols)} does not match "
            f"{params.name}")
    if params.is_extended:
        if ct.aux_hash is None or len(ct.aux_hash) != SUPPORT_HASH_BYTES:
            raise MalformedCiphertext("extended ciphertext needs its support hash")
    elif ct.aux_hash is not None:
        raise MalformedCiphertext("unexpected support hash")


def syndrome_matrix(params: ParameterSet, parts: SecretParts,
                    ct: Ciphertext) -> Matrix:
    """S as the decapsulator sees it: A*C, or the x*c_i columns."""
    if params.is_ideal:
        ring = params.ring
        k = params.k
        cols = [ring_mul(parts.x, ct.matrix.row_entries(i), ring)
                for i in range(params.ell)]
        entries = [0] * (k * params.ell)
        for j, col in enumerate(cols):
            for i in range(k):
                entries[i * params.ell + j] = col[i]
        return Matrix(params.field, k, params.ell, entries)
    return mat_mul(parts.a, ct.matrix)


def decap_with_parts(params: ParameterSet, parts: SecretParts,
                     ct: Ciphertext) -> bytes | None:
    _check_ciphertext(params, ct)
    syndromes = syndrome_matrix(params, parts, ct)
    if params.is_extended:
        outcome = xrsr(parts.support, syndromes, params.r, ct.aux_hash)
    else:
        outcome = rsr(parts.support, syndromes, params.r)
    if not outcome.ok:
        return None
    return shared_secret_hash(outcome.support)


def decap(params: ParameterSet, sk: SecretKey, ct: Ciphertext) -> bytes | None:
    """Returns the shared secret, or None when support recovery fails."""
    return decap_with_parts(params, expand_secret(params, sk.seed), ct)


# ---------------------------------------------------------------------------
# Codecs
# ---------------------------------------------------------------------------

def serialize_public_key(params: ParameterSet, pk: PublicKey) -> bytes:
    _check_public_key(params, pk)
    return pack_bits(pk.matrix.entries, params.m)


def deserialize_public_key(params: ParameterSet, data: bytes) -> PublicKey:
    if len(data) != params.pk_nbytes:
        raise BadLength(f"public key must be {params.pk_nbytes} bytes, "
                        f"got {len(data)}")
    shape = (1, params.k) if params.is_ideal else (params.n - params.k, params.k)
    entries = unpack_bits(data, params.m, shape[0] * shape[1])
    return PublicKey(Matrix(params.field, shape[0], shape[1], entries))


def serialize_secret_key(params: ParameterSet, sk: SecretKey) -> bytes:
    if len(sk.seed) != SEED_BYTES:
        raise BadLength("secret key seed must be 40 bytes")
    return bytes(sk.seed)


def deserialize_secret_key(params: ParameterSet, data: bytes) -> SecretKey:
    if len(data) != SEED_BYTES:
        raise BadLength(f"secret key must be {SEED_BYTES} bytes, got {len(data)}")
    return SecretKey(bytes(data))


def serialize_ciphertext(params: ParameterSet, ct: Ciphertext) -> bytes:
    _check_ciphertext(params, ct)
    body = pack_bits(ct.matrix.entries, params.m)
    if params.is_extended:
        return body + ct.aux_hash
    return body


def deserialize_ciphertext(params: ParameterSet, data: bytes) -> Ciphertext:
    if len(data) != params.ct_nbytes:
        raise BadLength(f"ciphertext must be {params.ct_nbytes} bytes, "
                        f"got {len(data)}")
    aux = None
    body = data
    if params.is_extended:
        body, aux = data[:-SUPPORT_HASH_BYTES], data[-SUPPORT_HASH_BYTES:]
    shape = ((params.ell, params.k) if params.is_ideal
             else (params.n - params.k, params.ell))
    entries = unpack_bits(body, params.m, shape[0] * shape[1])
    return Ciphertext(Matrix(params.field, shape[0], shape[1], entries), aux)
